#include "hcwalk/walk.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hcwalk/errors.hpp"

namespace hcwalk {

namespace {

// Flip-flop partner of a reduced state: the (coords, direction) pair the
// shift sends it to. O slots are fixed points and never reach here.
std::pair<VertexCoords, Dir> shift_partner(const ReducedBasis& basis,
                                           const VertexCoords& cc, Dir dir) {
  const WalkTopology& t = basis.topology;
  VertexCoords out = cc;
  if (t.kind != Kind::Concatenated) {
    switch (dir) {
      case Dir::R: out.x += 1; return {out, Dir::L};
      case Dir::L: out.x -= 1; return {out, Dir::R};
      case Dir::D: out.s[0] += 1; return {out, Dir::U};
      case Dir::U: out.s[0] -= 1; return {out, Dir::D};
      default: break;
    }
  } else {
    int m = t.levels();
    int level = 0;
    for (int k = m; k >= 1; --k)
      if (cc.s[k - 1] < t.dims[k]) {
        level = k;
        break;
      }
    switch (dir) {
      case Dir::R:
        if (level == 0) out.x += 1; else out.s[level - 1] += 1;
        return {out, Dir::L};
      case Dir::L:
        if (level == 0) out.x -= 1; else out.s[level - 1] -= 1;
        return {out, Dir::R};
      case Dir::U:  // onto the anchor, one level up
        out.s[level - 1] = t.dims[level];
        return {out, Dir::D};
      case Dir::D:  // into the child cube, next to its anchor corner
        out.s[level] = t.dims[level + 1] - 1;
        return {out, Dir::U};
      default: break;
    }
  }
  throw NonUnitary("shift undefined for a loop slot");
}

}  // namespace

WalkOperator build_operator(const ReducedBasis& basis) {
  WalkOperator op;
  op.dim = static_cast<std::int64_t>(basis.states.size());
  op.p = basis.p;
  op.shift.assign(op.dim, -1);

  for (std::size_t pi = 0; pi < basis.positions.size(); ++pi) {
    const ReducedPosition& pos = basis.positions[pi];
    bool is_target = static_cast<std::int32_t>(pi) == basis.target_pos;

    std::vector<std::pair<Dir, double>> kept;
    std::int32_t begin = -1;
    for (Dir dir : kAllDirs) {
      std::int32_t idx = pos.state[static_cast<int>(dir)];
      if (idx < 0) continue;
      if (begin < 0) begin = idx;
      kept.emplace_back(dir, mpz_get_d(pos.n[static_cast<int>(dir)].get_mpz_t()));
      if (dir == Dir::O) {
        op.shift[idx] = idx;
      } else {
        auto [pcoords, pdir] = shift_partner(basis, pos.coords, dir);
        auto it = basis.position_of.find(pcoords);
        if (it == basis.position_of.end())
          throw NonUnitary("shift leaves the basis");
        std::int32_t pidx =
            basis.positions[it->second].state[static_cast<int>(pdir)];
        if (pidx < 0) throw NonUnitary("shift hits an absent state");
        op.shift[idx] = pidx;
      }
    }

    if (is_target) {
      for (const auto& [dir, w] : kept)
        op.target_states.push_back(pos.state[static_cast<int>(dir)]);
      continue;  // identity coin: arrivals sit still until measured
    }

    int len = static_cast<int>(kept.size());
    Eigen::MatrixXd coin(len, len);
    for (int a = 0; a < len; ++a)
      for (int b = 0; b < len; ++b)
        coin(a, b) = 2.0 / op.p * std::sqrt(kept[a].second * kept[b].second) -
                     (a == b ? 1.0 : 0.0);
    op.blocks.push_back({begin, begin + len, std::move(coin)});
  }

  // The shift must be a permutation; combined with per-block unitarity this
  // certifies U itself.
  std::vector<char> hit(op.dim, 0);
  for (std::int32_t img : op.shift) {
    if (img < 0 || img >= op.dim || hit[img])
      throw NonUnitary("reduced shift is not a permutation");
    hit[img] = 1;
  }
  if (op.unitarity_defect() > 1e-10)
    throw NonUnitary("coin blocks fail the unitarity check");

  op.initial = CVector::Zero(op.dim);
  const ReducedPosition& start = basis.positions[basis.start_pos];
  for (Dir dir : kAllDirs) {
    std::int32_t idx = start.state[static_cast<int>(dir)];
    if (idx < 0) continue;
    double w = mpz_get_d(start.n[static_cast<int>(dir)].get_mpz_t());
    op.initial[idx] = std::sqrt(w / op.p);
  }
  return op;
}

CVector WalkOperator::apply_coin(const CVector& psi) const {
  CVector out = psi;
  for (const Block& b : blocks)
    out.segment(b.begin, b.end - b.begin) =
        b.coin * psi.segment(b.begin, b.end - b.begin);
  return out;
}

CVector WalkOperator::apply(const CVector& psi) const {
  CVector mixed = apply_coin(psi);
  CVector out(dim);
  for (std::int64_t i = 0; i < dim; ++i) out[shift[i]] = mixed[i];
  return out;
}

double WalkOperator::unitarity_defect() const {
  double worst = 0.0;
  for (const Block& b : blocks) {
    int len = b.end - b.begin;
    Eigen::MatrixXd g = b.coin.transpose() * b.coin -
                        Eigen::MatrixXd::Identity(len, len);
    worst = std::max(worst, g.cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<HittingSummary> run_measured_walk(
    const WalkOperator& op, const std::vector<double>& thresholds,
    std::int64_t max_steps, std::vector<double>* arrival_trace) {
  for (std::size_t k = 1; k < thresholds.size(); ++k)
    if (thresholds[k] <= thresholds[k - 1])
      throw ConfigError("thresholds must be strictly increasing");

  std::vector<HittingSummary> out(thresholds.size());
  CVector psi = op.initial;
  double cum = 0.0, tau_acc = 0.0;
  std::size_t next = 0;
  std::int64_t window = std::max<std::int64_t>(100, 10 * op.dim);
  double window_cum = 0.0;
  std::int64_t t = 0;
  bool stalled = false;

  while (next < thresholds.size() && t < max_steps) {
    ++t;
    psi = op.apply(psi);
    double p_t = 0.0;
    for (std::int32_t i : op.target_states) {
      p_t += std::norm(psi[i]);
      psi[i] = 0.0;
    }
    cum += p_t;
    tau_acc += static_cast<double>(t) * p_t;
    if (arrival_trace) arrival_trace->push_back(p_t);
    while (next < thresholds.size() && cum >= thresholds[next]) {
      out[next] = {t, tau_acc, cum, t, true, false};
      ++next;
    }
    if (t % window == 0) {
      if (cum - window_cum < 1e-15) {
        stalled = true;
        break;
      }
      window_cum = cum;
    }
  }

  for (std::size_t k = next; k < thresholds.size(); ++k)
    out[k] = {std::nullopt, tau_acc, cum, t, false, stalled};
  return out;
}

HittingSummary run_measured_walk(const WalkOperator& op, double threshold,
                                 std::int64_t max_steps) {
  return run_measured_walk(op, std::vector<double>{threshold}, max_steps)[0];
}

ConditionalHitting conditional_hitting(const WalkOperator& op,
                                       std::int64_t steps) {
  CVector psi = op.initial;
  double sp = 0.0, spt = 0.0;
  std::int64_t window = std::max<std::int64_t>(100, 10 * op.dim);
  double window_sp = 0.0;
  bool plateau = false;
  for (std::int64_t t = 1; t <= steps; ++t) {
    psi = op.apply(psi);
    double p_t = 0.0;
    for (std::int32_t i : op.target_states) {
      p_t += std::norm(psi[i]);
      psi[i] = 0.0;
    }
    sp += p_t;
    spt += static_cast<double>(t) * p_t;
    if (sp >= 1.0 - 1e-12) {
      plateau = true;
      break;
    }
    if (t % window == 0) {
      if (sp - window_sp < 1e-15) {
        plateau = true;
        break;
      }
      window_sp = sp;
    }
  }
  if (!plateau)
    throw NoPlateau("arrival probability still changing after " +
                    std::to_string(steps) + " steps");
  return {sp > 0.0 ? spt / sp : 0.0, sp};
}

double expected_hitting_exact(const WalkOperator& op) {
  // tau = sum_t ||N^t psi0||^2 with N the surviving evolution. The sum is
  // evaluated in closed form on the Krylov space of psi0: Arnoldi gives the
  // restriction H of N, and the Stein equation M = I + H^dagger M H gives
  // the sum, solved columnwise on the Schur form of H.
  auto apply_surviving = [&](const CVector& x) {
    CVector y = op.apply(x);
    for (std::int32_t i : op.target_states) y[i] = 0.0;
    return y;
  };

  std::int64_t cap = std::min<std::int64_t>(op.dim, 4096);
  std::vector<CVector> v;
  v.push_back(op.initial / op.initial.norm());
  std::vector<Eigen::VectorXcd> cols;
  std::int64_t kdim = 0;
  for (std::int64_t j = 0; j < cap; ++j) {
    CVector w = apply_surviving(v[j]);
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(j + 2);
    for (int pass = 0; pass < 2; ++pass)
      for (std::int64_t i = 0; i <= j; ++i) {
        Complex h = v[i].dot(w);
        w -= h * v[i];
        col[i] += h;
      }
    double beta = w.norm();
    col[j + 1] = beta;
    cols.push_back(std::move(col));
    kdim = j + 1;
    if (beta < 1e-12 || kdim == cap) break;
    v.push_back(w / beta);
  }

  Eigen::Index k = static_cast<Eigen::Index>(kdim);
  CMatrix h = CMatrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(j + 2, k); ++i)
      h(i, j) = cols[j][i];

  Eigen::ComplexSchur<CMatrix> schur(h, true);
  CMatrix tt = schur.matrixT();
  CMatrix qq = schur.matrixU();

  // Bubble every non-decaying eigenvalue into the trailing block with
  // unitary swaps of adjacent Schur entries. Roundoff seeds such modes
  // into the Krylov space even when the start state is exactly orthogonal
  // to them, so presence alone does not make the sum diverge.
  auto non_decaying = [&](Eigen::Index i) {
    return std::abs(tt(i, i)) >= 1.0 - 1e-8;
  };
  auto swap_adjacent = [&](Eigen::Index i) {
    Complex a = tt(i, i), b = tt(i, i + 1), c = tt(i + 1, i + 1);
    Complex x1 = b, x2 = c - a;  // eigenvector of [[a,b],[0,c]] for c
    double nrm = std::sqrt(std::norm(x1) + std::norm(x2));
    x1 /= nrm;
    x2 /= nrm;
    Eigen::Matrix2cd g;
    g << x1, -std::conj(x2), x2, std::conj(x1);
    tt.block(0, i, k, 2) *= g;
    tt.block(i, 0, 2, k) = g.adjoint() * tt.block(i, 0, 2, k);
    qq.block(0, i, k, 2) *= g;
    tt(i + 1, i) = 0.0;
  };
  for (bool moved = true; moved;) {
    moved = false;
    for (Eigen::Index i = 0; i + 1 < k; ++i)
      if (non_decaying(i) && !non_decaying(i + 1)) {
        swap_adjacent(i);
        moved = true;
      }
  }
  Eigen::Index live = 0;
  while (live < k && !non_decaying(live)) ++live;

  Eigen::VectorXcd u = qq.row(0).adjoint();
  double trapped = u.tail(k - live).squaredNorm();
  if (trapped > 1e-9)
    throw DarkStateDetected(
        "start state keeps weight " + std::to_string(trapped) +
        " on non-decaying surviving modes; the expected hitting time "
        "diverges");

  // M - T^H M T = I over the decaying part of the Schur basis, columns
  // left to right; each column is a lower-triangular solve.
  CMatrix msol(live, live);
  for (Eigen::Index j = 0; j < live; ++j) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(live);
    for (Eigen::Index l = 0; l < j; ++l)
      if (tt(l, j) != Complex(0)) acc += tt(l, j) * msol.col(l);
    Eigen::VectorXcd r =
        tt.topLeftCorner(live, live).adjoint() * acc;
    r[j] += 1.0;
    Complex lam = tt(j, j);
    for (Eigen::Index i = 0; i < live; ++i) {
      Complex s = r[i];
      for (Eigen::Index l = 0; l < i; ++l)
        s += lam * std::conj(tt(l, i)) * msol(l, j);
      Complex diag = 1.0 - lam * std::conj(tt(i, i));
      if (std::abs(diag) < 1e-12)
        throw DarkStateDetected("resonant surviving modes; the expected "
                                "hitting time diverges");
      msol(i, j) = s / diag;
    }
  }

  Complex tau = (u.head(live).adjoint() * msol * u.head(live))(0, 0);
  return tau.real();
}

bool convergence_check(double tau_eps, double tau_half_eps) {
  if (!(tau_eps > 0.0) || !(tau_half_eps > 0.0)) return false;
  return std::abs(std::log(tau_half_eps) - std::log(tau_eps)) < 0.1;
}

}  // namespace hcwalk
