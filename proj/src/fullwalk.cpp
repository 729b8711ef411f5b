#include "hcwalk/fullwalk.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hcwalk/errors.hpp"

namespace hcwalk {

namespace {

constexpr std::int64_t kMaxFullDimension = 1 << 24;

int chain_level(const VertexCoords& cc, const std::vector<int>& dims) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 1; --k)
    if (cc.s[k - 1] < dims[k]) return k;
  return 0;
}

// Direction of the slot v -> w, read off the orbit coordinates.
Dir classify_slot(const WalkTopology& t, const VertexCoords& cv,
                  const VertexCoords& cw) {
  if (t.kind == Kind::Concatenated) {
    int lv = chain_level(cv, t.dims);
    int lw = chain_level(cw, t.dims);
    if (lw > lv) return Dir::D;
    if (lw < lv) return Dir::U;
    int wv = lv == 0 ? cv.x : cv.s[lv - 1];
    int ww = lv == 0 ? cw.x : cw.s[lv - 1];
    return ww > wv ? Dir::R : Dir::L;
  }
  if (t.kind == Kind::Tails && cw.s[0] != cv.s[0])
    return cw.s[0] > cv.s[0] ? Dir::D : Dir::U;
  return cw.x > cv.x ? Dir::R : Dir::L;
}

}  // namespace

FullWalk build_full_walk(const ExplicitGraph& g, int p) {
  std::int64_t dim = static_cast<std::int64_t>(g.vertex_count) * p;
  if (dim > kMaxFullDimension)
    throw SizeExceeded("full walk space has dimension " +
                       std::to_string(dim) + " (limit " +
                       std::to_string(kMaxFullDimension) + ")");
  for (std::uint32_t v = 0; v < g.vertex_count; ++v)
    if (g.deg(v) != static_cast<std::uint32_t>(p))
      throw ConfigError("vertex " + std::to_string(v) + " has degree " +
                        std::to_string(g.deg(v)) + ", expected " +
                        std::to_string(p) +
                        "; enable loop padding for irregular structures");

  FullWalk fw;
  fw.graph = g;
  fw.p = p;
  WalkOperator& op = fw.op;
  op.dim = dim;
  op.p = p;
  op.shift.assign(dim, -1);

  // Pair up the two stubs of every edge: the j-th occurrence of w in
  // adjacency[v] matches the j-th occurrence of v in adjacency[w].
  std::unordered_map<std::uint64_t,
                     std::pair<std::vector<std::int32_t>,
                               std::vector<std::int32_t>>>
      stubs;
  stubs.reserve(g.vertex_count * p / 2 + 1);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v)
    for (int k = 0; k < p; ++k) {
      std::uint32_t w = g.adjacency[v][k];
      std::int32_t idx = static_cast<std::int32_t>(v) * p + k;
      if (w == v) {
        op.shift[idx] = idx;
        continue;
      }
      std::uint64_t key = (static_cast<std::uint64_t>(std::min(v, w)) << 32) |
                          std::max(v, w);
      auto& [lo, hi] = stubs[key];
      (v < w ? lo : hi).push_back(idx);
    }
  for (auto& [key, pair] : stubs) {
    auto& [lo, hi] = pair;
    if (lo.size() != hi.size())
      throw NonUnitary("edge stubs are not paired consistently");
    for (std::size_t j = 0; j < lo.size(); ++j) {
      op.shift[lo[j]] = hi[j];
      op.shift[hi[j]] = lo[j];
    }
  }
  std::vector<char> hit(dim, 0);
  for (std::int32_t img : op.shift) {
    if (img < 0 || img >= dim || hit[img])
      throw NonUnitary("full shift is not a permutation");
    hit[img] = 1;
  }

  Eigen::MatrixXd grover =
      Eigen::MatrixXd::Constant(p, p, 2.0 / p) -
      Eigen::MatrixXd::Identity(p, p);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    if (v == g.target) continue;  // identity coin at the target
    std::int32_t base = static_cast<std::int32_t>(v) * p;
    op.blocks.push_back({base, base + p, grover});
  }

  op.initial = CVector::Zero(dim);
  for (int k = 0; k < p; ++k)
    op.initial[static_cast<std::int64_t>(g.start) * p + k] =
        1.0 / std::sqrt(static_cast<double>(p));
  for (int k = 0; k < p; ++k)
    op.target_states.push_back(static_cast<std::int32_t>(g.target) * p + k);
  return fw;
}

FullWalk build_full_walk(const WalkTopology& t) {
  WalkTopology c = t.canonical();
  ExplicitGraph g = build_explicit_graph(c, true);
  FullWalk fw = build_full_walk(g, degree(c));
  fw.graph = std::move(g);
  return fw;
}

CVector project_to_reduced(const FullWalk& fw, const ReducedBasis& basis,
                           const CVector& psi) {
  const WalkTopology& t = basis.topology;
  CVector out = CVector::Zero(static_cast<Eigen::Index>(basis.states.size()));
  for (std::uint32_t v = 0; v < fw.graph.vertex_count; ++v) {
    auto it = basis.position_of.find(fw.graph.coords[v]);
    if (it == basis.position_of.end())
      throw ConfigError("graph vertex missing from the reduced basis");
    const ReducedPosition& pos = basis.positions[it->second];
    for (int k = 0; k < fw.p; ++k) {
      std::uint32_t w = fw.graph.adjacency[v][k];
      Dir dir = w == v ? Dir::O
                       : classify_slot(t, fw.graph.coords[v],
                                       fw.graph.coords[w]);
      std::int32_t idx = pos.state[static_cast<int>(dir)];
      if (idx < 0) continue;  // dead slot at the target
      out[idx] += psi[static_cast<std::int64_t>(v) * fw.p + k];
    }
  }
  for (std::size_t i = 0; i < basis.states.size(); ++i) {
    const ReducedState& st = basis.states[i];
    const ReducedPosition& pos = basis.positions[st.pos];
    double orbit = mpz_get_d(pos.n_tilde.get_mpz_t()) *
                   mpz_get_d(pos.n[static_cast<int>(st.dir)].get_mpz_t());
    out[static_cast<Eigen::Index>(i)] /= std::sqrt(orbit);
  }
  return out;
}

double reduction_residual(const FullWalk& fw, const ReducedBasis& basis,
                          const CVector& psi) {
  CVector red = project_to_reduced(fw, basis, psi);
  double gap = psi.squaredNorm() - red.squaredNorm();
  return std::sqrt(std::max(0.0, gap));
}

}  // namespace hcwalk
