// Acceptance gate: one line per criterion, exit code = number of failures.
// Each check exercises the library through its public headers only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hcwalk/classical.hpp"
#include "hcwalk/errors.hpp"
#include "hcwalk/fullwalk.hpp"
#include "hcwalk/graph.hpp"
#include "hcwalk/rational.hpp"
#include "hcwalk/reduced.hpp"
#include "hcwalk/topology.hpp"
#include "hcwalk/walk.hpp"

using namespace hcwalk;

namespace {

constexpr std::int64_t kStepBudget = 10'000'000;

WalkTopology bare(int d, bool loops = false) {
  WalkTopology t;
  t.kind = Kind::Bare;
  t.d = d;
  t.self_loops = loops;
  return t;
}

WalkTopology tails(int d, int n, int q, bool loops = false) {
  WalkTopology t;
  t.kind = Kind::Tails;
  t.d = d;
  t.n = n;
  t.q = q;
  t.self_loops = loops;
  return t;
}

WalkTopology concat(std::vector<int> dims, WalkMode mode,
                    bool loops = false) {
  WalkTopology t;
  t.kind = Kind::Concatenated;
  t.dims = std::move(dims);
  t.mode = mode;
  t.self_loops = loops;
  return t;
}

constexpr WalkMode kCentral = WalkMode::CentralCornerToCorner;
constexpr WalkMode kPenetrate = WalkMode::PenetrateFull;

// Shared quantum instance matrix: everything the walk engine is expected to
// converge on at workstation scale.
std::vector<WalkTopology> quantum_matrix() {
  std::vector<WalkTopology> set;
  for (int d = 1; d <= 15; ++d) set.push_back(bare(d, true));
  for (int d = 1; d <= 10; ++d)
    for (int n = 1; n <= 10; ++n)
      for (int q = 1; q <= 3; ++q) set.push_back(tails(d, n, q, true));
  for (WalkMode mode : {kCentral, kPenetrate}) {
    set.push_back(concat({2, 2}, mode, true));
    set.push_back(concat({2, 2, 2}, mode, true));
  }
  return set;
}

bool fail(const std::string& why) {
  std::printf("        %s\n", why.c_str());
  return false;
}

// ---- criteria ----------------------------------------------------------

bool classical_oracle_equality() {
  std::vector<WalkTopology> set;
  for (int d = 1; d <= 6; ++d) set.push_back(bare(d));
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 3; ++n)
      for (int q = 1; q <= 3; ++q) set.push_back(tails(d, n, q));
  set.push_back(concat({2, 2}, kCentral));
  set.push_back(concat({2, 2, 2}, kCentral));
  set.push_back(concat({2, 2}, kPenetrate));
  for (const WalkTopology& t : set) {
    Rational closed = classical_hitting(t);
    Rational solved = markov_first_passage(build_explicit_graph(t, true));
    if (closed != solved)
      return fail(t.to_string() + ": " + to_string(closed) +
                  " != " + to_string(solved));
  }
  return true;
}

bool last_step_cost() {
  for (int d = 1; d <= 20; ++d) {
    BigInt expect = pow2(d) - 1;
    if (tau_uniform_at(d, 0, d - 1) != Rational(expect))
      return fail("d=" + std::to_string(d));
  }
  return true;
}

bool small_cube_spot_values() {
  const int expect[] = {1, 4, 10};
  for (int d = 1; d <= 3; ++d) {
    if (classical_hitting(bare(d)) != expect[d - 1])
      return fail("closed form at d=" + std::to_string(d));
    if (markov_first_passage(build_explicit_graph(bare(d), true)) !=
        expect[d - 1])
      return fail("solver at d=" + std::to_string(d));
  }
  return true;
}

std::vector<double> trace_of(const WalkOperator& op, int steps) {
  std::vector<double> trace;
  std::vector<double> sentinel{2.0};
  run_measured_walk(op, sentinel, steps, &trace);
  return trace;
}

bool reduction_equivalence() {
  for (const WalkTopology& t : {tails(3, 2, 2, true),
                                concat({2, 2}, kCentral, true),
                                concat({2, 2}, kPenetrate, true)}) {
    FullWalk fw = build_full_walk(t);
    WalkOperator red = build_operator(build_basis(t));
    std::vector<double> full = trace_of(fw.op, 200);
    std::vector<double> reduced = trace_of(red, 200);
    if (full.size() != reduced.size())
      return fail(t.to_string() + ": trace lengths differ");
    for (std::size_t i = 0; i < full.size(); ++i)
      if (std::abs(full[i] - reduced[i]) >= 1e-10)
        return fail(t.to_string() + " at step " + std::to_string(i + 1));
  }
  return true;
}

bool exact_vs_truncated_gap(const WalkTopology& t, double eps,
                            std::int64_t budget) {
  if (reduced_dimension(t) > 500) return true;
  WalkOperator op = build_operator(build_basis(t));
  double exact = expected_hitting_exact(op);
  HittingSummary h = run_measured_walk(op, 1 - eps, budget);
  if (!h.converged) return fail(t.to_string() + ": walk did not converge");
  double rel = std::abs(exact - h.tau_q) / exact;
  if (!(rel < 5e-3))
    return fail(t.to_string() + ": relative gap " + std::to_string(rel));
  return true;
}

bool exact_vs_truncated() {
  // The truncated sum undershoots the exact one by roughly eps times the
  // crossing step, so a 1e-6 reference is only meaningful while crossings
  // stay short. Structures with million-step arrival tails are held to the
  // same tolerance against a 1e-9 truncation, which keeps the reference
  // bias two orders below the bound instead of letting it dominate. Deeper
  // thresholds are not reachable there: per-step flow hits the double
  // precision floor and the stall guard fires first.
  for (int d = 1; d <= 15; ++d)
    if (!exact_vs_truncated_gap(bare(d, true), 1e-6, kStepBudget))
      return false;
  for (int d = 1; d <= 5; ++d)
    for (int n = 1; n <= 10; ++n)
      for (int q = 1; q <= 3; ++q)
        if (!exact_vs_truncated_gap(tails(d, n, q, true), 1e-6, kStepBudget))
          return false;
  for (WalkMode mode : {kCentral, kPenetrate}) {
    if (!exact_vs_truncated_gap(concat({2, 2}, mode, true), 1e-6,
                                kStepBudget))
      return false;
    if (!exact_vs_truncated_gap(concat({2, 2, 2}, mode, true), 1e-6,
                                kStepBudget))
      return false;
  }
  for (int d : {6, 8, 10})
    for (int n : {1, 5, 10})
      for (int q : {1, 3})
        if (!exact_vs_truncated_gap(tails(d, n, q, true), 1e-9,
                                    40'000'000))
          return false;
  return true;
}

bool short_time_crossing_floor() {
  for (int d = 5; d <= 12; ++d) {
    WalkOperator op = build_operator(build_basis(bare(d, true)));
    auto horizon = static_cast<std::int64_t>(
        std::ceil(3.14159265358979323846 * d));
    std::vector<double> trace = trace_of(op, static_cast<int>(horizon));
    double cum = 0.0;
    for (double p : trace) cum += p;
    double floor = 1.0 / (d * std::log(d) * std::log(d));
    if (!(cum >= floor))
      return fail("d=" + std::to_string(d) + ": " + std::to_string(cum) +
                  " < " + std::to_string(floor));
  }
  return true;
}

bool threshold_convergence() {
  const double eps = 1e-4;
  std::vector<double> thresholds{1 - eps, 1 - eps / 2};
  for (const WalkTopology& t : quantum_matrix()) {
    WalkOperator op = build_operator(build_basis(t));
    std::vector<HittingSummary> h =
        run_measured_walk(op, thresholds, kStepBudget);
    if (!h[0].converged || !h[1].converged)
      return fail(t.to_string() + ": threshold not reached");
    if (!convergence_check(h[0].tau_q, h[1].tau_q))
      return fail(t.to_string() + ": log gap too wide");
  }
  return true;
}

bool widening_gap() {
  double last_ratio = 0.0;
  double first_ratio = 0.0;
  for (int d = 4; d <= 10; d += 2) {
    double classical = to_double(classical_hitting(tails(d, 10, 1)));
    WalkOperator op = build_operator(build_basis(tails(d, 10, 1, true)));
    HittingSummary h = run_measured_walk(op, 1 - 1e-4, kStepBudget);
    if (!h.converged) return fail("d=" + std::to_string(d) + " not converged");
    double ratio = classical / h.tau_q;
    if (d == 4) first_ratio = ratio;
    if (!(ratio > last_ratio))
      return fail("ratio not increasing at d=" + std::to_string(d));
    last_ratio = ratio;
  }
  return last_ratio > 4 * first_ratio ||
         fail("gap grew only " + std::to_string(last_ratio / first_ratio) +
              "x");
}

bool property_suite() {
  std::vector<WalkTopology> set = {bare(6, true), tails(3, 2, 2, true),
                                   tails(5, 1, 4, true),
                                   concat({2, 2}, kCentral, true),
                                   concat({2, 2, 2}, kPenetrate, true)};
  for (const WalkTopology& t : set) {
    ReducedBasis basis = build_basis(t);
    WalkOperator op = build_operator(basis);

    if (static_cast<long long>(basis.states.size()) != reduced_dimension(t))
      return fail(t.to_string() + ": dimension formula");
    if (op.unitarity_defect() > 1e-12)
      return fail(t.to_string() + ": unitarity");

    BigInt slots = 0;
    for (const ReducedPosition& pos : basis.positions) {
      BigInt kept = 0;
      for (int k = 0; k < 5; ++k)
        if (pos.state[k] >= 0) kept += pos.n[k];
      slots += pos.n_tilde * (kept + pos.dead_slots);
    }
    BigInt full = basis.p * explicit_vertex_count(t, true);
    if (slots != full) return fail(t.to_string() + ": slot census");

    CVector psi = op.initial;
    double cum = 0.0, last = 0.0, tau_acc = 0.0, tau_at_tc = 0.0;
    std::int64_t t_c = -1;
    for (int step = 1; step <= 300; ++step) {
      psi = op.apply(psi);
      double p_t = 0.0;
      for (std::int32_t s : op.target_states) {
        p_t += std::norm(psi[s]);
        psi[s] = 0.0;
      }
      cum += p_t;
      tau_acc += step * p_t;
      if (cum < last - 1e-15) return fail(t.to_string() + ": monotonicity");
      last = cum;
      if (std::abs(cum + psi.squaredNorm() - 1.0) > 1e-10)
        return fail(t.to_string() + ": conservation at step " +
                    std::to_string(step));
      if (t_c < 0 && cum >= 0.9) {
        t_c = step;
        tau_at_tc = tau_acc;
      }
    }
    if (t_c > 0 && !(tau_at_tc <= static_cast<double>(t_c)))
      return fail(t.to_string() + ": tau_q above T_c");
  }
  return true;
}

bool dark_state_path() {
  ExplicitGraph g;
  g.vertex_count = 4;
  g.adjacency = {{1, 0, 0}, {0, 2, 3}, {1, 2, 2}, {1, 3, 3}};
  g.start = 0;
  g.target = 2;
  for (int v = 0; v < 4; ++v) g.coords.push_back({v, {}});
  WalkOperator op = build_full_walk(g, 3).op;

  HittingSummary h = run_measured_walk(op, 1 - 1e-4, 1'000'000);
  if (!h.dark) return fail("dark flag not raised");
  if (h.converged || h.t_c)
    return fail("crossing reported despite the trapped sector");
  if (!(h.p_total < 1.0)) return fail("arrival probability reached 1");

  ConditionalHitting c = conditional_hitting(op, 1'000'000);
  if (!std::isfinite(c.tilde_tau) || !(c.tilde_tau > 0))
    return fail("conditional mean not finite");
  if (!(c.p_total < 1.0)) return fail("conditional mass reached 1");

  try {
    expected_hitting_exact(op);
    return fail("spectral mean did not flag the trapped sector");
  } catch (const DarkStateDetected&) {
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* text;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form classical hitting times equal the exact solver",
       classical_oracle_equality},
      {2, "one step short of the far corner costs 2^d - 1",
       last_step_cost},
      {3, "smallest cubes hit in 1, 4, 10 expected steps",
       small_cube_spot_values},
      {4, "reduced and explicit walks share the arrival record to 1e-10",
       reduction_equivalence},
      {5, "spectral hitting times match measured runs within 0.5%",
       exact_vs_truncated},
      {6, "crossing probability at pi*d steps clears 1/(d ln^2 d)",
       short_time_crossing_floor},
      {7, "tau(eps) is log-converged at eps = 1e-4",
       threshold_convergence},
      {8, "the classical/quantum gap widens with dimension",
       widening_gap},
      {9, "unitarity, conservation, monotonicity, census identities",
       property_suite},
      {10, "trapped sectors surface as dark flags and finite conditionals",
       dark_state_path},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string blew;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      blew = e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (!blew.empty()) std::printf("        threw: %s\n", blew.c_str());
    std::printf("[%s] %2d. %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.number,
                c.text, secs);
    if (!ok) ++failures;
  }
  return failures;
}
