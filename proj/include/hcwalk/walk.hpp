#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hcwalk/reduced.hpp"

namespace hcwalk {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// One step U = S * C of a coined walk in some orthonormal basis. The coin
/// acts blockwise (contiguous index ranges, one dense block each); the shift
/// is a permutation of basis indices. Target-range indices are listed so the
/// measured walk can project on them.
struct WalkOperator {
  std::int64_t dim = 0;
  int p = 0;
  std::vector<std::int32_t> shift;  // shift[i] = image of basis index i
  struct Block {
    std::int32_t begin = 0;
    std::int32_t end = 0;          // one past last index
    Eigen::MatrixXd coin;          // (end-begin) x (end-begin), real
  };
  std::vector<Block> blocks;
  CVector initial;                  // normalized start state
  std::vector<std::int32_t> target_states;  // indices the target projector hits

  CVector apply(const CVector& psi) const;       // U psi
  CVector apply_coin(const CVector& psi) const;  // C psi
  /// Max-entry defect of U^dagger U - I. The shift is a permutation, so
  /// this reduces to the blockwise coin defect and is exact.
  double unitarity_defect() const;
};

/// Build U for the symmetry-reduced walk of a topology.
WalkOperator build_operator(const ReducedBasis& basis);

/// Result of iterating the measured walk.
struct HittingSummary {
  std::optional<std::int64_t> t_c;  // first t with cumulative >= threshold
  double tau_q = 0.0;               // sum of t * p(t) up to t_c
  double p_total = 0.0;             // cumulative arrival probability seen
  std::int64_t steps_run = 0;
  bool converged = false;           // threshold reached
  bool dark = false;                // arrival flow stalled below threshold
};

/// Iterate the measured walk: each step applies U, records the probability
/// that lands on the target, then projects it out. Stops at the first step
/// where cumulative probability reaches `threshold`, or reports dark=true
/// when the per-step arrival flow stalls below it. `max_steps` bounds the
/// iteration outright.
HittingSummary run_measured_walk(const WalkOperator& op, double threshold,
                                 std::int64_t max_steps);

/// Same walk run once against several thresholds (ascending). Optionally
/// records the per-step arrival probabilities.
std::vector<HittingSummary> run_measured_walk(
    const WalkOperator& op, const std::vector<double>& thresholds,
    std::int64_t max_steps, std::vector<double>* arrival_trace = nullptr);

/// Conditional hitting time sum(t p(t)) / sum(p(t)) over `steps` steps,
/// together with the total arrival probability. Finite even when dark
/// states trap part of the initial state.
struct ConditionalHitting {
  double tilde_tau = 0.0;
  double p_total = 0.0;
};
ConditionalHitting conditional_hitting(const WalkOperator& op,
                                       std::int64_t steps);

/// Exact expected hitting time sum_t t p(t) of the measured walk, computed
/// in closed form from the spectrum of the surviving-evolution operator
/// N = Pi_0 U Pi_0 restricted to the Krylov space of the start state.
/// Throws DarkStateDetected when N keeps an eigenvalue on the unit circle,
/// i.e. part of the start state never reaches the target.
double expected_hitting_exact(const WalkOperator& op);

/// Convergence heuristic for tau(eps): accept when
/// |ln tau(eps) - ln tau(eps/2)| < 0.1.
bool convergence_check(double tau_eps, double tau_half_eps);

}  // namespace hcwalk
