#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hcwalk/rational.hpp"
#include "hcwalk/topology.hpp"
#include "hcwalk/walk.hpp"

namespace hcwalk {

enum class Engine { Classical, Quantum, Both };

/// One (topology, eps) evaluation request.
struct SweepPoint {
  WalkTopology topology;
  double eps = 1e-4;
};

struct SweepPlan {
  std::vector<SweepPoint> points;
  Engine engine = Engine::Both;
  bool verify_convergence = false;  // also run eps/2, fill `converged`
  bool oracle = false;              // cross-check against brute-force engines
  std::int64_t max_steps = 10'000'000;
  int jobs = 0;                     // 0 = hardware concurrency
};

/// One CSV row. Fields that an engine did not produce stay empty.
struct RowResult {
  SweepPoint point;
  std::optional<Rational> tau_classical;
  std::optional<HittingSummary> quantum;
  std::optional<bool> converged;
  long long d_red = 0;
  double seconds = 0.0;
  std::string error;  // nonempty iff this point failed

  bool ok() const { return error.empty(); }
};

std::vector<RowResult> run_plan(const SweepPlan& plan);

/// Header `kind,d,n,q,dims,mode,eps,tau_classical,tau_q,t_c,p_total,
/// D_red,dark,converged,seconds,error` then one row per result, in plan
/// order. Deterministic apart from the seconds column.
void write_csv(std::ostream& os, const std::vector<RowResult>& rows);

/// Named plot-data reproductions. Each writes one CSV per curve into
/// `outdir` and returns the file names. `scale` is "desk" or "full";
/// desk keeps every curve within workstation budgets.
std::vector<std::string> figure(const std::string& name,
                                const std::string& scale,
                                const std::string& outdir, int jobs,
                                std::int64_t max_steps);

std::vector<std::string> figure_names();

}  // namespace hcwalk
