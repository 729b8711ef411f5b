#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcwalk/classical.hpp"
#include "hcwalk/errors.hpp"
#include "hcwalk/reduced.hpp"
#include "hcwalk/sweep.hpp"
#include "hcwalk/topology.hpp"
#include "hcwalk/walk.hpp"

namespace {

using hcwalk::ConfigError;

// Value lists: "4", "4,6,8", "1..5", "2..10:2".
std::vector<long long> expand_range(const std::string& text) {
  std::vector<long long> out;
  auto parse_int = [](const std::string& s) {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw ConfigError("bad integer '" + s + "'");
    return v;
  };
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    long long lo = parse_int(text.substr(0, dots));
    std::string rest = text.substr(dots + 2);
    long long step = 1;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_int(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    long long hi = parse_int(rest);
    if (step <= 0 || hi < lo)
      throw ConfigError("bad range '" + text + "'");
    for (long long v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw ConfigError("empty value list '" + text + "'");
  return out;
}

std::vector<double> expand_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw ConfigError("bad number '" + item + "'");
  }
  if (out.empty()) throw ConfigError("empty value list '" + text + "'");
  return out;
}

struct TopologyArgs {
  std::string kind;
  std::string d, n, q, m;  // range expressions
  std::string dims;        // explicit comma list
  int dims_equal = 0;
  std::string mode = "central";
  bool loops = false;
  std::string config_file;
};

void add_topology_flags(CLI::App* cmd, TopologyArgs& args) {
  cmd->add_option("--kind", args.kind, "bare, tails, or concat");
  cmd->add_option("--d", args.d, "central cube dimension (value or range)");
  cmd->add_option("--n", args.n, "tails per vertex (value or range)");
  cmd->add_option("--q", args.q, "tail length (value or range)");
  cmd->add_option("--dims", args.dims, "concat dimensions, e.g. 2,2,2");
  cmd->add_option("--dims-equal", args.dims_equal,
                  "concat: every level gets this dimension");
  cmd->add_option("--m", args.m,
                  "concat: number of attached levels (with --dims-equal)");
  cmd->add_option("--mode", args.mode, "concat walk: central or penetrate");
  cmd->add_flag("--loops", args.loops, "pad every vertex to full degree");
  cmd->add_option("--config", args.config_file,
                  "file of topology lines (kind=... d=... ...)");
}

std::vector<hcwalk::WalkTopology> build_topologies(const TopologyArgs& args) {
  std::vector<hcwalk::WalkTopology> out;
  if (!args.config_file.empty()) {
    std::ifstream in(args.config_file);
    if (!in) throw ConfigError("cannot open " + args.config_file);
    std::string line;
    while (std::getline(in, line)) {
      auto head = line.find_first_not_of(" \t");
      if (head == std::string::npos || line[head] == '#') continue;
      out.push_back(hcwalk::WalkTopology::parse(line));
    }
    if (out.empty())
      throw ConfigError("no topologies in " + args.config_file);
    return out;
  }

  if (args.kind.empty())
    throw ConfigError("give --kind or --config");
  hcwalk::WalkMode mode;
  if (args.mode == "central")
    mode = hcwalk::WalkMode::CentralCornerToCorner;
  else if (args.mode == "penetrate")
    mode = hcwalk::WalkMode::PenetrateFull;
  else
    throw ConfigError("unknown mode '" + args.mode + "'");

  if (args.kind == "bare") {
    if (args.d.empty()) throw ConfigError("bare needs --d");
    for (long long d : expand_range(args.d)) {
      hcwalk::WalkTopology t;
      t.kind = hcwalk::Kind::Bare;
      t.d = static_cast<int>(d);
      t.self_loops = args.loops;
      t.validate();
      out.push_back(std::move(t));
    }
  } else if (args.kind == "tails") {
    if (args.d.empty() || args.n.empty() || args.q.empty())
      throw ConfigError("tails needs --d, --n, --q");
    for (long long d : expand_range(args.d))
      for (long long n : expand_range(args.n))
        for (long long q : expand_range(args.q)) {
          hcwalk::WalkTopology t;
          t.kind = hcwalk::Kind::Tails;
          t.d = static_cast<int>(d);
          t.n = static_cast<int>(n);
          t.q = static_cast<int>(q);
          t.self_loops = args.loops;
          t.validate();
          out.push_back(std::move(t));
        }
  } else if (args.kind == "concat") {
    std::vector<std::vector<int>> dim_lists;
    if (!args.dims.empty()) {
      std::vector<int> dims;
      for (long long v : expand_range(args.dims))
        dims.push_back(static_cast<int>(v));
      dim_lists.push_back(std::move(dims));
    } else if (args.dims_equal > 0) {
      if (args.m.empty())
        throw ConfigError("--dims-equal needs --m");
      for (long long m : expand_range(args.m))
        dim_lists.emplace_back(static_cast<std::size_t>(m) + 1,
                               args.dims_equal);
    } else {
      throw ConfigError("concat needs --dims or --dims-equal with --m");
    }
    for (std::vector<int>& dims : dim_lists) {
      hcwalk::WalkTopology t;
      t.kind = hcwalk::Kind::Concatenated;
      t.dims = std::move(dims);
      t.mode = mode;
      t.self_loops = args.loops;
      t.validate();
      out.push_back(std::move(t));
    }
  } else {
    throw ConfigError("unknown kind '" + args.kind + "'");
  }
  return out;
}

struct RunArgs {
  TopologyArgs topology;
  std::string eps = "1e-4";
  std::string engine = "both";
  bool verify_convergence = false;
  bool oracle = false;
  bool exact = false;
  int jobs = 0;
  std::int64_t max_steps = 0;  // 0 = default/env
  std::string output;
};

std::int64_t resolve_max_steps(std::int64_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HCWALK_MAX_STEPS")) {
    std::string s = env;
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used == s.size() && v > 0) return v;
    } catch (...) {
    }
    throw ConfigError("HCWALK_MAX_STEPS must be a positive integer, got '" +
                      s + "'");
  }
  return 10'000'000;
}

int run_points(const RunArgs& args, hcwalk::Engine engine) {
  hcwalk::SweepPlan plan;
  for (hcwalk::WalkTopology& t : build_topologies(args.topology))
    for (double eps : expand_doubles(args.eps))
      plan.points.push_back({t, eps});
  plan.engine = engine;
  plan.verify_convergence = args.verify_convergence;
  plan.oracle = args.oracle;
  plan.jobs = args.jobs;
  plan.max_steps = resolve_max_steps(args.max_steps);

  auto rows = hcwalk::run_plan(plan);

  if (args.exact && engine != hcwalk::Engine::Classical) {
    for (const hcwalk::RowResult& row : rows) {
      if (!row.ok()) continue;
      hcwalk::WalkTopology qt = row.point.topology;
      qt.self_loops = true;
      try {
        double tau = hcwalk::expected_hitting_exact(
            hcwalk::build_operator(hcwalk::build_basis(qt)));
        std::cerr << "exact " << row.point.topology.to_string()
                  << " tau_h=" << tau << '\n';
      } catch (const hcwalk::DarkStateDetected& e) {
        std::cerr << "exact " << row.point.topology.to_string() << " "
                  << e.what() << '\n';
      }
    }
  }

  if (args.output.empty()) {
    hcwalk::write_csv(std::cout, rows);
  } else {
    std::ofstream os(args.output);
    if (!os) throw ConfigError("cannot write " + args.output);
    hcwalk::write_csv(os, rows);
  }
  for (const hcwalk::RowResult& row : rows)
    if (!row.ok()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hitting times of walks on hypercubes with local attachments"};
  app.require_subcommand(1);

  RunArgs classical_args, quantum_args, sweep_args;

  CLI::App* classical =
      app.add_subcommand("classical", "exact classical hitting times");
  add_topology_flags(classical, classical_args.topology);
  classical->add_option("--eps", classical_args.eps,
                        "recorded in the eps column");
  classical->add_flag("--oracle", classical_args.oracle,
                      "cross-check against the first-passage solver");
  classical->add_option("--jobs", classical_args.jobs, "parallel points");
  classical->add_option("--output", classical_args.output, "CSV file");

  CLI::App* quantum =
      app.add_subcommand("quantum", "simulated quantum hitting times");
  add_topology_flags(quantum, quantum_args.topology);
  quantum->add_option("--eps", quantum_args.eps,
                      "threshold residual(s), e.g. 1e-4 or 1e-2,1e-4");
  quantum->add_flag("--verify-convergence", quantum_args.verify_convergence,
                    "also run eps/2 and fill the converged column");
  quantum->add_flag("--oracle", quantum_args.oracle,
                    "cross-check against the unreduced walk");
  quantum->add_flag("--exact", quantum_args.exact,
                    "also print the closed-form expectation to stderr");
  quantum->add_option("--jobs", quantum_args.jobs, "parallel points");
  quantum->add_option("--max-steps", quantum_args.max_steps,
                      "step guard (default 10000000 or HCWALK_MAX_STEPS)");
  quantum->add_option("--output", quantum_args.output, "CSV file");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps");
  add_topology_flags(sweep, sweep_args.topology);
  sweep->add_option("--eps", sweep_args.eps, "threshold residual(s)");
  sweep->add_option("--engine", sweep_args.engine,
                    "classical, quantum, or both");
  sweep->add_flag("--verify-convergence", sweep_args.verify_convergence,
                  "also run eps/2 and fill the converged column");
  sweep->add_flag("--oracle", sweep_args.oracle,
                  "cross-check every point against brute-force engines");
  sweep->add_flag("--exact", sweep_args.exact,
                  "also print closed-form expectations to stderr");
  sweep->add_option("--jobs", sweep_args.jobs, "parallel points");
  sweep->add_option("--max-steps", sweep_args.max_steps,
                    "step guard (default 10000000 or HCWALK_MAX_STEPS)");
  sweep->add_option("--output", sweep_args.output, "CSV file");

  std::string fig_name, fig_scale = "desk", fig_outdir = ".";
  int fig_jobs = 0;
  std::int64_t fig_max_steps = 0;
  CLI::App* fig = app.add_subcommand("figure", "write plot data CSVs");
  fig->add_option("name", fig_name, "fig2, fig4, fig6, fig7, fig8, fig9")
      ->required();
  fig->add_option("--scale", fig_scale, "desk or full");
  fig->add_option("--outdir", fig_outdir, "output directory");
  fig->add_option("--jobs", fig_jobs, "parallel points");
  fig->add_option("--max-steps", fig_max_steps,
                  "step guard (default 10000000 or HCWALK_MAX_STEPS)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classical->parsed())
      return run_points(classical_args, hcwalk::Engine::Classical);
    if (quantum->parsed())
      return run_points(quantum_args, hcwalk::Engine::Quantum);
    if (sweep->parsed()) {
      hcwalk::Engine engine;
      if (sweep_args.engine == "classical")
        engine = hcwalk::Engine::Classical;
      else if (sweep_args.engine == "quantum")
        engine = hcwalk::Engine::Quantum;
      else if (sweep_args.engine == "both")
        engine = hcwalk::Engine::Both;
      else
        throw ConfigError("unknown engine '" + sweep_args.engine + "'");
      return run_points(sweep_args, engine);
    }
    if (fig->parsed()) {
      auto files = hcwalk::figure(fig_name, fig_scale, fig_outdir, fig_jobs,
                                  resolve_max_steps(fig_max_steps));
      for (const std::string& f : files) std::cout << f << '\n';
      return 0;
    }
  } catch (const hcwalk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
