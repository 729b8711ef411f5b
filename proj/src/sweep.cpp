#include "hcwalk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "hcwalk/classical.hpp"
#include "hcwalk/errors.hpp"
#include "hcwalk/fullwalk.hpp"
#include "hcwalk/graph.hpp"
#include "hcwalk/reduced.hpp"

namespace hcwalk {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_seconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string join_dims(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

void evaluate_point(const SweepPlan& plan, RowResult& row) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    const WalkTopology& t = row.point.topology;
    row.d_red = reduced_dimension(t);

    if (plan.engine != Engine::Quantum) {
      row.tau_classical = classical_hitting(t);
      if (plan.oracle) {
        ExplicitGraph g = build_explicit_graph(t, false);
        Rational brute = markov_first_passage(g);
        if (brute != *row.tau_classical)
          row.error = "classical mismatch: closed form " +
                      to_string(*row.tau_classical) + ", first passage " +
                      to_string(brute);
      }
    }

    if (plan.engine != Engine::Classical && row.error.empty()) {
      WalkTopology qt = t;
      qt.self_loops = true;  // the coined walk needs the regularized graph
      ReducedBasis basis = build_basis(qt);
      WalkOperator op = build_operator(basis);
      double p0 = 1.0 - row.point.eps;
      if (plan.verify_convergence) {
        auto sums = run_measured_walk(
            op, {p0, 1.0 - row.point.eps / 2}, plan.max_steps);
        row.quantum = sums[0];
        row.converged = sums[0].converged && sums[1].converged &&
                        convergence_check(sums[0].tau_q, sums[1].tau_q);
      } else {
        row.quantum = run_measured_walk(op, p0, plan.max_steps);
      }
      if (plan.oracle && row.error.empty()) {
        FullWalk fw = build_full_walk(qt);
        std::int64_t steps = std::min<std::int64_t>(200, plan.max_steps);
        CVector red = op.initial;
        CVector full = fw.op.initial;
        for (std::int64_t step = 1; step <= steps; ++step) {
          red = op.apply(red);
          full = fw.op.apply(full);
          double pr = 0.0, pf = 0.0;
          for (std::int32_t i : op.target_states) {
            pr += std::norm(red[i]);
            red[i] = 0.0;
          }
          for (std::int32_t i : fw.op.target_states) {
            pf += std::norm(full[i]);
            full[i] = 0.0;
          }
          if (std::abs(pr - pf) >= 1e-10) {
            row.error = "quantum mismatch at step " + std::to_string(step) +
                        ": reduced " + fmt_double(pr) + ", full " +
                        fmt_double(pf);
            break;
          }
        }
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
}

}  // namespace

std::vector<RowResult> run_plan(const SweepPlan& plan) {
  std::vector<RowResult> rows(plan.points.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].point = plan.points[i];

  unsigned jobs = plan.jobs > 0 ? static_cast<unsigned>(plan.jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, rows.size() ? rows.size() : 1);

  if (jobs <= 1) {
    for (RowResult& row : rows) evaluate_point(plan, row);
    return rows;
  }

  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= rows.size()) return;
        evaluate_point(plan, rows[i]);
      }
    });
  for (std::thread& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& os, const std::vector<RowResult>& rows) {
  os << "kind,d,n,q,dims,mode,eps,tau_classical,tau_q,t_c,p_total,"
        "D_red,dark,converged,seconds,error\n";
  for (const RowResult& row : rows) {
    const WalkTopology& t = row.point.topology;
    std::vector<std::string> f(16);
    switch (t.kind) {
      case Kind::Bare:
        f[0] = "bare";
        f[1] = std::to_string(t.d);
        break;
      case Kind::Tails:
        f[0] = "tails";
        f[1] = std::to_string(t.d);
        f[2] = std::to_string(t.n);
        f[3] = std::to_string(t.q);
        break;
      case Kind::Concatenated:
        f[0] = "concat";
        f[4] = join_dims(t.dims);
        f[5] = t.mode == WalkMode::CentralCornerToCorner ? "central"
                                                         : "penetrate";
        break;
    }
    f[6] = fmt_double(row.point.eps);
    if (row.tau_classical) f[7] = to_string(*row.tau_classical);
    if (row.quantum) {
      f[8] = fmt_double(row.quantum->tau_q);
      if (row.quantum->t_c) f[9] = std::to_string(*row.quantum->t_c);
      f[10] = fmt_double(row.quantum->p_total);
      f[12] = row.quantum->dark ? "true" : "false";
    }
    if (row.d_red > 0) f[11] = std::to_string(row.d_red);
    if (row.converged)
      f[13] = *row.converged ? "true" : "false";
    else if (row.quantum)
      f[13] = row.quantum->converged ? "true" : "false";
    f[14] = fmt_seconds(row.seconds);
    f[15] = row.error;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) os << ',';
      os << csv_quote(f[i]);
    }
    os << '\n';
  }
}

namespace {

struct Curve {
  std::string file;
  std::string xlabel, ylabel;
  std::vector<std::pair<double, std::string>> rows;
};

void write_curves(const std::string& outdir, std::vector<Curve>& curves,
                  std::vector<std::string>& files) {
  std::filesystem::create_directories(outdir);
  for (Curve& c : curves) {
    std::ofstream os(std::filesystem::path(outdir) / c.file);
    if (!os) throw ConfigError("cannot write " + c.file + " in " + outdir);
    os << c.xlabel << ',' << c.ylabel << '\n';
    for (auto& [x, y] : c.rows) os << fmt_double(x) << ',' << y << '\n';
    files.push_back(c.file);
  }
}

std::vector<SweepPoint> one_eps(std::vector<WalkTopology> topologies,
                                double eps) {
  std::vector<SweepPoint> points;
  for (WalkTopology& t : topologies) points.push_back({std::move(t), eps});
  return points;
}

constexpr double kFigureEps = 1e-4;

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig2", "fig4", "fig6", "fig7", "fig8", "fig9"};
}

std::vector<std::string> figure(const std::string& name,
                                const std::string& scale,
                                const std::string& outdir, int jobs,
                                std::int64_t max_steps) {
  bool desk = scale == "desk";
  if (!desk && scale != "full")
    throw ConfigError("unknown scale '" + scale + "' (desk or full)");

  std::vector<std::string> files;
  std::vector<Curve> curves;

  auto run = [&](std::vector<WalkTopology> topologies, Engine engine) {
    SweepPlan plan;
    plan.points = one_eps(std::move(topologies), kFigureEps);
    plan.engine = engine;
    plan.max_steps = max_steps;
    plan.jobs = jobs;
    auto rows = run_plan(plan);
    for (const RowResult& row : rows)
      if (!row.ok())
        throw ConfigError("point " + row.point.topology.to_string() +
                          " failed: " + row.error);
    return rows;
  };

  if (name == "fig2") {
    // Threshold sweep: hitting time and its truncated mean as the residual
    // eps shrinks, one run per cube arity with stacked thresholds.
    std::vector<int> ds = desk ? std::vector<int>{5, 10, 15}
                               : std::vector<int>{5, 10, 15, 20, 25};
    std::vector<double> eps_grid;
    for (int k = 2; k <= 8; ++k) eps_grid.push_back(std::pow(10.0, -k / 2.0));
    for (int d : ds) {
      WalkTopology t;
      t.kind = Kind::Bare;
      t.d = d;
      t.self_loops = true;
      WalkOperator op = build_operator(build_basis(t));
      std::vector<double> thresholds;
      for (double eps : eps_grid) thresholds.push_back(1.0 - eps);
      auto sums = run_measured_walk(op, thresholds, max_steps);
      Curve tc{"fig2_tc_d" + std::to_string(d) + ".csv", "eps", "t_c", {}};
      Curve tq{"fig2_tauq_d" + std::to_string(d) + ".csv", "eps", "tau_q", {}};
      for (std::size_t i = 0; i < sums.size(); ++i) {
        if (!sums[i].converged) continue;
        tc.rows.push_back({eps_grid[i],
                           std::to_string(*sums[i].t_c)});
        tq.rows.push_back({eps_grid[i], fmt_double(sums[i].tau_q)});
      }
      curves.push_back(std::move(tc));
      curves.push_back(std::move(tq));
    }
  } else if (name == "fig4") {
    std::vector<std::pair<int, int>> pairs =
        desk ? std::vector<std::pair<int, int>>{{10, 1}}
             : std::vector<std::pair<int, int>>{{50, 5}, {30, 3}, {10, 1}};
    int dmax = desk ? 12 : 50;
    int dstep = desk ? 1 : 2;
    for (auto [n, q] : pairs) {
      std::vector<WalkTopology> topologies;
      for (int d = 2; d <= dmax; d += dstep) {
        WalkTopology t;
        t.kind = Kind::Tails;
        t.d = d;
        t.n = n;
        t.q = q;
        t.self_loops = true;
        topologies.push_back(std::move(t));
      }
      auto rows = run(std::move(topologies), Engine::Both);
      std::string suffix =
          "_n" + std::to_string(n) + "_q" + std::to_string(q) + ".csv";
      Curve cq{"fig4_quantum" + suffix, "d", "tau_q", {}};
      Curve cc{"fig4_classical" + suffix, "d", "tau_classical", {}};
      Curve cd{"fig4_dred" + suffix, "d", "D_red", {}};
      for (const RowResult& row : rows) {
        double d = row.point.topology.d;
        cq.rows.push_back({d, fmt_double(row.quantum->tau_q)});
        cc.rows.push_back({d, fmt_double(to_double(*row.tau_classical))});
        cd.rows.push_back({d, std::to_string(row.d_red)});
      }
      curves.push_back(std::move(cq));
      curves.push_back(std::move(cc));
      if (n == 10 && q == 1) curves.push_back(std::move(cd));
    }
  } else if (name == "fig6" || name == "fig7") {
    bool vary_n = name == "fig6";
    std::vector<std::pair<int, int>> pairs =
        vary_n ? (desk ? std::vector<std::pair<int, int>>{{5, 10}}
                       : std::vector<std::pair<int, int>>{
                             {15, 20}, {10, 15}, {5, 10}})
               : (desk ? std::vector<std::pair<int, int>>{{5, 25}}
                       : std::vector<std::pair<int, int>>{
                             {15, 75}, {10, 50}, {5, 25}});
    for (auto [d, fixed] : pairs) {
      std::vector<WalkTopology> topologies;
      std::vector<int> xs;
      if (vary_n)
        for (int n = desk ? 1 : 5; n <= (desk ? 10 : 50); n += desk ? 1 : 5)
          xs.push_back(n);
      else
        for (int q = 1; q <= (desk ? 6 : 20); ++q) xs.push_back(q);
      for (int x : xs) {
        WalkTopology t;
        t.kind = Kind::Tails;
        t.d = d;
        t.n = vary_n ? x : fixed;
        t.q = vary_n ? fixed : x;
        t.self_loops = true;
        topologies.push_back(std::move(t));
      }
      auto rows = run(std::move(topologies), Engine::Quantum);
      std::string suffix =
          "_d" + std::to_string(d) +
          (vary_n ? "_q" : "_n") + std::to_string(fixed) + ".csv";
      Curve cq{name + "_quantum" + suffix, vary_n ? "n" : "q", "tau_q", {}};
      for (std::size_t i = 0; i < rows.size(); ++i)
        cq.rows.push_back({static_cast<double>(xs[i]),
                           fmt_double(rows[i].quantum->tau_q)});
      curves.push_back(std::move(cq));
    }
  } else if (name == "fig8" || name == "fig9") {
    bool central = name == "fig8";
    std::vector<WalkTopology> topologies;
    std::vector<int> xs;
    if (central) {
      for (int m = 1; m <= (desk ? 5 : 7); ++m) xs.push_back(m);
      for (int m : xs) {
        WalkTopology t;
        t.kind = Kind::Concatenated;
        t.dims.assign(m + 1, 2);
        t.mode = WalkMode::CentralCornerToCorner;
        topologies.push_back(std::move(t));
      }
    } else {
      for (int d = 2; d <= (desk ? 8 : 16); ++d) xs.push_back(d);
      for (int d : xs) {
        WalkTopology t;
        t.kind = Kind::Concatenated;
        t.dims = {d, d};
        t.mode = WalkMode::PenetrateFull;
        topologies.push_back(std::move(t));
      }
    }
    auto rows = run(std::move(topologies), Engine::Both);
    std::string x = central ? "m" : "d";
    Curve cq{name + "_quantum.csv", x, "tau_q", {}};
    Curve cc{name + "_classical.csv", x, "tau_classical", {}};
    Curve cd{name + "_dred.csv", x, "D_red", {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double xv = xs[i];
      cq.rows.push_back({xv, fmt_double(rows[i].quantum->tau_q)});
      cc.rows.push_back({xv, fmt_double(to_double(*rows[i].tau_classical))});
      cd.rows.push_back({xv, std::to_string(rows[i].d_red)});
    }
    curves.push_back(std::move(cq));
    curves.push_back(std::move(cc));
    curves.push_back(std::move(cd));
  } else {
    throw ConfigError("unknown figure '" + name + "'");
  }

  write_curves(outdir, curves, files);
  return files;
}

}  // namespace hcwalk
