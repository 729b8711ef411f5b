#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hcwalk/errors.hpp"
#include "hcwalk/sweep.hpp"
#include "hcwalk/topology.hpp"

using namespace hcwalk;

namespace {

constexpr const char* kHeader =
    "kind,d,n,q,dims,mode,eps,tau_classical,tau_q,t_c,p_total,D_red,dark,"
    "converged,seconds,error";

WalkTopology parse(const std::string& text) {
  return WalkTopology::parse(text);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      cur += c;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_for(const SweepPlan& plan) {
  std::ostringstream os;
  write_csv(os, run_plan(plan));
  return os.str();
}

std::string mask_seconds(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, out;
  bool header = true;
  while (std::getline(is, line)) {
    if (!header) {
      std::vector<std::string> f = split(line);
      REQUIRE(f.size() == 16);
      f[14] = "-";
      line.clear();
      for (std::size_t i = 0; i < f.size(); ++i)
        line += (i ? "," : "") + f[i];
    }
    header = false;
    out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("a classical row carries the exact rational") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=concat dims=2,2 mode=central loops=false"),
                         1e-4});
  plan.engine = Engine::Classical;
  plan.jobs = 1;
  std::string csv = csv_for(plan);
  std::istringstream is(csv);
  std::string header, row;
  REQUIRE(std::getline(is, header));
  CHECK(header == kHeader);
  REQUIRE(std::getline(is, row));
  std::vector<std::string> f = split(row);
  REQUIRE(f.size() == 16);
  CHECK(f[0] == "concat");
  CHECK(f[4] == "\"2,2\"");
  CHECK(f[5] == "central");
  CHECK(f[7] == "20");      // tau_classical
  CHECK(f[8].empty());      // no quantum engine ran
  CHECK(f[11] == "16");     // D_red
  CHECK(f[15].empty());     // no error
}

TEST_CASE("rows keep plan order and report engine output") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=bare d=2 loops=true"), 1e-4});
  plan.points.push_back({parse("kind=tails d=2 n=1 q=1 loops=true"), 1e-4});
  plan.engine = Engine::Both;
  plan.jobs = 2;
  std::vector<RowResult> rows = run_plan(plan);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].point.topology.kind == Kind::Bare);
  CHECK(rows[1].point.topology.kind == Kind::Tails);
  for (const RowResult& r : rows) {
    CAPTURE(r.point.topology.to_string());
    REQUIRE(r.ok());
    REQUIRE(r.tau_classical.has_value());
    REQUIRE(r.quantum.has_value());
    CHECK(r.quantum->converged);
    CHECK(r.d_red > 0);
  }
  CHECK(rows[0].tau_classical == Rational(4));
}

TEST_CASE("identical plans serialize identically apart from timing") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=tails d=3 n=2 q=1 loops=true"), 1e-3});
  plan.points.push_back({parse("kind=bare d=4 loops=true"), 1e-3});
  plan.engine = Engine::Both;
  plan.oracle = true;
  plan.jobs = 2;
  std::string a = mask_seconds(csv_for(plan));
  std::string b = mask_seconds(csv_for(plan));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) == kHeader);
}

TEST_CASE("a failing point reports its error and leaves the rest alone") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=bare d=2 loops=false"), 1e-4});
  plan.points.push_back(
      {parse("kind=concat dims=2,2 mode=central loops=true"), 1e-4});
  plan.engine = Engine::Classical;
  plan.jobs = 1;
  std::vector<RowResult> rows = run_plan(plan);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok());
  CHECK_FALSE(rows[1].ok());
  CHECK_FALSE(rows[1].error.empty());
  std::string csv;
  {
    std::ostringstream os;
    write_csv(os, rows);
    csv = os.str();
  }
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  std::vector<std::string> f = split(line);
  REQUIRE(f.size() == 16);
  CHECK_FALSE(f[15].empty());
}

TEST_CASE("oversized oracle requests fail as a row error") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=bare d=23 loops=false"), 1e-4});
  plan.engine = Engine::Classical;
  plan.oracle = true;
  plan.jobs = 1;
  std::vector<RowResult> rows = run_plan(plan);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].ok());
}

TEST_CASE("a step budget that is too small shows up as not converged") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=bare d=8 loops=true"), 1e-4});
  plan.engine = Engine::Quantum;
  plan.max_steps = 5;
  plan.jobs = 1;
  std::vector<RowResult> rows = run_plan(plan);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].ok());
  REQUIRE(rows[0].quantum.has_value());
  CHECK_FALSE(rows[0].quantum->converged);
  CHECK_FALSE(rows[0].quantum->t_c.has_value());
}

TEST_CASE("convergence verification fills the converged column") {
  SweepPlan plan;
  plan.points.push_back({parse("kind=bare d=3 loops=true"), 1e-4});
  plan.engine = Engine::Quantum;
  plan.verify_convergence = true;
  plan.jobs = 1;
  std::vector<RowResult> rows = run_plan(plan);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].ok());
  REQUIRE(rows[0].converged.has_value());
  CHECK(*rows[0].converged);
}

TEST_CASE("figure names are stable") {
  std::vector<std::string> names = figure_names();
  CHECK(names.size() == 6);
  CHECK_THROWS_AS(figure("fig3", "desk", "/tmp", 1, 1000), ConfigError);
  CHECK_THROWS_AS(figure("fig8", "poster", "/tmp", 1, 1000), ConfigError);
}

TEST_CASE("figure output lands in the requested directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hcwalk_fig_test";
  fs::remove_all(dir);
  std::vector<std::string> files =
      figure("fig8", "desk", dir.string(), 2, 10'000'000);
  REQUIRE(files.size() == 3);
  for (const std::string& name : files) {
    fs::path p = dir / name;
    CAPTURE(p.string());
    REQUIRE(fs::exists(p));
    std::ifstream in(p);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.find(',') != std::string::npos);
    std::string row;
    CHECK(std::getline(in, row));
  }
  fs::remove_all(dir);
}
