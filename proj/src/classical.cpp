#include "hcwalk/classical.hpp"

#include <cstddef>

#include "hcwalk/errors.hpp"

namespace hcwalk {

Rational AlphaProfile::alpha(int x) const { return e.at(x) / d + 1; }

Rational return_time(const Rational& e, const Rational& l) {
  if (l == 0) throw ZeroLegs("return time undefined without legs");
  return e / l;
}

Rational tau_general_at(const AlphaProfile& profile, int x) {
  int d = profile.d;
  if (static_cast<int>(profile.e.size()) != d)
    throw ConfigError("alpha profile needs exactly d entries");
  if (x < 0 || x > d) throw ConfigError("weight out of range");
  // tau(x) = sum_{k=x}^{d-1} [sum_{i<=k} C(d,i) alpha_i] / C(d-1,k),
  // the telescoped solution of the line recursion.
  Rational tau = 0, inner = 0;
  for (int k = 0; k < d; ++k) {
    inner += Rational(binomial(d, k)) * profile.alpha(k);
    if (k >= x) tau += inner / Rational(binomial(d - 1, k));
  }
  return tau;
}

Rational tau_general(const AlphaProfile& profile) {
  return tau_general_at(profile, 0);
}

Rational tau_uniform_at(int d, const Rational& mean_e, int x) {
  AlphaProfile ordinary{d, std::vector<Rational>(d, 0)};
  return (mean_e / d + 1) * tau_general_at(ordinary, x);
}

Rational tau_uniform(int d, const Rational& mean_e) {
  return tau_uniform_at(d, mean_e, 0);
}

Rational f_e(int p, const std::vector<int>& dims) {
  return Rational(attachment_edge_count(dims, p));
}

Rational classical_hitting(const WalkTopology& t) {
  WalkTopology c = t.canonical();
  switch (c.kind) {
    case Kind::Bare:
      return tau_uniform(c.d, 0);
    case Kind::Tails:
      return tau_uniform(c.d, total_outgoing_edges(c, c.self_loops));
    case Kind::Concatenated: {
      if (c.self_loops)
        throw UnsupportedLoops(
            "no closed form for concatenated walks with self-loops");
      int m = c.levels();
      if (c.mode == WalkMode::CentralCornerToCorner)
        return tau_uniform(c.dims[0], f_e(1, c.dims));
      // Penetration decomposes into sequential crossings: up through
      // levels m..1, across the central cube, then down through levels
      // 1..m. Each descent starts at an anchor that sees the entire rest
      // of the structure as its attachment.
      Rational total_edges(structure_edge_sum(c.dims));
      Rational tau = 0;
      for (int k = m; k >= 1; --k)
        tau += tau_uniform(c.dims[k], f_e(k + 1, c.dims));
      tau += tau_uniform(c.dims[0], f_e(1, c.dims));
      for (int j = 1; j <= m; ++j) {
        AlphaProfile profile{c.dims[j],
                             std::vector<Rational>(c.dims[j], f_e(j + 1, c.dims))};
        profile.e[0] = total_edges - f_e(j, c.dims);
        tau += tau_general(profile);
      }
      return tau;
    }
  }
  return 0;
}

std::vector<Rational> first_passage_all(const ExplicitGraph& g,
                                        std::uint32_t target) {
  // Solve tau_v = 1 + sum_u P(v,u) tau_u, tau_target = 0, exactly.
  // Variables keep vertex order minus the target; pivots run from the
  // highest index down so that attachment vertices (appended last, nearly
  // tree-like) eliminate with almost no fill.
  if (g.vertex_count > kMaxSolveVertices)
    throw SizeExceeded("first passage system would hold " +
                       std::to_string(g.vertex_count) + "^2 rationals (limit " +
                       std::to_string(kMaxSolveVertices) + " vertices)");
  std::uint32_t nv = g.vertex_count;
  std::vector<std::int64_t> var_of(nv, -1);
  std::vector<std::uint32_t> vertex_of;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (v != target) {
      var_of[v] = static_cast<std::int64_t>(vertex_of.size());
      vertex_of.push_back(v);
    }
  std::size_t n = vertex_of.size();

  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> rhs(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = vertex_of[i];
    Rational dinv = Rational(1) / static_cast<long>(g.deg(v));
    a[i][i] = 1;
    for (std::uint32_t u : g.adjacency[v]) {
      if (u == target) continue;
      a[i][var_of[u]] -= dinv;
    }
  }

  for (std::size_t k = n; k-- > 1;) {
    if (a[k][k] == 0) throw SingularSystem("target unreachable");
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      a[i][k] = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (a[k][j] != 0) a[i][j] -= f * a[k][j];
      rhs[i] -= f * rhs[k];
    }
  }

  std::vector<Rational> sol(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) throw SingularSystem("target unreachable");
    Rational acc = rhs[k];
    for (std::size_t j = 0; j < k; ++j)
      if (a[k][j] != 0) acc -= a[k][j] * sol[j];
    sol[k] = acc / a[k][k];
  }

  std::vector<Rational> tau(nv, Rational(0));
  for (std::size_t i = 0; i < n; ++i) tau[vertex_of[i]] = sol[i];
  return tau;
}

Rational markov_first_passage(const ExplicitGraph& g) {
  return first_passage_all(g, g.target)[g.start];
}

Rational stationary_return(const ExplicitGraph& g, std::uint32_t v) {
  BigInt total = 0;
  for (std::uint32_t u = 0; u < g.vertex_count; ++u) total += g.deg(u);
  return Rational(total) / static_cast<long>(g.deg(v));
}

}  // namespace hcwalk
