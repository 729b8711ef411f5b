#include "hcwalk/reduced.hpp"

#include <functional>

#include "hcwalk/errors.hpp"
#include "hcwalk/graph.hpp"

namespace hcwalk {

char dir_symbol(Dir d) {
  switch (d) {
    case Dir::R: return 'R';
    case Dir::L: return 'L';
    case Dir::D: return 'D';
    case Dir::U: return 'U';
    case Dir::O: return 'O';
  }
  return '?';
}

namespace {

// Weight profile of one orbit before target adjustment.
struct Row {
  VertexCoords coords;
  BigInt n_tilde;
  std::array<BigInt, 5> n{};
};

BigInt& at(std::array<BigInt, 5>& n, Dir d) { return n[static_cast<int>(d)]; }

}  // namespace

ReducedBasis build_basis(const WalkTopology& t) {
  WalkTopology c = t.canonical();
  if (!c.self_loops)
    throw ConfigError("the reduced walk runs on the loop-padded graph; "
                      "set loops=true");

  ReducedBasis basis;
  basis.topology = c;
  int p = degree(c);
  basis.p = p;

  std::vector<Row> rows;
  VertexCoords start_coords, target_coords;

  if (c.kind == Kind::Bare || c.kind == Kind::Tails) {
    int d = c.d, n = c.n, q = c.q;
    bool tails = c.kind == Kind::Tails;
    auto cube = [&](int x) {
      return tails ? VertexCoords{x, {0}} : VertexCoords{x, {}};
    };
    for (int x = 0; x <= d; ++x) {
      Row r{cube(x), binomial(d, x), {}};
      at(r.n, Dir::R) = d - x;
      at(r.n, Dir::L) = x;
      if (tails && x < d) at(r.n, Dir::D) = n;  // target tails are pruned
      rows.push_back(std::move(r));
    }
    if (tails)
      for (int x = 0; x < d; ++x)
        for (int s = 1; s <= q; ++s) {
          Row r{{x, {s}}, n * binomial(d, x), {}};
          at(r.n, Dir::U) = 1;
          if (s < q) {
            at(r.n, Dir::D) = 1;
            at(r.n, Dir::O) = p - 2;
          } else {
            at(r.n, Dir::O) = p - 1;
          }
          rows.push_back(std::move(r));
        }
    start_coords = cube(0);
    target_coords = cube(d);
  } else {
    int d0 = c.dims[0];
    int m = c.levels();
    bool central_walk = c.mode == WalkMode::CentralCornerToCorner;
    std::vector<int> above(m);
    for (int k = 1; k <= m; ++k) above[k - 1] = c.dims[k];

    // Emit the orbit at `coords` (depth `level`), then the orbits of its
    // attached chain. The coin slot census: cube moves R/L (or U onto the
    // anchor from weight d_k - 1), one child cube D below, loop padding O.
    std::function<void(VertexCoords, BigInt, int)> emit =
        [&](VertexCoords coords, BigInt n_tilde, int level) {
          int dk = level == 0 ? d0 : c.dims[level];
          int w = level == 0 ? coords.x : coords.s[level - 1];
          bool pruned_branch =
              central_walk && level == 0 && coords.x == d0;
          int child = level < m && !pruned_branch ? c.dims[level + 1] : 0;

          Row r{coords, n_tilde, {}};
          if (level > 0 && w == dk - 1)
            at(r.n, Dir::U) = 1;
          else
            at(r.n, Dir::R) = dk - w;
          at(r.n, Dir::L) = w;
          at(r.n, Dir::D) = child;
          int intrinsic = dk + (level < m ? c.dims[level + 1] : 0);
          if (level == 0 && pruned_branch) intrinsic = d0;
          at(r.n, Dir::O) = p - intrinsic;
          rows.push_back(std::move(r));

          if (child > 0)
            for (int s = 0; s < c.dims[level + 1]; ++s) {
              VertexCoords cc = coords;
              cc.s[level] = s;
              emit(std::move(cc), n_tilde * binomial(c.dims[level + 1], s),
                   level + 1);
            }
        };

    for (int x = 0; x <= d0; ++x)
      emit({x, above}, binomial(d0, x), 0);

    if (central_walk) {
      start_coords = {0, above};
      target_coords = {d0, above};
    } else {
      start_coords = {0, std::vector<int>(m, 0)};
      target_coords = {d0, std::vector<int>(m, 0)};
    }
  }

  // Materialize positions and states. The target orbit keeps only its
  // arrival directions; its remaining coin slots carry no amplitude and
  // are recorded as dead.
  for (Row& r : rows) {
    bool is_target = r.coords == target_coords;
    ReducedPosition pos;
    pos.coords = r.coords;
    pos.n_tilde = r.n_tilde;
    pos.n = r.n;
    pos.state.fill(-1);
    BigInt kept = 0;
    for (Dir dir : kAllDirs) {
      BigInt w = at(r.n, dir);
      if (w == 0) continue;
      if (is_target && dir == Dir::O) continue;
      kept += w;
      pos.state[static_cast<int>(dir)] =
          static_cast<std::int32_t>(basis.states.size());
      basis.states.push_back(
          {static_cast<std::int32_t>(basis.positions.size()), dir});
    }
    if (is_target)
      pos.dead_slots = static_cast<int>(BigInt(p - kept).get_si());
    else if (kept != p)
      throw NonUnitary("coin slots at " + std::to_string(pos.coords.x) +
                       " sum to " + kept.get_str() + ", expected " +
                       std::to_string(p));
    auto idx = static_cast<std::int32_t>(basis.positions.size());
    basis.position_of.emplace(pos.coords, idx);
    if (pos.coords == start_coords) basis.start_pos = idx;
    if (is_target) basis.target_pos = idx;
    basis.positions.push_back(std::move(pos));
  }

  if (basis.start_pos < 0 || basis.target_pos < 0)
    throw ConfigError("walk endpoints missing from the basis");
  return basis;
}

}  // namespace hcwalk
