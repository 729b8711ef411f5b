#include "hcwalk/graph.hpp"

#include <deque>
#include <functional>

#include "hcwalk/errors.hpp"

namespace hcwalk {

namespace {

int popcount(unsigned v) { return __builtin_popcount(v); }

struct Builder {
  ExplicitGraph g;

  std::uint32_t add_vertex(VertexCoords c) {
    g.adjacency.emplace_back();
    g.coords.push_back(std::move(c));
    return g.vertex_count++;
  }

  void add_edge(std::uint32_t a, std::uint32_t b) {
    g.adjacency[a].push_back(b);
    if (a != b) g.adjacency[b].push_back(a);
  }

  void pad_with_loops(int p) {
    for (std::uint32_t v = 0; v < g.vertex_count; ++v)
      while (g.deg(v) < static_cast<std::uint32_t>(p)) add_edge(v, v);
  }
};

}  // namespace

BigInt explicit_vertex_count(const WalkTopology& t,
                             bool prune_target_attachment) {
  WalkTopology c = t.canonical();
  switch (c.kind) {
    case Kind::Bare:
      return pow2(c.d);
    case Kind::Tails:
      return pow2(c.d) +
             (pow2(c.d) - (prune_target_attachment ? 1 : 0)) * c.n * c.q;
    case Kind::Concatenated: {
      int m = c.levels();
      BigInt per_subtree = 0;  // vertices of one level-1..m chain
      for (int k = m; k >= 1; --k)
        per_subtree = (pow2(c.dims[k]) - 1) * (1 + per_subtree);
      bool prune_central = prune_target_attachment &&
                           c.mode == WalkMode::CentralCornerToCorner;
      return pow2(c.dims[0]) +
             (pow2(c.dims[0]) - (prune_central ? 1 : 0)) * per_subtree;
    }
  }
  return 0;
}

ExplicitGraph build_explicit_graph(const WalkTopology& t,
                                   bool prune_target_attachment) {
  WalkTopology c = t.canonical();
  BigInt count = explicit_vertex_count(c, prune_target_attachment);
  if (count > kMaxGraphVertices)
    throw SizeExceeded("explicit graph would have " + count.get_str() +
                       " vertices (limit " +
                       std::to_string(kMaxGraphVertices) + ")");

  Builder b;
  int p = degree(c);

  if (c.kind == Kind::Bare || c.kind == Kind::Tails) {
    int d = c.d;
    unsigned nverts = 1u << d;
    for (unsigned v = 0; v < nverts; ++v)
      b.add_vertex({popcount(v), c.kind == Kind::Tails
                                     ? std::vector<int>{0}
                                     : std::vector<int>{}});
    for (unsigned v = 0; v < nverts; ++v)
      for (int i = 0; i < d; ++i)
        if (!(v >> i & 1u)) b.add_edge(v, v | (1u << i));
    b.g.start = 0;
    b.g.target = nverts - 1;
    if (c.kind == Kind::Tails) {
      for (unsigned v = 0; v < nverts; ++v) {
        if (prune_target_attachment && v == b.g.target) continue;
        int x = popcount(v);
        for (int tail = 0; tail < c.n; ++tail) {
          std::uint32_t prev = v;
          for (int s = 1; s <= c.q; ++s) {
            std::uint32_t w = b.add_vertex({x, {s}});
            b.add_edge(prev, w);
            prev = w;
          }
        }
      }
    }
  } else {
    int d0 = c.dims[0];
    int m = c.levels();
    unsigned nverts = 1u << d0;
    std::vector<int> above(m);  // s_k = d_k for every level
    for (int k = 1; k <= m; ++k) above[k - 1] = c.dims[k];
    for (unsigned v = 0; v < nverts; ++v) b.add_vertex({popcount(v), above});
    for (unsigned v = 0; v < nverts; ++v)
      for (int i = 0; i < d0; ++i)
        if (!(v >> i & 1u)) b.add_edge(v, v | (1u << i));

    // Attach the level-k cube whose all-ones corner is `anchor`; every
    // other corner is a fresh vertex, recursively decorated.
    std::function<void(std::uint32_t, int)> attach =
        [&](std::uint32_t anchor, int k) {
          int dk = c.dims[k];
          unsigned full = (1u << dk) - 1;
          std::vector<std::uint32_t> local(full + 1);
          local[full] = anchor;
          for (unsigned bvec = 0; bvec < full; ++bvec) {
            VertexCoords cc = b.g.coords[anchor];
            cc.s[k - 1] = popcount(bvec);
            local[bvec] = b.add_vertex(std::move(cc));
          }
          for (unsigned bvec = 0; bvec <= full; ++bvec)
            for (int i = 0; i < dk; ++i)
              if (!(bvec >> i & 1u)) b.add_edge(local[bvec], local[bvec | (1u << i)]);
          if (k < m)
            for (unsigned bvec = 0; bvec < full; ++bvec) attach(local[bvec], k + 1);
        };

    bool central_walk = c.mode == WalkMode::CentralCornerToCorner;
    for (unsigned v = 0; v < nverts; ++v) {
      if (prune_target_attachment && central_walk && v == nverts - 1) continue;
      attach(v, 1);
    }

    if (central_walk) {
      b.g.start = 0;
      b.g.target = nverts - 1;
    } else {
      // Most external corners: all-zero chain on each side.
      VertexCoords zeros{0, std::vector<int>(m, 0)};
      VertexCoords ones_side{d0, std::vector<int>(m, 0)};
      for (std::uint32_t v = 0; v < b.g.vertex_count; ++v) {
        if (b.g.coords[v] == zeros) b.g.start = v;
        if (b.g.coords[v] == ones_side) b.g.target = v;
      }
    }
  }

  if (c.self_loops) b.pad_with_loops(p);
  return std::move(b.g);
}

bool is_connected(const ExplicitGraph& g) {
  if (g.vertex_count == 0) return true;
  std::vector<char> seen(g.vertex_count, 0);
  std::deque<std::uint32_t> queue{g.start};
  seen[g.start] = 1;
  std::uint32_t visited = 1;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : g.adjacency[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        queue.push_back(u);
      }
  }
  return visited == g.vertex_count;
}

}  // namespace hcwalk
