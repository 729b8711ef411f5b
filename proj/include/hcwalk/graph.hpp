#pragma once

#include <cstdint>
#include <vector>

#include "hcwalk/topology.hpp"

namespace hcwalk {

/// Orbit label of a vertex, shared with the reduced basis.
/// x: Hamming weight of the central-hypercube ancestor.
/// s: attachment coordinates. Tails: {distance along the tail}, 0 on the
/// hypercube itself. Concatenated: one entry per level; s[k-1] is the
/// Hamming weight inside the level-k cube, and s[k-1] == dims[k] means the
/// vertex sits above level k.
struct VertexCoords {
  int x = 0;
  std::vector<int> s;

  bool operator==(const VertexCoords&) const = default;
  auto operator<=>(const VertexCoords&) const = default;
};

/// Undirected multigraph. A self-loop is the vertex listed once in its own
/// adjacency and contributes one to the degree.
struct ExplicitGraph {
  std::uint32_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::uint32_t start = 0;
  std::uint32_t target = 0;
  std::vector<VertexCoords> coords;

  std::uint32_t deg(std::uint32_t v) const {
    return static_cast<std::uint32_t>(adjacency[v].size());
  }
};

inline constexpr std::uint64_t kMaxGraphVertices = 1ull << 22;

/// Materializes the structure described by t in canonical vertex order
/// (central bitstrings ascending, then attachment vertices in creation
/// order). prune_target_attachment drops the graph hanging off the final
/// vertex; with t.self_loops every vertex is padded to degree(t).
/// Throws SizeExceeded above kMaxGraphVertices.
ExplicitGraph build_explicit_graph(const WalkTopology& t,
                                   bool prune_target_attachment);

/// Number of vertices build_explicit_graph would produce.
BigInt explicit_vertex_count(const WalkTopology& t,
                             bool prune_target_attachment);

bool is_connected(const ExplicitGraph& g);

}  // namespace hcwalk
