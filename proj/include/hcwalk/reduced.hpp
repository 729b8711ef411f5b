#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "hcwalk/graph.hpp"
#include "hcwalk/rational.hpp"
#include "hcwalk/topology.hpp"

namespace hcwalk {

/// Direction labels of the symmetry-reduced basis. R/L move across the cube
/// that owns the position (weight up / weight down), D/U move away from /
/// back toward the central cube, O stands for the self-loop padding slots.
enum class Dir : std::uint8_t { R = 0, L = 1, D = 2, U = 3, O = 4 };

inline constexpr std::array<Dir, 5> kAllDirs = {Dir::R, Dir::L, Dir::D,
                                                Dir::U, Dir::O};
char dir_symbol(Dir d);

/// One orbit of vertices equivalent under the walk's symmetry group.
struct ReducedPosition {
  VertexCoords coords;
  BigInt n_tilde;              // orbit size (vertex multiplicity)
  std::array<BigInt, 5> n;     // edge multiplicities per direction
  std::array<std::int32_t, 5> state;  // basis index per direction, -1 if absent
  int dead_slots = 0;          // coin slots of the target orbit that carry no
                               // basis state (arrival directions excluded too
                               // when the attachment is pruned)
};

struct ReducedState {
  std::int32_t pos;
  Dir dir;
};

/// Symmetry-reduced coined-walk basis for a topology. Positions are orbits
/// (x, s) of the vertex coordinates; states are (position, direction) pairs
/// with nonzero multiplicity.
struct ReducedBasis {
  WalkTopology topology;
  int p = 0;  // coin dimension of the underlying walk
  std::vector<ReducedPosition> positions;
  std::vector<ReducedState> states;
  std::int32_t start_pos = -1;
  std::int32_t target_pos = -1;
  std::map<VertexCoords, std::int32_t> position_of;

  std::int32_t state_index(std::int32_t pos, Dir dir) const {
    return positions[pos].state[static_cast<int>(dir)];
  }
};

/// Enumerate the reduced basis. Its size equals reduced_dimension(t).
ReducedBasis build_basis(const WalkTopology& t);

}  // namespace hcwalk
