#pragma once

#include <string>
#include <vector>

#include "hcwalk/rational.hpp"

namespace hcwalk {

enum class Kind { Bare, Tails, Concatenated };

enum class WalkMode {
  /// Corner to corner across the central hypercube.
  CentralCornerToCorner,
  /// From the outermost corner of one attached branch, through the central
  /// hypercube, to the mirror outer corner (Concatenated only).
  PenetrateFull,
};

/// A d-dimensional hypercube with a graph attached locally to every vertex:
/// nothing (Bare), n paths of q vertices (Tails), or recursively
/// concatenated hypercubes dims[1..m] glued by corner identification
/// (Concatenated, dims[0] = central dimension).
struct WalkTopology {
  Kind kind = Kind::Bare;
  int d = 1;              // Bare, Tails
  int n = 0;              // Tails: tails per vertex
  int q = 0;              // Tails: tail length
  std::vector<int> dims;  // Concatenated: dims[0..m]
  WalkMode mode = WalkMode::CentralCornerToCorner;
  bool self_loops = false;

  int central_dim() const;
  /// Attachment depth m for Concatenated, 0 otherwise.
  int levels() const;
  void validate() const;  // throws ConfigError

  /// Tails with n=0 or q=0, and Concatenated dims={d} in central mode,
  /// behave exactly as Bare; returns the simplified equivalent.
  WalkTopology canonical() const;

  /// Flat text form, e.g. "kind=tails d=10 n=50 q=5 loops=true" or
  /// "kind=concat dims=2,2,2 mode=central loops=false".
  std::string to_string() const;
  static WalkTopology parse(const std::string& text);

  bool operator==(const WalkTopology&) const = default;
};

/// Uniform vertex degree p of the walked (self-loop padded) graph.
int degree(const WalkTopology& t);

/// Dimension of the symmetry-reduced walk space; matches build_basis exactly.
long long reduced_dimension(const WalkTopology& t);

/// Outgoing-edge count e of the graph attached to one vertex (the combined
/// external graph: attachment edges plus connecting legs, legs counted at
/// both ends). For Tails this is 2nq without loops and n(nq+dq+1) with the
/// loop padding; for Concatenated it is the per-central-vertex subtree count.
Rational total_outgoing_edges(const WalkTopology& t, bool with_self_loops);

/// Outgoing edges of a single level-p subtree of a concatenated structure:
/// the level-p hypercube's own edge endpoints plus everything below it.
/// p = 0 counts the central cube plus one chain of attachments (a per-cube
/// figure; the whole-structure sum is structure_edge_sum).
BigInt attachment_edge_count(const std::vector<int>& dims, int p);

/// Degree sum over the entire concatenated structure (loop-free).
BigInt structure_edge_sum(const std::vector<int>& dims);

}  // namespace hcwalk
