#pragma once

#include <cstdint>
#include <vector>

#include "hcwalk/graph.hpp"
#include "hcwalk/walk.hpp"

namespace hcwalk {

/// Coined walk on the explicit vertex set: basis index = vertex * p + slot,
/// slots enumerate the ordered edge stubs (neighbors first, then loop
/// padding up to p). Grover coin everywhere except the target vertex,
/// which keeps an identity coin so arrivals stay put until measured.
struct FullWalk {
  WalkOperator op;
  ExplicitGraph graph;
  int p = 0;
};

FullWalk build_full_walk(const ExplicitGraph& g, int p);
FullWalk build_full_walk(const WalkTopology& t);

/// Orthonormal projection of a full-space state onto the symmetry-reduced
/// basis: reduced amplitude = sum over the orbit's matching slots divided
/// by sqrt(orbit slot count). Slots are matched to directions through the
/// vertex coordinates carried by the graph.
CVector project_to_reduced(const FullWalk& fw, const ReducedBasis& basis,
                           const CVector& psi);

/// Residual norm of psi outside the reduced subspace.
double reduction_residual(const FullWalk& fw, const ReducedBasis& basis,
                          const CVector& psi);

}  // namespace hcwalk
