#pragma once

#include <cstdint>
#include <vector>

#include "hcwalk/graph.hpp"
#include "hcwalk/rational.hpp"
#include "hcwalk/topology.hpp"

namespace hcwalk {

/// Mean outgoing-edge counts e_x of the graphs attached at Hamming weight x,
/// for x = 0..d-1. The final vertex's attachment never enters a hitting
/// time, so no e_d is stored.
struct AlphaProfile {
  int d = 1;
  std::vector<Rational> e;  // size d

  Rational alpha(int x) const;  // e[x]/d + 1
};

/// Expected return time through an attached graph with e outgoing edges
/// reached over l legs. Throws ZeroLegs when l == 0.
Rational return_time(const Rational& e, const Rational& l);

/// Expected corner-to-corner hitting time tau(0) on a d-cube whose vertices
/// carry attachments described by the profile.
Rational tau_general(const AlphaProfile& profile);

/// tau(x): expected hitting time of the far corner from Hamming weight x.
Rational tau_general_at(const AlphaProfile& profile, int x);

/// Uniform-attachment case: tau(0) = (mean_e/d + 1) * tau_ordinary(0).
Rational tau_uniform(int d, const Rational& mean_e);
Rational tau_uniform_at(int d, const Rational& mean_e, int x);

/// Outgoing edges of one level-p subtree (Rational view of
/// attachment_edge_count).
Rational f_e(int p, const std::vector<int>& dims);

/// Closed-form expected hitting time for the walk the topology describes.
/// Exact; floating point never enters. Throws UnsupportedLoops when
/// self_loops is set on a family without a loop correction.
Rational classical_hitting(const WalkTopology& t);

/// Largest graph the exact solver accepts. The elimination holds a dense
/// rational matrix, so memory grows with the square of the vertex count.
inline constexpr std::uint32_t kMaxSolveVertices = 4096;

/// Expected first-passage times to g.target from every vertex, by exact
/// rational elimination of the transition system. Throws SingularSystem
/// when the target is unreachable and SizeExceeded beyond
/// kMaxSolveVertices.
std::vector<Rational> first_passage_all(const ExplicitGraph& g,
                                        std::uint32_t target);

/// First-passage time start -> target of the uniform random walk on g.
Rational markov_first_passage(const ExplicitGraph& g);

/// Expected return time to v of the stationary walk: sum_u deg(u) / deg(v).
Rational stationary_return(const ExplicitGraph& g, std::uint32_t v);

}  // namespace hcwalk
