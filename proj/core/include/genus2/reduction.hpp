#pragma once

#include "genus2/balancing.hpp"
#include "genus2/graph.hpp"
#include "genus2/stability.hpp"

#include <optional>

namespace genus2 {

enum class ReductionMode { Weierstrass, Conjugate };

/// Where the conjugate section limits to (Conjugate mode): a vertex of the
/// input graph, or the same point as an existing marking.
struct ConjugateLocation {
  int vertex = -1;
  int coincides_with = -1;  // marking index, -1 if none
};

struct ReductionInput {
  DecoratedGraph graph;  // semistable central fibre of a regular model
  ReductionMode mode = ReductionMode::Weierstrass;
  ConjugateLocation conjugate;
  int m = 1;
  bool verify_uniqueness = false;  // assert all stable candidates agree
};

/// Edge subdivision modelling a degree-b base change of the regular model.
DecoratedGraph base_change(const DecoratedGraph& g, int b);

/// Inserts a rational bubble carrying the leg.
DecoratedGraph blow_up_marking(const DecoratedGraph& g, int marking);

/// Iteratively contracts rational components with fewer than three special
/// points; input must be nodal.
DecoratedGraph dm_stabilize(const DecoratedGraph& g);

struct Radius {
  int l = 0;
  std::map<int, int> tree_offsets;  // boundary edge -> depth consumed
};

/// On a preprocessed graph (base change applied, conjugate leg attached),
/// selects the region the limit algorithm contracts: the minimal radius
/// whose contraction clears the level thresholds. Returns the strict
/// interior; empty when no contraction is needed.
std::pair<Radius, Subcurve> expanding_circle(const DecoratedGraph& g, int m,
                                             ReductionMode mode);

/// Contracts the connected unmarked subcurve z: to an elliptic l-fold when
/// z has genus one (z must be a uniform-radius disc around its genus-one
/// core), or to a genus-two point of the given type (certified through
/// verify_tail_shape). Also contracts the strictly semistable rational
/// components disjoint from z and recomputes dangling flags.
DecoratedGraph contract(const DecoratedGraph& g, const Subcurve& z,
                        std::optional<TailType> type);

/// The constructive stable-limit algorithm: preprocessing (conjugate
/// section, base change), region selection, contraction, and cleanup. The
/// output always satisfies check_m_stability.
DecoratedGraph m_stable_limit(const ReductionInput& input);

}  // namespace genus2
