#pragma once

#include "genus2/graph.hpp"

#include <string>
#include <vector>

namespace genus2 {

struct Violation {
  std::string condition;  // "1".."5" or "aut"
  Subcurve witness;
  std::string message;
};

struct StabilityVerdict {
  bool stable = true;
  std::vector<Violation> violations;
};

/// Checks the reference-pointed stability condition at depth m:
///  (1) only nodes, elliptic l-folds (l <= m+1), genus-two points of type
///      I/II with at most m branches, and dangling type II with m+1;
///  (2) nodally attached genus-two subcurves have level > m;
///  (3) nodally attached genus-one subcurves have level > m+1;
///  (4) no infinitesimal automorphisms;
///  (5) the first marking cleaves to the special branches forced by the
///      singularity configuration.
StabilityVerdict check_m_stability(const DecoratedGraph& g, int m);

/// The combinatorial automorphism-finiteness criterion for Gorenstein
/// pointed curves of genus two.
bool has_finite_automorphisms(const DecoratedGraph& g);

/// Whether a twin branch of the type II point carries nothing beyond the
/// singularity (computed, not read from the stored flag).
bool computed_dangling(const DecoratedGraph& g, int sing_id);

/// Smallest power of omega(sum p_i) guaranteed very ample at depth m.
int very_ample_power(int m);

}  // namespace genus2
