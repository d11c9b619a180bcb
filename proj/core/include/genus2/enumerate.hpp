#pragma once

#include "genus2/graph.hpp"

#include <functional>
#include <vector>

namespace genus2 {

/// Streams every semistable nodal pointed curve of arithmetic genus two
/// with exactly n markings and at most max_vertices components, up to
/// decorated isomorphism, in a deterministic order.
void enumerate_semistable_genus2(
    int max_vertices, int n,
    const std::function<void(const DecoratedGraph&)>& yield);

/// All stable decorated topological types at depth m (singularities from
/// the depth-m menu, generic non-atom crimping), up to isomorphism,
/// deterministically ordered.
std::vector<DecoratedGraph> enumerate_stable_types(int n, int m,
                                                   int max_vertices);

/// Nodal Deligne-Mumford stable pointed types of genus two (the baseline
/// the depth filters are compared against).
std::vector<DecoratedGraph> enumerate_dm_stable_types(int n, int max_vertices);

}  // namespace genus2
