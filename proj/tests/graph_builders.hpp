// Shared graph-construction helpers for the test suites.
#pragma once

#include "genus2/graph.hpp"

namespace builders {

using genus2::DecoratedGraph;
using genus2::SingularityType;

/// Smooth genus-two vertex with a rational tail carrying both markings.
inline DecoratedGraph weierstrass_tail_curve(int n = 2) {
  DecoratedGraph g;
  int z = g.add_vertex(2);
  int r = g.add_vertex(0);
  g.add_edge(z, r);
  for (int i = 1; i <= n; ++i) g.add_leg(i, r);
  return g;
}

/// Chain of two elliptic vertices, markings distributed by the caller.
inline DecoratedGraph elliptic_chain(int chain_len = 0) {
  DecoratedGraph g;
  int e1 = g.add_vertex(1);
  int prev = e1;
  for (int i = 0; i < chain_len; ++i) {
    int w = g.add_vertex(0);
    g.add_edge(prev, w);
    prev = w;
  }
  int e2 = g.add_vertex(1);
  g.add_edge(prev, e2);
  return g;
}

/// Ring of r rational vertices.
inline DecoratedGraph rational_ring(int r) {
  DecoratedGraph g;
  int first = g.add_vertex(0);
  if (r == 1) {
    g.add_edge(first, first);
    return g;
  }
  int prev = first;
  for (int i = 1; i < r; ++i) {
    int w = g.add_vertex(0);
    g.add_edge(prev, w);
    prev = w;
  }
  g.add_edge(prev, first);
  return g;
}

/// Theta graph: two vertices joined by three chains of the given lengths.
inline DecoratedGraph theta(int l1 = 0, int l2 = 0, int l3 = 0) {
  DecoratedGraph g;
  int a = g.add_vertex(0);
  int b = g.add_vertex(0);
  for (int len : {l1, l2, l3}) {
    int prev = a;
    for (int i = 0; i < len; ++i) {
      int w = g.add_vertex(0);
      g.add_edge(prev, w);
      prev = w;
    }
    g.add_edge(prev, b);
  }
  return g;
}

/// Dangling oscnode: two rational branches glued along a II_2 point, with
/// all markings on the first branch.
inline DecoratedGraph dangling_a5(int n = 2) {
  DecoratedGraph g;
  int b1 = g.add_vertex(0);
  int b2 = g.add_vertex(0);
  DecoratedGraph::SingularPoint sp;
  sp.type = SingularityType::type_II(2);
  sp.branches = {b1, b2};
  sp.special = {0, 1};
  sp.dangling = true;
  g.add_singular_point(sp);
  for (int i = 1; i <= n; ++i) g.add_leg(i, b1);
  return g;
}

}  // namespace builders
