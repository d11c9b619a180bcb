#pragma once

#include "genus2/rational.hpp"

#include <string>
#include <vector>

namespace genus2 {

/// A_k (k >= 1) or D_k (k >= 4) tag.
struct AdeTag {
  char family = 'A';
  int index = 1;

  static AdeTag parse(const std::string& s);
  std::string str() const { return family + std::to_string(index); }
  bool operator==(const AdeTag&) const = default;
};

/// Adjacency matrix of the Dynkin diagram: a path for A_k, a path with a
/// two-pronged fork at one end for D_k.
std::vector<std::vector<int>> dynkin_diagram(AdeTag tag);

/// True iff the diagram of `a` embeds as a full (induced) subgraph of the
/// diagram of `b`, so that `a` deforms out of `b`.
bool ade_adjacency(AdeTag a, AdeTag b);

}  // namespace genus2
