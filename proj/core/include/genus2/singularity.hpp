#pragma once

#include <string>

namespace genus2 {

/// Symbolic singularity tag. Genus-one Gorenstein singularities with l
/// branches are "elliptic l-fold points" (l=1 cusp, l=2 tacnode); the two
/// genus-two Gorenstein families are type I (one singular branch) and type
/// II (two twin branches).
struct SingularityType {
  enum class Kind { Node, Elliptic, GenusTwoI, GenusTwoII, NonGorenstein };

  Kind kind = Kind::Node;
  int branches = 2;
  int genus = 0;  // only meaningful for NonGorenstein

  static SingularityType node() { return {Kind::Node, 2, 0}; }
  static SingularityType elliptic(int m) { return {Kind::Elliptic, m, 1}; }
  static SingularityType type_I(int m) { return {Kind::GenusTwoI, m, 2}; }
  static SingularityType type_II(int m) { return {Kind::GenusTwoII, m, 2}; }
  static SingularityType non_gorenstein(int g, int m) {
    return {Kind::NonGorenstein, m, g};
  }

  bool gorenstein() const { return kind != Kind::NonGorenstein; }
  bool genus_two() const {
    return kind == Kind::GenusTwoI || kind == Kind::GenusTwoII;
  }
  /// Local genus of the singularity (delta - branches + 1).
  int local_genus() const {
    switch (kind) {
      case Kind::Node: return 0;
      case Kind::Elliptic: return 1;
      case Kind::GenusTwoI:
      case Kind::GenusTwoII: return 2;
      case Kind::NonGorenstein: return genus;
    }
    return 0;
  }
  int delta() const { return local_genus() + branches - 1; }

  bool operator==(const SingularityType&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::Node: return "Node";
      case Kind::Elliptic: return "E" + std::to_string(branches);
      case Kind::GenusTwoI: return "I" + std::to_string(branches);
      case Kind::GenusTwoII: return "II" + std::to_string(branches);
      case Kind::NonGorenstein:
        return "NonGorenstein(g=" + std::to_string(genus) +
               ",m=" + std::to_string(branches) + ")";
    }
    return "?";
  }
};

}  // namespace genus2
