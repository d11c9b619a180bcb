#include "genus2/stability.hpp"

#include <algorithm>
#include <set>

namespace genus2 {

namespace {

int real_marking_count(const DecoratedGraph& g) {
  int n = 0;
  for (const auto& [mark, v] : g.legs())
    if (mark != kAuxMarking) ++n;
  return n;
}

/// Special points on the branch curve of a slot, not counting its own
/// passage through the singularity.
int branch_special_count(const DecoratedGraph& g, int sing_id, int slot) {
  int v = g.singular(sing_id).branches[slot];
  return g.special_count(v) - 1;
}

/// Connected pieces of the graph after removing one singular point, as
/// vertex sets; used to detect self-branches and positive-genus branches.
std::vector<Subcurve> pieces_without(const DecoratedGraph& g, int sing_id) {
  DecoratedGraph h = g;
  h.remove_singular_point(sing_id);
  return components(h, h.vertices());
}

int piece_of(const std::vector<Subcurve>& pieces, int v) {
  for (size_t i = 0; i < pieces.size(); ++i)
    for (int w : pieces[i])
      if (w == v) return static_cast<int>(i);
  return -1;
}

}  // namespace

bool computed_dangling(const DecoratedGraph& g, int sing_id) {
  const auto& sp = g.singular(sing_id);
  if (sp.type.kind != SingularityType::Kind::GenusTwoII) return false;
  for (int slot : sp.special) {
    int v = sp.branches[slot];
    int own_here = 0;
    for (int i = 0; i < static_cast<int>(sp.branches.size()); ++i)
      if (sp.branches[i] == v) ++own_here;
    if (g.special_count(v) - own_here == 0) return true;
  }
  return false;
}

bool has_finite_automorphisms(const DecoratedGraph& g) {
  std::vector<int> genus2_sings, elliptic_sings;
  for (int s : g.singular_ids()) {
    const auto& sp = g.singular(s);
    if (!sp.type.gorenstein())
      throw input_error("automorphism criterion needs Gorenstein singularities");
    if (sp.type.genus_two())
      genus2_sings.push_back(s);
    else if (sp.type.kind == SingularityType::Kind::Elliptic)
      elliptic_sings.push_back(s);
    else
      throw input_error("node-type hyperedges are not supported");
  }

  if (!genus2_sings.empty()) {
    int s = genus2_sings[0];
    const auto& sp = g.singular(s);
    const int m = sp.type.branches;
    std::set<int> special(sp.special.begin(), sp.special.end());
    bool all_one = true, some_two = false, axes_ok = true, twin_ok = false;
    for (int i = 0; i < m; ++i) {
      int cnt = branch_special_count(g, s, i);
      if (cnt != 1) all_one = false;
      if (cnt >= 2) some_two = true;
      if (!special.count(i) && cnt < 1) axes_ok = false;
      if (special.count(i) && cnt >= 1) twin_ok = true;
    }
    if (!is_rDM(g)) return false;
    if (all_one) return !sp.atom;
    if (sp.type.kind == SingularityType::Kind::GenusTwoI)
      return axes_ok && some_two;
    return axes_ok && some_two && twin_ok;
  }

  if (elliptic_sings.size() >= 2) {
    if (!is_rDM(g)) return false;
    for (int s : elliptic_sings) {
      const auto& sp = g.singular(s);
      bool some_two = false;
      for (int i = 0; i < sp.type.branches; ++i) {
        int cnt = branch_special_count(g, s, i);
        if (cnt < 1) return false;
        if (cnt >= 2) some_two = true;
      }
      if (!some_two) return false;
    }
    return true;
  }

  if (elliptic_sings.size() == 1) {
    int s = elliptic_sings[0];
    const auto& sp = g.singular(s);
    if (!is_rDM(g)) return false;
    auto pieces = pieces_without(g, s);
    // A branch through a positive-genus piece.
    bool genus_branch = false;
    {
      DecoratedGraph h = g;
      h.remove_singular_point(s);
      for (int i = 0; i < sp.type.branches && !genus_branch; ++i) {
        int p = piece_of(pieces, sp.branches[i]);
        if (p >= 0 && arithmetic_genus(h, pieces[p]) >= 1) genus_branch = true;
      }
      if (genus_branch) {
        for (int i = 0; i < sp.type.branches; ++i) {
          int p = piece_of(pieces, sp.branches[i]);
          bool this_genus = p >= 0 && arithmetic_genus(h, pieces[p]) >= 1;
          if (!this_genus && branch_special_count(g, s, i) < 1) return false;
        }
        return true;
      }
    }
    bool coincide = false, some_two = false;
    std::set<int> seen;
    for (int i = 0; i < sp.type.branches; ++i) {
      if (seen.count(sp.branches[i])) coincide = true;
      seen.insert(sp.branches[i]);
      int cnt = branch_special_count(g, s, i);
      if (cnt < 1) return false;
      if (cnt >= 2) some_two = true;
    }
    return coincide || some_two;
  }

  // Only nodes: Deligne-Mumford stability.
  for (int v : g.vertices()) {
    int n = g.special_count(v);
    if (g.genus_of(v) == 0 && n < 3) return false;
    if (g.genus_of(v) == 1 && n < 1) return false;
  }
  return true;
}

StabilityVerdict check_m_stability(const DecoratedGraph& g, int m) {
  const int n = real_marking_count(g);
  if (m < 1 || m >= n)
    throw input_error("stability depth needs 1 <= m < n");
  if (arithmetic_genus(g) != 2)
    throw input_error("stability is defined for curves of arithmetic genus two");
  auto problems = g.validate();
  if (!problems.empty()) throw input_error("malformed graph: " + problems[0]);

  StabilityVerdict verdict;
  auto violate = [&](std::string cond, Subcurve witness, std::string msg) {
    verdict.stable = false;
    verdict.violations.push_back({std::move(cond), std::move(witness), std::move(msg)});
  };

  // (1) The singularity menu.
  for (int s : g.singular_ids()) {
    const auto& sp = g.singular(s);
    Subcurve w = sp.branches;
    switch (sp.type.kind) {
      case SingularityType::Kind::Elliptic:
        if (sp.type.branches > m + 1)
          violate("1", w, "elliptic " + std::to_string(sp.type.branches) +
                              "-fold exceeds depth " + std::to_string(m));
        break;
      case SingularityType::Kind::GenusTwoI:
        if (sp.type.branches > m)
          violate("1", w, sp.type.str() + " exceeds depth " + std::to_string(m));
        break;
      case SingularityType::Kind::GenusTwoII:
        if (sp.type.branches > m + 1)
          violate("1", w, sp.type.str() + " exceeds depth " + std::to_string(m));
        else if (sp.type.branches == m + 1 && !computed_dangling(g, s))
          violate("1", w, sp.type.str() + " at the boundary depth must dangle");
        break;
      default:
        violate("1", w, "non-Gorenstein singularity " + sp.type.str());
    }
  }

  // (2)+(3): levels of nodally attached subcurves of genus one and two.
  auto verts = g.vertices();
  if (verts.size() > 22)
    throw unsupported_error("level sweep supports at most 22 vertices");
  for (unsigned mask = 1; mask < (1u << verts.size()); ++mask) {
    Subcurve sub;
    for (size_t i = 0; i < verts.size(); ++i)
      if (mask & (1u << i)) sub.push_back(verts[i]);
    if (sub.size() == verts.size()) continue;  // the whole curve: level n > m
    if (!is_connected(g, sub)) continue;
    auto info = level(g, sub);
    if (!info.nodally_attached) continue;
    int genus = arithmetic_genus(g, sub);
    if (genus == 2 && info.level() <= m)
      violate("2", sub, "genus-two subcurve of level " +
                            std::to_string(info.level()));
    if (genus == 1 && info.level() <= m + 1)
      violate("3", sub, "genus-one subcurve of level " +
                            std::to_string(info.level()));
  }

  // (4) Finiteness of automorphisms.
  bool aut_ok = true;
  try {
    aut_ok = has_finite_automorphisms(g);
  } catch (const input_error&) {
    aut_ok = false;
  }
  if (!aut_ok) violate("aut", {}, "infinitesimal automorphisms survive");

  // (5) The reference marking cleaves to the special branches.
  if (!g.has_leg(1)) throw input_error("missing the reference marking");
  for (int s : g.singular_ids()) {
    const auto& sp = g.singular(s);
    if (sp.type.genus_two()) {
      bool ok = false;
      for (int slot : sp.special)
        if (cleaves_to(g, Point::leg(1), sp.branches[slot])) ok = true;
      if (!ok)
        violate("5", sp.branches,
                "the reference marking does not cleave to a special branch");
    } else if (sp.type.kind == SingularityType::Kind::Elliptic) {
      auto pieces = pieces_without(g, s);
      DecoratedGraph h = g;
      h.remove_singular_point(s);
      // Self-branches: two slots in one piece; genus branches: a piece of
      // positive genus.
      std::vector<int> special_vertices;
      std::set<int> piece_seen;
      bool self_branch = false;
      for (int i = 0; i < sp.type.branches; ++i) {
        int p = piece_of(pieces, sp.branches[i]);
        if (piece_seen.count(p)) self_branch = true;
        piece_seen.insert(p);
      }
      for (int i = 0; i < sp.type.branches; ++i) {
        int p = piece_of(pieces, sp.branches[i]);
        bool shared = false;
        for (int j = 0; j < sp.type.branches; ++j)
          if (j != i && piece_of(pieces, sp.branches[j]) == p) shared = true;
        bool positive = p >= 0 && arithmetic_genus(h, pieces[p]) >= 1;
        if (shared || positive) special_vertices.push_back(sp.branches[i]);
      }
      (void)self_branch;
      if (!special_vertices.empty()) {
        bool ok = false;
        for (int v : special_vertices)
          if (cleaves_to(g, Point::leg(1), v)) ok = true;
        if (!ok)
          violate("5", sp.branches,
                  "the reference marking does not cleave to a special branch");
      }
    }
  }
  // Shared-branch genus-one pairs of low level attract the reference
  // marking.
  {
    auto ones = minimal_genus_one_subcurves(g);
    for (size_t i = 0; i < ones.size(); ++i)
      for (size_t j = i + 1; j < ones.size(); ++j) {
        std::set<int> a(ones[i].begin(), ones[i].end());
        bool share = false;
        for (int v : ones[j])
          if (a.count(v)) share = true;
        if (!share) continue;
        const Subcurve& lo = level(g, ones[i]).level() <= level(g, ones[j]).level()
                                 ? ones[i]
                                 : ones[j];
        if (level(g, lo).level() >= m + 2) continue;
        bool ok = false;
        for (int v : lo)
          if (cleaves_to(g, Point::leg(1), v)) ok = true;
        if (!ok)
          violate("5", lo,
                  "the reference marking does not cleave to the low-level "
                  "genus-one subcurve");
      }
  }
  return verdict;
}

int very_ample_power(int m) {
  if (m < 1) throw input_error("depth must be at least one");
  return 8 * m + 11;
}

}  // namespace genus2
