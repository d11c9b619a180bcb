#include "genus2/reduction.hpp"

#include <algorithm>
#include <set>

namespace genus2 {

namespace {

std::vector<char> mask_of(const DecoratedGraph& g, const Subcurve& s) {
  std::vector<char> in(g.vertex_storage_size(), 0);
  for (int v : s) in[v] = 1;
  return in;
}

void refresh_dangling(DecoratedGraph& g) {
  for (int s : g.singular_ids())
    g.singular_mut(s).dangling = computed_dangling(g, s);
}

void drop_dead_decorations(DecoratedGraph& g) {
  std::vector<Decoration> kept;
  for (const auto& d : g.decorations()) {
    bool ok = true;
    for (const auto& p : d.points) {
      if (p.kind == Point::Kind::Leg) {
        if (!g.has_leg(p.marking)) ok = false;
      } else {
        if (!g.vertex_alive(p.vertex)) ok = false;
        if (p.kind == Point::Kind::Toward && !g.vertex_alive(p.toward)) ok = false;
      }
    }
    if (ok) kept.push_back(d);
  }
  g.decorations() = std::move(kept);
}

/// Contracts strictly semistable slot-free rational components (the pieces
/// the contraction bundle kills) and strips bare rational tails.
void cleanup_semistable(DecoratedGraph& g) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : g.vertices()) {
      if (g.genus_of(v) != 0 || !g.slots_at(v).empty()) continue;
      auto edges = g.edges_at(v);
      bool has_loop = false;
      for (int e : edges) {
        const auto& ed = g.edge(e);
        if (ed.u == v && ed.v == v) has_loop = true;
      }
      if (has_loop) continue;
      std::vector<int> legs_here;
      for (const auto& [mark, vert] : g.legs())
        if (vert == v) legs_here.push_back(mark);
      int specials = static_cast<int>(edges.size() + legs_here.size());
      if (specials >= 3) continue;
      if (g.vertices().size() == 1) continue;
      if (edges.size() == 2 && legs_here.empty()) {
        const auto& e0 = g.edge(edges[0]);
        const auto& e1 = g.edge(edges[1]);
        int a = e0.u == v ? e0.v : e0.u;
        int b = e1.u == v ? e1.v : e1.u;
        g.remove_edge(edges[0]);
        g.remove_edge(edges[1]);
        g.remove_vertex(v);
        g.add_edge(a, b);
        changed = true;
        break;
      }
      if (edges.size() == 1 && legs_here.size() <= 1) {
        const auto& e0 = g.edge(edges[0]);
        int a = e0.u == v ? e0.v : e0.u;
        for (int mark : legs_here) g.move_leg(mark, a);
        g.remove_edge(edges[0]);
        g.remove_vertex(v);
        changed = true;
        break;
      }
    }
  }
  drop_dead_decorations(g);
}

}  // namespace

DecoratedGraph base_change(const DecoratedGraph& g, int b) {
  return g.base_change(b);
}

DecoratedGraph blow_up_marking(const DecoratedGraph& g, int marking) {
  DecoratedGraph h = g;
  h.blow_up_marking(marking);
  return h;
}

DecoratedGraph dm_stabilize(const DecoratedGraph& g) {
  if (!g.singular_ids().empty())
    throw input_error("stabilisation baseline works on nodal graphs");
  DecoratedGraph h = g;
  cleanup_semistable(h);
  return h;
}

DecoratedGraph contract(const DecoratedGraph& g, const Subcurve& z,
                        std::optional<TailType> type) {
  if (z.empty()) {
    DecoratedGraph out = g;
    cleanup_semistable(out);
    refresh_dangling(out);
    return out;
  }
  if (!is_connected(g, z)) throw input_error("contraction locus must be connected");
  auto in = mask_of(g, z);
  for (const auto& [mark, v] : g.legs())
    if (in[v]) throw input_error("contraction locus carries a marking");
  int genus = arithmetic_genus(g, z);

  // Certificates.
  if (genus == 2) {
    if (!type) throw input_error("genus-two contraction needs a type");
    std::string why;
    if (!verify_tail_shape(g, z, *type, &why))
      throw unsupported_error("contraction refused: " + why);
  } else if (genus == 1) {
    // A Smyth-style balanced circle: uniform distance from the genus-one
    // core to every boundary edge.
    for (int v : z)
      if (!g.slots_at(v).empty())
        throw input_error("genus-one contraction locus must be nodal");
    std::optional<Subcurve> core1;
    for (auto& e : minimal_genus_one_subcurves(g)) {
      bool inside = true;
      for (int v : e)
        if (!in[v]) inside = false;
      if (inside) {
        if (core1) throw input_error("ambiguous genus-one core in the disc");
        core1 = e;
      }
    }
    if (!core1) throw input_error("no genus-one core inside the disc");
    // BFS distances from the core within z.
    std::map<int, int> dist;
    std::vector<int> frontier;
    for (int v : *core1) {
      dist[v] = 0;
      frontier.push_back(v);
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int e : g.edges_at(v)) {
          const auto& ed = g.edge(e);
          int w = ed.u == v ? ed.v : ed.u;
          if (w == v || !in[w] || dist.count(w)) continue;
          dist[w] = dist.at(v) + 1;
          next.push_back(w);
        }
      frontier = std::move(next);
    }
    std::set<int> boundary_dists;
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      int inside = -1;
      if (in[ed.u] && !in[ed.v]) inside = ed.u;
      if (!in[ed.u] && in[ed.v]) inside = ed.v;
      if (inside < 0) continue;
      if (!dist.count(inside)) throw input_error("disc is not connected to its core");
      boundary_dists.insert(dist.at(inside));
    }
    if (boundary_dists.size() > 1)
      throw input_error("genus-one contraction locus is not balanced");
  } else {
    throw input_error("contraction locus must have genus one or two");
  }

  DecoratedGraph out = g;
  // Boundary edges become the branch slots, in a deterministic order with
  // the special (reference-marking) directions first for genus two.
  struct Cut {
    int edge;
    int outside;
    bool to_p1 = false;
    bool to_aux = false;
  };
  std::vector<Cut> cuts;
  {
    Subcurve outside_all;
    for (int v : g.vertices())
      if (!in[v]) outside_all.push_back(v);
    auto comps = components(g, outside_all);
    auto comp_of = [&](int v) -> int {
      for (size_t i = 0; i < comps.size(); ++i)
        for (int w : comps[i])
          if (w == v) return static_cast<int>(i);
      return -1;
    };
    int c1 = g.has_leg(1) ? comp_of(g.leg_vertex(1)) : -1;
    int caux = g.has_leg(kAuxMarking) ? comp_of(g.leg_vertex(kAuxMarking)) : -1;
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      int outv = -1;
      if (in[ed.u] && !in[ed.v]) outv = ed.v;
      if (!in[ed.u] && in[ed.v]) outv = ed.u;
      if (outv < 0) continue;
      Cut c{e, outv, false, false};
      int oc = comp_of(outv);
      c.to_p1 = oc >= 0 && oc == c1;
      c.to_aux = caux >= 0 && oc == caux;
      cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
      if (a.to_p1 != b.to_p1) return a.to_p1 > b.to_p1;
      if (a.to_aux != b.to_aux) return a.to_aux > b.to_aux;
      return a.edge < b.edge;
    });
  }

  DecoratedGraph::SingularPoint sp;
  if (genus == 1) {
    sp.type = SingularityType::elliptic(static_cast<int>(cuts.size()));
  } else {
    sp.type = *type == TailType::I
                  ? SingularityType::type_I(static_cast<int>(cuts.size()))
                  : SingularityType::type_II(static_cast<int>(cuts.size()));
    if (*type == TailType::I) {
      sp.special = {0};
      if (!cuts[0].to_p1)
        throw unsupported_error("lost track of the special branch");
    } else {
      sp.special = {0, 1};
      if (!cuts[0].to_p1 || !cuts[1].to_aux)
        throw unsupported_error("lost track of the twin branches");
    }
  }
  for (const auto& c : cuts) sp.branches.push_back(c.outside);
  for (const auto& c : cuts) out.remove_edge(c.edge);
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (in[ed.u] && in[ed.v]) out.remove_edge(e);
  }
  for (int v : z) out.remove_vertex(v);
  out.add_singular_point(sp);
  cleanup_semistable(out);
  refresh_dangling(out);
  return out;
}

namespace {

/// A contraction plan: disjoint regions, genus-one discs or one genus-two
/// region.
struct Region {
  Subcurve z;
  std::optional<TailType> type;
  int radius = 0;
};

/// Working copy that lazily blows up markings so that contracted regions
/// stay unmarked ("markings are infinite legs").
struct Workspace {
  DecoratedGraph g;

  /// Extends legs out of the vertex set `region` in place; returns false
  /// if a leg cannot escape (never happens on valid inputs).
  void push_legs_out(Subcurve& region) {
    bool moved = true;
    while (moved) {
      moved = false;
      auto in = mask_of(g, region);
      std::vector<int> marks;
      for (const auto& [mark, v] : g.legs())
        if (in[v]) marks.push_back(mark);
      for (int mark : marks) {
        g.blow_up_marking(mark);
        moved = true;
      }
      if (moved) continue;
    }
  }
};

/// Distance-r disc around a vertex set, with legs pushed out by blow-ups.
struct DiscBuild {
  DecoratedGraph g;
  Subcurve z;
  bool valid = false;
};

DiscBuild build_disc(const DecoratedGraph& g0, const Subcurve& e_core, int r) {
  DiscBuild out;
  out.g = g0;
  // Repeatedly: compute the disc, blow up any leg inside, recompute.
  for (int guard = 0; guard < 500; ++guard) {
    std::map<int, int> dist;
    std::vector<int> frontier;
    for (int v : e_core) {
      dist[v] = 0;
      frontier.push_back(v);
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int e : out.g.edges_at(v)) {
          const auto& ed = out.g.edge(e);
          int w = ed.u == v ? ed.v : ed.u;
          if (w == v || dist.count(w) || dist.at(v) + 1 > r) continue;
          dist[w] = dist.at(v) + 1;
          next.push_back(w);
        }
      frontier = std::move(next);
    }
    Subcurve z;
    for (auto& [v, d] : dist) z.push_back(v);
    int marked = -1;
    auto in = mask_of(out.g, z);
    for (const auto& [mark, v] : out.g.legs())
      if (in[v]) marked = mark;
    if (marked < 0) {
      std::sort(z.begin(), z.end());
      out.z = std::move(z);
      out.valid = true;
      return out;
    }
    out.g.blow_up_marking(marked);
  }
  return out;
}

int cut_count(const DecoratedGraph& g, const Subcurve& z) {
  auto in = mask_of(g, z);
  int n = 0;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (in[ed.u] != in[ed.v]) ++n;
  }
  return n;
}

/// Signature of a region for redundancy detection: vertices of the original
/// graph it contains plus its boundary size. Once two consecutive radii
/// share it, the larger ones only walk along blown-up marking rays and
/// contract to the same curve.
std::pair<Subcurve, int> region_signature(const DecoratedGraph& g,
                                          const Subcurve& z, int real_limit) {
  Subcurve real;
  for (int v : z)
    if (v < real_limit) real.push_back(v);
  return {real, cut_count(g, z)};
}

/// Builds the genus-two region for special-chain depth k: the core plus
/// tree prefixes at the depths the tail-shape theorems dictate. Returns
/// the adjusted graph (legs blown out) and the region.
struct RegionBuild {
  DecoratedGraph g;
  Subcurve z;
  bool valid = false;
};

RegionBuild build_genus2_region(const DecoratedGraph& g0, int k,
                                ReductionMode mode) {
  RegionBuild out;
  out.g = g0;
  const TailType type = mode == ReductionMode::Weierstrass ? TailType::I
                                                           : TailType::II;
  for (int guard = 0; guard < 500; ++guard) {
    DecoratedGraph& g = out.g;
    Subcurve k_core;
    try {
      k_core = core(g);
    } catch (const std::exception&) {
      return out;
    }
    auto in_core = mask_of(g, k_core);

    // Special paths: from the core towards the reference markings.
    auto path_toward_leg = [&](int mark) -> std::vector<int> {
      // Vertices outside the core on the path core -> leg, core-outward.
      if (!g.has_leg(mark)) return {};
      int target = g.leg_vertex(mark);
      std::map<int, int> parent;
      std::vector<int> frontier;
      for (int v : k_core) {
        parent[v] = -1;
        frontier.push_back(v);
      }
      while (!frontier.empty() && !parent.count(target)) {
        std::vector<int> next;
        for (int v : frontier)
          for (int e : g.edges_at(v)) {
            const auto& ed = g.edge(e);
            int w = ed.u == v ? ed.v : ed.u;
            if (w == v || parent.count(w)) continue;
            parent[w] = v;
            next.push_back(w);
          }
        frontier = std::move(next);
      }
      std::vector<int> path;
      int cur = target;
      while (cur >= 0 && !in_core[cur]) {
        path.push_back(cur);
        cur = parent.at(cur);
      }
      std::reverse(path.begin(), path.end());
      path.insert(path.begin(), cur);  // [core attach, u1, ..., leg vertex]
      return path;
    };

    auto p1_path = path_toward_leg(1);
    if (p1_path.empty()) return out;
    std::vector<int> aux_path;
    if (type == TailType::II) {
      aux_path = path_toward_leg(kAuxMarking);
      if (aux_path.empty()) return out;
    }
    // Need k chain vertices strictly between the core and the leg.
    if (static_cast<int>(p1_path.size()) - 2 < k) {
      g.blow_up_marking(1);
      continue;
    }
    if (type == TailType::II && static_cast<int>(aux_path.size()) - 2 < k) {
      g.blow_up_marking(kAuxMarking);
      continue;
    }

    // Positions along the special trees.
    auto depth_on = [](const std::vector<int>& path, int v) -> int {
      for (size_t i = 1; i + 1 <= path.size(); ++i)
        if (i < path.size() && path[i] == v) return static_cast<int>(i);
      return 0;  // not on the chain part
    };
    int x1 = p1_path[0];
    int xm = type == TailType::II ? aux_path[0] : x1;
    int trunk = 0;
    if (type == TailType::II) {
      size_t t = 1;
      while (t < p1_path.size() && t < aux_path.size() &&
             p1_path[t] == aux_path[t] && !in_core[p1_path[t]])
        ++t;
      trunk = static_cast<int>(t) - 1;
      if (x1 != xm) trunk = 0;
    }
    std::set<int> special_comps{x1, xm};

    auto dist_star = [&](int a, int b) {
      return weighted_core_distance(g, k_core, special_comps, a, b);
    };

    // Allowed depth for a vertex with the given attachment data.
    auto allowed_depth = [&](int attach, int diverge_depth, bool on_p1,
                             bool on_aux) -> int {
      if (type == TailType::I) {
        if (on_p1) return k;
        if (diverge_depth > 0)
          return 3 * k - 2 * diverge_depth + 2;
        return 3 * k + 2 + dist_star(x1, attach);
      }
      if (on_p1 || on_aux) return k;
      if (diverge_depth > 0) {
        if (trunk > 0 && diverge_depth <= trunk)
          return 2 * k + trunk - 2 * diverge_depth + 1;
        return 2 * k - diverge_depth + 1;
      }
      if (trunk > 0) return 2 * k + 1 + trunk + dist_star(x1, attach);
      return 2 * k + 1 + std::min(dist_star(x1, attach), dist_star(xm, attach));
    };

    // Walk outward from the core, including vertices within their allowed
    // depth.
    Subcurve z = k_core;
    std::map<int, std::tuple<int, int, int, bool, bool>> info;
    // vertex -> (attach, depth, diverge_depth, on_p1, on_aux)
    std::vector<int> frontier;
    for (int v : k_core) frontier.push_back(v);
    std::set<int> seen(k_core.begin(), k_core.end());
    for (int v : k_core) info[v] = {v, 0, 0, false, false};
    bool leg_inside = false;
    int leg_to_blow = -1;
    while (!frontier.empty() && !leg_inside) {
      std::vector<int> next;
      for (int v : frontier) {
        auto [attach, depth, diverge, was_p1, was_aux] = info.at(v);
        for (int e : g.edges_at(v)) {
          const auto& ed = g.edge(e);
          int w = ed.u == v ? ed.v : ed.u;
          if (w == v || seen.count(w) || in_core[w]) continue;
          int nattach = in_core[v] ? v : attach;
          int ndepth = depth + 1;
          int p1d = depth_on(p1_path, w);
          int auxd = type == TailType::II ? depth_on(aux_path, w) : 0;
          bool on_p1 = p1d == ndepth && p1d > 0;
          bool on_aux = auxd == ndepth && auxd > 0;
          int ndiv = diverge;
          if (was_p1 && !on_p1) ndiv = depth;      // leaving the reference path
          if (was_aux && !on_aux) ndiv = depth;
          if (in_core[v]) ndiv = 0;
          // Re-derive divergence for vertices branching off deeper.
          int allow = allowed_depth(nattach, (on_p1 || on_aux) ? 0 : ndiv,
                                    on_p1, on_aux);
          if (ndepth > allow) continue;
          seen.insert(w);
          info[w] = {nattach, ndepth, ndiv, on_p1, on_aux};
          z.push_back(w);
          next.push_back(w);
          for (const auto& [mark, lv] : g.legs())
            if (lv == w) {
              leg_inside = true;
              leg_to_blow = mark;
            }
        }
      }
      frontier = std::move(next);
    }
    if (leg_inside) {
      g.blow_up_marking(leg_to_blow);
      continue;
    }
    std::sort(z.begin(), z.end());
    out.z = std::move(z);
    out.valid = true;
    return out;
  }
  return out;
}

struct Candidate {
  DecoratedGraph g;
  std::vector<Region> regions;
};

DecoratedGraph apply_plan(const Candidate& cand, bool drop_aux) {
  DecoratedGraph g = cand.g;
  // Contract regions one by one; vertex ids are stable under contraction.
  for (const auto& r : cand.regions) g = contract(g, r.z, r.type);
  if (drop_aux && g.has_leg(kAuxMarking)) g.remove_leg(kAuxMarking);
  cleanup_semistable(g);
  refresh_dangling(g);
  return g;
}

bool output_stable(const DecoratedGraph& g, int m) {
  try {
    return check_m_stability(g, m).stable;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::pair<Radius, Subcurve> expanding_circle(const DecoratedGraph& g, int m,
                                             ReductionMode mode) {
  // No contraction needed?
  if (g.singular_ids().empty()) {
    DecoratedGraph dm = dm_stabilize([&] {
      DecoratedGraph h = g;
      if (h.has_leg(kAuxMarking)) h.remove_leg(kAuxMarking);
      return h;
    }());
    if (output_stable(dm, m)) return {Radius{}, {}};
  }
  const int real_limit = g.vertex_storage_size();
  std::optional<std::pair<Subcurve, int>> last_sig;
  for (int k = 0; k <= 3 * g.vertex_storage_size() + 9; ++k) {
    auto build = build_genus2_region(g, k, mode);
    if (!build.valid) continue;
    int branches = cut_count(build.g, build.z);
    if (branches > m + 1) break;
    auto sig = region_signature(build.g, build.z, real_limit);
    if (last_sig && sig == *last_sig) break;
    last_sig = sig;
    TailType type =
        mode == ReductionMode::Weierstrass ? TailType::I : TailType::II;
    Candidate cand{build.g, {Region{build.z, type, k}}};
    try {
      auto out = apply_plan(cand, true);
      if (output_stable(out, m)) {
        Radius r;
        r.l = k;
        return {r, build.z};
      }
    } catch (const std::exception&) {
    }
  }
  throw unsupported_error("no admissible contraction radius found");
}

DecoratedGraph m_stable_limit(const ReductionInput& input) {
  const int m = input.m;
  DecoratedGraph g0 = input.graph;
  {
    auto problems = g0.validate();
    if (!problems.empty()) throw input_error("malformed input: " + problems[0]);
    if (arithmetic_genus(g0) != 2)
      throw input_error("limit algorithm needs arithmetic genus two");
  }
  if (output_stable(g0, m)) {
    DecoratedGraph out = g0;
    refresh_dangling(out);
    return out.compacted();
  }
  if (!g0.singular_ids().empty())
    throw unsupported_error("unstable input with singular points");

  // Strip bare rational tails (Castelnuovo) and retry the trivial answer.
  cleanup_semistable(g0);
  {
    DecoratedGraph dm = dm_stabilize(g0);
    if (output_stable(dm, m)) return dm.compacted();
  }

  // Preprocessing: the conjugate section and the base change.
  DecoratedGraph g = g0;
  if (input.mode == ReductionMode::Conjugate) {
    if (input.conjugate.coincides_with > 0) {
      int w = g.blow_up_marking(input.conjugate.coincides_with);
      g.add_leg(kAuxMarking, w);
    } else {
      if (!g.vertex_alive(input.conjugate.vertex))
        throw input_error("conjugate location is not a vertex of the graph");
      g.add_leg(kAuxMarking, input.conjugate.vertex);
    }
  }
  g = g.base_change(input.mode == ReductionMode::Weierstrass ? 3 : 2);

  std::vector<DecoratedGraph> stable_outputs;
  auto consider = [&](const Candidate& cand) -> std::optional<DecoratedGraph> {
    DecoratedGraph out;
    try {
      out = apply_plan(cand, true);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (!output_stable(out, m)) return std::nullopt;
    return out.compacted();
  };

  // Genus-one disc candidates around each minimal genus-one subcurve,
  // furthest-from-the-reference-marking first, then simultaneous pairs,
  // then the genus-two regions by increasing radius.
  auto ones = minimal_genus_one_subcurves(g);
  auto leg_dist = [&](const Subcurve& s) {
    // Distance from the reference marking to the subcurve.
    std::map<int, int> dist;
    std::vector<int> frontier{g.leg_vertex(1)};
    dist[g.leg_vertex(1)] = 0;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int e : g.edges_at(v)) {
          const auto& ed = g.edge(e);
          int w = ed.u == v ? ed.v : ed.u;
          if (w == v || dist.count(w)) continue;
          dist[w] = dist.at(v) + 1;
          next.push_back(w);
        }
      frontier = std::move(next);
    }
    int best = 1 << 20;
    for (int v : s)
      if (dist.count(v)) best = std::min(best, dist.at(v));
    return best;
  };
  std::stable_sort(ones.begin(), ones.end(), [&](const auto& a, const auto& b) {
    int la = level(g, a).level(), lb = level(g, b).level();
    if (la != lb) return la < lb;
    return leg_dist(a) > leg_dist(b);
  });

  struct Disc {
    size_t core_index;
    int radius;
    DecoratedGraph g;
    Subcurve z;
  };
  const int real_limit = g.vertex_storage_size();
  std::vector<Disc> discs;
  for (size_t i = 0; i < ones.size(); ++i) {
    std::optional<std::pair<Subcurve, int>> last_sig;
    for (int r = 0; r <= 3 * g.vertex_storage_size() + 9; ++r) {
      auto disc = build_disc(g, ones[i], r);
      if (!disc.valid) break;
      if (arithmetic_genus(disc.g, disc.z) != 1) break;
      if (cut_count(disc.g, disc.z) > m + 1) break;
      auto sig = region_signature(disc.g, disc.z, real_limit);
      if (last_sig && sig == *last_sig) break;  // only marking rays grow now
      last_sig = sig;
      discs.push_back({i, r, disc.g, disc.z});
    }
  }
  for (const auto& d : discs) {
    Candidate cand{d.g, {Region{d.z, std::nullopt, d.radius}}};
    if (auto out = consider(cand)) {
      if (!input.verify_uniqueness) return *out;
      stable_outputs.push_back(*out);
    }
  }
  // Pairs of discs around different cores; rebuild the second disc in the
  // first disc's (possibly blown-up) graph.
  for (const auto& d1 : discs) {
    for (size_t j = 0; j < ones.size(); ++j) {
      if (j == d1.core_index) continue;
      std::optional<std::pair<Subcurve, int>> last_sig2;
      for (int r2 = 0; r2 <= 3 * g.vertex_storage_size() + 9; ++r2) {
        auto d2 = build_disc(d1.g, ones[j], r2);
        if (!d2.valid) break;
        if (arithmetic_genus(d2.g, d2.z) != 1) break;
        if (cut_count(d2.g, d2.z) > m + 1) break;
        auto sig2 = region_signature(d2.g, d2.z, real_limit);
        if (last_sig2 && sig2 == *last_sig2) break;
        last_sig2 = sig2;
        // Regions must be disjoint and non-adjacent.
        std::set<int> za(d1.z.begin(), d1.z.end());
        bool overlap = false;
        for (int v : d2.z)
          if (za.count(v)) overlap = true;
        if (overlap) break;
        bool adjacent = false;
        for (int e : d2.g.edge_ids()) {
          const auto& ed = d2.g.edge(e);
          bool ua = za.count(ed.u) > 0, va = za.count(ed.v) > 0;
          bool ub = std::find(d2.z.begin(), d2.z.end(), ed.u) != d2.z.end();
          bool vb = std::find(d2.z.begin(), d2.z.end(), ed.v) != d2.z.end();
          if ((ua && vb) || (ub && va)) adjacent = true;
        }
        if (adjacent) continue;
        Candidate cand{d2.g, {Region{d1.z, std::nullopt, d1.radius},
                              Region{d2.z, std::nullopt, r2}}};
        if (auto out = consider(cand)) {
          if (!input.verify_uniqueness) return *out;
          stable_outputs.push_back(*out);
        }
      }
    }
  }
  // Genus-two regions.
  TailType type = input.mode == ReductionMode::Weierstrass ? TailType::I
                                                           : TailType::II;
  int over_budget = 0;
  std::optional<std::pair<Subcurve, int>> last_sig;
  for (int k = 0; k <= 3 * g.vertex_storage_size() + 9 && over_budget < 3; ++k) {
    auto build = build_genus2_region(g, k, input.mode);
    if (!build.valid) continue;
    if (cut_count(build.g, build.z) > m + 1) {
      ++over_budget;
      continue;
    }
    auto sig = region_signature(build.g, build.z, real_limit);
    if (last_sig && sig == *last_sig) break;  // only marking rays grow now
    last_sig = sig;
    Candidate cand{build.g, {Region{build.z, type, k}}};
    if (auto out = consider(cand)) {
      if (!input.verify_uniqueness) return *out;
      stable_outputs.push_back(*out);
    }
  }

  if (stable_outputs.empty())
    throw unsupported_error(
        "no admissible contraction found: configuration not covered");
  for (size_t i = 1; i < stable_outputs.size(); ++i)
    if (!isomorphic(stable_outputs[0], stable_outputs[i]))
      throw unsupported_error("limit is not unique: internal invariant broken");
  return stable_outputs[0];
}

}  // namespace genus2
