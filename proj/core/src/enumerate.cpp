#include "genus2/enumerate.hpp"

#include "genus2/stability.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace genus2 {

namespace {

/// Vertex-flavoured skeleton: singular points are placeholder vertices whose
/// incident edges stand for branch slots. A placeholder of local genus gamma
/// contributes exactly gamma to the arithmetic genus of the translated
/// graph, so the genus bookkeeping matches the real curve.
struct Skeleton {
  struct Vert {
    int genus = 0;                       // genus-equivalent
    bool singular = false;
    SingularityType type;                // when singular
  };
  std::vector<Vert> verts;
  std::vector<std::pair<int, int>> edges;  // u <= v not required
  int cycles = 0;                          // b1 of the multigraph

  int genus_total() const {
    int g = cycles;
    for (const auto& v : verts) g += v.genus;
    return g;
  }
  int degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges) {
      if (a == v) ++d;
      if (b == v) ++d;
    }
    return d;
  }
};

std::string skeleton_key(const Skeleton& s) {
  // Refinement-based fingerprint; exact enough for bucketing, full
  // isomorphism resolves collisions.
  std::vector<std::string> labels(s.verts.size());
  for (size_t v = 0; v < s.verts.size(); ++v)
    labels[v] = (s.verts[v].singular ? "S" + s.verts[v].type.str()
                                     : "g" + std::to_string(s.verts[v].genus));
  for (int round = 0; round < 3; ++round) {
    std::vector<std::string> next(s.verts.size());
    for (size_t v = 0; v < s.verts.size(); ++v) {
      std::vector<std::string> nb;
      for (auto [a, b] : s.edges) {
        if (a == static_cast<int>(v)) nb.push_back(labels[b]);
        if (b == static_cast<int>(v)) nb.push_back(labels[a]);
      }
      std::sort(nb.begin(), nb.end());
      next[v] = labels[v] + "(";
      for (auto& x : nb) next[v] += x + ",";
      next[v] += ")";
    }
    labels = std::move(next);
  }
  std::sort(labels.begin(), labels.end());
  std::string key;
  for (auto& l : labels) key += l + "|";
  return key;
}

bool skeleton_isomorphic(const Skeleton& a, const Skeleton& b) {
  if (a.verts.size() != b.verts.size() || a.edges.size() != b.edges.size())
    return false;
  // Backtracking on vertex maps with flavour/degree pruning.
  const size_t n = a.verts.size();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto compatible = [&](size_t va, size_t vb) {
    const auto& x = a.verts[va];
    const auto& y = b.verts[vb];
    return x.singular == y.singular && x.genus == y.genus &&
           (!x.singular || x.type == y.type) &&
           a.degree(static_cast<int>(va)) == b.degree(static_cast<int>(vb));
  };
  auto edge_count = [](const Skeleton& s, int u, int v) {
    int c = 0;
    for (auto [x, y] : s.edges)
      if ((x == u && y == v) || (x == v && y == u)) ++c;
    return c;
  };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == n) return true;
    for (size_t j = 0; j < n; ++j) {
      if (used[j] || !compatible(i, j)) continue;
      bool ok = true;
      for (size_t p = 0; p <= i; ++p) {
        if (map[p] < 0 && p != i) continue;
        int mp = p == i ? static_cast<int>(j) : map[p];
        if (edge_count(a, static_cast<int>(i), static_cast<int>(p)) !=
            edge_count(b, static_cast<int>(j), mp)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[j] = true;
      map[i] = static_cast<int>(j);
      if (rec(i + 1)) return true;
      used[j] = false;
      map[i] = -1;
    }
    return false;
  };
  return rec(0);
}

/// All connected skeletons with at most max_verts vertices and total genus
/// exactly two. Singular flavours are drawn from `sing_menu` (empty for the
/// nodal enumeration).
std::vector<Skeleton> enumerate_skeletons(
    int max_verts, const std::vector<SingularityType>& sing_menu) {
  std::vector<std::vector<Skeleton>> levels(max_verts + 1);
  std::map<std::string, std::vector<std::pair<int, int>>> seen;  // key -> (level, idx)

  auto try_add = [&](Skeleton s, int level) {
    if (s.genus_total() > 2) return;
    auto key = skeleton_key(s);
    for (auto [lv, idx] : seen[key])
      if (lv == level && skeleton_isomorphic(levels[level][idx], s)) return;
    seen[key].push_back({level, static_cast<int>(levels[level].size())});
    levels[level].push_back(std::move(s));
  };

  // Single-vertex bases.
  for (int g = 0; g <= 2; ++g)
    for (int loops = 0; loops + g <= 2; ++loops) {
      Skeleton s;
      s.verts.push_back({g, false, {}});
      for (int i = 0; i < loops; ++i) s.edges.push_back({0, 0});
      s.cycles = loops;
      try_add(std::move(s), 1);
    }
  for (const auto& t : sing_menu) {
    // A singular point needs at least one branch vertex; start it together
    // with one rational branch.
    Skeleton s;
    s.verts.push_back({t.local_genus(), true, t});
    s.verts.push_back({0, false, {}});
    s.edges.push_back({0, 1});
    try_add(std::move(s), 2);
  }

  for (int v = 1; v < max_verts; ++v) {
    for (const auto& base : levels[v]) {
      // Attach a new normal vertex by a multiset of 1..3 edges plus loops.
      std::vector<std::vector<int>> target_multisets;
      std::function<void(int, std::vector<int>&)> gen = [&](int from,
                                                            std::vector<int>& cur) {
        if (!cur.empty()) target_multisets.push_back(cur);
        if (cur.size() == 3) return;
        for (int t = from; t < static_cast<int>(base.verts.size()); ++t) {
          cur.push_back(t);
          gen(t, cur);
          cur.pop_back();
        }
      };
      std::vector<int> cur;
      gen(0, cur);

      for (const auto& targets : target_multisets) {
        int extra_cycles = static_cast<int>(targets.size()) - 1;
        for (int g = 0; g <= 2; ++g)
          for (int loops = 0; loops <= 1; ++loops) {
            Skeleton s = base;
            int nv = static_cast<int>(s.verts.size());
            s.verts.push_back({g, false, {}});
            for (int t : targets) s.edges.push_back({t, nv});
            for (int i = 0; i < loops; ++i) s.edges.push_back({nv, nv});
            s.cycles += extra_cycles + loops;
            try_add(std::move(s), v + 1);
          }
        // Attach a new singular placeholder (edges to normal vertices only).
        bool all_normal = true;
        for (int t : targets)
          if (base.verts[t].singular) all_normal = false;
        if (!all_normal) continue;
        for (const auto& t : sing_menu) {
          if (static_cast<int>(targets.size()) > t.branches) continue;
          Skeleton s = base;
          int nv = static_cast<int>(s.verts.size());
          s.verts.push_back({t.local_genus(), true, t});
          for (int tg : targets) s.edges.push_back({tg, nv});
          s.cycles += extra_cycles;
          try_add(std::move(s), v + 1);
        }
      }
    }
  }

  std::vector<Skeleton> out;
  for (auto& level : levels)
    for (auto& s : level)
      if (s.genus_total() == 2) out.push_back(std::move(s));
  return out;
}

/// Converts a skeleton into decorated graphs (one per choice of special
/// branches), without legs.
std::vector<DecoratedGraph> realize(const Skeleton& s, int max_real_verts) {
  // Check singular degrees and count real vertices.
  int real_verts = 0;
  for (size_t v = 0; v < s.verts.size(); ++v) {
    if (s.verts[v].singular) {
      if (s.degree(static_cast<int>(v)) != s.verts[v].type.branches) return {};
      for (auto [a, b] : s.edges)
        if (a == static_cast<int>(v) && b == static_cast<int>(v)) return {};
    } else {
      ++real_verts;
    }
  }
  if (real_verts > max_real_verts || real_verts == 0) return {};

  DecoratedGraph base;
  std::map<int, int> vmap;
  for (size_t v = 0; v < s.verts.size(); ++v)
    if (!s.verts[v].singular)
      vmap[static_cast<int>(v)] = base.add_vertex(s.verts[v].genus);
  std::vector<std::vector<int>> slot_lists(s.verts.size());
  for (auto [a, b] : s.edges) {
    bool sa = s.verts[a].singular, sb = s.verts[b].singular;
    if (!sa && !sb) {
      base.add_edge(vmap.at(a), vmap.at(b));
    } else if (sa) {
      slot_lists[a].push_back(vmap.at(b));
    } else {
      slot_lists[b].push_back(vmap.at(a));
    }
  }

  std::vector<DecoratedGraph> out{base};
  for (size_t v = 0; v < s.verts.size(); ++v) {
    if (!s.verts[v].singular) continue;
    const auto& type = s.verts[v].type;
    std::vector<std::vector<int>> specials;
    if (type.kind == SingularityType::Kind::Elliptic) {
      specials.push_back({});
    } else if (type.kind == SingularityType::Kind::GenusTwoI) {
      for (int i = 0; i < type.branches; ++i) specials.push_back({i});
    } else {
      for (int i = 0; i < type.branches; ++i)
        for (int j = i + 1; j < type.branches; ++j) specials.push_back({i, j});
    }
    std::vector<DecoratedGraph> next;
    for (const auto& g : out)
      for (const auto& sp : specials) {
        DecoratedGraph h = g;
        DecoratedGraph::SingularPoint rec;
        rec.type = type;
        rec.branches = slot_lists[v];
        rec.special = sp;
        h.add_singular_point(rec);
        next.push_back(std::move(h));
      }
    out = std::move(next);
  }
  return out;
}

/// Assigns n labelled legs to the vertices, yielding each decorated graph.
void assign_legs(const DecoratedGraph& base, int n, bool require_semistable,
                 const std::function<void(const DecoratedGraph&)>& yield) {
  auto verts = base.vertices();
  // Quick pruning bound: rational vertices short of two special points
  // need that many legs.
  std::vector<int> assignment(n, -1);
  std::function<void(int)> rec = [&](int mark) {
    if (mark == n) {
      DecoratedGraph g = base;
      for (int i = 0; i < n; ++i) g.add_leg(i + 1, assignment[i]);
      if (require_semistable) {
        for (int v : g.vertices())
          if (g.genus_of(v) == 0 && g.special_count(v) < 2) return;
      }
      yield(g);
      return;
    }
    for (int v : verts) {
      assignment[mark] = v;
      // Prune: remaining legs must cover remaining deficiencies.
      int deficiency = 0;
      for (int w : verts) {
        if (base.genus_of(w) != 0) continue;
        int have = base.special_count(w);
        for (int i = 0; i <= mark; ++i)
          if (assignment[i] == w) ++have;
        deficiency += std::max(0, 2 - have);
      }
      if (!require_semistable || deficiency <= n - mark - 1) rec(mark + 1);
      assignment[mark] = -1;
    }
  };
  rec(0);
}

}  // namespace

void enumerate_semistable_genus2(
    int max_vertices, int n,
    const std::function<void(const DecoratedGraph&)>& yield) {
  auto skeletons = enumerate_skeletons(max_vertices, {});
  std::map<std::string, std::vector<DecoratedGraph>> seen;
  for (const auto& s : skeletons) {
    for (const auto& base : realize(s, max_vertices)) {
      assign_legs(base, n, true, [&](const DecoratedGraph& g) {
        auto key = graph_fingerprint(g);
        auto& bucket = seen[key];
        for (const auto& other : bucket)
          if (isomorphic(other, g)) return;
        bucket.push_back(g);
        yield(g);
      });
    }
  }
}

namespace {

std::vector<DecoratedGraph> enumerate_filtered(
    int n, int max_vertices, const std::vector<SingularityType>& menu,
    const std::function<bool(const DecoratedGraph&)>& keep) {
  auto skeletons = enumerate_skeletons(max_vertices, menu);
  std::map<std::string, std::vector<DecoratedGraph>> seen;
  std::vector<std::pair<std::string, DecoratedGraph>> out;
  for (const auto& s : skeletons) {
    for (const auto& base : realize(s, max_vertices)) {
      assign_legs(base, n, false, [&](const DecoratedGraph& g0) {
        DecoratedGraph g = g0;
        for (int sid : g.singular_ids())
          g.singular_mut(sid).dangling = computed_dangling(g, sid);
        if (!keep(g)) return;
        auto key = graph_fingerprint(g);
        auto& bucket = seen[key];
        for (const auto& other : bucket)
          if (isomorphic(other, g)) return;
        bucket.push_back(g);
        out.push_back({key, g});
      });
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second.vertices().size() != b.second.vertices().size())
      return a.second.vertices().size() < b.second.vertices().size();
    return a.first < b.first;
  });
  std::vector<DecoratedGraph> graphs;
  for (auto& [key, g] : out) graphs.push_back(std::move(g));
  return graphs;
}

}  // namespace

std::vector<DecoratedGraph> enumerate_stable_types(int n, int m,
                                                   int max_vertices) {
  if (m < 1 || m >= n) throw input_error("need 1 <= m < n");
  if (max_vertices > 12) throw input_error("vertex bound capped at 12");
  std::vector<SingularityType> menu;
  for (int l = 1; l <= m + 1; ++l) menu.push_back(SingularityType::elliptic(l));
  for (int j = 1; j <= m; ++j) menu.push_back(SingularityType::type_I(j));
  for (int j = 2; j <= m + 1; ++j) menu.push_back(SingularityType::type_II(j));
  return enumerate_filtered(n, max_vertices, menu, [&](const DecoratedGraph& g) {
    try {
      return check_m_stability(g, m).stable;
    } catch (const std::exception&) {
      return false;
    }
  });
}

std::vector<DecoratedGraph> enumerate_dm_stable_types(int n, int max_vertices) {
  return enumerate_filtered(n, max_vertices, {}, [&](const DecoratedGraph& g) {
    if (arithmetic_genus(g) != 2) return false;
    for (int v : g.vertices()) {
      int c = g.special_count(v);
      if (g.genus_of(v) == 0 && c < 3) return false;
      if (g.genus_of(v) == 1 && c < 1) return false;
    }
    return true;
  });
}

}  // namespace genus2
