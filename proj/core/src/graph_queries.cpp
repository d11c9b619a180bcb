#include "genus2/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace genus2 {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<char> member_mask(const DecoratedGraph& g, const Subcurve& s) {
  std::vector<char> in(g.vertex_storage_size(), 0);
  for (int v : s) {
    if (!g.vertex_alive(v)) throw input_error("subcurve uses a dead vertex");
    in[v] = 1;
  }
  return in;
}

/// Delta contribution of a hyperedge restricted to the subcurve, along with
/// whether the inside slots are glued together by the singular point.
struct InducedSing {
  int delta = 0;
  bool glues = false;
  int inside = 0;
};

InducedSing induced_sing(const DecoratedGraph::SingularPoint& sp,
                         const std::vector<char>& in) {
  InducedSing r;
  std::vector<int> inside_slots;
  for (int i = 0; i < static_cast<int>(sp.branches.size()); ++i)
    if (in[sp.branches[i]]) inside_slots.push_back(i);
  const int k = static_cast<int>(inside_slots.size());
  r.inside = k;
  if (k == 0) return r;
  const int m = sp.type.branches;
  auto is_special = [&](int slot) {
    return std::find(sp.special.begin(), sp.special.end(), slot) !=
           sp.special.end();
  };
  if (k == m) {
    r.delta = sp.type.delta();
    r.glues = k >= 2;
    return r;
  }
  switch (sp.type.kind) {
    case SingularityType::Kind::Node:
    case SingularityType::Kind::Elliptic:
      // Partial sets of general lines form an ordinary k-fold point.
      r.delta = k >= 2 ? k - 1 : 0;
      r.glues = k >= 2;
      break;
    case SingularityType::Kind::GenusTwoI: {
      bool has_singular = false;
      for (int i : inside_slots)
        if (is_special(i)) has_singular = true;
      if (has_singular)
        r.delta = (k == 1) ? 1 : k + 1;  // cusp, or a smaller type I
      else
        r.delta = k >= 2 ? k - 1 : 0;
      r.glues = k >= 2;
      break;
    }
    case SingularityType::Kind::GenusTwoII: {
      int twins = 0;
      for (int i : inside_slots)
        if (is_special(i)) ++twins;
      if (twins == 2)
        r.delta = k + 1;  // a smaller type II
      else
        r.delta = k >= 2 ? k - 1 : 0;
      r.glues = k >= 2;
      break;
    }
    case SingularityType::Kind::NonGorenstein:
      throw unsupported_error("cannot restrict an unclassified singularity");
  }
  return r;
}

UnionFind connectivity(const DecoratedGraph& g, const std::vector<char>& in) {
  UnionFind uf(g.vertex_storage_size());
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (in[ed.u] && in[ed.v]) uf.unite(ed.u, ed.v);
  }
  for (int s : g.singular_ids()) {
    const auto& sp = g.singular(s);
    auto ind = induced_sing(sp, in);
    if (!ind.glues) continue;
    int first = -1;
    for (int v : sp.branches) {
      if (!in[v]) continue;
      if (first < 0)
        first = v;
      else
        uf.unite(first, v);
    }
  }
  return uf;
}

}  // namespace

bool is_connected(const DecoratedGraph& g, const Subcurve& s) {
  if (s.empty()) return false;
  auto in = member_mask(g, s);
  auto uf = connectivity(g, in);
  int root = uf.find(s[0]);
  for (int v : s)
    if (uf.find(v) != root) return false;
  return true;
}

std::vector<Subcurve> components(const DecoratedGraph& g, const Subcurve& s) {
  auto in = member_mask(g, s);
  auto uf = connectivity(g, in);
  std::map<int, Subcurve> by_root;
  for (int v : s) by_root[uf.find(v)].push_back(v);
  std::vector<Subcurve> out;
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  return out;
}

int arithmetic_genus(const DecoratedGraph& g, const Subcurve& s) {
  if (!is_connected(g, s))
    throw input_error("arithmetic genus of a disconnected subcurve");
  auto in = member_mask(g, s);
  int total = 0;
  for (int v : s) total += g.genus_of(v);
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (in[ed.u] && in[ed.v]) total += 1;  // an internal node
  }
  for (int sid : g.singular_ids())
    total += induced_sing(g.singular(sid), in).delta;
  return total - static_cast<int>(s.size()) + 1;
}

int arithmetic_genus(const DecoratedGraph& g) {
  return arithmetic_genus(g, g.vertices());
}

LevelInfo level(const DecoratedGraph& g, const Subcurve& s) {
  auto in = member_mask(g, s);
  LevelInfo info;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (in[ed.u] != in[ed.v]) info.nodal_boundary += 1;
  }
  for (const auto& [mark, v] : g.legs()) {
    if (mark == kAuxMarking) continue;
    if (in[v]) info.markings += 1;
  }
  for (int sid : g.singular_ids()) {
    auto ind = induced_sing(g.singular(sid), in);
    if (ind.inside > 0 &&
        ind.inside < static_cast<int>(g.singular(sid).branches.size())) {
      info.hyperedge_boundary += ind.inside;
      info.nodally_attached = false;
    }
  }
  return info;
}

bool is_nodally_attached(const DecoratedGraph& g, const Subcurve& s) {
  return level(g, s).nodally_attached;
}

Subcurve core(const DecoratedGraph& g) {
  Subcurve all = g.vertices();
  if (arithmetic_genus(g, all) != 2)
    throw input_error("core is defined for curves of arithmetic genus two");

  // Every genus-two subcurve contains all the genus carriers: positive-genus
  // vertices, cycle vertices (through nodes or singular points), and the
  // branches of every singular point. The core is the carrier set plus the
  // connecting paths, obtained by stripping non-carrier leaves.
  std::set<int> carriers;
  for (int v : all)
    if (g.genus_of(v) > 0) carriers.insert(v);
  for (int s : g.singular_ids())
    for (int v : g.singular(s).branches) carriers.insert(v);

  // Cycle detection on the auxiliary graph with singular points as extra
  // vertices: DFS bridge finding; endpoints of non-bridge edges carry
  // cycles.
  {
    struct Arc {
      int to;
      int id;
    };
    int nv = g.vertex_storage_size();
    int total = nv + static_cast<int>(g.singular_ids().size());
    std::vector<std::vector<Arc>> adj(total);
    int arc_id = 0;
    auto link = [&](int a, int b) {
      adj[a].push_back({b, arc_id});
      adj[b].push_back({a, arc_id});
      ++arc_id;
    };
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      if (ed.u == ed.v) {
        carriers.insert(ed.u);  // a self-node is its own cycle
        continue;
      }
      link(ed.u, ed.v);
    }
    std::map<int, int> sing_node;
    int next = nv;
    for (int s : g.singular_ids()) {
      sing_node[s] = next++;
      for (int v : g.singular(s).branches) link(sing_node[s], v);
    }
    // Iterative DFS lowlink bridge detection.
    std::vector<int> disc(total, -1), low(total, 0);
    std::vector<std::pair<int, int>> stack;  // (vertex, incoming arc id)
    int timer = 0;
    std::vector<char> on_cycle_arc(arc_id, 0);
    for (int root = 0; root < total; ++root) {
      if (disc[root] >= 0 || adj[root].empty()) continue;
      std::vector<std::tuple<int, int, size_t>> st{{root, -1, 0}};
      disc[root] = low[root] = timer++;
      while (!st.empty()) {
        auto& [v, in_arc, idx] = st.back();
        if (idx < adj[v].size()) {
          Arc a = adj[v][idx++];
          if (a.id == in_arc) {
            // Allow parallel arcs: only skip the exact incoming arc once.
            in_arc = -2;
            continue;
          }
          if (disc[a.to] < 0) {
            disc[a.to] = low[a.to] = timer++;
            st.push_back({a.to, a.id, 0});
          } else {
            low[v] = std::min(low[v], disc[a.to]);
            on_cycle_arc[a.id] = disc[a.to] != disc[v] ? on_cycle_arc[a.id] : 1;
          }
        } else {
          int child = v, carc = in_arc;
          st.pop_back();
          if (!st.empty()) {
            auto& [p, pin, pidx] = st.back();
            low[p] = std::min(low[p], low[child]);
            if (low[child] <= disc[p] && carc >= 0) on_cycle_arc[carc] = 1;
          }
        }
      }
    }
    // Mark endpoints of cycle arcs; propagate low-link cycles: any arc that
    // is not a bridge lies on a cycle.
    // Recompute simply: an arc (u,v) is a bridge iff removing it raises the
    // component count; with lowlink: tree arc to child c is a bridge iff
    // low[c] > disc[parent]; non-tree arcs are never bridges.
    (void)on_cycle_arc;
    // Second pass: recompute bridges cleanly.
    std::vector<char> is_tree(arc_id, 0), is_bridge(arc_id, 0);
    std::fill(disc.begin(), disc.end(), -1);
    timer = 0;
    for (int root = 0; root < total; ++root) {
      if (disc[root] >= 0 || adj[root].empty()) continue;
      std::vector<std::tuple<int, int, size_t>> st{{root, -1, 0}};
      disc[root] = low[root] = timer++;
      while (!st.empty()) {
        auto& [v, in_arc, idx] = st.back();
        if (idx < adj[v].size()) {
          Arc a = adj[v][idx++];
          if (a.id == in_arc) {
            in_arc = -2;
            continue;
          }
          if (disc[a.to] < 0) {
            disc[a.to] = low[a.to] = timer++;
            is_tree[a.id] = 1;
            st.push_back({a.to, a.id, 0});
          } else {
            low[v] = std::min(low[v], disc[a.to]);
          }
        } else {
          int child = v, carc = in_arc;
          st.pop_back();
          if (!st.empty()) {
            auto& [p, pin, pidx] = st.back();
            (void)pin;
            (void)pidx;
            low[p] = std::min(low[p], low[child]);
            if (carc >= 0 && low[child] > disc[p]) is_bridge[carc] = 1;
          }
        }
      }
    }
    arc_id = 0;
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      if (ed.u == ed.v) continue;
      if (!is_bridge[arc_id]) {
        carriers.insert(ed.u);
        carriers.insert(ed.v);
      }
      ++arc_id;
    }
    for (int s : g.singular_ids()) {
      for (int v : g.singular(s).branches) {
        // Arcs between singular nodes and branches follow in insertion
        // order after the plain edges.
        if (!is_bridge[arc_id]) carriers.insert(v);
        ++arc_id;
      }
    }
  }

  // Strip non-carrier leaves of the nodal adjacency until fixed.
  std::set<int> s(all.begin(), all.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : std::vector<int>(s.begin(), s.end())) {
      if (carriers.count(v)) continue;
      int deg = 0;
      for (int e : g.edges_at(v)) {
        const auto& ed = g.edge(e);
        int w = ed.u == v ? ed.v : ed.u;
        if (w != v && s.count(w)) ++deg;
      }
      if (deg <= 1) {
        s.erase(v);
        changed = true;
      }
    }
  }
  return Subcurve(s.begin(), s.end());
}

namespace {

/// All simple cycles through genus-zero vertex sets, as vertex sets.
std::vector<Subcurve> simple_cycle_sets(const DecoratedGraph& g) {
  std::vector<Subcurve> cycles;
  std::set<std::vector<int>> seen;
  auto verts = g.vertices();

  // Self-loops.
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (ed.u == ed.v) {
      std::vector<int> key{ed.u};
      if (seen.insert(key).second) cycles.push_back(key);
    }
  }
  // Parallel edges.
  std::map<std::pair<int, int>, int> pair_count;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    pair_count[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}] += 1;
  }
  for (auto& [pr, count] : pair_count) {
    if (count >= 2) {
      std::vector<int> key{pr.first, pr.second};
      if (seen.insert(key).second) cycles.push_back(key);
    }
  }
  // Longer simple cycles: DFS from each vertex, only visiting ids >= start.
  std::map<std::pair<int, int>, bool> has_edge;
  for (auto& [pr, count] : pair_count) has_edge[pr] = true;
  for (int start : verts) {
    std::vector<int> path{start};
    std::set<int> on_path{start};
    std::function<void(int)> dfs = [&](int v) {
      for (int e : g.edges_at(v)) {
        const auto& ed = g.edge(e);
        int w = ed.u == v ? ed.v : ed.u;
        if (w == v) continue;
        if (w == start && path.size() >= 3) {
          std::vector<int> key = path;
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) cycles.push_back(key);
          continue;
        }
        if (w < start || on_path.count(w)) continue;
        path.push_back(w);
        on_path.insert(w);
        dfs(w);
        path.pop_back();
        on_path.erase(w);
      }
    };
    dfs(start);
  }
  return cycles;
}

}  // namespace

std::vector<Subcurve> minimal_genus_one_subcurves(const DecoratedGraph& g) {
  std::vector<Subcurve> candidates;
  for (int v : g.vertices()) {
    Subcurve s{v};
    if (arithmetic_genus(g, s) == 1) candidates.push_back(std::move(s));
  }
  for (auto& cyc : simple_cycle_sets(g))
    if (arithmetic_genus(g, cyc) == 1) candidates.push_back(cyc);
  for (int sid : g.singular_ids()) {
    const auto& sp = g.singular(sid);
    Subcurve s = sp.branches;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (is_connected(g, s) && arithmetic_genus(g, s) == 1)
      candidates.push_back(std::move(s));
  }
  // Keep the inclusion-minimal ones, deduplicated.
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::vector<Subcurve> out;
  for (const auto& a : candidates) {
    bool minimal = true;
    for (const auto& b : candidates) {
      if (a == b) continue;
      if (std::includes(a.begin(), a.end(), b.begin(), b.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(a);
  }
  return out;
}

bool is_rDM(const DecoratedGraph& g) {
  for (int v : g.vertices()) {
    if (!g.slots_at(v).empty()) continue;  // not nodally attached terrain
    int n = g.special_count(v);
    if (g.genus_of(v) == 0 && n < 3) return false;
    if (g.genus_of(v) == 1 && n < 1) return false;
  }
  return true;
}

bool cleaves_to(const DecoratedGraph& g, const Point& p, int target_vertex) {
  int v0 = -1;
  if (p.kind == Point::Kind::Leg)
    v0 = g.leg_vertex(p.marking);
  else
    v0 = p.vertex;
  if (!g.vertex_alive(v0)) throw input_error("point on a dead vertex");
  if (v0 == target_vertex) return true;

  auto passable = [&](int v) {
    return g.genus_of(v) == 0 && g.special_count(v) == 2 &&
           g.slots_at(v).empty();
  };
  if (!passable(v0)) return false;
  std::set<int> visited{v0};
  std::vector<int> queue{v0};
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      int w = ed.u == v ? ed.v : ed.u;
      if (w == target_vertex) return true;
      if (visited.count(w) || !passable(w)) continue;
      visited.insert(w);
      queue.push_back(w);
    }
  }
  return false;
}

MinimalGenusTwoCase classify_minimal_genus2(const DecoratedGraph& g,
                                            const Subcurve& s) {
  if (arithmetic_genus(g, s) != 2)
    throw input_error("not a genus-two subcurve");
  auto in = member_mask(g, s);
  // Minimality: no internal separating node cutting off genus zero.
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (!in[ed.u] || !in[ed.v] || ed.u == ed.v) continue;
    DecoratedGraph cut = g;
    cut.remove_edge(e);
    auto comps = components(cut, s);
    if (comps.size() == 2) {
      for (auto& c : comps)
        if (arithmetic_genus(cut, c) == 0)
          throw input_error("not minimal: a separating node splits off genus zero");
    }
  }
  for (int sid : g.singular_ids()) {
    auto ind = induced_sing(g.singular(sid), in);
    if (ind.inside == 0) continue;
    if (g.singular(sid).type.genus_two())
      return MinimalGenusTwoCase::GenusTwoSingularity;
  }
  for (int sid : g.singular_ids()) {
    auto ind = induced_sing(g.singular(sid), in);
    if (ind.inside > 0) return MinimalGenusTwoCase::EllipticMFold;
  }
  for (int v : s)
    if (g.genus_of(v) == 2) return MinimalGenusTwoCase::SmoothGenusTwo;

  // Nodal core built from genus <= 1 pieces.
  std::vector<Subcurve> ones;
  for (auto& e1 : minimal_genus_one_subcurves(g)) {
    bool inside = true;
    for (int v : e1)
      if (!in[v]) inside = false;
    if (inside) ones.push_back(e1);
  }
  if (ones.empty()) return MinimalGenusTwoCase::TwoRationalsThreeChains;
  if (ones.size() == 1) return MinimalGenusTwoCase::GenusOneWithChain;
  if (ones.size() == 2) {
    std::set<int> a(ones[0].begin(), ones[0].end());
    bool disjoint = true;
    for (int v : ones[1])
      if (a.count(v)) disjoint = false;
    if (disjoint) return MinimalGenusTwoCase::TwoGenusOneCores;
  }
  return MinimalGenusTwoCase::TwoRationalsThreeChains;
}

namespace {

/// Walks from vertex v along the direction of edge e through strictly
/// semistable rational core components; returns the anchor vertex reached
/// (first vertex that is not a 2-special rational pass-through) or -1.
int walk_anchor(const DecoratedGraph& g, const std::vector<char>& in_core,
                int v, int e) {
  int prev = v;
  const auto& ed0 = g.edge(e);
  int cur = ed0.u == v ? ed0.v : ed0.u;
  int prev_edge = e;
  while (true) {
    if (!in_core[cur]) return -1;
    if (g.genus_of(cur) > 0 || !g.slots_at(cur).empty()) return cur;
    // Count core edges at cur.
    std::vector<int> es = g.edges_at(cur);
    std::vector<int> core_es;
    for (int ee : es) {
      const auto& ed = g.edge(ee);
      int other = ed.u == cur ? ed.v : ed.u;
      if (in_core[other]) core_es.push_back(ee);
    }
    if (core_es.size() != 2 || g.special_count(cur) != 2) return cur;
    int next_edge = core_es[0] == prev_edge ? core_es[1] : core_es[0];
    const auto& ed = g.edge(next_edge);
    prev = cur;
    cur = ed.u == cur ? ed.v : ed.u;
    prev_edge = next_edge;
    (void)prev;
  }
}

}  // namespace

WeierstrassAnswer weierstrass_status(const DecoratedGraph& g, const Point& p) {
  Subcurve k = core(g);
  auto in = member_mask(g, k);
  int v = p.kind == Point::Kind::Leg ? g.leg_vertex(p.marking) : p.vertex;
  if (!g.vertex_alive(v) || !in[v])
    throw input_error("weierstrass status wants a point on the core");

  WeierstrassAnswer ans;
  if (g.genus_of(v) == 2) {
    ans.status = WeierstrassStatus::Conditional;
    ans.predicate = Decoration{Decoration::Kind::Weierstrass, {p}, 0};
    return ans;
  }
  if (g.genus_of(v) == 1) {
    // Boundary of {v} inside the core.
    std::vector<int> core_edges;
    int self_loops = 0;
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      if (ed.u == v && ed.v == v) {
        ++self_loops;
        continue;
      }
      int w = ed.u == v ? ed.v : ed.u;
      if (in[w]) core_edges.push_back(e);
    }
    if (self_loops == 0 && core_edges.size() == 1) {
      const auto& ed = g.edge(core_edges[0]);
      int w = ed.u == v ? ed.v : ed.u;
      ans.status = WeierstrassStatus::Conditional;
      ans.predicate =
          Decoration{Decoration::Kind::Torsion, {p, Point::towards(v, w)}, 2};
      return ans;
    }
    ans.status = WeierstrassStatus::Conditional;
    ans.predicate = Decoration{Decoration::Kind::Weierstrass, {p}, 0};
    return ans;
  }

  // Rational component of the core: chase both core directions to their
  // anchors.
  std::vector<int> core_edges;
  for (int e : g.edges_at(v)) {
    const auto& ed = g.edge(e);
    if (ed.u == v && ed.v == v) {
      ans.status = WeierstrassStatus::Conditional;
      ans.predicate = Decoration{Decoration::Kind::Weierstrass, {p}, 0};
      return ans;
    }
    int w = ed.u == v ? ed.v : ed.u;
    if (in[w]) core_edges.push_back(e);
  }
  if (core_edges.size() == 2 && g.slots_at(v).empty()) {
    int a = walk_anchor(g, in, v, core_edges[0]);
    int b = walk_anchor(g, in, v, core_edges[1]);
    if (a >= 0 && a == b && g.genus_of(a) == 1 && g.slots_at(a).empty()) {
      // Rational chain attached to one genus-one curve at two distinct
      // points: every point of it is a limit of Weierstrass points.
      ans.status = WeierstrassStatus::Always;
      return ans;
    }
    if (a >= 0 && b >= 0 && a != b) {
      Subcurve sa{a}, sb{b};
      if (arithmetic_genus(g, sa) >= 1 && arithmetic_genus(g, sb) >= 1) {
        // Bridge between two distinct genus-one subcurves: never Weierstrass.
        ans.status = WeierstrassStatus::Never;
        return ans;
      }
    }
  }
  ans.status = WeierstrassStatus::Conditional;
  ans.predicate = Decoration{Decoration::Kind::Weierstrass, {p}, 0};
  return ans;
}

namespace {

std::string vertex_signature(const DecoratedGraph& g, int v) {
  std::ostringstream os;
  os << "g" << g.genus_of(v) << ";d" << g.edges_at(v).size() << ";s"
     << g.special_count(v, true);
  std::vector<int> marks;
  for (const auto& [mark, vert] : g.legs())
    if (vert == v) marks.push_back(mark);
  os << ";m";
  for (int m : marks) os << m << ",";
  std::vector<std::string> slotsigs;
  for (auto [sid, slot] : g.slots_at(v)) {
    const auto& sp = g.singular(sid);
    bool special = std::find(sp.special.begin(), sp.special.end(), slot) !=
                   sp.special.end();
    slotsigs.push_back(sp.type.str() + (special ? "*" : "") +
                       (sp.dangling ? "!" : "") + (sp.atom ? "@" : ""));
  }
  std::sort(slotsigs.begin(), slotsigs.end());
  os << ";h";
  for (auto& t : slotsigs) os << t << ",";
  return os.str();
}

}  // namespace

std::string graph_fingerprint(const DecoratedGraph& g) {
  // Weisfeiler-Lehman style refinement over the structural labels.
  auto verts = g.vertices();
  std::map<int, std::string> label;
  for (int v : verts) label[v] = vertex_signature(g, v);
  for (int round = 0; round < 3; ++round) {
    std::map<int, std::string> next;
    for (int v : verts) {
      std::vector<std::string> nb;
      for (int e : g.edges_at(v)) {
        const auto& ed = g.edge(e);
        nb.push_back(label.at(ed.u == v ? ed.v : ed.u));
      }
      for (auto [sid, slot] : g.slots_at(v))
        for (int w : g.singular(sid).branches)
          if (w != v) nb.push_back("~" + label.at(w));
      std::sort(nb.begin(), nb.end());
      std::string s = label.at(v) + "|";
      for (auto& x : nb) s += x + "&";
      next[v] = std::move(s);
    }
    label = std::move(next);
  }
  std::vector<std::string> all;
  for (int v : verts) all.push_back(label.at(v));
  std::sort(all.begin(), all.end());
  std::ostringstream os;
  os << verts.size() << "/" << g.edge_ids().size() << "/"
     << g.singular_ids().size() << ":";
  for (auto& s : all) os << s << "#";
  return os.str();
}

namespace {

/// Resolved, map-independent decoration token for isomorphism comparison.
std::string decoration_token(const DecoratedGraph& g, const Decoration& d,
                             const std::map<int, int>& vmap) {
  std::ostringstream os;
  os << static_cast<int>(d.kind) << ":" << d.order << ":";
  std::vector<std::string> pts;
  for (const auto& p : d.points) {
    if (p.kind == Point::Kind::Leg)
      pts.push_back("L" + std::to_string(p.marking));
    else if (p.kind == Point::Kind::Toward)
      pts.push_back("T" + std::to_string(vmap.at(p.vertex)) + ">" +
                    std::to_string(vmap.at(p.toward)));
    else
      pts.push_back("V" + std::to_string(vmap.at(p.vertex)));
  }
  std::sort(pts.begin(), pts.end());
  for (auto& s : pts) os << s << ",";
  return os.str();
}

bool check_full_map(const DecoratedGraph& a, const DecoratedGraph& b,
                    const std::map<int, int>& m) {
  // Edge multisets.
  std::map<std::pair<int, int>, int> ea, eb;
  for (int e : a.edge_ids()) {
    const auto& ed = a.edge(e);
    int u = m.at(ed.u), v = m.at(ed.v);
    ea[{std::min(u, v), std::max(u, v)}] += 1;
  }
  for (int e : b.edge_ids()) {
    const auto& ed = b.edge(e);
    eb[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}] += 1;
  }
  if (ea != eb) return false;
  // Hyperedges as multisets of branch data.
  auto sing_tokens = [&](const DecoratedGraph& g, bool mapped) {
    std::vector<std::string> tokens;
    for (int sid : g.singular_ids()) {
      const auto& sp = g.singular(sid);
      std::vector<std::string> slots;
      for (int i = 0; i < static_cast<int>(sp.branches.size()); ++i) {
        int v = mapped ? m.at(sp.branches[i]) : sp.branches[i];
        bool special = std::find(sp.special.begin(), sp.special.end(), i) !=
                       sp.special.end();
        slots.push_back(std::to_string(v) + (special ? "*" : ""));
      }
      std::sort(slots.begin(), slots.end());
      std::string t = sp.type.str() + (sp.dangling ? "!" : "") +
                      (sp.atom ? "@" : "") + ":";
      for (auto& s : slots) t += s + ",";
      tokens.push_back(std::move(t));
    }
    std::sort(tokens.begin(), tokens.end());
    return tokens;
  };
  if (sing_tokens(a, true) != sing_tokens(b, false)) return false;
  // Legs.
  for (const auto& [mark, v] : a.legs()) {
    if (!b.has_leg(mark) || b.leg_vertex(mark) != m.at(v)) return false;
  }
  if (a.legs().size() != b.legs().size()) return false;
  // Decorations up to resolution.
  std::map<int, int> idb;
  for (int v : b.vertices()) idb[v] = v;
  std::vector<std::string> da, db;
  for (const auto& d : a.decorations()) da.push_back(decoration_token(a, d, m));
  for (const auto& d : b.decorations()) db.push_back(decoration_token(b, d, idb));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  return da == db;
}

bool extend_map(const DecoratedGraph& a, const DecoratedGraph& b,
                const std::vector<int>& va, std::vector<int>& avail,
                std::map<int, int>& m, size_t next,
                const std::map<int, std::string>& siga,
                const std::map<int, std::string>& sigb) {
  if (next == va.size()) return check_full_map(a, b, m);
  int v = va[next];
  for (size_t i = 0; i < avail.size(); ++i) {
    int w = avail[i];
    if (w < 0) continue;
    if (siga.at(v) != sigb.at(w)) continue;
    // Self-loop counts and adjacency counts with mapped vertices must agree.
    bool ok = true;
    int loops_a = 0, loops_b = 0;
    std::map<int, int> cnt_a;
    for (int e : a.edges_at(v)) {
      const auto& ed = a.edge(e);
      if (ed.u == v && ed.v == v) {
        ++loops_a;
        continue;
      }
      int u = ed.u == v ? ed.v : ed.u;
      if (m.count(u)) cnt_a[m.at(u)] += 1;
    }
    for (int e : b.edges_at(w)) {
      const auto& ed = b.edge(e);
      if (ed.u == w && ed.v == w) ++loops_b;
    }
    if (loops_a != loops_b) continue;
    for (auto& [wu, c] : cnt_a) {
      int actual = 0;
      for (int e : b.edges_at(w)) {
        const auto& ed = b.edge(e);
        if (ed.u == w && ed.v == w) continue;
        int u = ed.u == w ? ed.v : ed.u;
        if (u == wu) ++actual;
      }
      if (actual != c) { ok = false; break; }
    }
    if (!ok) continue;
    m[v] = w;
    avail[i] = -1;
    if (extend_map(a, b, va, avail, m, next + 1, siga, sigb)) return true;
    avail[i] = w;
    m.erase(v);
  }
  return false;
}

}  // namespace

bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) {
  auto va = a.vertices();
  auto vb = b.vertices();
  if (va.size() != vb.size()) return false;
  if (a.edge_ids().size() != b.edge_ids().size()) return false;
  if (a.singular_ids().size() != b.singular_ids().size()) return false;
  if (graph_fingerprint(a) != graph_fingerprint(b)) return false;
  std::map<int, std::string> siga, sigb;
  for (int v : va) siga[v] = vertex_signature(a, v);
  for (int v : vb) sigb[v] = vertex_signature(b, v);
  std::map<int, int> m;
  return extend_map(a, b, va, vb, m, 0, siga, sigb);
}

}  // namespace genus2
