#include "genus2/balancing.hpp"

#include "genus2/rational.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace genus2 {

namespace {

std::vector<char> mask_of(const DecoratedGraph& g, const Subcurve& s) {
  std::vector<char> in(g.vertex_storage_size(), 0);
  for (int v : s) in[v] = 1;
  return in;
}

/// BFS distances from w over the whole graph.
std::map<int, int> distances_from(const DecoratedGraph& g, int w) {
  std::map<int, int> dist;
  dist[w] = 0;
  std::vector<int> frontier{w};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier)
      for (int e : g.edges_at(v)) {
        const auto& ed = g.edge(e);
        int u = ed.u == v ? ed.v : ed.u;
        if (dist.count(u)) continue;
        dist[u] = dist.at(v) + 1;
        next.push_back(u);
      }
    frontier = std::move(next);
  }
  return dist;
}

/// Edges at v that start a shortest path towards w.
std::set<int> first_steps(const DecoratedGraph& g, int v, int w) {
  std::set<int> out;
  if (v == w) return out;
  auto dist = distances_from(g, w);
  if (!dist.count(v)) return out;
  for (int e : g.edges_at(v)) {
    const auto& ed = g.edge(e);
    int u = ed.u == v ? ed.v : ed.u;
    if (u == v) continue;
    if (dist.count(u) && dist.at(u) == dist.at(v) - 1) out.insert(e);
  }
  return out;
}

/// Walks the cleaving chain from leg `mark` to vertex v; returns the edge by
/// which the chain enters v, -2 when the leg sits on v itself, or -1.
int leg_entry_edge(const DecoratedGraph& g, int mark, int v) {
  if (!g.has_leg(mark)) return -1;
  int cur = g.leg_vertex(mark);
  if (cur == v) return -2;
  auto passable = [&](int x) {
    return g.genus_of(x) == 0 && g.special_count(x, true) == 2 &&
           g.slots_at(x).empty();
  };
  int prev_edge = -1;
  std::set<int> seen{cur};
  while (passable(cur)) {
    int next_edge = -1;
    for (int e : g.edges_at(cur)) {
      if (e == prev_edge) continue;
      next_edge = e;
    }
    if (next_edge < 0) return -1;
    const auto& ed = g.edge(next_edge);
    int nxt = ed.u == cur ? ed.v : ed.u;
    if (nxt == v) return next_edge;
    if (seen.count(nxt)) return -1;
    seen.insert(nxt);
    cur = nxt;
    prev_edge = next_edge;
  }
  return -1;
}

/// Do a solver point (always Toward or OnVertex) and a decoration point
/// name the same spot?
bool point_equiv(const DecoratedGraph& g, const Point& solver,
                 const Point& deco) {
  int v = solver.vertex;
  switch (deco.kind) {
    case Point::Kind::OnVertex:
      return deco.vertex == v;
    case Point::Kind::Toward: {
      if (deco.vertex != v) return false;
      if (solver.kind != Point::Kind::Toward) return false;
      if (solver.toward == deco.toward) return true;
      auto a = first_steps(g, v, solver.toward);
      auto b = first_steps(g, v, deco.toward);
      for (int e : a)
        if (b.count(e)) return true;
      return false;
    }
    case Point::Kind::Leg: {
      int entry = leg_entry_edge(g, deco.marking, v);
      if (entry == -2) return true;  // leg on the component itself
      if (entry < 0) return false;
      if (solver.kind != Point::Kind::Toward) return false;
      const auto& ed = g.edge(entry);
      int u = ed.u == v ? ed.v : ed.u;
      if (u == solver.toward) return true;
      auto a = first_steps(g, v, solver.toward);
      return a.count(entry) > 0;
    }
  }
  return false;
}

bool decoration_satisfied(const DecoratedGraph& g, const Decoration& need) {
  for (const auto& d : g.decorations()) {
    bool kind_ok = d.kind == need.kind;
    // A torsion-two requirement is a Weierstrass assertion about its first
    // point; accept the direct form as well.
    if (!kind_ok && need.kind == Decoration::Kind::Torsion && need.order == 2 &&
        d.kind == Decoration::Kind::Weierstrass) {
      if (!need.points.empty() && !d.points.empty() &&
          point_equiv(g, need.points[0], d.points[0]))
        return true;
      continue;
    }
    if (!kind_ok) continue;
    if (need.kind == Decoration::Kind::Torsion && d.order != need.order)
      continue;
    if (d.points.size() != need.points.size()) continue;
    // Match point lists up to permutation (conjugate pairs are unordered).
    std::vector<bool> used(d.points.size(), false);
    std::function<bool(size_t)> match = [&](size_t i) -> bool {
      if (i == need.points.size()) return true;
      for (size_t j = 0; j < d.points.size(); ++j) {
        if (used[j]) continue;
        if (!point_equiv(g, need.points[i], d.points[j])) continue;
        used[j] = true;
        if (match(i + 1)) return true;
        used[j] = false;
      }
      return false;
    };
    if (match(0)) return true;
  }
  return false;
}

}  // namespace

BalancingResult solve_balancing(const BalancingProblem& problem) {
  const DecoratedGraph& g = *problem.graph;
  BalancingResult res;
  if (problem.z.empty()) {
    res.witness = "empty subcurve";
    return res;
  }
  if (!is_connected(g, problem.z)) {
    res.witness = "subcurve is not connected";
    return res;
  }
  auto in = mask_of(g, problem.z);
  for (int v : problem.z) {
    if (!g.slots_at(v).empty()) {
      res.witness = "subcurve is not nodal";
      res.witness_vertex = v;
      return res;
    }
  }
  for (const auto& [mark, v] : g.legs())
    if (in[v]) {
      res.witness = "subcurve carries marking " + std::to_string(mark);
      res.witness_vertex = v;
      return res;
    }

  // One degree equation per component; the matrix is a grounded Laplacian,
  // hence nonsingular, so the solution is unique over the rationals.
  struct Equation {
    std::map<int, Rat> coeff;
    Rat cst = 0;
  };
  std::map<int, Equation> eqs;
  int boundary_edges = 0;
  for (int v : problem.z) {
    int loops = 0, out = 0;
    std::map<int, int> inside_adj;
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      if (ed.u == v && ed.v == v) {
        ++loops;
        continue;
      }
      int w = ed.u == v ? ed.v : ed.u;
      ++out;
      if (in[w])
        inside_adj[w] += 1;
      else
        ++boundary_edges;
    }
    Equation eq;
    eq.cst = 2 * g.genus_of(v) + 2 * loops - 2 + out;
    eq.coeff[v] = -out;
    for (auto [w, mult] : inside_adj) eq.coeff[w] += mult;
    eqs[v] = std::move(eq);
  }
  if (boundary_edges == 0) {
    res.witness = "subcurve has no boundary";
    return res;
  }

  // Min-degree elimination; near-linear on trees, tiny dense block on
  // two-connected cores.
  std::vector<int> order;
  std::map<int, Equation> pivots;
  std::map<int, Equation> work = eqs;
  while (!work.empty()) {
    int best = -1;
    size_t best_size = SIZE_MAX;
    for (const auto& [v, eq] : work)
      if (eq.coeff.size() < best_size) {
        best = v;
        best_size = eq.coeff.size();
      }
    Equation piv = work.at(best);
    work.erase(best);
    if (piv.coeff.find(best) == piv.coeff.end() || piv.coeff.at(best) == 0) {
      res.witness = "degenerate balancing system";
      res.witness_vertex = best;
      return res;
    }
    Rat lead = piv.coeff.at(best);
    for (auto& [w, c] : piv.coeff) c /= lead;
    piv.cst /= lead;
    for (auto& [v, eq] : work) {
      auto it = eq.coeff.find(best);
      if (it == eq.coeff.end() || it->second == 0) continue;
      Rat f = it->second;
      eq.coeff.erase(it);
      for (const auto& [w, c] : piv.coeff) {
        if (w == best) continue;
        eq.coeff[w] -= f * c;
        if (eq.coeff[w] == 0) eq.coeff.erase(w);
      }
      eq.cst -= f * piv.cst;
    }
    order.push_back(best);
    pivots[best] = std::move(piv);
  }

  std::map<int, Rat> sol;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& piv = pivots.at(*it);
    Rat value = -piv.cst;
    for (const auto& [w, c] : piv.coeff) {
      if (w == *it) continue;
      value -= c * sol.at(w);
    }
    sol[*it] = value;
  }

  // Integrality, positivity, and the boundary pins.
  for (int v : problem.z) {
    const Rat& d = sol.at(v);
    if (denominator(d) != 1) {
      res.witness = "non-integral multiplicity " + rat_str(d);
      res.witness_vertex = v;
      return res;
    }
    if (d < 1) {
      res.witness = "multiplicity " + rat_str(d) + " below one";
      res.witness_vertex = v;
      return res;
    }
    res.degrees.d[v] = static_cast<long>(numerator(d).convert_to<long long>());
  }
  const long special_pin = problem.type == TailType::I ? 3 : 2;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    int inside = -1;
    if (in[ed.u] && !in[ed.v]) inside = ed.u;
    if (!in[ed.u] && in[ed.v]) inside = ed.v;
    if (inside < 0) continue;
    long pin = problem.special_edges.count(e) ? special_pin : 1;
    if (res.degrees.d.at(inside) != pin) {
      res.witness = "boundary pin " + std::to_string(pin) + " violated (got " +
                    std::to_string(res.degrees.d.at(inside)) + ")";
      res.witness_vertex = inside;
      return res;
    }
  }

  // Picard predicates at positive-genus components.
  for (int v : problem.z) {
    if (g.genus_of(v) == 0) continue;
    PicardPredicate p;
    p.vertex = v;
    p.canonical_mult = g.genus_of(v) == 2 ? 1 : 0;
    long dv = res.degrees.d.at(v);
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      if (ed.u == v && ed.v == v) {
        p.terms.push_back({Point::on(v), 1});
        p.terms.push_back({Point::on(v), 1});
        continue;
      }
      int w = ed.u == v ? ed.v : ed.u;
      long dw = in[w] ? res.degrees.d.at(w) : 0;
      int c = static_cast<int>(1 + dw - dv);
      if (c != 0) p.terms.push_back({Point::towards(v, w), c});
    }
    if (p.canonical_mult != 0 || !p.terms.empty())
      res.predicates.push_back(std::move(p));
  }
  res.feasible = true;
  return res;
}

bool predicate_matched(const DecoratedGraph& g, const PicardPredicate& p) {
  std::vector<std::pair<Point, int>> terms;
  for (const auto& t : p.terms)
    if (t.second != 0) terms.push_back(t);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (terms.empty() && p.canonical_mult == 0) return true;

  std::vector<int> coeffs;
  for (auto& t : terms) coeffs.push_back(t.second);

  if (p.canonical_mult == 1) {
    // Genus-two component: omega ~ -(sum c_x x).
    if (coeffs == std::vector<int>{-2})
      return decoration_satisfied(
          g, Decoration{Decoration::Kind::Weierstrass, {terms[0].first}, 0});
    if (coeffs == std::vector<int>{-1, -1})
      return decoration_satisfied(g, Decoration{Decoration::Kind::Conjugate,
                                                {terms[0].first, terms[1].first},
                                                0});
    return false;
  }
  if (p.canonical_mult != 0) return false;

  if (coeffs == std::vector<int>{2, -2})
    return decoration_satisfied(g, Decoration{Decoration::Kind::Torsion,
                                              {terms[0].first, terms[1].first},
                                              2});
  if (coeffs == std::vector<int>{2, -1, -1})
    return decoration_satisfied(
        g, Decoration{Decoration::Kind::Weierstrass, {terms[0].first}, 0});
  if (coeffs == std::vector<int>{1, 1, -2})
    return decoration_satisfied(g, Decoration{Decoration::Kind::Conjugate,
                                              {terms[0].first, terms[1].first},
                                              0});
  if (coeffs == std::vector<int>{1, 1, -1, -1})
    return decoration_satisfied(g, Decoration{Decoration::Kind::Conjugate,
                                              {terms[0].first, terms[1].first},
                                              0});
  if (coeffs.size() == 2 && coeffs[0] > 0 && coeffs[0] + coeffs[1] == 0)
    return decoration_satisfied(g, Decoration{Decoration::Kind::Torsion,
                                              {terms[0].first, terms[1].first},
                                              coeffs[0]});
  return false;
}

int weighted_core_distance(const DecoratedGraph& g, const Subcurve& core_set,
                           const std::set<int>& special_components, int a,
                           int b) {
  if (a == b) return 0;
  auto in = mask_of(g, core_set);
  if (!in[a] || !in[b]) throw input_error("dist* endpoints must be on the core");

  auto core_valence = [&](int v) {
    int n = 0;
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      if (ed.u == v && ed.v == v) {
        n += 2;
        continue;
      }
      int w = ed.u == v ? ed.v : ed.u;
      if (in[w]) n += 1;
    }
    return n;
  };
  auto stable = [&](int v) { return 2 * g.genus_of(v) - 2 + core_valence(v) > 0; };
  auto strictly_semistable = [&](int v) {
    return 2 * g.genus_of(v) - 2 + core_valence(v) == 0;
  };

  // Mark every edge on a simple path from a special component to a stable
  // non-special one through strictly semistable non-special interiors.
  std::set<int> weight_one;
  std::vector<int> core_edges;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (ed.u != ed.v && in[ed.u] && in[ed.v]) core_edges.push_back(e);
  }
  for (int s : core_set) {
    if (!special_components.count(s)) continue;
    std::vector<int> path_edges;
    std::set<int> on_path{s};
    std::function<void(int)> dfs = [&](int v) {
      for (int e : core_edges) {
        const auto& ed = g.edge(e);
        if (ed.u != v && ed.v != v) continue;
        int w = ed.u == v ? ed.v : ed.u;
        if (on_path.count(w)) continue;
        path_edges.push_back(e);
        if (stable(w) && !special_components.count(w))
          for (int pe : path_edges) weight_one.insert(pe);
        if (strictly_semistable(w) && !special_components.count(w)) {
          on_path.insert(w);
          dfs(w);
          on_path.erase(w);
        }
        path_edges.pop_back();
      }
    };
    dfs(s);
  }

  // 0/1-weight shortest path relaxation (cores are tiny).
  std::map<int, int> dist;
  dist[a] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e : core_edges) {
      const auto& ed = g.edge(e);
      int w = weight_one.count(e) ? 1 : 0;
      for (auto [x, y] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
        if (!dist.count(x)) continue;
        int nd = dist.at(x) + w;
        if (!dist.count(y) || nd < dist.at(y)) {
          dist[y] = nd;
          changed = true;
        }
      }
    }
  }
  if (!dist.count(b)) throw input_error("dist* endpoints are disconnected");
  return dist.at(b);
}

std::vector<int> expected_chain_lengths(const TailConfig& config) {
  const int k = config.k;
  std::set<int> special(config.special_attach.begin(),
                        config.special_attach.end());
  auto core_verts = config.core.vertices();
  auto dist_star = [&](int a, int b) {
    return weighted_core_distance(config.core, core_verts, special, a, b);
  };

  std::vector<int> lengths;
  const bool shared = config.type == TailType::II && config.trunk > 0;
  for (const auto& axis : config.axes) {
    if (config.type == TailType::I) {
      if (!axis.on_special_tree) {
        lengths.push_back(3 * k + 2 +
                          dist_star(config.special_attach[0], axis.core_attach));
      } else {
        int j = axis.depth;
        if (j < 1 || j > k) throw input_error("branch depth out of range");
        lengths.push_back(3 * k - 2 * j + 2);
      }
      continue;
    }
    if (!axis.on_special_tree) {
      int x1 = config.special_attach[0], xm = config.special_attach[1];
      if (!shared) {
        int d = std::min(dist_star(x1, axis.core_attach),
                         dist_star(xm, axis.core_attach));
        lengths.push_back(2 * k + 1 + d);
      } else {
        lengths.push_back(2 * k + 1 + config.trunk +
                          dist_star(x1, axis.core_attach));
      }
      continue;
    }
    int j = axis.depth;
    if (j < 1 || j > k) throw input_error("branch depth out of range");
    if (!shared) {
      lengths.push_back(2 * k - j + 1);
    } else {
      if (j <= config.trunk)
        lengths.push_back(2 * k + config.trunk - 2 * j + 1);
      else
        lengths.push_back(2 * k - j + 1);
    }
  }
  return lengths;
}

SynthesizedTail synthesize_tail(const TailConfig& config) {
  SynthesizedTail out;
  std::map<int, int> vm;
  DecoratedGraph& g = out.graph;
  for (int v : config.core.vertices()) vm[v] = g.add_vertex(config.core.genus_of(v));
  for (int e : config.core.edge_ids()) {
    const auto& ed = config.core.edge(e);
    g.add_edge(vm.at(ed.u), vm.at(ed.v));
  }
  for (int v : config.core.vertices()) out.z.push_back(vm.at(v));

  int next_mark = 2;
  auto add_tail_vertex = [&](int attach, std::vector<int> marks) {
    int t = g.add_vertex(0);
    int e = g.add_edge(attach, t);
    for (int m : marks) g.add_leg(m, t);
    return std::pair{t, e};
  };
  auto build_chain = [&](int from, int len) {
    std::vector<int> chain;
    int prev = from;
    for (int i = 0; i < len; ++i) {
      int w = g.add_vertex(0);
      g.add_edge(prev, w);
      out.z.push_back(w);
      chain.push_back(w);
      prev = w;
    }
    return chain;
  };

  const int k = config.k;
  const bool shared = config.type == TailType::II && config.trunk > 0;
  if (config.type == TailType::I) {
    auto chain = build_chain(vm.at(config.special_attach[0]), k);
    out.special_chain_vertices.push_back(chain);
    int attach = chain.empty() ? vm.at(config.special_attach[0]) : chain.back();
    auto [t, e] = add_tail_vertex(attach, {1, next_mark++});
    out.special_edges.insert(e);
  } else if (!shared) {
    auto c1 = build_chain(vm.at(config.special_attach[0]), k);
    auto cm = build_chain(vm.at(config.special_attach[1]), k);
    out.special_chain_vertices.push_back(c1);
    out.special_chain_vertices.push_back(cm);
    int a1 = c1.empty() ? vm.at(config.special_attach[0]) : c1.back();
    int am = cm.empty() ? vm.at(config.special_attach[1]) : cm.back();
    auto [t1, e1] = add_tail_vertex(a1, {1, next_mark++});
    auto [tm, em] = add_tail_vertex(am, {next_mark++});
    g.add_leg(kAuxMarking, tm);
    out.special_edges.insert(e1);
    out.special_edges.insert(em);
  } else {
    auto trunk = build_chain(vm.at(config.special_attach[0]), config.trunk);
    auto c1 = build_chain(trunk.back(), k - config.trunk);
    auto cm = build_chain(trunk.back(), k - config.trunk);
    std::vector<int> full1 = trunk, fullm = trunk;
    full1.insert(full1.end(), c1.begin(), c1.end());
    fullm.insert(fullm.end(), cm.begin(), cm.end());
    out.special_chain_vertices.push_back(full1);
    out.special_chain_vertices.push_back(fullm);
    auto [t1, e1] = add_tail_vertex(full1.back(), {1, next_mark++});
    auto [tm, em] = add_tail_vertex(fullm.back(), {next_mark++});
    g.add_leg(kAuxMarking, tm);
    out.special_edges.insert(e1);
    out.special_edges.insert(em);
  }

  auto expected = expected_chain_lengths(config);
  for (size_t i = 0; i < config.axes.size(); ++i) {
    const auto& axis = config.axes[i];
    int len = expected[i];
    int from;
    if (!axis.on_special_tree) {
      from = vm.at(axis.core_attach);
    } else {
      const auto& sc = out.special_chain_vertices[axis.which_special];
      from = sc.at(axis.depth - 1);
      len -= axis.depth;  // lengths include the shared prefix
    }
    auto chain = build_chain(from, len);
    out.axis_chain_vertices.push_back(chain);
    int attach = chain.empty() ? from : chain.back();
    add_tail_vertex(attach, {next_mark, next_mark + 1});
    next_mark += 2;
  }

  // Decorate with exactly the relations the balancing demands.
  BalancingProblem prob{&out.graph, out.z, out.special_edges, config.type};
  auto res = solve_balancing(prob);
  if (res.feasible) {
    for (const auto& p : res.predicates) {
      std::vector<std::pair<Point, int>> terms;
      for (const auto& t : p.terms)
        if (t.second != 0) terms.push_back(t);
      std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.second > b.second;
      });
      std::vector<int> coeffs;
      for (auto& t : terms) coeffs.push_back(t.second);
      if (p.canonical_mult == 1) {
        if (coeffs == std::vector<int>{-2})
          g.decorations().push_back(
              {Decoration::Kind::Weierstrass, {terms[0].first}, 0});
        else if (coeffs == std::vector<int>{-1, -1})
          g.decorations().push_back({Decoration::Kind::Conjugate,
                                     {terms[0].first, terms[1].first},
                                     0});
      } else {
        if (coeffs == std::vector<int>{2, -2})
          g.decorations().push_back({Decoration::Kind::Torsion,
                                     {terms[0].first, terms[1].first},
                                     2});
        else if (coeffs == std::vector<int>{2, -1, -1})
          g.decorations().push_back(
              {Decoration::Kind::Weierstrass, {terms[0].first}, 0});
        else if (coeffs == std::vector<int>{1, 1, -2} ||
                 coeffs == std::vector<int>{1, 1, -1, -1})
          g.decorations().push_back({Decoration::Kind::Conjugate,
                                     {terms[0].first, terms[1].first},
                                     0});
        else if (coeffs.size() == 2 && coeffs[0] > 0 && coeffs[0] + coeffs[1] == 0)
          g.decorations().push_back({Decoration::Kind::Torsion,
                                     {terms[0].first, terms[1].first},
                                     coeffs[0]});
      }
    }
  }
  std::sort(out.z.begin(), out.z.end());
  return out;
}

namespace {

struct ExtractedShape {
  TailConfig config;
  std::vector<int> actual_axis_lengths;
  std::vector<int> actual_special_lengths;
  bool ok = false;
  std::string why;
};

ExtractedShape extract_config(const DecoratedGraph& g, const Subcurve& z,
                              TailType type,
                              const std::set<int>& special_edges) {
  ExtractedShape out;
  auto in = mask_of(g, z);
  Subcurve k;
  try {
    k = core(g);
  } catch (const std::exception& e) {
    out.why = e.what();
    return out;
  }
  for (int v : k)
    if (!in[v]) {
      out.why = "subcurve does not contain the core";
      return out;
    }
  std::vector<char> in_core = mask_of(g, k);

  // Unique path from a z-vertex down to the core (the complement of the
  // core inside z is a forest).
  auto path_to_core = [&](int start) {
    std::map<int, std::pair<int, int>> parent;  // vertex -> (prev, edge)
    std::vector<int> frontier{start};
    parent[start] = {-1, -1};
    int hit = -1;
    while (!frontier.empty() && hit < 0) {
      std::vector<int> next;
      for (int v : frontier) {
        if (in_core[v]) {
          hit = v;
          break;
        }
        for (int e : g.edges_at(v)) {
          const auto& ed = g.edge(e);
          int w = ed.u == v ? ed.v : ed.u;
          if (w == v || !in[w] || parent.count(w)) continue;
          parent[w] = {v, e};
          next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
    std::vector<int> path;  // already core-outward: nearest vertex first
    if (hit >= 0) {
      int cur = parent.at(hit).first;
      while (cur >= 0) {
        path.push_back(cur);
        cur = parent.at(cur).first;
      }
    }
    return std::pair{hit, path};
  };

  struct Branch {
    int edge;
    bool special;
    int inside;
    int core_attach;
    std::vector<int> path;
  };
  std::vector<Branch> branches;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    int inside = -1;
    if (in[ed.u] && !in[ed.v]) inside = ed.u;
    if (!in[ed.u] && in[ed.v]) inside = ed.v;
    if (inside < 0) continue;
    Branch b;
    b.edge = e;
    b.special = special_edges.count(e) > 0;
    b.inside = inside;
    auto [attach, path] = path_to_core(inside);
    if (attach < 0) {
      out.why = "boundary branch does not reach the core";
      return out;
    }
    b.core_attach = attach;
    b.path = path;
    branches.push_back(std::move(b));
  }
  const size_t want_special = type == TailType::I ? 1 : 2;
  size_t have_special = 0;
  for (auto& b : branches)
    if (b.special) ++have_special;
  if (have_special != want_special) {
    out.why = "wrong number of special boundary branches";
    return out;
  }

  std::set<int> covered(k.begin(), k.end());
  for (auto& b : branches)
    for (int v : b.path) covered.insert(v);
  for (int v : z)
    if (!covered.count(v)) {
      out.why = "subcurve has components invisible from the boundary";
      return out;
    }

  TailConfig cfg;
  cfg.type = type;
  std::map<int, int> core_map;
  {
    DecoratedGraph c;
    for (int v : k) core_map[v] = c.add_vertex(g.genus_of(v));
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      if (in_core[ed.u] && in_core[ed.v])
        c.add_edge(core_map.at(ed.u), core_map.at(ed.v));
    }
    cfg.core = std::move(c);
  }

  std::vector<Branch*> specials;
  for (auto& b : branches)
    if (b.special) specials.push_back(&b);
  cfg.k = static_cast<int>(specials[0]->path.size());
  out.actual_special_lengths.push_back(cfg.k);
  cfg.special_attach.push_back(core_map.at(specials[0]->core_attach));
  if (type == TailType::II) {
    out.actual_special_lengths.push_back(
        static_cast<int>(specials[1]->path.size()));
    cfg.special_attach.push_back(core_map.at(specials[1]->core_attach));
    size_t t = 0;
    while (t < specials[0]->path.size() && t < specials[1]->path.size() &&
           specials[0]->path[t] == specials[1]->path[t])
      ++t;
    cfg.trunk = static_cast<int>(t);
  }

  auto on_path_depth = [&](const std::vector<int>& path, int v) -> int {
    for (size_t i = 0; i < path.size(); ++i)
      if (path[i] == v) return static_cast<int>(i) + 1;
    return 0;
  };

  for (auto& b : branches) {
    if (b.special) continue;
    TailConfig::Axis axis;
    int best_special = -1, best_depth = 0;
    for (size_t s = 0; s < specials.size(); ++s)
      for (int v : b.path) {
        int d = on_path_depth(specials[s]->path, v);
        if (d > best_depth) {
          best_depth = d;
          best_special = static_cast<int>(s);
        }
      }
    if (best_special >= 0) {
      axis.on_special_tree = true;
      axis.which_special = best_special;
      axis.depth = best_depth;
    } else {
      axis.core_attach = core_map.at(b.core_attach);
    }
    cfg.axes.push_back(axis);
    out.actual_axis_lengths.push_back(static_cast<int>(b.path.size()));
  }
  out.config = std::move(cfg);
  out.ok = true;
  return out;
}

}  // namespace

bool verify_tail_shape(const DecoratedGraph& g, const Subcurve& z,
                       TailType type, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto in = mask_of(g, z);

  // Role assignment from the reference markings: the boundary branch whose
  // outside component carries marking 1 is special; for type II the branch
  // holding the auxiliary conjugate marking is the second special one.
  std::set<int> special_edges;
  {
    Subcurve outside;
    for (int v : g.vertices())
      if (!in[v]) outside.push_back(v);
    if (outside.empty()) return fail("subcurve is the whole graph");
    auto comps = components(g, outside);
    auto comp_of = [&](int v) -> int {
      for (size_t i = 0; i < comps.size(); ++i)
        for (int w : comps[i])
          if (w == v) return static_cast<int>(i);
      return -1;
    };
    if (!g.has_leg(1)) return fail("graph has no reference marking");
    int c1 = comp_of(g.leg_vertex(1));
    int caux = g.has_leg(kAuxMarking) ? comp_of(g.leg_vertex(kAuxMarking)) : -1;
    if (type == TailType::II && caux < 0)
      return fail("type II needs the auxiliary conjugate marking");
    if (type == TailType::II && caux == c1)
      return fail("reference and conjugate markings lie on one tail");
    for (int e : g.edge_ids()) {
      const auto& ed = g.edge(e);
      int outv = -1;
      if (in[ed.u] && !in[ed.v]) outv = ed.v;
      if (!in[ed.u] && in[ed.v]) outv = ed.u;
      if (outv < 0) continue;
      int c = comp_of(outv);
      if (c == c1 || (type == TailType::II && c == caux))
        special_edges.insert(e);
    }
    if (special_edges.size() != (type == TailType::I ? 1u : 2u))
      return fail("special tails must meet the subcurve along single branches");
  }

  BalancingProblem prob{&g, z, special_edges, type};
  auto res = solve_balancing(prob);
  if (!res.feasible) return fail("balancing: " + res.witness);
  for (const auto& p : res.predicates)
    if (!predicate_matched(g, p))
      return fail("unmatched Picard predicate on component " +
                  std::to_string(p.vertex));

  auto shape = extract_config(g, z, type, special_edges);
  if (!shape.ok) return fail("shape: " + shape.why);
  if (type == TailType::II &&
      shape.actual_special_lengths[0] != shape.actual_special_lengths[1])
    return fail("twin chains have different lengths");
  std::vector<int> expect;
  try {
    expect = expected_chain_lengths(shape.config);
  } catch (const std::exception& e) {
    return fail(std::string("length formula: ") + e.what());
  }
  if (expect != shape.actual_axis_lengths)
    return fail("axis chain lengths disagree with the closed form");
  return true;
}

}  // namespace genus2
