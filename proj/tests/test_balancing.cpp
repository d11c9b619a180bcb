#include "genus2/balancing.hpp"

#include "graph_builders.hpp"

#include <doctest.h>

#include <algorithm>

using namespace genus2;

namespace {

DecoratedGraph smooth_core() {
  DecoratedGraph c;
  c.add_vertex(2);
  return c;
}

DecoratedGraph two_elliptic_core(int chain) {
  return builders::elliptic_chain(chain);
}

TailConfig config(TailType type, DecoratedGraph core, std::vector<int> attach,
                  int k, std::vector<TailConfig::Axis> axes = {}, int trunk = 0) {
  TailConfig c;
  c.type = type;
  c.core = std::move(core);
  c.special_attach = std::move(attach);
  c.k = k;
  c.trunk = trunk;
  c.axes = std::move(axes);
  return c;
}

TailConfig::Axis core_axis(int v) {
  TailConfig::Axis a;
  a.core_attach = v;
  return a;
}

TailConfig::Axis tree_axis(int which, int depth) {
  TailConfig::Axis a;
  a.on_special_tree = true;
  a.which_special = which;
  a.depth = depth;
  return a;
}

}  // namespace

TEST_CASE("weierstrass tail with trivial chain") {
  auto syn = synthesize_tail(config(TailType::I, smooth_core(), {0}, 0));
  BalancingProblem prob{&syn.graph, syn.z, syn.special_edges, TailType::I};
  auto res = solve_balancing(prob);
  REQUIRE(res.feasible);
  CHECK(res.degrees.d.at(syn.z[0]) == 3);
  REQUIRE(res.predicates.size() == 1);
  CHECK(res.predicates[0].canonical_mult == 1);
  REQUIRE(res.predicates[0].terms.size() == 1);
  CHECK(res.predicates[0].terms[0].second == -2);
  CHECK(predicate_matched(syn.graph, res.predicates[0]));
}

TEST_CASE("conjugate bridge over a smooth core") {
  auto syn = synthesize_tail(config(TailType::II, smooth_core(), {0, 0}, 0));
  BalancingProblem prob{&syn.graph, syn.z, syn.special_edges, TailType::II};
  auto res = solve_balancing(prob);
  REQUIRE(res.feasible);
  CHECK(res.degrees.d.at(syn.z[0]) == 2);
  REQUIRE(res.predicates.size() == 1);
  REQUIRE(res.predicates[0].terms.size() == 2);
  CHECK(res.predicates[0].terms[0].second == -1);
  CHECK(res.predicates[0].terms[1].second == -1);
  CHECK(predicate_matched(syn.graph, res.predicates[0]));
}

TEST_CASE("type II twin chains of different lengths are infeasible") {
  auto syn = synthesize_tail(config(TailType::II, smooth_core(), {0, 0}, 1));
  auto& g = syn.graph;
  int aux_tail = g.leg_vertex(kAuxMarking);
  int old_edge = -1;
  for (int e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    if (ed.u == aux_tail || ed.v == aux_tail) old_edge = e;
  }
  REQUIRE(old_edge >= 0);
  const auto ed = g.edge(old_edge);
  int inner = ed.u == aux_tail ? ed.v : ed.u;
  g.remove_edge(old_edge);
  int extra = g.add_vertex(0);
  g.add_edge(inner, extra);
  int boundary = g.add_edge(extra, aux_tail);
  syn.z.push_back(extra);
  std::set<int> specials;
  for (int e : syn.special_edges)
    if (e != old_edge) specials.insert(e);
  specials.insert(boundary);
  BalancingProblem prob{&g, syn.z, specials, TailType::II};
  auto res = solve_balancing(prob);
  CHECK(!res.feasible);
}

TEST_CASE("expected chain lengths match the closed forms") {
  SUBCASE("type I, k=1, axis at a different core point") {
    auto lens = expected_chain_lengths(
        config(TailType::I, smooth_core(), {0}, 1, {core_axis(0)}));
    CHECK(lens == std::vector<int>{5});
  }
  SUBCASE("type II, k=0, axis at a third point") {
    auto lens = expected_chain_lengths(
        config(TailType::II, smooth_core(), {0, 0}, 0, {core_axis(0)}));
    CHECK(lens == std::vector<int>{1});
  }
  SUBCASE("type I, k=0, axis at the special chain root") {
    auto lens = expected_chain_lengths(
        config(TailType::I, smooth_core(), {0}, 0, {core_axis(0)}));
    CHECK(lens == std::vector<int>{2});
  }
  SUBCASE("type I branch off the special chain") {
    auto lens = expected_chain_lengths(config(
        TailType::I, smooth_core(), {0}, 2, {tree_axis(0, 1), tree_axis(0, 2)}));
    CHECK(lens == std::vector<int>{6, 4});
  }
  SUBCASE("type II shared trunk") {
    auto cfg = config(TailType::II, smooth_core(), {0, 0}, 2,
                      {core_axis(0), tree_axis(0, 1), tree_axis(0, 2)}, 1);
    auto lens = expected_chain_lengths(cfg);
    CHECK(lens == std::vector<int>{6, 4, 3});
  }
}

TEST_CASE("round-trip: synthesized tails balance and certify") {
  std::vector<TailConfig> configs;
  for (int k = 0; k <= 2; ++k) {
    configs.push_back(config(TailType::I, smooth_core(), {0}, k));
    configs.push_back(config(TailType::I, smooth_core(), {0}, k, {core_axis(0)}));
    configs.push_back(config(TailType::II, smooth_core(), {0, 0}, k));
    configs.push_back(
        config(TailType::II, smooth_core(), {0, 0}, k, {core_axis(0)}));
    if (k >= 1) {
      configs.push_back(
          config(TailType::I, smooth_core(), {0}, k, {tree_axis(0, 1)}));
      configs.push_back(
          config(TailType::II, smooth_core(), {0, 0}, k, {tree_axis(0, k)}));
      configs.push_back(config(TailType::II, smooth_core(), {0, 0}, k,
                               {core_axis(0), tree_axis(0, 1)}, k == 1 ? 1 : 0));
    }
    auto core2 = two_elliptic_core(1);
    configs.push_back(config(TailType::I, core2, {0}, k, {core_axis(2)}));
  }
  for (const auto& cfg : configs) {
    auto syn = synthesize_tail(cfg);
    std::string why;
    bool ok = verify_tail_shape(syn.graph, syn.z, cfg.type, &why);
    CAPTURE(why);
    CHECK(ok);
  }
}

TEST_CASE("chain perturbations break feasibility") {
  std::vector<TailConfig> configs = {
      config(TailType::I, smooth_core(), {0}, 1, {core_axis(0)}),
      config(TailType::II, smooth_core(), {0, 0}, 1, {core_axis(0)}),
      config(TailType::I, two_elliptic_core(1), {0}, 0, {core_axis(2)}),
  };
  for (const auto& cfg : configs) {
    auto syn = synthesize_tail(cfg);
    REQUIRE(verify_tail_shape(syn.graph, syn.z, cfg.type));
    for (size_t axis = 0; axis < syn.axis_chain_vertices.size(); ++axis) {
      auto shrunk = syn;
      auto& chain = shrunk.axis_chain_vertices[axis];
      REQUIRE(!chain.empty());
      int last = chain.back();
      auto& g = shrunk.graph;
      int tail = -1, inner = -1;
      for (int e : g.edges_at(last)) {
        const auto& ed = g.edge(e);
        int other = ed.u == last ? ed.v : ed.u;
        bool in_z = std::find(shrunk.z.begin(), shrunk.z.end(), other) !=
                    shrunk.z.end();
        if (in_z)
          inner = other;
        else
          tail = other;
        g.remove_edge(e);
      }
      REQUIRE(tail >= 0);
      if (inner < 0) continue;
      g.remove_vertex(last);
      g.add_edge(inner, tail);
      shrunk.z.erase(std::find(shrunk.z.begin(), shrunk.z.end(), last));
      CHECK(!verify_tail_shape(g, shrunk.z, cfg.type));

      auto grown = syn;
      auto& g2 = grown.graph;
      int last2 = grown.axis_chain_vertices[axis].back();
      int tail2 = -1, edge2 = -1;
      for (int e : g2.edges_at(last2)) {
        const auto& ed = g2.edge(e);
        int other = ed.u == last2 ? ed.v : ed.u;
        if (std::find(grown.z.begin(), grown.z.end(), other) == grown.z.end()) {
          tail2 = other;
          edge2 = e;
        }
      }
      REQUIRE(tail2 >= 0);
      g2.remove_edge(edge2);
      int extra = g2.add_vertex(0);
      g2.add_edge(last2, extra);
      g2.add_edge(extra, tail2);
      grown.z.push_back(extra);
      CHECK(!verify_tail_shape(g2, grown.z, cfg.type));
    }
  }
}

TEST_CASE("one-trees are transparent") {
  auto bare = synthesize_tail(config(TailType::I, smooth_core(), {0}, 1));
  auto with_axis =
      synthesize_tail(config(TailType::I, smooth_core(), {0}, 1, {core_axis(0)}));
  BalancingProblem p1{&bare.graph, bare.z, bare.special_edges, TailType::I};
  BalancingProblem p2{&with_axis.graph, with_axis.z, with_axis.special_edges,
                      TailType::I};
  auto r1 = solve_balancing(p1);
  auto r2 = solve_balancing(p2);
  REQUIRE(r1.feasible);
  REQUIRE(r2.feasible);
  CHECK(r1.degrees.d.at(0) == r2.degrees.d.at(0));
  CHECK(r1.degrees.d.at(bare.special_chain_vertices[0][0]) ==
        r2.degrees.d.at(with_axis.special_chain_vertices[0][0]));
}

TEST_CASE("necklace symmetry is forced by the balancing equations") {
  auto necklace_core = [](int c) {
    DecoratedGraph g;
    int e = g.add_vertex(1);
    int prev = e;
    std::vector<int> beads;
    for (int i = 0; i < c; ++i) {
      int w = g.add_vertex(0);
      g.add_edge(prev, w);
      beads.push_back(w);
      prev = w;
    }
    g.add_edge(prev, e);
    return std::pair{g, beads};
  };
  for (int c = 1; c <= 4; ++c) {
    for (int p = 0; p < c; ++p) {
      auto [core_g, beads] = necklace_core(c);
      auto cfg = config(TailType::I, core_g, {beads[p]}, 0);
      auto syn = synthesize_tail(cfg);
      BalancingProblem prob{&syn.graph, syn.z, syn.special_edges, TailType::I};
      auto res = solve_balancing(prob);
      bool symmetric = (p == c - 1 - p);
      CHECK(res.feasible == symmetric);
    }
  }
}

TEST_CASE("dist* on small cores") {
  DecoratedGraph g;
  int a = g.add_vertex(1);
  int s = g.add_vertex(0);
  int b = g.add_vertex(1);
  g.add_edge(a, s);
  g.add_edge(s, b);
  Subcurve core_set{a, s, b};
  CHECK(weighted_core_distance(g, core_set, {s}, a, a) == 0);
  CHECK(weighted_core_distance(g, core_set, {s}, a, s) == 1);
  CHECK(weighted_core_distance(g, core_set, {s}, a, b) == 2);
  CHECK(weighted_core_distance(g, core_set, {}, a, b) == 0);
  DecoratedGraph h;
  int x = h.add_vertex(0);
  int y = h.add_vertex(0);
  int z = h.add_vertex(0);
  h.add_edge(x, y);
  h.add_edge(y, z);
  h.add_edge(z, x);
  CHECK(weighted_core_distance(h, {x, y, z}, {y}, x, z) == 0);
}

TEST_CASE("balancing rejects marked or non-nodal subcurves") {
  auto syn = synthesize_tail(config(TailType::I, smooth_core(), {0}, 0));
  auto g = syn.graph;
  g.add_leg(9, syn.z[0]);
  BalancingProblem prob{&g, syn.z, syn.special_edges, TailType::I};
  CHECK(!solve_balancing(prob).feasible);

  auto h = builders::dangling_a5();
  BalancingProblem prob2{&h, {0}, {}, TailType::I};
  CHECK(!solve_balancing(prob2).feasible);
}
