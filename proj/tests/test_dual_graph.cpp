#include "genus2/graph.hpp"

#include "graph_builders.hpp"

#include <doctest.h>

#include <algorithm>

using namespace genus2;

namespace {

/// Brute-force enumeration of all connected genus-two subcurves.
std::vector<Subcurve> all_genus2_subcurves(const DecoratedGraph& g) {
  auto verts = g.vertices();
  std::vector<Subcurve> out;
  for (unsigned mask = 1; mask < (1u << verts.size()); ++mask) {
    Subcurve s;
    for (size_t i = 0; i < verts.size(); ++i)
      if (mask & (1u << i)) s.push_back(verts[i]);
    if (!is_connected(g, s)) continue;
    if (arithmetic_genus(g, s) == 2) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("arithmetic genus basics") {
  SUBCASE("single genus-two vertex") {
    DecoratedGraph g;
    g.add_vertex(2);
    CHECK(arithmetic_genus(g) == 2);
  }
  SUBCASE("rings of rational curves have genus one") {
    for (int r = 1; r <= 5; ++r)
      CHECK(arithmetic_genus(builders::rational_ring(r)) == 1);
  }
  SUBCASE("oscnode bridge over two rational branches") {
    auto g = builders::dangling_a5();
    CHECK(arithmetic_genus(g) == 2);
  }
  SUBCASE("elliptic three-fold over three rational branches has genus one") {
    DecoratedGraph g;
    int a = g.add_vertex(0), b = g.add_vertex(0), c = g.add_vertex(0);
    DecoratedGraph::SingularPoint sp;
    sp.type = SingularityType::elliptic(3);
    sp.branches = {a, b, c};
    g.add_singular_point(sp);
    g.add_leg(1, a);
    g.add_leg(2, b);
    g.add_leg(3, c);
    CHECK(arithmetic_genus(g) == 1);
  }
}

TEST_CASE("arithmetic genus is invariant under semistable subdivision moves") {
  auto g = builders::theta(1, 0, 2);
  g.add_leg(1, 0);
  g.add_leg(2, 1);
  int before = arithmetic_genus(g);
  auto h = g.base_change(3);  // inserts two 2-special vertices on every edge
  CHECK(arithmetic_genus(h) == before);
  auto g2 = builders::weierstrass_tail_curve();
  CHECK(arithmetic_genus(g2.base_change(2)) == arithmetic_genus(g2));
}

TEST_CASE("levels") {
  SUBCASE("genus-two vertex with a fully marked tail") {
    auto g = builders::weierstrass_tail_curve();
    CHECK(level(g, {0}).level() == 1);
    CHECK(level(g, g.vertices()).level() == 2);  // the whole curve: n
  }
  SUBCASE("elliptic vertex with two nodes and one marking") {
    auto g = builders::elliptic_chain(1);  // e1 - w - e2
    g.add_leg(1, 0);
    int w = 1;
    DecoratedGraph h = g;
    int extra = h.add_vertex(0);
    h.add_edge(0, extra);
    h.add_leg(2, extra);
    h.add_leg(3, extra);
    (void)w;
    // e1 carries one marking, one node toward w, one node toward extra.
    CHECK(level(h, {0}).level() == 3);
  }
  SUBCASE("hyperedge boundary is flagged, not merged") {
    auto g = builders::dangling_a5();
    auto info = level(g, {0});
    CHECK(info.nodally_attached == false);
    CHECK(info.hyperedge_boundary == 1);
    CHECK(info.level() == 2);  // two markings, no nodal boundary
  }
}

TEST_CASE("nodal attachment") {
  auto g = builders::dangling_a5();
  CHECK(!is_nodally_attached(g, {0}));
  auto h = builders::weierstrass_tail_curve();
  CHECK(is_nodally_attached(h, {1}));
  DecoratedGraph e3;
  int a = e3.add_vertex(0), b = e3.add_vertex(0), c = e3.add_vertex(0);
  DecoratedGraph::SingularPoint sp;
  sp.type = SingularityType::elliptic(3);
  sp.branches = {a, b, c};
  e3.add_singular_point(sp);
  int t = e3.add_vertex(1);
  e3.add_edge(a, t);
  CHECK(!is_nodally_attached(e3, {a}));
  CHECK(is_nodally_attached(e3, {t}));
}

TEST_CASE("core computation") {
  SUBCASE("smooth core plus rational trees") {
    auto g = builders::weierstrass_tail_curve();
    CHECK(core(g) == Subcurve{0});
  }
  SUBCASE("two elliptic vertices joined by a chain, with tails") {
    auto g = builders::elliptic_chain(3);
    int tail = g.add_vertex(0);
    g.add_edge(0, tail);
    g.add_leg(1, tail);
    g.add_leg(2, tail);
    auto k = core(g);
    CHECK(k == Subcurve{0, 1, 2, 3, 4});  // both cores and the chain
  }
  SUBCASE("theta subgraph with tails") {
    auto g = builders::theta();
    int tail = g.add_vertex(0);
    g.add_edge(0, tail);
    g.add_leg(1, tail);
    g.add_leg(2, tail);
    CHECK(core(g) == Subcurve{0, 1});
  }
  SUBCASE("core is the unique minimal genus-two subcurve (brute force)") {
    std::vector<DecoratedGraph> samples;
    samples.push_back(builders::weierstrass_tail_curve());
    {
      auto g = builders::elliptic_chain(2);
      int tail = g.add_vertex(0);
      g.add_edge(3, tail);
      g.add_leg(1, tail);
      g.add_leg(2, tail);
      samples.push_back(g);
    }
    {
      auto g = builders::theta(1, 1, 0);
      int tail = g.add_vertex(0);
      g.add_edge(2, tail);
      g.add_leg(1, tail);
      g.add_leg(2, tail);
      samples.push_back(g);
    }
    {
      auto g = builders::rational_ring(3);
      int e = g.add_vertex(1);
      g.add_edge(0, e);
      g.add_leg(1, e);
      g.add_leg(2, 1);
      samples.push_back(g);
    }
    for (const auto& g : samples) {
      auto subs = all_genus2_subcurves(g);
      REQUIRE(!subs.empty());
      Subcurve minimal = subs[0];
      for (const auto& s : subs)
        if (s.size() < minimal.size()) minimal = s;
      int count = 0;
      for (const auto& s : subs)
        if (s.size() == minimal.size()) ++count;
      CHECK(count == 1);
      auto k = core(g);
      std::sort(minimal.begin(), minimal.end());
      CHECK(k == minimal);
      // Monotonicity: every genus-two subcurve contains the core and has
      // at least its level.
      for (const auto& s : subs) {
        CHECK(std::includes(s.begin(), s.end(), k.begin(), k.end()));
        CHECK(level(g, k).level() <= level(g, s).level());
      }
    }
  }
}

TEST_CASE("residual DM stability") {
  auto g = builders::weierstrass_tail_curve(1);  // tail has marking + node only
  CHECK(!is_rDM(g));
  auto h = builders::dangling_a5(2);
  CHECK(is_rDM(h));  // branch vertices carry slots; no nodal terrain left
  DecoratedGraph bridge;
  int e1 = bridge.add_vertex(1), r = bridge.add_vertex(0), e2 = bridge.add_vertex(1);
  bridge.add_edge(e1, r);
  bridge.add_edge(r, e2);
  bridge.add_leg(1, r);
  CHECK(is_rDM(bridge));  // the bridge has three special points
  DecoratedGraph bad = bridge;
  bad.remove_leg(1);
  bad.add_leg(1, e1);
  CHECK(!is_rDM(bad));  // now the bridge is strictly semistable
}

TEST_CASE("cleaving") {
  auto g = builders::weierstrass_tail_curve();
  CHECK(cleaves_to(g, Point::leg(1), 1));  // on its own vertex
  CHECK(cleaves_to(g, Point::leg(1), 0) == false);  // tail has 3 specials
  DecoratedGraph chain;
  int z = chain.add_vertex(2);
  int a = chain.add_vertex(0), b = chain.add_vertex(0), c = chain.add_vertex(0);
  chain.add_edge(z, a);
  chain.add_edge(a, b);
  chain.add_edge(b, c);
  chain.add_leg(1, c);
  CHECK(cleaves_to(chain, Point::leg(1), z));
  DecoratedGraph blocked = chain;
  blocked.add_leg(2, b);  // pins the middle of the chain
  CHECK(!cleaves_to(blocked, Point::leg(1), z));
  DecoratedGraph through_elliptic;
  int z2 = through_elliptic.add_vertex(1);
  int e = through_elliptic.add_vertex(1);
  int t = through_elliptic.add_vertex(0);
  through_elliptic.add_edge(z2, e);
  through_elliptic.add_edge(e, t);
  through_elliptic.add_leg(1, t);
  through_elliptic.add_leg(2, t);
  CHECK(!cleaves_to(through_elliptic, Point::leg(1), z2));
}

TEST_CASE("classification of minimal genus-two curves") {
  DecoratedGraph smooth;
  smooth.add_vertex(2);
  CHECK(classify_minimal_genus2(smooth, {0}) ==
        MinimalGenusTwoCase::SmoothGenusTwo);

  auto chain = builders::elliptic_chain(2);
  CHECK(classify_minimal_genus2(chain, chain.vertices()) ==
        MinimalGenusTwoCase::TwoGenusOneCores);

  // Dumbbell: two rings joined by a chain is still case two.
  DecoratedGraph dumbbell;
  int a = dumbbell.add_vertex(0);
  dumbbell.add_edge(a, a);
  int mid = dumbbell.add_vertex(0);
  int b = dumbbell.add_vertex(0);
  dumbbell.add_edge(a, mid);
  dumbbell.add_edge(mid, b);
  dumbbell.add_edge(b, b);
  CHECK(classify_minimal_genus2(dumbbell, dumbbell.vertices()) ==
        MinimalGenusTwoCase::TwoGenusOneCores);

  // Elliptic vertex with a rational chain attached at both of its ends.
  DecoratedGraph necklace;
  int e = necklace.add_vertex(1);
  int r = necklace.add_vertex(0);
  necklace.add_edge(e, r);
  necklace.add_edge(e, r);
  CHECK(classify_minimal_genus2(necklace, necklace.vertices()) ==
        MinimalGenusTwoCase::GenusOneWithChain);

  auto th = builders::theta(1, 1, 1);
  CHECK(classify_minimal_genus2(th, th.vertices()) ==
        MinimalGenusTwoCase::TwoRationalsThreeChains);

  DecoratedGraph ii4;
  std::vector<int> branches;
  for (int i = 0; i < 4; ++i) branches.push_back(ii4.add_vertex(0));
  DecoratedGraph::SingularPoint sp;
  sp.type = SingularityType::type_II(4);
  sp.branches = branches;
  sp.special = {0, 3};
  ii4.add_singular_point(sp);
  CHECK(classify_minimal_genus2(ii4, ii4.vertices()) ==
        MinimalGenusTwoCase::GenusTwoSingularity);

  // A separating node that splits off genus zero is rejected.
  auto bad = builders::weierstrass_tail_curve();
  CHECK_THROWS_AS(classify_minimal_genus2(bad, bad.vertices()), input_error);
}

TEST_CASE("weierstrass status") {
  SUBCASE("rational bridge attached twice to one elliptic vertex") {
    DecoratedGraph g;
    int e = g.add_vertex(1);
    int r = g.add_vertex(0);
    g.add_edge(e, r);
    g.add_edge(e, r);
    g.add_leg(1, r);
    auto ans = weierstrass_status(g, Point::on(1));
    CHECK(ans.status == WeierstrassStatus::Always);
  }
  SUBCASE("point on an elliptic vertex meeting another elliptic vertex") {
    auto g = builders::elliptic_chain(0);
    g.add_leg(1, 0);
    auto ans = weierstrass_status(g, Point::on(0));
    REQUIRE(ans.status == WeierstrassStatus::Conditional);
    REQUIRE(ans.predicate.has_value());
    CHECK(ans.predicate->kind == Decoration::Kind::Torsion);
    CHECK(ans.predicate->order == 2);
  }
  SUBCASE("bridge between two distinct elliptic vertices is never") {
    auto g = builders::elliptic_chain(1);
    g.add_leg(1, 1);
    auto ans = weierstrass_status(g, Point::on(1));
    CHECK(ans.status == WeierstrassStatus::Never);
  }
  SUBCASE("smooth genus-two core delegates to decorations") {
    DecoratedGraph g;
    g.add_vertex(2);
    g.add_leg(1, 0);
    auto ans = weierstrass_status(g, Point::leg(1));
    REQUIRE(ans.status == WeierstrassStatus::Conditional);
    CHECK(ans.predicate->kind == Decoration::Kind::Weierstrass);
  }
  SUBCASE("point off the core is rejected") {
    auto g = builders::weierstrass_tail_curve();
    CHECK_THROWS_AS(weierstrass_status(g, Point::leg(1)), input_error);
  }
}

TEST_CASE("isomorphism with decorations") {
  auto a = builders::dangling_a5();
  auto b = builders::dangling_a5();
  CHECK(isomorphic(a, b));
  auto c = builders::dangling_a5();
  c.singular_mut(0).dangling = false;
  CHECK(!isomorphic(a, c));
  auto d = builders::dangling_a5();
  d.remove_leg(2);
  d.add_leg(2, 1);
  CHECK(!isomorphic(a, d));

  // Relabelling vertices does not matter.
  DecoratedGraph e1, e2;
  {
    int z = e1.add_vertex(2);
    int r = e1.add_vertex(0);
    e1.add_edge(z, r);
    e1.add_leg(1, r);
    e1.add_leg(2, r);
  }
  {
    int r = e2.add_vertex(0);
    int z = e2.add_vertex(2);
    e2.add_edge(r, z);
    e2.add_leg(1, r);
    e2.add_leg(2, r);
  }
  CHECK(isomorphic(e1, e2));
  e2.decorations().push_back(
      Decoration{Decoration::Kind::Weierstrass, {Point::towards(1, 0)}, 0});
  CHECK(!isomorphic(e1, e2));
  e1.decorations().push_back(
      Decoration{Decoration::Kind::Weierstrass, {Point::towards(0, 1)}, 0});
  CHECK(isomorphic(e1, e2));
}

TEST_CASE("base change and marking blow-ups") {
  auto g = builders::weierstrass_tail_curve();
  auto h = g.base_change(3);
  CHECK(h.vertices().size() == 4);
  CHECK(arithmetic_genus(h) == 2);
  CHECK(h.legs() == g.legs());

  auto k = g;
  int w = k.blow_up_marking(1);
  CHECK(k.leg_vertex(1) == w);
  CHECK(arithmetic_genus(k) == 2);
  int w2 = k.blow_up_marking(1);
  CHECK(k.leg_vertex(1) == w2);
  CHECK(arithmetic_genus(k) == 2);
}
