#include "genus2/reduction.hpp"

#include "genus2/enumerate.hpp"
#include "graph_builders.hpp"

#include <doctest.h>

using namespace genus2;

namespace {

/// Genus-two vertex with a rational tail carrying both markings, the
/// attachment decorated as declared.
ReductionInput tail_input(bool weierstrass, int m = 1) {
  ReductionInput in;
  auto& g = in.graph;
  int z = g.add_vertex(2);
  int r = g.add_vertex(0);
  g.add_edge(z, r);
  g.add_leg(1, r);
  g.add_leg(2, r);
  in.m = m;
  if (weierstrass) {
    in.mode = ReductionMode::Weierstrass;
    g.decorations().push_back(
        {Decoration::Kind::Weierstrass, {Point::towards(z, r)}, 0});
  } else {
    in.mode = ReductionMode::Conjugate;
    in.conjugate.vertex = z;
    g.decorations().push_back({Decoration::Kind::Conjugate,
                               {Point::towards(z, r), Point::on(z)},
                               0});
  }
  return in;
}

int count_kind(const DecoratedGraph& g, SingularityType::Kind kind) {
  int n = 0;
  for (int s : g.singular_ids())
    if (g.singular(s).type.kind == kind) ++n;
  return n;
}

}  // namespace

TEST_CASE("surgery ops") {
  auto g = builders::weierstrass_tail_curve();
  SUBCASE("base change by one is the identity") {
    CHECK(isomorphic(base_change(g, 1), g));
  }
  SUBCASE("base change subdivides every edge") {
    auto h = base_change(g, 3);
    CHECK(h.vertices().size() == g.vertices().size() + 2);
    CHECK(arithmetic_genus(h) == 2);
    CHECK(h.legs().size() == g.legs().size());
  }
  SUBCASE("marking blow-ups chain up") {
    auto h = blow_up_marking(g, 1);
    CHECK(h.vertices().size() == g.vertices().size() + 1);
    CHECK(arithmetic_genus(h) == 2);
    auto h2 = blow_up_marking(h, 1);
    CHECK(h2.vertices().size() == g.vertices().size() + 2);
  }
}

TEST_CASE("dm stabilization") {
  // Semistable chain collapse.
  DecoratedGraph g;
  int z = g.add_vertex(2);
  int a = g.add_vertex(0);
  int b = g.add_vertex(0);
  int r = g.add_vertex(0);
  g.add_edge(z, a);
  g.add_edge(a, b);
  g.add_edge(b, r);
  g.add_leg(1, r);
  g.add_leg(2, r);
  auto out = dm_stabilize(g);
  CHECK(out.vertices().size() == 2);
  CHECK(arithmetic_genus(out) == 2);
  // Stable input is fixed.
  CHECK(isomorphic(dm_stabilize(out), out));
  // Non-nodal input is rejected.
  CHECK_THROWS_AS(dm_stabilize(builders::dangling_a5()), input_error);
}

TEST_CASE("weierstrass tail contracts to the one-branch genus-two point") {
  auto in = tail_input(true);
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
  CHECK(out.vertices().size() == 1);
  REQUIRE(out.singular_ids().size() == 1);
  auto sp = out.singular(out.singular_ids()[0]);
  CHECK(sp.type == SingularityType::type_I(1));
  CHECK(out.legs().size() == 2);
  // Idempotence.
  ReductionInput again = in;
  again.graph = out;
  CHECK(isomorphic(m_stable_limit(again), out));
}

TEST_CASE("generic tail contracts to the dangling two-branch point") {
  auto in = tail_input(false);
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
  REQUIRE(out.singular_ids().size() == 1);
  auto sp = out.singular(out.singular_ids()[0]);
  CHECK(sp.type == SingularityType::type_II(2));
  CHECK(sp.dangling);
  CHECK(isomorphic(out, builders::dangling_a5()));
}

TEST_CASE("unmarked elliptic tail contracts to a cusp") {
  ReductionInput in;
  auto& g = in.graph;
  int e1 = g.add_vertex(1);
  int e2 = g.add_vertex(1);
  g.add_edge(e1, e2);
  g.add_leg(1, e2);
  g.add_leg(2, e2);
  in.m = 1;
  in.mode = ReductionMode::Weierstrass;
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
  CHECK(out.vertices().size() == 1);
  CHECK(out.genus_of(out.vertices()[0]) == 1);
  REQUIRE(out.singular_ids().size() == 1);
  CHECK(out.singular(out.singular_ids()[0]).type == SingularityType::elliptic(1));
}

TEST_CASE("unmarked elliptic bridge contracts to the self-glued tacnode") {
  ReductionInput in;
  auto& g = in.graph;
  int e = g.add_vertex(1);
  int r = g.add_vertex(0);
  g.add_edge(e, r);
  g.add_edge(e, r);
  g.add_leg(1, r);
  g.add_leg(2, r);
  in.m = 1;
  in.mode = ReductionMode::Weierstrass;
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
  CHECK(out.vertices().size() == 1);
  CHECK(out.genus_of(out.vertices()[0]) == 0);
  REQUIRE(out.singular_ids().size() == 1);
  auto sp = out.singular(out.singular_ids()[0]);
  CHECK(sp.type == SingularityType::elliptic(2));
  CHECK(sp.branches[0] == sp.branches[1]);
}

TEST_CASE("already stable inputs come back unchanged") {
  auto g = builders::dangling_a5();
  ReductionInput in;
  in.graph = g;
  in.m = 1;
  auto out = m_stable_limit(in);
  CHECK(isomorphic(out, g));
}

TEST_CASE("expanding circle reports the contracted region") {
  SUBCASE("no contraction needed") {
    DecoratedGraph g;
    int z = g.add_vertex(2);
    int r = g.add_vertex(0);
    g.add_edge(z, r);
    g.add_leg(1, z);
    g.add_leg(2, r);
    g.add_leg(3, r);
    auto [radius, region] = expanding_circle(g, 1, ReductionMode::Weierstrass);
    CHECK(radius.l == 0);
    CHECK(region.empty());
  }
  SUBCASE("weierstrass tail region is the core") {
    auto in = tail_input(true);
    auto pre = base_change(in.graph, 3);
    auto [radius, region] = expanding_circle(pre, 1, ReductionMode::Weierstrass);
    // The strict interior contains the genus-two vertex.
    bool has_core = false;
    for (int v : region)
      if (pre.genus_of(v) == 2) has_core = true;
    CHECK(has_core);
  }
}

TEST_CASE("two low-level elliptic vertices merge to a shared-branch pair") {
  // Both elliptic pieces are short of level; contracting them separately
  // yields two genus-one points sharing a branch.
  ReductionInput in;
  auto& g = in.graph;
  int e1 = g.add_vertex(1);
  int e2 = g.add_vertex(1);
  g.add_edge(e1, e2);
  g.add_leg(1, e1);
  g.add_leg(2, e2);
  in.m = 1;
  in.mode = ReductionMode::Weierstrass;
  in.graph.decorations().push_back(
      {Decoration::Kind::Torsion,
       {Point::towards(e1, e2), Point::towards(e1, e2)},
       2});
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
  CHECK(arithmetic_genus(out) == 2);
}

TEST_CASE("uniqueness under preprocessing") {
  auto in = tail_input(true);
  auto baseline = m_stable_limit(in);
  for (int b = 1; b <= 3; ++b) {
    ReductionInput variant = in;
    variant.graph = base_change(variant.graph, b);
    variant.graph = blow_up_marking(variant.graph, 2);
    auto out = m_stable_limit(variant);
    CHECK(isomorphic(out, baseline));
  }
  auto in2 = tail_input(false);
  auto baseline2 = m_stable_limit(in2);
  for (int b = 1; b <= 3; ++b) {
    ReductionInput variant = in2;
    variant.graph = base_change(variant.graph, b);
    auto out = m_stable_limit(variant);
    CHECK(isomorphic(out, baseline2));
  }
}

TEST_CASE("the non-weierstrass bridge between elliptic curves") {
  // Core with two elliptic vertices and the marked tail in the middle:
  // conjugate mode with the conjugate section on the same chain.
  ReductionInput in;
  auto& g = in.graph;
  int e1 = g.add_vertex(1);
  int mid = g.add_vertex(0);
  int e2 = g.add_vertex(1);
  g.add_edge(e1, mid);
  g.add_edge(mid, e2);
  g.add_leg(1, mid);
  g.add_leg(2, mid);
  in.m = 1;
  in.mode = ReductionMode::Conjugate;
  in.conjugate.vertex = mid;
  in.graph.decorations().push_back(
      {Decoration::Kind::Conjugate, {Point::leg(1), Point::on(mid)}, 0});
  auto out = m_stable_limit(in);
  CHECK(check_m_stability(out, 1).stable);
}
