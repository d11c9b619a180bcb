#include "genus2/tangent.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace genus2;

namespace {

LocalAlgebra from_type(SingularityType t, const CrimpingParams& p = {}, int n = 8) {
  return LocalAlgebra::closure(canonical_generators(t, p, n),
                               Ambient{t.branches, n});
}

/// Solution dimension of the derivation system with extra vanishing rows.
int constrained_dim(const LocalAlgebra& r, int window,
                    const std::vector<std::pair<int, int>>& zeros) {
  auto space = derivation_constraints(r, window);
  RatMat rows = space.constraints;
  for (auto [b, j] : zeros) {
    RatRow row(space.vars());
    row[space.var_index(b, j)] = 1;
    rows.push_back(std::move(row));
  }
  return nullity(rows, space.vars());
}

}  // namespace

TEST_CASE("derivation constraints for A4") {
  // With parameter c the admissible fields satisfy f0 = 0 and a single
  // relation tying f1 and f2; rank two in all cases.
  for (Rat c : {Rat(0), Rat(1), Rat(-3, 2)}) {
    auto r = from_type(SingularityType::type_I(1), {c});
    auto space = derivation_constraints(r);
    CHECK(space.rank == 2);
    CHECK(space.solution_dim == 2);
    // f0 = 0 is forced: adding it changes nothing.
    CHECK(constrained_dim(r, 3, {{0, 0}}) == 2);
    // With c != 0 the relation couples f1 and f2: fixing f1 = 0 forces
    // f2 = 0 too, so one degree of freedom (f3) remains.
    if (c != 0) CHECK(constrained_dim(r, 3, {{0, 1}}) == 1);
  }
}

TEST_CASE("derivation constraints for A5") {
  for (Rat b : {Rat(0), Rat(1), Rat(2, 3)}) {
    auto r = from_type(SingularityType::type_II(2), {Rat(1), b});
    auto space = derivation_constraints(r);
    CHECK(space.rank == 4);
    CHECK(space.solution_dim == 4);
  }
}

TEST_CASE("derivation constraint ranks are 2m for both families") {
  oracles::RatGen gen(99);
  for (int m = 1; m <= 5; ++m) {
    CrimpingParams p;
    for (int i = 0; i < m - 1; ++i) p.push_back(gen.nonzero());
    p.push_back(gen.any());
    auto r = from_type(SingularityType::type_I(m), p);
    CHECK(derivation_constraints(r).rank == 2 * m);
    if (m < 2) continue;
    CrimpingParams q{gen.nonzero(), gen.any()};
    for (int i = 2; i < m; ++i) q.push_back(gen.nonzero());
    auto r2 = from_type(SingularityType::type_II(m), q);
    CHECK(derivation_constraints(r2).rank == 2 * m);
  }
}

TEST_CASE("derivation constraints are equivariant under axis permutations") {
  // Swapping two axes of a type I singularity leaves every dimension alone.
  auto swap_axes = [](SingularityType t, CrimpingParams p, int i, int j) {
    std::swap(p[i], p[j]);
    return from_type(t, p);
  };
  CrimpingParams p{Rat(2), Rat(3), Rat(5, 2), Rat(1)};
  auto t = SingularityType::type_I(4);
  auto a = from_type(t, p);
  auto b = swap_axes(t, p, 0, 2);
  CHECK(derivation_constraints(a).rank == derivation_constraints(b).rank);
  CHECK(stabilizer_dimension(a) == stabilizer_dimension(b));

  CrimpingParams q{Rat(2), Rat(0), Rat(3), Rat(7)};
  auto t2 = SingularityType::type_II(4);
  auto a2 = from_type(t2, q);
  CrimpingParams q2 = q;
  std::swap(q2[2], q2[3]);  // axes are parameters 2..m-1
  auto b2 = from_type(t2, q2);
  CHECK(derivation_constraints(a2).rank == derivation_constraints(b2).rank);
  CHECK(stabilizer_dimension(a2) == stabilizer_dimension(b2));
}

TEST_CASE("stabilizer dimensions") {
  CHECK(stabilizer_dimension(from_type(SingularityType::type_I(3))) == 6);
  CHECK(stabilizer_dimension(from_type(SingularityType::type_II(3))) == 3);
  CHECK(stabilizer_dimension(from_type(SingularityType::type_II(2))) == 2);
  oracles::RatGen gen(4242);
  for (int m = 1; m <= 5; ++m) {
    CrimpingParams p;
    for (int i = 0; i < m - 1; ++i) p.push_back(gen.nonzero());
    p.push_back(gen.any());
    CHECK(stabilizer_dimension(from_type(SingularityType::type_I(m), p)) == 2 * m);
    if (m < 2) continue;
    CrimpingParams q{gen.nonzero(), gen.any()};
    for (int i = 2; i < m; ++i) q.push_back(gen.nonzero());
    CHECK(stabilizer_dimension(from_type(SingularityType::type_II(m), q)) == m);
  }
}

TEST_CASE("crimping dimensions equal the branch count") {
  for (int m = 1; m <= 6; ++m) {
    CHECK(crimping_dimension(SingularityType::type_I(m)) == m);
    if (m >= 2) CHECK(crimping_dimension(SingularityType::type_II(m)) == m);
  }
  // The exact identity with the ambient dimension.
  CHECK(ambient_automorphism_dimension(SingularityType::type_I(4)) == 12);
  CHECK(12 - stabilizer_dimension(from_type(SingularityType::type_I(4))) == 4);
}

TEST_CASE("atom dichotomy") {
  SUBCASE("type I examples") {
    CHECK(atom_test(SingularityType::type_I(2), {Rat(1), Rat(0)}) ==
          AtomVerdict::OneDimensional);
    CHECK(atom_test(SingularityType::type_I(2), {Rat(1), Rat(1)}) ==
          AtomVerdict::Trivial);
    CHECK(atom_test(SingularityType::type_I(1), {Rat(0)}) ==
          AtomVerdict::OneDimensional);
    CHECK(atom_test(SingularityType::type_I(1), {Rat(1)}) ==
          AtomVerdict::Trivial);
  }
  SUBCASE("type II examples") {
    CHECK(atom_test(SingularityType::type_II(3), {Rat(1), Rat(1), Rat(1)}) ==
          AtomVerdict::Trivial);
    CHECK(atom_test(SingularityType::type_II(3), {Rat(1), Rat(0), Rat(1)}) ==
          AtomVerdict::OneDimensional);
  }
  SUBCASE("verdict depends exactly on the distinguished parameter") {
    oracles::RatGen gen(321);
    for (int m = 1; m <= 5; ++m) {
      for (int rep = 0; rep < 6; ++rep) {
        CrimpingParams p;
        for (int i = 0; i < m - 1; ++i) p.push_back(gen.nonzero());
        bool zero = rep % 2 == 0;
        p.push_back(zero ? Rat(0) : gen.nonzero());
        auto verdict = atom_test(SingularityType::type_I(m), p);
        CHECK((verdict == AtomVerdict::OneDimensional) == zero);
        if (m < 2) continue;
        CrimpingParams q{gen.nonzero(), zero ? Rat(0) : gen.nonzero()};
        for (int i = 2; i < m; ++i) q.push_back(gen.nonzero());
        auto verdict2 = atom_test(SingularityType::type_II(m), q);
        CHECK((verdict2 == AtomVerdict::OneDimensional) == zero);
      }
    }
  }
  SUBCASE("invariance under the scaling action") {
    oracles::RatGen gen(555);
    for (int m = 2; m <= 4; ++m) {
      CrimpingParams p;
      for (int i = 0; i < m - 1; ++i) p.push_back(gen.nonzero());
      p.push_back(gen.nonzero());
      auto base = atom_test(SingularityType::type_I(m), p);
      for (int rep = 0; rep < 10; ++rep) {
        Rat lambda = gen.nonzero();
        CrimpingParams scaled = p;
        for (int i = 0; i < m - 1; ++i) scaled[i] *= lambda * lambda * lambda;
        scaled[m - 1] *= lambda;
        CHECK(atom_test(SingularityType::type_I(m), scaled) == base);
      }
    }
  }
}
