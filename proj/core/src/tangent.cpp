#include "genus2/tangent.hpp"

#include "genus2/linalg.hpp"

namespace genus2 {

namespace {

/// Rows cutting out the admissible coefficient vectors, from the membership
/// conditions nu_*(f . dgen) in R for every generator.
RatMat membership_rows(const LocalAlgebra& algebra, int window) {
  const Ambient amb = algebra.ambient();
  const int m = amb.branches;
  const int vars = m * (window + 1);

  RatMat rows;
  for (const auto& g : algebra.generators()) {
    auto dg = g.derivative();
    // Residual of each basis derivation t_b^j d/dt_b applied to g.
    std::vector<std::vector<Rat>> residuals(vars);
    bool any = false;
    for (int b = 0; b < m; ++b)
      for (int j = 0; j <= window; ++j) {
        TruncatedElement image(amb);
        for (int d = 0; d + j < amb.truncation; ++d)
          image.set_coeff(b, d + j, dg.coeff(b, d));
        auto res = algebra.reduce(image);
        residuals[b * (window + 1) + j] = res.flatten();
        if (!res.is_zero()) any = true;
      }
    if (!any) continue;
    const int coords = m * amb.truncation;
    for (int c = 0; c < coords; ++c) {
      RatRow row(vars);
      bool nz = false;
      for (int v = 0; v < vars; ++v) {
        row[v] = residuals[v][c];
        if (row[v] != 0) nz = true;
      }
      if (nz) rows.push_back(std::move(row));
    }
  }
  return rows;
}

int window_for(SingularityType type) {
  switch (type.kind) {
    case SingularityType::Kind::GenusTwoI: return 3;
    case SingularityType::Kind::GenusTwoII: return 2;
    default:
      throw unsupported_error("degree window defined for genus-two types only");
  }
}

}  // namespace

DerivationSpace derivation_constraints(const LocalAlgebra& algebra,
                                       int degree_window) {
  if (!algebra.truncation_stable())
    throw truncation_error("derivation constraints need a stable truncation");
  DerivationSpace space;
  space.ambient = algebra.ambient();
  space.degree_window = degree_window;
  space.constraints = membership_rows(algebra, degree_window);
  rref(space.constraints);
  space.rank = static_cast<int>(space.constraints.size());
  space.solution_dim = space.vars() - space.rank;
  return space;
}

int stabilizer_dimension(const LocalAlgebra& algebra) {
  auto type = algebra.recognize();
  const int window = window_for(type);
  const int m = algebra.branches();
  const int vars = m * (window + 1);

  RatMat rows = membership_rows(algebra, window);
  for (int b = 0; b < m; ++b) {
    RatRow fix(vars);
    fix[b * (window + 1)] = 1;  // f_{b,0} = 0
    rows.push_back(std::move(fix));
  }
  return nullity(rows, vars);
}

int ambient_automorphism_dimension(SingularityType type) {
  return type.branches * window_for(type);
}

int crimping_dimension(SingularityType type) {
  auto algebra = LocalAlgebra::closure(
      canonical_generators(type, {}, 8), Ambient{type.branches, 8});
  return ambient_automorphism_dimension(type) - stabilizer_dimension(algebra);
}

AtomVerdict atom_test(SingularityType type, const CrimpingParams& params,
                      int truncation) {
  auto gens = canonical_generators(type, params, truncation);
  auto algebra =
      LocalAlgebra::closure(gens, Ambient{type.branches, truncation});
  const int window = window_for(type);
  const int m = type.branches;
  const int vars = m * (window + 1);

  // Fields on a rational branch vanishing at the marking t = infinity keep
  // only the degree <= 1 coefficients; membership already forces f_{i0} = 0.
  RatMat rows = membership_rows(algebra, window);
  for (int b = 0; b < m; ++b)
    for (int j = 2; j <= window; ++j) {
      RatRow fix(vars);
      fix[b * (window + 1) + j] = 1;
      rows.push_back(std::move(fix));
    }
  int dim = nullity(rows, vars);
  if (dim == 1) return AtomVerdict::OneDimensional;
  if (dim == 0) return AtomVerdict::Trivial;
  throw unsupported_error("unexpected global vector field dimension " +
                          std::to_string(dim));
}

}  // namespace genus2
