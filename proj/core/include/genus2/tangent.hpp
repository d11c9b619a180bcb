#pragma once

#include "genus2/linalg.hpp"
#include "genus2/local_algebra.hpp"

namespace genus2 {

/// Linear constraints cutting out the derivations sum f_i(t_i) d/dt_i of the
/// normalisation that preserve the subalgebra, on the coefficient vector
/// (f_{i0},...,f_{i,window}) per branch. Tails of degree past the conductor
/// are always admissible and stay out of the constraint vector.
struct DerivationSpace {
  Ambient ambient;
  int degree_window = 3;
  RatMat constraints;  // reduced; rows are independent
  int rank = 0;
  int solution_dim = 0;

  int vars() const { return ambient.branches * (degree_window + 1); }
  int var_index(int branch, int degree) const {
    return branch * (degree_window + 1) + degree;
  }
};

DerivationSpace derivation_constraints(const LocalAlgebra& algebra,
                                       int degree_window = 3);

/// Dimension of the derivations preserving the algebra and fixing the
/// branch points (f_{i0} = 0), computed modulo mtilde^4 for type I and
/// mtilde^3 for type II: 2m resp. m.
int stabilizer_dimension(const LocalAlgebra& algebra);

/// Dimension of the truncated automorphism group of the normalisation at
/// the truncation relevant for the singularity type: 3m for type I, 2m for
/// type II.
int ambient_automorphism_dimension(SingularityType type);

/// Moduli dimension of subalgebra structures with the given type; equals
/// the branch count, and also the ambient automorphism dimension minus the
/// stabilizer dimension.
int crimping_dimension(SingularityType type);

enum class AtomVerdict { OneDimensional, Trivial };

/// Global vector fields, vanishing at one generic marking per branch, of
/// the curve made of m projective lines glued along the singularity: the
/// atom (one-dimensional automorphisms) occurs exactly when the
/// distinguished crimping parameter vanishes.
AtomVerdict atom_test(SingularityType type, const CrimpingParams& params,
                      int truncation = 8);

}  // namespace genus2
