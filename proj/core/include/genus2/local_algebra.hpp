#pragma once

#include "genus2/singularity.hpp"
#include "genus2/truncated.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace genus2 {

/// Basis of the conductor ideal together with its exponents.
struct ConductorInfo {
  std::vector<TruncatedElement> basis;
  std::vector<int> branch_exponents;  // smallest j with t_i^j k[[t_i]] inside
  int exponent = 0;                   // smallest j with mtilde^j inside
};

/// A polar tail sum a_{ij} dt_i / t_i^j representing a class in
/// omega_C / nu_* omega_{Ctilde}; poles[i][j-1] is the coefficient of
/// dt_i/t_i^j.
struct PolarForm {
  std::vector<std::vector<Rat>> poles;
};

/// Crimping parameters for the canonical generators of a genus-two
/// singularity. Type I_m expects (gamma_1,...,gamma_{m-1}; gamma_m) with the
/// first m-1 nonzero; type II_m expects (alpha_1, beta_1, beta_2,...,
/// beta_{m-1}) with alpha_1 and beta_2..beta_{m-1} nonzero. Empty = the
/// normalised form (all 1, distinguished parameter 0).
using CrimpingParams = std::vector<Rat>;

/// A unital subalgebra of a product of truncated power-series rings, given
/// by a row-echelon linear basis closed under multiplication. Immutable
/// after construction.
class LocalAlgebra {
 public:
  /// Smallest unital subalgebra containing the generators (which must have
  /// zero constant term), as a reduced row-echelon basis ordered by
  /// (degree, branch).
  static LocalAlgebra closure(const std::vector<TruncatedElement>& generators,
                              Ambient ambient);

  const Ambient& ambient() const { return amb_; }
  int branches() const { return amb_.branches; }
  int truncation() const { return amb_.truncation; }
  const std::vector<TruncatedElement>& basis() const { return basis_; }
  const std::vector<TruncatedElement>& generators() const { return gens_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  bool contains(const TruncatedElement& e) const;
  /// Reduces e against the basis; zero iff contained.
  TruncatedElement reduce(const TruncatedElement& e) const;

  /// True if some power of the maximal ideal of the normalisation lies in
  /// the algebra with two degrees of slack before the truncation order.
  bool truncation_stable() const;

  /// dim(normalisation / algebra); requires truncation stability.
  int delta() const;
  /// delta - branches + 1.
  int genus() const;
  ConductorInfo conductor() const;
  bool gorenstein() const;
  /// Dimensions of the graded pieces of (normalisation/algebra) in degrees
  /// 0 .. conductor exponent - 1.
  std::vector<int> graded_pieces() const;

  /// True if the branches split into two groups meeting transversally.
  bool decomposable() const;

  SingularityType recognize() const;

  /// Basis of the polar parts of the dualizing module, cut out by the
  /// residue pairing against the algebra.
  std::vector<PolarForm> dualizing_polar_basis() const;

  /// Checks a single polar tail against the residue conditions.
  bool polar_form_admissible(const PolarForm& form) const;

  /// Image of the algebra under branchwise coordinate changes
  /// t_i -> subs[i].
  LocalAlgebra substituted(const std::vector<TruncatedElement>& subs) const;

  /// Projection onto a subset of the branches (the local ring of the
  /// subcurve spanned by those branches).
  LocalAlgebra restricted(const std::vector<int>& branch_subset) const;

 private:
  LocalAlgebra(Ambient amb, std::vector<TruncatedElement> gens,
               std::vector<TruncatedElement> basis)
      : amb_(amb),
        gens_(std::move(gens)),
        basis_(std::move(basis)),
        cache_(std::make_shared<Cache>()) {}

  void require_stable() const;
  const ConductorInfo& conductor_ref() const;

  // Lazily computed invariants, shared between copies; the guard keeps the
  // advertised concurrency guarantee for const calls.
  struct Cache {
    std::mutex mu;
    std::optional<bool> stable;
    std::optional<ConductorInfo> conductor;
  };

  Ambient amb_;
  std::vector<TruncatedElement> gens_;
  std::vector<TruncatedElement> basis_;
  std::shared_ptr<Cache> cache_;
};

/// Generator lists for the canonical coordinates of a genus-two singularity
/// (plus monomial generators of the conductor), embedded at truncation N.
std::vector<TruncatedElement> canonical_generators(SingularityType type,
                                                   const CrimpingParams& params,
                                                   int truncation = 8);

/// Coefficients of the conductor divisor: pullback of the dualizing sheaf
/// along the normalisation is omega(sum coeff_i q_i).
std::vector<int> omega_pullback_divisor(SingularityType type);

/// Per-branch degrees of the dualizing sheaf of the curve obtained by
/// closing each branch up to a rational curve: (0,...,0,2) for type I and
/// (1,0,...,0,1) for type II.
std::vector<int> omega_multidegree(SingularityType type);

/// Ready-made algebras for the classical examples, all at the given
/// truncation.
namespace corpus {
LocalAlgebra node(int truncation = 8);
LocalAlgebra cusp(int truncation = 8);
LocalAlgebra tacnode(int truncation = 8);
LocalAlgebra elliptic_mfold(int m, int truncation = 8);
LocalAlgebra monomial_345(int truncation = 8);  // k[[t^3,t^4,t^5]]
LocalAlgebra a4(int truncation = 8);
LocalAlgebra a5(int truncation = 8);
LocalAlgebra d5(int truncation = 8);
LocalAlgebra d6(int truncation = 8);
}  // namespace corpus

}  // namespace genus2
