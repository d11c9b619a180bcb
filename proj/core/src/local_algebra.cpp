#include "genus2/local_algebra.hpp"

#include "genus2/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace genus2 {

namespace {

/// Reduces e against a row-echelon span (rows pivot-normalised, sorted by
/// leading position).
TruncatedElement reduce_against(const std::vector<TruncatedElement>& rows,
                                TruncatedElement e) {
  for (const auto& r : rows) {
    if (e.is_zero()) break;
    int p = r.leading_position();
    int b = p % e.branches();
    int d = p / e.branches();
    const Rat& c = e.coeff(b, d);
    if (c != 0) e -= c * r;
  }
  return e;
}

bool span_contains(const std::vector<TruncatedElement>& rows,
                   const TruncatedElement& e) {
  return reduce_against(rows, e).is_zero();
}

/// Echelon basis maintenance. Elements are kept fully reduced and pivot-
/// normalised, sorted by leading (degree, branch) position.
struct Echelon {
  std::vector<TruncatedElement> rows;

  /// Returns true if e was independent and inserted.
  bool insert(TruncatedElement e) {
    e = reduce_against(rows, std::move(e));
    int p = e.leading_position();
    if (p < 0) return false;
    int b = p % e.branches();
    int d = p / e.branches();
    e *= Rat(1) / e.coeff(b, d);
    for (auto& r : rows) {
      const Rat& c = r.coeff(b, d);
      if (c != 0) r -= c * e;
    }
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const TruncatedElement& r) {
      return r.leading_position() > p;
    });
    rows.insert(pos, std::move(e));
    return true;
  }
};

Echelon echelon_of(const std::vector<TruncatedElement>& elems) {
  Echelon ech;
  for (const auto& e : elems) ech.insert(e);
  return ech;
}

}  // namespace

LocalAlgebra LocalAlgebra::closure(const std::vector<TruncatedElement>& generators,
                                   Ambient ambient) {
  if (ambient.branches < 1 || ambient.truncation < 2)
    throw input_error("ambient needs at least one branch and truncation >= 2");
  for (const auto& g : generators) {
    if (!(g.ambient() == ambient))
      throw input_error("generator in a different ambient ring");
    if (g.has_constant_term())
      throw input_error("generators must have zero constant term");
  }

  Echelon ech;
  ech.insert(TruncatedElement::one(ambient));
  std::vector<TruncatedElement> fresh;
  for (const auto& g : generators)
    if (ech.insert(g)) fresh.push_back(g);

  // Close the span under products; only products involving a new element
  // can leave the current span. The dimension is bounded by
  // branches * truncation, so this terminates quickly.
  std::vector<TruncatedElement> old;
  while (!fresh.empty()) {
    std::vector<TruncatedElement> next;
    for (const auto& f : fresh) {
      for (const auto& o : old) {
        auto p = f * o;
        if (ech.insert(p)) next.push_back(std::move(p));
      }
      for (const auto& f2 : fresh) {
        auto p = f * f2;
        if (ech.insert(p)) next.push_back(std::move(p));
      }
    }
    old.insert(old.end(), fresh.begin(), fresh.end());
    fresh = std::move(next);
  }
  return LocalAlgebra(ambient, generators, std::move(ech.rows));
}

TruncatedElement LocalAlgebra::reduce(const TruncatedElement& e) const {
  return reduce_against(basis_, e);
}

bool LocalAlgebra::contains(const TruncatedElement& e) const {
  return span_contains(basis_, e);
}

bool LocalAlgebra::truncation_stable() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->stable) return *cache_->stable;
  const int n = truncation();
  // Smallest c such that every monomial of degree in [c, N) lies in the
  // algebra; stability demands c <= N-2 so products past the conductor
  // stay certified.
  bool ok = true, decided = false;
  for (int d = n - 1; d >= 1 && !decided; --d) {
    for (int b = 0; b < branches(); ++b)
      if (!span_contains(basis_, TruncatedElement::monomial(amb_, b, d))) {
        ok = d <= n - 3;
        decided = true;
        break;
      }
  }
  cache_->stable = ok;
  return ok;
}

void LocalAlgebra::require_stable() const {
  if (!truncation_stable())
    throw truncation_error(
        "conductor not visibly contained at this truncation; increase N");
}

int LocalAlgebra::delta() const {
  require_stable();
  return branches() * truncation() - dim();
}

int LocalAlgebra::genus() const { return delta() - branches() + 1; }

ConductorInfo LocalAlgebra::conductor() const { return conductor_ref(); }

const ConductorInfo& LocalAlgebra::conductor_ref() const {
  require_stable();
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->conductor) return *cache_->conductor;
  const int s = dim();
  const int n = truncation();
  const int m = branches();

  // x = sum lambda_j basis_j lies in the conductor iff x * t_i^k stays in
  // the algebra for every branch i and k >= 0 (k = 0 gives the branch
  // idempotents); each failing residual coordinate is a linear condition
  // on lambda.
  RatMat rows;
  for (int b = 0; b < m; ++b) {
    for (int k = 0; k < n; ++k) {
      auto mono = TruncatedElement::monomial(amb_, b, k);
      std::vector<std::vector<Rat>> residuals;
      residuals.reserve(s);
      bool all_zero = true;
      for (int j = 0; j < s; ++j) {
        auto res = reduce_against(basis_, basis_[j] * mono);
        if (!res.is_zero()) all_zero = false;
        residuals.push_back(res.flatten());
      }
      if (all_zero) continue;
      const int coords = m * n;
      for (int c = 0; c < coords; ++c) {
        RatRow row(s);
        bool nz = false;
        for (int j = 0; j < s; ++j) {
          row[j] = residuals[j][c];
          if (row[j] != 0) nz = true;
        }
        if (nz) rows.push_back(std::move(row));
      }
    }
  }

  // Nullspace of the condition matrix, expressed back in the ambient ring.
  ConductorInfo info;
  if (rows.empty()) {
    info.basis = basis_;
  } else {
    auto pivots = rref(rows);
    std::vector<bool> is_pivot(s, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int free = 0; free < s; ++free) {
      if (is_pivot[free]) continue;
      RatRow lambda(s);
      lambda[free] = 1;
      for (size_t r = 0; r < pivots.size(); ++r) lambda[pivots[r]] = -rows[r][free];
      TruncatedElement x(amb_);
      for (int j = 0; j < s; ++j)
        if (lambda[j] != 0) x += lambda[j] * basis_[j];
      info.basis.push_back(std::move(x));
    }
  }

  Echelon ideal = echelon_of(info.basis);
  info.branch_exponents.assign(m, n);
  for (int b = 0; b < m; ++b) {
    int e = n;
    for (int d = n - 1; d >= 1; --d) {
      if (span_contains(ideal.rows, TruncatedElement::monomial(amb_, b, d)))
        e = d;
      else
        break;
    }
    if (e >= n)
      throw truncation_error("conductor exponent not visible; increase N");
    info.branch_exponents[b] = e;
  }
  info.exponent = *std::max_element(info.branch_exponents.begin(),
                                    info.branch_exponents.end());
  cache_->conductor = std::move(info);
  return *cache_->conductor;
}

bool LocalAlgebra::gorenstein() const {
  const auto& cond = conductor_ref();
  int dim_R_mod_I = dim() - static_cast<int>(cond.basis.size());
  return dim_R_mod_I == delta();
}

std::vector<int> LocalAlgebra::graded_pieces() const {
  int c = conductor_ref().exponent;
  // Count echelon basis elements by leading degree; that is exactly the
  // dimension of (mtilde^i cap R)/(mtilde^{i+1} cap R).
  std::vector<int> lead(truncation(), 0);
  for (const auto& e : basis_) ++lead[e.leading_position() / branches()];
  std::vector<int> pieces;
  for (int i = 0; i < c; ++i)
    pieces.push_back((i == 0 ? branches() - 1 : branches()) -
                     (i == 0 ? lead[0] - 1 : lead[i]));
  return pieces;
}

bool LocalAlgebra::decomposable() const {
  const int m = branches();
  if (m < 2) return false;
  // A reduced row-echelon basis of a transverse union splits into the unit
  // plus branch-pure elements, so the branch co-occurrence graph of the
  // basis supports decides decomposability exactly.
  std::vector<int> parent(m);
  for (int b = 0; b < m; ++b) parent[b] = b;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : basis_) {
    if (e.leading_position() / m == 0) continue;  // the unit row
    auto supp = e.support();
    for (size_t i = 1; i < supp.size(); ++i)
      parent[find(supp[i])] = find(supp[0]);
  }
  for (int b = 1; b < m; ++b)
    if (find(b) != find(0)) return true;
  return false;
}

SingularityType LocalAlgebra::recognize() const {
  int d = delta();
  if (d == 0) throw input_error("smooth point: not a singularity");
  int m = branches();
  int g = genus();
  if (m == 2 && d == 1) return SingularityType::node();
  if (decomposable())
    throw input_error("decomposable singularity: split off a transverse union first");
  if (g > 2) throw unsupported_error("singularity genus exceeds two");
  if (!gorenstein()) return SingularityType::non_gorenstein(g, m);
  if (g == 1) return SingularityType::elliptic(m);
  if (g == 2) {
    auto pieces = graded_pieces();
    auto at = [&](size_t i) { return i < pieces.size() ? pieces[i] : 0; };
    if (at(1) == 1 && at(2) == 0 && at(3) == 1) return SingularityType::type_I(m);
    if (at(1) == 1 && at(2) == 1 && at(3) == 0) return SingularityType::type_II(m);
    throw truncation_error("ambiguous genus-two grading; increase N");
  }
  throw input_error("unexpected Gorenstein singularity profile");
}

std::vector<PolarForm> LocalAlgebra::dualizing_polar_basis() const {
  const auto& cond = conductor_ref();
  if (!gorenstein())
    throw unsupported_error("polar basis implemented for Gorenstein algebras only");

  const int m = branches();
  std::vector<int> offset(m + 1, 0);
  for (int b = 0; b < m; ++b) offset[b + 1] = offset[b] + cond.branch_exponents[b];
  const int vars = offset[m];

  // Residue pairing: a polar tail sum a_{ij} dt_i/t_i^j pairs with f via
  // sum_i sum_j a_{ij} * [t_i^{j-1}] f_i; it lies in the dualizing module
  // iff it annihilates the whole algebra.
  RatMat rows;
  for (const auto& f : basis_) {
    RatRow row(vars);
    bool nz = false;
    for (int b = 0; b < m; ++b)
      for (int j = 1; j <= cond.branch_exponents[b]; ++j) {
        row[offset[b] + j - 1] = f.coeff(b, j - 1);
        if (row[offset[b] + j - 1] != 0) nz = true;
      }
    if (nz) rows.push_back(std::move(row));
  }

  std::vector<PolarForm> forms;
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(vars, false);
  for (int p : pivots) is_pivot[p] = true;
  for (int free = 0; free < vars; ++free) {
    if (is_pivot[free]) continue;
    RatRow a(vars);
    a[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) a[pivots[r]] = -rows[r][free];
    PolarForm form;
    form.poles.resize(m);
    for (int b = 0; b < m; ++b) {
      form.poles[b].resize(cond.branch_exponents[b]);
      for (int j = 0; j < cond.branch_exponents[b]; ++j)
        form.poles[b][j] = a[offset[b] + j];
    }
    forms.push_back(std::move(form));
  }
  if (static_cast<int>(forms.size()) != delta())
    throw truncation_error("polar basis dimension disagrees with delta; increase N");
  return forms;
}

bool LocalAlgebra::polar_form_admissible(const PolarForm& form) const {
  if (static_cast<int>(form.poles.size()) != branches()) return false;
  for (const auto& f : basis_) {
    Rat pairing = 0;
    for (int b = 0; b < branches(); ++b)
      for (size_t j = 1; j <= form.poles[b].size(); ++j) {
        if (static_cast<int>(j) - 1 >= truncation()) break;
        pairing += form.poles[b][j - 1] * f.coeff(b, static_cast<int>(j) - 1);
      }
    if (pairing != 0) return false;
  }
  return true;
}

LocalAlgebra LocalAlgebra::substituted(const std::vector<TruncatedElement>& subs) const {
  std::vector<TruncatedElement> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(g.substitute(subs));
  return closure(gens, amb_);
}

LocalAlgebra LocalAlgebra::restricted(const std::vector<int>& branch_subset) const {
  Ambient amb{static_cast<int>(branch_subset.size()), truncation()};
  std::vector<TruncatedElement> gens;
  for (const auto& g : gens_) {
    TruncatedElement p(amb);
    for (size_t i = 0; i < branch_subset.size(); ++i)
      for (int d = 0; d < truncation(); ++d)
        p.set_coeff(static_cast<int>(i), d, g.coeff(branch_subset[i], d));
    gens.push_back(std::move(p));
  }
  return closure(gens, amb);
}

std::vector<TruncatedElement> canonical_generators(SingularityType type,
                                                   const CrimpingParams& params,
                                                   int truncation) {
  if (!type.genus_two())
    throw unsupported_error("canonical generators exist for genus-two types only");
  const int m = type.branches;
  if (type.kind == SingularityType::Kind::GenusTwoII && m < 2)
    throw input_error("type II needs at least two branches");
  if (m < 1) throw input_error("branch count must be positive");
  if (truncation < 6) throw input_error("canonical forms need truncation >= 6");

  Ambient amb{m, truncation};
  std::vector<TruncatedElement> gens;

  if (type.kind == SingularityType::Kind::GenusTwoI) {
    CrimpingParams p = params;
    if (p.empty()) {
      p.assign(m, Rat(1));
      p[m - 1] = 0;
    }
    if (static_cast<int>(p.size()) != m)
      throw input_error("type I_m expects m crimping parameters");
    for (int i = 0; i < m - 1; ++i)
      if (p[i] == 0)
        throw input_error("decomposable: axis coefficients must be nonzero");
    if (m == 1) {
      // x = t^2 + gamma t^3
      auto x = TruncatedElement::monomial(amb, 0, 2);
      x += TruncatedElement::monomial(amb, 0, 3, p[0]);
      gens.push_back(x);
    } else {
      for (int i = 0; i < m - 1; ++i) {
        auto x = TruncatedElement::monomial(amb, i, 1);
        x += TruncatedElement::monomial(amb, m - 1, 3, p[i]);
        gens.push_back(x);
      }
      auto xm = TruncatedElement::monomial(amb, m - 1, 2);
      xm += TruncatedElement::monomial(amb, m - 1, 3, p[m - 1]);
      gens.push_back(xm);
    }
    for (int b = 0; b < m; ++b)
      for (int d = 4; d <= std::min(7, truncation - 1); ++d)
        gens.push_back(TruncatedElement::monomial(amb, b, d));
  } else {
    CrimpingParams p = params;
    if (p.empty()) {
      p.assign(m, Rat(1));
      p[1] = 0;
    }
    if (static_cast<int>(p.size()) != m)
      throw input_error("type II_m expects m crimping parameters");
    if (p[0] == 0)
      throw input_error("decomposable: the twin coefficient alpha must be nonzero");
    for (int i = 2; i < m; ++i)
      if (p[i] == 0)
        throw input_error("decomposable: axis coefficients must be nonzero");
    // x_1 = t_1 (+) alpha t_m + beta_1 t_m^2
    auto x1 = TruncatedElement::monomial(amb, 0, 1);
    x1 += TruncatedElement::monomial(amb, m - 1, 1, p[0]);
    x1 += TruncatedElement::monomial(amb, m - 1, 2, p[1]);
    gens.push_back(x1);
    for (int i = 1; i < m - 1; ++i) {
      auto x = TruncatedElement::monomial(amb, i, 1);
      x += TruncatedElement::monomial(amb, m - 1, 2, p[i + 1]);
      gens.push_back(x);
    }
    for (int b = 0; b < m; ++b)
      for (int d = 3; d <= std::min(5, truncation - 1); ++d)
        gens.push_back(TruncatedElement::monomial(amb, b, d));
  }
  return gens;
}

std::vector<int> omega_pullback_divisor(SingularityType type) {
  if (!type.genus_two())
    throw unsupported_error("conductor divisor implemented for genus-two types");
  const int m = type.branches;
  if (type.kind == SingularityType::Kind::GenusTwoI) {
    std::vector<int> v(m, 2);
    v[m - 1] = 4;
    return v;
  }
  std::vector<int> v(m, 2);
  v[0] = 3;
  v[m - 1] = 3;
  return v;
}

std::vector<int> omega_multidegree(SingularityType type) {
  auto v = omega_pullback_divisor(type);
  for (auto& x : v) x -= 2;
  return v;
}

namespace corpus {

LocalAlgebra node(int truncation) {
  Ambient amb{2, truncation};
  return LocalAlgebra::closure(
      {TruncatedElement::monomial(amb, 0, 1), TruncatedElement::monomial(amb, 1, 1)},
      amb);
}

LocalAlgebra cusp(int truncation) {
  Ambient amb{1, truncation};
  return LocalAlgebra::closure(
      {TruncatedElement::monomial(amb, 0, 2), TruncatedElement::monomial(amb, 0, 3)},
      amb);
}

LocalAlgebra tacnode(int truncation) {
  Ambient amb{2, truncation};
  auto x = TruncatedElement::monomial(amb, 0, 1) + TruncatedElement::monomial(amb, 1, 1);
  auto y = TruncatedElement::monomial(amb, 1, 2);
  return LocalAlgebra::closure({x, y}, amb);
}

LocalAlgebra elliptic_mfold(int m, int truncation) {
  if (m <= 1) return cusp(truncation);
  if (m == 2) return tacnode(truncation);
  // m general lines through the origin: directions e_1,...,e_{m-1},
  // (1,...,1).
  Ambient amb{m, truncation};
  std::vector<TruncatedElement> gens;
  for (int j = 0; j < m - 1; ++j)
    gens.push_back(TruncatedElement::monomial(amb, j, 1) +
                   TruncatedElement::monomial(amb, m - 1, 1));
  return LocalAlgebra::closure(gens, amb);
}

LocalAlgebra monomial_345(int truncation) {
  Ambient amb{1, truncation};
  return LocalAlgebra::closure({TruncatedElement::monomial(amb, 0, 3),
                                TruncatedElement::monomial(amb, 0, 4),
                                TruncatedElement::monomial(amb, 0, 5)},
                               amb);
}

LocalAlgebra a4(int truncation) {
  return LocalAlgebra::closure(
      canonical_generators(SingularityType::type_I(1), {}, truncation),
      Ambient{1, truncation});
}

LocalAlgebra a5(int truncation) {
  return LocalAlgebra::closure(
      canonical_generators(SingularityType::type_II(2), {}, truncation),
      Ambient{2, truncation});
}

LocalAlgebra d5(int truncation) {
  return LocalAlgebra::closure(
      canonical_generators(SingularityType::type_I(2), {}, truncation),
      Ambient{2, truncation});
}

LocalAlgebra d6(int truncation) {
  return LocalAlgebra::closure(
      canonical_generators(SingularityType::type_II(3), {}, truncation),
      Ambient{3, truncation});
}

}  // namespace corpus

}  // namespace genus2
