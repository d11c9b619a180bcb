#pragma once

#include "genus2/rational.hpp"

#include <string>
#include <vector>

namespace genus2 {

/// Ambient product of truncated univariate power-series rings
/// k[[t_1]]/(t_1^N) x ... x k[[t_m]]/(t_m^N) over exact rationals.
struct Ambient {
  int branches = 1;
  int truncation = 8;
  bool operator==(const Ambient&) const = default;
};

/// One element of the ambient ring: per-branch coefficient lists of length
/// exactly N. Multiplication is branchwise and discards degrees >= N.
class TruncatedElement {
 public:
  TruncatedElement() : amb_{1, 1}, coeff_(1, std::vector<Rat>(1)) {}
  explicit TruncatedElement(Ambient amb)
      : amb_(amb),
        coeff_(amb.branches, std::vector<Rat>(amb.truncation)) {}

  static TruncatedElement one(Ambient amb) {
    TruncatedElement e(amb);
    for (auto& br : e.coeff_) br[0] = 1;
    return e;
  }

  /// c * t_branch^deg (1-based exponent arithmetic is not used; deg >= 0).
  static TruncatedElement monomial(Ambient amb, int branch, int deg,
                                   const Rat& c = Rat(1)) {
    TruncatedElement e(amb);
    if (deg < amb.truncation) e.coeff_[branch][deg] = c;
    return e;
  }

  const Ambient& ambient() const { return amb_; }
  int branches() const { return amb_.branches; }
  int truncation() const { return amb_.truncation; }

  const Rat& coeff(int branch, int deg) const { return coeff_[branch][deg]; }
  void set_coeff(int branch, int deg, const Rat& c) { coeff_[branch][deg] = c; }

  bool is_zero() const {
    for (const auto& br : coeff_)
      for (const auto& c : br)
        if (c != 0) return false;
    return true;
  }

  bool has_constant_term() const {
    for (const auto& br : coeff_)
      if (br[0] != 0) return true;
    return false;
  }

  TruncatedElement& operator+=(const TruncatedElement& o) {
    check_compatible(o);
    for (int b = 0; b < branches(); ++b)
      for (int d = 0; d < truncation(); ++d) coeff_[b][d] += o.coeff_[b][d];
    return *this;
  }
  TruncatedElement& operator-=(const TruncatedElement& o) {
    check_compatible(o);
    for (int b = 0; b < branches(); ++b)
      for (int d = 0; d < truncation(); ++d) coeff_[b][d] -= o.coeff_[b][d];
    return *this;
  }
  TruncatedElement& operator*=(const Rat& c) {
    for (auto& br : coeff_)
      for (auto& x : br) x *= c;
    return *this;
  }

  friend TruncatedElement operator+(TruncatedElement a, const TruncatedElement& b) { return a += b; }
  friend TruncatedElement operator-(TruncatedElement a, const TruncatedElement& b) { return a -= b; }
  friend TruncatedElement operator*(TruncatedElement a, const Rat& c) { return a *= c; }
  friend TruncatedElement operator*(const Rat& c, TruncatedElement a) { return a *= c; }

  friend TruncatedElement operator*(const TruncatedElement& a, const TruncatedElement& b) {
    a.check_compatible(b);
    TruncatedElement r(a.amb_);
    const int n = a.truncation();
    for (int br = 0; br < a.branches(); ++br)
      for (int i = 0; i < n; ++i) {
        if (a.coeff_[br][i] == 0) continue;
        for (int j = 0; i + j < n; ++j) {
          if (b.coeff_[br][j] == 0) continue;
          r.coeff_[br][i + j] += a.coeff_[br][i] * b.coeff_[br][j];
        }
      }
    return r;
  }

  bool operator==(const TruncatedElement& o) const {
    return amb_ == o.amb_ && coeff_ == o.coeff_;
  }

  /// Formal derivative d/dt_i on each branch.
  TruncatedElement derivative() const {
    TruncatedElement r(amb_);
    for (int b = 0; b < branches(); ++b)
      for (int d = 1; d < truncation(); ++d)
        r.coeff_[b][d - 1] = coeff_[b][d] * d;
    return r;
  }

  /// Substitutes t_i -> subs[i] (each with zero constant term), branchwise.
  TruncatedElement substitute(const std::vector<TruncatedElement>& subs) const;

  /// Branches where some coefficient is nonzero.
  std::vector<int> support() const {
    std::vector<int> s;
    for (int b = 0; b < branches(); ++b)
      for (int d = 0; d < truncation(); ++d)
        if (coeff_[b][d] != 0) { s.push_back(b); break; }
    return s;
  }

  /// Flattened coordinates ordered by (degree, branch); the row-echelon order
  /// used throughout.
  std::vector<Rat> flatten() const {
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(branches()) * truncation());
    for (int d = 0; d < truncation(); ++d)
      for (int b = 0; b < branches(); ++b) v.push_back(coeff_[b][d]);
    return v;
  }

  static TruncatedElement unflatten(Ambient amb, const std::vector<Rat>& v) {
    TruncatedElement e(amb);
    size_t k = 0;
    for (int d = 0; d < amb.truncation; ++d)
      for (int b = 0; b < amb.branches; ++b) e.coeff_[b][d] = v[k++];
    return e;
  }

  /// Index of the first nonzero flattened coordinate, -1 if zero.
  int leading_position() const {
    for (int d = 0; d < truncation(); ++d)
      for (int b = 0; b < branches(); ++b)
        if (coeff_[b][d] != 0) return d * branches() + b;
    return -1;
  }

  std::string str() const;

 private:
  void check_compatible(const TruncatedElement& o) const {
    if (!(amb_ == o.amb_))
      throw input_error("mismatched branch count or truncation");
  }

  Ambient amb_;
  std::vector<std::vector<Rat>> coeff_;  // [branch][degree]
};

}  // namespace genus2
