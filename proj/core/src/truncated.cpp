#include "genus2/truncated.hpp"

#include <sstream>

namespace genus2 {

TruncatedElement TruncatedElement::substitute(
    const std::vector<TruncatedElement>& subs) const {
  if (static_cast<int>(subs.size()) != branches())
    throw input_error("substitution needs one series per branch");
  TruncatedElement r(amb_);
  for (int b = 0; b < branches(); ++b) {
    if (subs[b].ambient().truncation != truncation() ||
        subs[b].ambient().branches != branches())
      throw input_error("substitution series in a different ambient");
    if (subs[b].coeff_[b][0] != 0)
      throw input_error("substitution series must have zero constant term");
    // Horner evaluation of the branch-b polynomial at subs[b], branch b only.
    std::vector<Rat> acc(truncation());
    for (int d = truncation() - 1; d >= 1; --d) {
      // acc <- acc * subs[b] + coeff[b][d]
      std::vector<Rat> next(truncation());
      for (int i = 0; i < truncation(); ++i) {
        if (acc[i] == 0) continue;
        for (int j = 1; i + j < truncation(); ++j)
          next[i + j] += acc[i] * subs[b].coeff_[b][j];
      }
      next[0] += coeff_[b][d];
      acc = std::move(next);
    }
    // One more multiplication by subs[b], then the constant term.
    std::vector<Rat> out(truncation());
    for (int i = 0; i < truncation(); ++i) {
      if (acc[i] == 0) continue;
      for (int j = 1; i + j < truncation(); ++j)
        out[i + j] += acc[i] * subs[b].coeff_[b][j];
    }
    out[0] += coeff_[b][0];
    r.coeff_[b] = std::move(out);
  }
  return r;
}

std::string TruncatedElement::str() const {
  std::ostringstream os;
  for (int b = 0; b < branches(); ++b) {
    if (b) os << " (+) ";
    bool any = false;
    for (int d = 0; d < truncation(); ++d) {
      if (coeff_[b][d] == 0) continue;
      if (any) os << " + ";
      any = true;
      if (d == 0 || coeff_[b][d] != 1) os << rat_str(coeff_[b][d]);
      if (d > 0) {
        if (coeff_[b][d] != 1) os << "*";
        os << "t" << (b + 1);
        if (d > 1) os << "^" << d;
      }
    }
    if (!any) os << "0";
  }
  return os.str();
}

}  // namespace genus2
