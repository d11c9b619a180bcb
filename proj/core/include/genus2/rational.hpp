#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace genus2 {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an invariant cannot be certified at the current truncation.
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" with optional sign; q must be nonzero.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw input_error("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw input_error("malformed rational: " + s);
  }
}

inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace genus2
