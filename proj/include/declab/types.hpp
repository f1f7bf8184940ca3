#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace declab {

/// A Lebesgue exponent in [1, inf]. Finite values are stored directly;
/// infinity is a distinguished state so that 1/q is exactly 0.
struct Exponent {
  double value = 2.0;
  bool infinite = false;

  static Exponent inf() { return Exponent{0.0, true}; }

  static Exponent finite(double v) {
    if (!(v >= 1.0)) {
      throw std::invalid_argument("exponent must be >= 1, got " + std::to_string(v));
    }
    return Exponent{v, false};
  }

  double reciprocal() const { return infinite ? 0.0 : 1.0 / value; }

  bool operator==(const Exponent& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

inline Exponent exponent(double v) { return Exponent::finite(v); }

/// Parses "inf", "3", "10/3", "0.125". Fractions evaluate as num/den.
double parse_rational(const std::string& s);

/// Parses an exponent flag value; accepts the same forms as parse_rational.
Exponent parse_exponent(const std::string& s);

std::string exponent_to_string(const Exponent& e);

}  // namespace declab
