#include "declab/types.hpp"

#include <charconv>

namespace declab {

namespace {

double parse_number(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) {
    throw std::invalid_argument("trailing characters in number: '" + s + "'");
  }
  return v;
}

}  // namespace

double parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    return parse_number(s);
  }
  double num = parse_number(s.substr(0, slash));
  double den = parse_number(s.substr(slash + 1));
  if (den == 0.0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  return num / den;
}

Exponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") {
    return Exponent::inf();
  }
  return Exponent::finite(parse_rational(s));
}

std::string exponent_to_string(const Exponent& e) {
  if (e.infinite) return "inf";
  double r = std::round(e.value);
  if (r == e.value && std::abs(r) < 1e15) {
    return std::to_string(static_cast<long long>(r));
  }
  return std::to_string(e.value);
}

}  // namespace declab
