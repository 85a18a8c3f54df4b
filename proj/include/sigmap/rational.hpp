#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigmap {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline int sign_of(const Rational& r) { return r.sign(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
  return Rational(x);
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Canonical "num/den" form, denominator always present and positive.
inline std::string fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "num/den", a plain integer, or nothing else.
inline Rational parse_fraction(std::string_view s) {
  auto bad = [&] { return std::invalid_argument("parse_fraction: expected num/den, got '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
    BigInt num{std::string(s.substr(0, slash))};
    BigInt den{std::string(s.substr(slash + 1))};
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

/// sign(sqrt(l) - c*sqrt(f)) for l, f >= 0 and c >= 0, decided exactly by squaring.
inline int cmp_sqrt(const Rational& l, const Rational& c, const Rational& f) {
  if (l < 0 || f < 0 || c < 0) throw std::domain_error("cmp_sqrt: negative input");
  return sign_of(l - c * c * f);
}

/// sign(sqrt(l) - (a*sqrt(g) + b*sqrt(f))) for all inputs >= 0.
///
/// Squaring once leaves the cross term 2ab*sqrt(g*f); a second squaring after
/// isolating it settles the sign without ever leaving Q.
inline int cmp_sqrt_sum(const Rational& l, const Rational& a, const Rational& g,
                        const Rational& b, const Rational& f) {
  if (l < 0 || a < 0 || g < 0 || b < 0 || f < 0)
    throw std::domain_error("cmp_sqrt_sum: negative input");
  const Rational u = l - a * a * g - b * b * f;
  const Rational cross = g * f * (2 * a * b) * (2 * a * b);
  if (cross == 0) return sign_of(u);
  if (u <= 0) return -1;
  return sign_of(u * u - cross);
}

}  // namespace sigmap
