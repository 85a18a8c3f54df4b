#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "sigmap/rational.hpp"

namespace sigmap {

/// Moment exponent p in [1, inf]. Immutable once constructed.
class PExp {
 public:
  explicit PExp(double p) : p_(p) {
    if (!(p >= 1.0)) throw std::invalid_argument("PExp: p must be >= 1");
  }
  static PExp infinity() { return PExp(std::numeric_limits<double>::infinity()); }
  static PExp parse(std::string_view s) {
    if (s == "inf" || s == "Inf" || s == "INF") return infinity();
    try {
      std::size_t pos = 0;
      const double v = std::stod(std::string(s), &pos);
      if (pos != s.size()) throw std::invalid_argument("");
      return PExp(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("PExp: cannot parse '" + std::string(s) + "'");
    }
  }

  double value() const { return p_; }
  bool is_inf() const { return std::isinf(p_); }
  bool is(double v) const { return p_ == v; }

  /// Conjugate exponent q with 1/p + 1/q = 1.
  PExp conjugate() const {
    if (is(1.0)) return infinity();
    if (is_inf()) return PExp(1.0);
    return PExp(p_ / (p_ - 1.0));
  }

  std::string str() const {
    if (is_inf()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", p_);
    return std::string(buf);
  }

  friend bool operator==(const PExp& a, const PExp& b) { return a.p_ == b.p_; }

 private:
  double p_;
};

template <class R>
inline constexpr bool is_weight_type =
    std::is_same_v<R, double> || std::is_same_v<R, Rational>;

/// Probability measure on a finite set {0, ..., n-1}. Weights are validated at
/// construction: nonnegative and summing to 1 (exactly for Rational, within
/// 1e-12 for double). Zero-weight atoms are allowed; essential suprema skip
/// them.
template <class R>
class Measure {
  static_assert(is_weight_type<R>, "Measure requires double or Rational weights");

 public:
  explicit Measure(std::vector<R> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw std::invalid_argument("Measure: empty weight vector");
    R sum{};
    for (const R& w : w_) {
      if (w < R{}) throw std::invalid_argument("Measure: negative weight");
      sum += w;
    }
    if constexpr (std::is_same_v<R, double>) {
      if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("Measure: weights must sum to 1");
    } else {
      if (sum != 1) throw std::invalid_argument("Measure: weights must sum to 1 exactly");
    }
  }

  static Measure uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Measure::uniform: n must be positive");
    if constexpr (std::is_same_v<R, double>)
      return Measure(std::vector<R>(n, 1.0 / static_cast<double>(n)));
    else
      return Measure(std::vector<R>(n, Rational(1, n)));
  }

  std::size_t size() const { return w_.size(); }
  const std::vector<R>& weights() const { return w_; }
  const R& operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<R> w_;
};

using MeasureD = Measure<double>;
using MeasureQ = Measure<Rational>;

namespace detail {

inline double abs_val(double x) { return std::abs(x); }
inline double abs_val(const std::complex<double>& z) { return std::abs(z); }

template <class S, class R>
void check_dims(std::span<const S> f, const Measure<R>& mu, const char* who) {
  if (f.size() != mu.size())
    throw std::invalid_argument(std::string(who) + ": vector/measure size mismatch");
}

}  // namespace detail

/// E_mu[f]. Works for double, complex<double> and Rational coordinates (the
/// weight type must match the coordinate field's scalar ring).
template <class S, class R>
S expectation(std::span<const S> f, const Measure<R>& mu) {
  detail::check_dims(f, mu, "expectation");
  S acc{};
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * mu[i];
  return acc;
}

/// Uniform (counting) sup norm: max_i |f_i| over every coordinate, weights
/// ignored. This is the multiplier norm that appears on the right of the
/// product inequalities.
template <class S>
double sup_norm(std::span<const S> f) {
  if (f.empty()) throw std::invalid_argument("sup_norm: empty vector");
  double m = 0.0;
  for (const S& x : f) m = std::max(m, detail::abs_val(x));
  return m;
}

/// L^p(mu) norm. p = inf is the essential sup: zero-weight atoms are skipped.
template <class S>
double p_norm(std::span<const S> f, const MeasureD& mu, PExp p) {
  detail::check_dims(f, mu, "p_norm");
  if (p.is_inf()) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (mu[i] > 0.0) m = std::max(m, detail::abs_val(f[i]));
    return m;
  }
  if (p.is(1.0)) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += mu[i] * detail::abs_val(f[i]);
    return s;
  }
  if (p.is(2.0)) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double a = detail::abs_val(f[i]);
      s += mu[i] * a * a;
    }
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += mu[i] * std::pow(detail::abs_val(f[i]), p.value());
  return std::pow(s, 1.0 / p.value());
}

/// Centered p-th moment sigma_p(f; mu) = ||f - E f||_{L^p(mu)}.
template <class S>
double centered_moment(std::span<const S> f, const MeasureD& mu, PExp p) {
  detail::check_dims(f, mu, "centered_moment");
  const S mean = expectation(f, mu);
  std::vector<S> dev(f.begin(), f.end());
  for (S& x : dev) x -= mean;
  return p_norm(std::span<const S>(dev), mu, p);
}

// Exact-rational backend. Only the exponents whose norms stay inside Q (or a
// single square root of Q) are provided: p = 1, p = 2 (as the squared norm),
// and the two sup norms.
namespace exact {

inline Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational expectation(std::span<const Rational> f, const MeasureQ& mu) {
  return sigmap::expectation(f, mu);
}

inline Rational p1_norm(std::span<const Rational> f, const MeasureQ& mu) {
  detail::check_dims(f, mu, "p1_norm");
  Rational s;
  for (std::size_t i = 0; i < f.size(); ++i) s += mu[i] * abs_q(f[i]);
  return s;
}

inline Rational p2_norm_squared(std::span<const Rational> f, const MeasureQ& mu) {
  detail::check_dims(f, mu, "p2_norm_squared");
  Rational s;
  for (std::size_t i = 0; i < f.size(); ++i) s += mu[i] * f[i] * f[i];
  return s;
}

inline Rational sup_norm(std::span<const Rational> f) {
  if (f.empty()) throw std::invalid_argument("sup_norm: empty vector");
  Rational m;
  for (const Rational& x : f) m = std::max(m, abs_q(x));
  return m;
}

inline Rational ess_sup(std::span<const Rational> f, const MeasureQ& mu) {
  detail::check_dims(f, mu, "ess_sup");
  Rational m;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mu[i] > 0) m = std::max(m, abs_q(f[i]));
  return m;
}

inline std::vector<Rational> centered(std::span<const Rational> f, const MeasureQ& mu) {
  const Rational mean = expectation(f, mu);
  std::vector<Rational> dev(f.begin(), f.end());
  for (Rational& x : dev) x -= mean;
  return dev;
}

inline Rational centered_p1(std::span<const Rational> f, const MeasureQ& mu) {
  const auto dev = centered(f, mu);
  return p1_norm(dev, mu);
}

inline Rational centered_p2_squared(std::span<const Rational> f, const MeasureQ& mu) {
  const auto dev = centered(f, mu);
  return p2_norm_squared(dev, mu);
}

inline Rational centered_sup(std::span<const Rational> f, const MeasureQ& mu) {
  const auto dev = centered(f, mu);
  return ess_sup(dev, mu);
}

}  // namespace exact

/// sigma_p via the exact backend where possible, returned as double.
/// Provided so float and exact paths can be cross-checked in one place.
inline double centered_moment_exact_as_double(std::span<const Rational> f, const MeasureQ& mu,
                                              PExp p) {
  if (p.is(1.0)) return to_double(exact::centered_p1(f, mu));
  if (p.is(2.0)) return std::sqrt(to_double(exact::centered_p2_squared(f, mu)));
  if (p.is_inf()) return to_double(exact::centered_sup(f, mu));
  throw std::invalid_argument("centered_moment_exact_as_double: p must be 1, 2 or inf");
}

}  // namespace sigmap
