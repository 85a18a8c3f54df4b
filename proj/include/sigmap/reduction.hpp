#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmap/prob.hpp"
#include "sigmap/rational.hpp"

namespace sigmap {

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor_q(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

inline BigInt round_q(const Rational& x) { return floor_q(x + Rational(1, 2)); }

}  // namespace detail

/// Best continued-fraction convergent of x with denominator <= max_den.
inline Rational best_rational_approx(const Rational& x, const BigInt& max_den) {
  if (max_den < 1) throw std::invalid_argument("best_rational_approx: max_den must be >= 1");
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational r = x;
  while (true) {
    const BigInt a = detail::floor_q(r);
    const BigInt p2 = a * p1 + p0;
    const BigInt q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational frac = r - Rational(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(0); // max_den rejected even the integer part
  return Rational(p1, q1);
}

/// Rational measure nu with max_i |nu_i - mu_i| <= eps and sum exactly 1.
///
/// Two-stage: first try to reconstruct small-denominator rationals the caller
/// most likely meant (continued fractions, denominator <= 10^6, per-atom error
/// <= min(eps, 1e-12), exact unit sum); otherwise round every weight to a
/// common denominator m = ceil((n+1)/(2 eps)) and repair the sum on the
/// largest atom, which keeps every atom within eps.
inline MeasureQ rationalize(const MeasureD& mu, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("rationalize: eps must be positive");
  const std::size_t n = mu.size();

  const Rational tau = rational_from_double(std::min(eps, 1e-12));
  std::vector<Rational> cf(n);
  bool cf_ok = true;
  Rational cf_sum;
  for (std::size_t i = 0; i < n && cf_ok; ++i) {
    const Rational exact_w = rational_from_double(mu[i]);
    cf[i] = best_rational_approx(exact_w, BigInt(1000000));
    if (cf[i] < 0 || exact::abs_q(cf[i] - exact_w) > tau) cf_ok = false;
    cf_sum += cf[i];
  }
  if (cf_ok && cf_sum == 1) return MeasureQ(std::move(cf));

  const Rational eps_q = rational_from_double(eps);
  const BigInt m = detail::floor_q(Rational(n + 1) / (2 * eps_q)) + 1;
  std::vector<BigInt> r(n);
  BigInt total = 0;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = detail::round_q(rational_from_double(mu[i]) * Rational(m));
    if (r[i] < 0) r[i] = 0;
    total += r[i];
    if (mu[i] > mu[largest]) largest = i;
  }
  r[largest] += m - total;
  if (r[largest] < 0)
    throw std::invalid_argument("rationalize: eps too coarse for this weight vector");
  std::vector<Rational> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = Rational(r[i], m);
  return MeasureQ(std::move(w));
}

/// Common-denominator view of a rational measure: weights r_i / m.
struct MeasureCounts {
  std::vector<BigInt> counts;
  BigInt denominator;
};

inline MeasureCounts measure_counts(const MeasureQ& nu) {
  MeasureCounts mc;
  mc.denominator = 1;
  for (const Rational& w : nu.weights())
    mc.denominator = lcm(mc.denominator, denominator(w));
  mc.counts.reserve(nu.size());
  for (const Rational& w : nu.weights())
    mc.counts.push_back(numerator(w) * (mc.denominator / denominator(w)));
  return mc;
}

inline constexpr std::size_t kReplicateLimit = 5000000;

/// The replication map onto the uniform m-point space: coordinate i is
/// repeated r_i times, where nu_i = r_i / m in lowest common terms. An
/// isometric algebra homomorphism: expectations, essential sups, every
/// sigma_p, and pointwise products transfer exactly. Zero-weight atoms are
/// repeated zero times, matching essential-sup semantics.
template <class S>
std::vector<S> replicate(std::span<const S> f, const MeasureQ& nu) {
  if (f.size() != nu.size()) throw std::invalid_argument("replicate: size mismatch");
  const MeasureCounts mc = measure_counts(nu);
  if (mc.denominator > kReplicateLimit)
    throw std::invalid_argument("replicate: common denominator exceeds the replication limit");
  std::vector<S> out;
  out.reserve(mc.denominator.template convert_to<std::size_t>());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t reps = mc.counts[i].template convert_to<std::size_t>();
    out.insert(out.end(), reps, f[i]);
  }
  return out;
}

/// The mean-shift / norm-shift / total pieces of the measure-replacement
/// argument, with their provable bounds for ||f||_inf-bounded f:
///   |E_mu f - E_nu f|          <= ||f||_inf n eps
///   | ||f - E_mu f||_{p, mu} - ||f - E_mu f||_{p, nu} | <= 2||f||_inf (n eps)^{1/p}
///   |sigma_p(f; mu) - sigma_p(f; nu)| <= the sum of both.
struct ReductionCheck {
  double sigma_mu = 0.0;
  double sigma_nu = 0.0;
  double discrepancy = 0.0;
  double mean_shift = 0.0;
  double bound = 0.0;
};

inline ReductionCheck reduction_discrepancy(std::span<const double> f, const MeasureD& mu,
                                            const MeasureQ& nu, PExp p, double eps) {
  if (f.size() != mu.size() || f.size() != nu.size())
    throw std::invalid_argument("reduction_discrepancy: size mismatch");
  std::vector<double> nw(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) nw[i] = to_double(nu[i]);
  const MeasureD nud(std::move(nw));
  ReductionCheck rc;
  rc.sigma_mu = centered_moment(f, mu, p);
  rc.sigma_nu = centered_moment(f, nud, p);
  rc.discrepancy = std::abs(rc.sigma_mu - rc.sigma_nu);
  rc.mean_shift = std::abs(expectation(f, mu) - expectation(f, nud));
  const double ne = static_cast<double>(f.size()) * eps;
  const double nf = sup_norm(f);
  const double root = p.is_inf() ? 1.0 : std::pow(ne, 1.0 / p.value());
  rc.bound = nf * ne + 2.0 * nf * root + 1e-12;
  return rc;
}

}  // namespace sigmap
