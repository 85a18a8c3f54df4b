#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmap/prob.hpp"
#include "sigmap/rng.hpp"

namespace sigmap {

// Everything here concerns I - P on the uniform n-point space, where P is the
// mean projection Pf = (Ef) 1. For n = 1 the operator is 0.

/// Closed-form ||I-P||_p on lambda_n for the exponents with known exact
/// values: 2 - 2/n at p in {1, inf}, 1 at p = 2 (n >= 2).
inline double uniform_exact_norm(std::size_t n, PExp p) {
  if (n == 0) throw std::invalid_argument("uniform_exact_norm: n must be positive");
  if (n == 1) return 0.0;
  if (p.is(1.0) || p.is_inf()) return 2.0 - 2.0 / static_cast<double>(n);
  if (p.is(2.0)) return 1.0;
  throw std::invalid_argument("uniform_exact_norm: closed form only for p in {1, 2, inf}");
}

struct OperatorNormEstimate {
  double value = 0.0;
  std::vector<double> witness;
};

namespace detail {

/// y = (I - P) x on lambda_n.
inline void center_uniform(std::span<const double> x, std::vector<double>& y) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  y.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - mean;
}

inline double lp(std::span<const double> v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

/// Duality map x |-> |x|^{p-1} sgn(x), the gradient direction of ||.||_p.
inline void dual_map(std::span<const double> v, double p, std::vector<double>& out) {
  out.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    out[i] = (v[i] < 0 ? -1.0 : 1.0) * std::pow(a, p - 1.0);
  }
}

}  // namespace detail

/// Lower-bound estimate of ||I-P||_p on lambda_n with the attaining witness.
/// p in {1, inf} take the exact extreme points (a coordinate vector and a
/// one-against-all sign pattern); 2 is handled by the projection property; the
/// rest run a multi-start power iteration in the L^p duality geometry.
///
/// The measure here is the uniform *probability* measure, so norms are the
/// plain coordinate l^p norms scaled consistently on both sides of the ratio;
/// the scaling cancels and plain l^p is used throughout.
inline OperatorNormEstimate numeric_operator_p_norm(std::size_t n, PExp p, long budget = 2000) {
  if (n == 0) throw std::invalid_argument("numeric_operator_p_norm: n must be positive");
  OperatorNormEstimate est;
  if (n == 1) {
    est.witness = {1.0};
    return est;
  }
  const double nn = static_cast<double>(n);
  if (p.is(1.0)) {
    est.value = 2.0 - 2.0 / nn;
    est.witness.assign(n, 0.0);
    est.witness[0] = 1.0;
    return est;
  }
  if (p.is_inf()) {
    est.value = 2.0 - 2.0 / nn;
    est.witness.assign(n, -1.0);
    est.witness[0] = 1.0;
    return est;
  }

  const double pv = p.value();
  const double qv = pv / (pv - 1.0);
  std::vector<double> x, y, z, best_witness;
  double best = 0.0;

  auto polish = [&](std::vector<double> start, long iter_cap) {
    x = std::move(start);
    const double nx = detail::lp(x, pv);
    if (nx == 0.0) return;
    for (double& v : x) v /= nx;
    double prev = -1.0;
    for (long it = 0; it < iter_cap; ++it) {
      detail::center_uniform(x, y);
      const double val = detail::lp(y, pv);
      if (val > best) {
        best = val;
        best_witness = x;
      }
      if (val <= prev + 1e-14) break;
      prev = val;
      // Dual ascent step: z = (I-P)^T dual_p(y), renormalized through dual_q.
      detail::dual_map(y, pv, z);
      detail::center_uniform(z, y);
      detail::dual_map(y, qv, z);
      const double nz = detail::lp(z, pv);
      if (nz == 0.0) break;
      for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] / nz;
    }
  };

  Rng rng(0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(n) << 32) ^
          static_cast<std::uint64_t>(pv * 4096.0));
  const long starts = std::max<long>(4, budget / 50);
  const long iters = std::max<long>(8, budget / starts);
  for (long s = 0; s < starts; ++s) {
    std::vector<double> x0(n);
    if (s == 0) {
      x0.assign(n, 0.0);
      x0[0] = 1.0;
    } else if (s == 1) {
      x0.assign(n, -1.0);
      x0[0] = 1.0;
    } else if (s == 2) {
      for (std::size_t i = 0; i < n; ++i) x0[i] = (i % 2 == 0) ? 1.0 : -1.0;
    } else {
      for (std::size_t i = 0; i < n; ++i) x0[i] = rng.uniform(-1.0, 1.0);
    }
    polish(std::move(x0), iters);
  }
  est.value = best;
  est.witness = std::move(best_witness);
  return est;
}

struct FranchettiValue {
  double value = 0.0;
  double arg_max = 0.0;    // maximizing x in [0, 1/2]
  bool limit_case = false; // p hit 1 or inf; value is the limit 2
};

namespace detail {

inline double franchetti_expr(double x, double p, double q) {
  const double a = std::pow(x, p - 1.0) + std::pow(1.0 - x, p - 1.0);
  const double b = std::pow(x, q - 1.0) + std::pow(1.0 - x, q - 1.0);
  return std::pow(a, 1.0 / p) * std::pow(b, 1.0 / q);
}

}  // namespace detail

/// max over x in [0,1] of (x^{p-1}+(1-x)^{p-1})^{1/p} (x^{q-1}+(1-x)^{q-1})^{1/q},
/// the exact value of ||I-P||_p on non-atomic spaces. The expression is
/// symmetric about x = 1/2, so [0, 1/2] is scanned: a uniform grid plus
/// dyadic points 2^-k (the maximizer runs off to 0 as p -> 1 or inf), then
/// golden-section refinement in the best bracket.
inline FranchettiValue franchetti_norm(PExp p, long grid = 4096) {
  if (grid < 2) throw std::invalid_argument("franchetti_norm: grid must be >= 2");
  FranchettiValue out;
  if (p.is(1.0) || p.is_inf()) {
    out.value = 2.0;
    out.limit_case = true;
    return out;
  }
  const double pv = p.value();
  const double qv = pv / (pv - 1.0);

  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(grid) + 64);
  for (long i = 0; i <= grid; ++i)
    candidates.push_back(0.5 * static_cast<double>(i) / static_cast<double>(grid));
  for (int k = 2; k <= 60; ++k) candidates.push_back(std::ldexp(1.0, -k));
  std::sort(candidates.begin(), candidates.end());

  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double v = detail::franchetti_expr(candidates[i], pv, qv);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  double lo = candidates[best_i == 0 ? 0 : best_i - 1];
  double hi = candidates[std::min(best_i + 1, candidates.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = detail::franchetti_expr(c, pv, qv);
  double fd = detail::franchetti_expr(d, pv, qv);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = detail::franchetti_expr(c, pv, qv);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = detail::franchetti_expr(d, pv, qv);
    }
  }
  const double xm = 0.5 * (lo + hi);
  const double fm = detail::franchetti_expr(xm, pv, qv);
  if (fm > best) {
    best = fm;
    out.arg_max = xm;
  } else {
    out.arg_max = candidates[best_i];
  }
  out.value = best;
  return out;
}

struct InterpolationBounds {
  double comparison = 0.0; // 2^{|1 - 1/(2p)|}, reported alongside but not asserted
  double derived = 0.0;    // 2^{|1 - 2/p|} from endpoint interpolation (2 at p=1,inf; 1 at p=2)
};

inline InterpolationBounds interpolation_bound(PExp p) {
  InterpolationBounds b;
  const double inv_p = p.is_inf() ? 0.0 : 1.0 / p.value();
  b.comparison = std::pow(2.0, std::abs(1.0 - 0.5 * inv_p));
  b.derived = std::pow(2.0, std::abs(1.0 - 2.0 * inv_p));
  return b;
}

}  // namespace sigmap
