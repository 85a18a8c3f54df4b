#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sigmap/format.hpp"
#include "sigmap/prob.hpp"
#include "sigmap/rational.hpp"

namespace sigmap {

inline constexpr double kDefaultTol = 1e-9;

enum class Verdict { holds, violated };

inline const char* verdict_string(Verdict v) {
  return v == Verdict::violated ? "violated" : "holds";
}

/// One inequality instance, evaluated. defect = lhs - rhs; the inequality
/// holds on the instance iff defect <= tolerance.
struct DefectReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::holds;
  json inputs;

  json to_json() const {
    json out;
    out["lhs"] = decimal_string(lhs);
    out["rhs"] = decimal_string(rhs);
    out["defect"] = decimal_string(defect);
    out["verdict"] = verdict_string(verdict);
    out["tolerance"] = decimal_string(tolerance);
    out["inputs"] = inputs.is_null() ? json::object() : inputs;
    return out;
  }
};

/// Input capture is skippable in hot Monte-Carlo loops.
enum class Capture : bool { off = false, on = true };

inline DefectReport finish_report(double lhs, double rhs, double tol, json inputs) {
  DefectReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.defect = lhs - rhs;
  r.tolerance = tol;
  r.verdict = r.defect > tol ? Verdict::violated : Verdict::holds;
  r.inputs = std::move(inputs);
  return r;
}

namespace detail {

template <class S>
json instance_json(const MeasureD& mu, PExp p, const char* name_f, std::span<const S> f) {
  json in;
  in[name_f] = vector_json(f);
  in["weights"] = vector_json(std::span<const double>(mu.weights()));
  in["p"] = p.str();
  return in;
}

template <class S>
std::vector<S> pointwise_product(std::span<const S> f, std::span<const S> g) {
  if (f.size() != g.size()) throw std::invalid_argument("pointwise product: size mismatch");
  std::vector<S> h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] * g[i];
  return h;
}

template <class S>
std::vector<S> pointwise_inverse(std::span<const S> f) {
  std::vector<S> inv(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == S{}) throw std::domain_error("inverse: zero coordinate");
    inv[i] = S{1.0} / f[i];
  }
  return inv;
}

}  // namespace detail

/// sigma_p(fg) <= ||f||_inf sigma_p(g) + ||g||_inf sigma_p(f).
template <class S>
DefectReport leibniz_defect(std::span<const S> f, std::span<const S> g, const MeasureD& mu,
                            PExp p, double tol = kDefaultTol, Capture cap = Capture::on) {
  const auto fg = detail::pointwise_product(f, g);
  const double lhs = centered_moment(std::span<const S>(fg), mu, p);
  const double rhs = sup_norm(f) * centered_moment(g, mu, p) + sup_norm(g) * centered_moment(f, mu, p);
  json in;
  if (cap == Capture::on) {
    in = detail::instance_json(mu, p, "f", f);
    in["g"] = vector_json(g);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// sigma_p(1/f) <= ||1/f||_inf^2 sigma_p(f), for invertible f.
template <class S>
DefectReport strong_leibniz_defect(std::span<const S> f, const MeasureD& mu, PExp p,
                                   double tol = kDefaultTol, Capture cap = Capture::on) {
  const auto inv = detail::pointwise_inverse(f);
  const double s = sup_norm(std::span<const S>(inv));
  const double lhs = centered_moment(std::span<const S>(inv), mu, p);
  const double rhs = s * s * centered_moment(f, mu, p);
  json in;
  if (cap == Capture::on) in = detail::instance_json(mu, p, "f", f);
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// ||f Ex - E(fx) 1||_p <= ||x||_inf sigma_p(f), with real f; x may be complex.
template <class S>
DefectReport mean_product_defect(std::span<const double> f, std::span<const S> x,
                                 const MeasureD& mu, PExp p, double tol = kDefaultTol,
                                 Capture cap = Capture::on) {
  if (f.size() != x.size()) throw std::invalid_argument("mean_product_defect: size mismatch");
  const S ex = expectation(x, mu);
  S efx{};
  for (std::size_t i = 0; i < f.size(); ++i) efx += f[i] * x[i] * mu[i];
  std::vector<S> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = ex * f[i] - efx;
  const double lhs = p_norm(std::span<const S>(v), mu, p);
  const double rhs = sup_norm(x) * centered_moment(f, mu, p);
  json in;
  if (cap == Capture::on) {
    in = detail::instance_json(mu, p, "f", f);
    in["x"] = vector_json(x);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// (2/(opNorm+1)) sigma_p(fg) <= ||g||_inf sigma_p(f) + ||f||_inf sigma_p(g),
/// where opNorm is the mean-centering operator norm for this (mu, p), supplied
/// by the caller (projection norms live in a separate header by design).
template <class S>
DefectReport rough_leibniz_defect(std::span<const S> f, std::span<const S> g, const MeasureD& mu,
                                  PExp p, double op_norm, double tol = kDefaultTol,
                                  Capture cap = Capture::on) {
  if (op_norm < 1.0) throw std::invalid_argument("rough_leibniz_defect: opNorm must be >= 1");
  const auto fg = detail::pointwise_product(f, g);
  const double lhs = (2.0 / (op_norm + 1.0)) * centered_moment(std::span<const S>(fg), mu, p);
  const double rhs = sup_norm(g) * centered_moment(f, mu, p) + sup_norm(f) * centered_moment(g, mu, p);
  json in;
  if (cap == Capture::on) {
    in = detail::instance_json(mu, p, "f", f);
    in["g"] = vector_json(g);
    in["opNorm"] = decimal_string(op_norm);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// The two inverse estimates with the centering-norm constant:
///   sigma_p(1/f) <= (1+opNorm)^2 ||1/f||_inf^2 sigma_p(f)
///   |Ef| sigma_p(1/f) <= opNorm ||1/f||_inf sigma_p(f)
template <class S>
std::pair<DefectReport, DefectReport> inverse_bound_defects(std::span<const S> f,
                                                            const MeasureD& mu, PExp p,
                                                            double op_norm,
                                                            double tol = kDefaultTol,
                                                            Capture cap = Capture::on) {
  if (op_norm < 1.0) throw std::invalid_argument("inverse_bound_defects: opNorm must be >= 1");
  const auto inv = detail::pointwise_inverse(f);
  const double s = sup_norm(std::span<const S>(inv));
  const double sig_inv = centered_moment(std::span<const S>(inv), mu, p);
  const double sig_f = centered_moment(f, mu, p);
  json in;
  if (cap == Capture::on) {
    in = detail::instance_json(mu, p, "f", f);
    in["opNorm"] = decimal_string(op_norm);
  }
  DefectReport first =
      finish_report(sig_inv, (1.0 + op_norm) * (1.0 + op_norm) * s * s * sig_f, tol, in);
  DefectReport second = finish_report(detail::abs_val(expectation(f, mu)) * sig_inv,
                                      op_norm * s * sig_f, tol, std::move(in));
  return {std::move(first), std::move(second)};
}

/// sigma_p(f^2) <= 2 ||f||_inf sigma_p(f) for nonnegative f.
inline DefectReport square_defect(std::span<const double> f, const MeasureD& mu, PExp p,
                                  double tol = kDefaultTol, Capture cap = Capture::on) {
  for (double x : f)
    if (x < 0.0) throw std::invalid_argument("square_defect: negative coordinate");
  const auto sq = detail::pointwise_product(f, f);
  const double lhs = centered_moment(std::span<const double>(sq), mu, p);
  const double rhs = 2.0 * sup_norm(f) * centered_moment(f, mu, p);
  json in;
  if (cap == Capture::on) in = detail::instance_json(mu, p, "f", f);
  return finish_report(lhs, rhs, tol, std::move(in));
}

namespace detail {

inline bool nondecreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

inline bool nonincreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

}  // namespace detail

/// Leibniz defect for nonnegative pairs that are monotone in the same
/// direction along the atom order (grid order of the underlying step
/// functions).
inline DefectReport comonotone_defect(std::span<const double> f, std::span<const double> g,
                                      const MeasureD& mu, PExp p, double tol = kDefaultTol,
                                      Capture cap = Capture::on) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] < 0.0 || g[i] < 0.0) throw std::invalid_argument("comonotone_defect: negative coordinate");
  const bool ok = (detail::nondecreasing(f) && detail::nondecreasing(g)) ||
                  (detail::nonincreasing(f) && detail::nonincreasing(g));
  if (!ok) throw std::invalid_argument("comonotone_defect: pair not monotone in the same direction");
  return leibniz_defect(f, g, mu, p, tol, cap);
}

// Exact sign certification over Q for p in {1, 2}. Returns the sign of
// lhs - rhs; violated iff > 0 (tolerance zero in exact mode). p = 2 signs are
// decided by the nested-squaring comparators, never by floating sqrt.
namespace exact {

namespace detail_x {

inline void require_p12(int p, const char* who) {
  if (p != 1 && p != 2) throw std::invalid_argument(std::string(who) + ": exact mode needs p in {1, 2}");
}

inline std::vector<Rational> product(std::span<const Rational> f, std::span<const Rational> g) {
  if (f.size() != g.size()) throw std::invalid_argument("exact product: size mismatch");
  std::vector<Rational> h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] * g[i];
  return h;
}

}  // namespace detail_x

inline int leibniz_sign(std::span<const Rational> f, std::span<const Rational> g,
                        const MeasureQ& mu, int p) {
  detail_x::require_p12(p, "leibniz_sign");
  const auto fg = detail_x::product(f, g);
  const Rational a = sup_norm(f);
  const Rational b = sup_norm(g);
  if (p == 1)
    return sign_of(centered_p1(fg, mu) - a * centered_p1(g, mu) - b * centered_p1(f, mu));
  return cmp_sqrt_sum(centered_p2_squared(fg, mu), a, centered_p2_squared(g, mu), b,
                      centered_p2_squared(f, mu));
}

inline int strong_leibniz_sign(std::span<const Rational> f, const MeasureQ& mu, int p) {
  detail_x::require_p12(p, "strong_leibniz_sign");
  std::vector<Rational> inv(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) throw std::domain_error("strong_leibniz_sign: zero coordinate");
    inv[i] = 1 / f[i];
  }
  const Rational s = sup_norm(std::span<const Rational>(inv));
  if (p == 1) return sign_of(centered_p1(inv, mu) - s * s * centered_p1(f, mu));
  return cmp_sqrt(centered_p2_squared(inv, mu), s * s, centered_p2_squared(f, mu));
}

inline int mean_product_sign(std::span<const Rational> f, std::span<const Rational> x,
                             const MeasureQ& mu, int p) {
  detail_x::require_p12(p, "mean_product_sign");
  if (f.size() != x.size()) throw std::invalid_argument("mean_product_sign: size mismatch");
  const Rational ex = expectation(x, mu);
  const auto fx = detail_x::product(f, x);
  const Rational efx = expectation(std::span<const Rational>(fx), mu);
  std::vector<Rational> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = ex * f[i] - efx;
  const Rational sx = sup_norm(x);
  if (p == 1) return sign_of(p1_norm(v, mu) - sx * centered_p1(f, mu));
  return cmp_sqrt(p2_norm_squared(v, mu), sx, centered_p2_squared(f, mu));
}

}  // namespace exact

}  // namespace sigmap
