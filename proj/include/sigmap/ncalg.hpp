#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sigmap/defect.hpp"
#include "sigmap/format.hpp"
#include "sigmap/rng.hpp"

namespace sigmap::nc {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Operator norm = largest singular value.
inline double operator_norm(const Matrix& a) {
  return a.jacobiSvd().singularValues()(0);
}

inline double smallest_singular_value(const Matrix& a) {
  const auto sv = a.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

/// A faithful state on M_d: omega(a) = trace(rho a) with rho Hermitian,
/// strictly positive definite, unit trace.
class DensityState {
 public:
  explicit DensityState(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
      throw std::invalid_argument("DensityState: rho must be square");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("DensityState: rho must be Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12)
      throw std::invalid_argument("DensityState: rho must have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
    spectrum_.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (spectrum_.front() <= 0.0)
      throw std::invalid_argument("DensityState: rho must be strictly positive (faithful)");
    const double d = static_cast<double>(rho_.rows());
    tracial_ = (rho_ - Matrix::Identity(rho_.rows(), rho_.rows()) / d).cwiseAbs().maxCoeff() <= 1e-12;
  }

  static DensityState tracial_state(Eigen::Index d) {
    if (d < 1) throw std::invalid_argument("DensityState: dimension must be positive");
    return DensityState(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  /// Diagonal state with the given positive weights, normalized to unit trace.
  static DensityState from_spectrum(const std::vector<double>& spec) {
    if (spec.empty()) throw std::invalid_argument("DensityState: empty spectrum");
    double sum = 0.0;
    for (double s : spec) {
      if (!(s > 0.0)) throw std::invalid_argument("DensityState: spectrum must be strictly positive");
      sum += s;
    }
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(spec.size()),
                              static_cast<Eigen::Index>(spec.size()));
    for (std::size_t i = 0; i < spec.size(); ++i)
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = spec[i] / sum;
    return DensityState(std::move(rho));
  }

  /// rho = G G* / trace(G G*) with Gaussian G, rejecting condition numbers
  /// above 1e6 to stay clear of the non-faithful boundary.
  static DensityState random_faithful(Eigen::Index d, Rng& rng);

  Eigen::Index dim() const { return rho_.rows(); }
  const Matrix& rho() const { return rho_; }
  bool is_tracial() const { return tracial_; }
  const std::vector<double>& spectrum() const { return spectrum_; } // ascending
  double condition() const { return spectrum_.back() / spectrum_.front(); }

 private:
  Matrix rho_;
  std::vector<double> spectrum_;
  bool tracial_ = false;
};

namespace detail {

inline void check_dim(const Matrix& a, const DensityState& w, const char* who) {
  if (a.rows() != w.dim() || a.cols() != w.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch with state");
}

}  // namespace detail

/// omega(a) = trace(rho a).
inline Complex state_apply(const Matrix& a, const DensityState& w) {
  detail::check_dim(a, w, "state_apply");
  return (w.rho() * a).trace();
}

/// ||a||_2 = omega(a* a)^{1/2}, the GNS vector norm.
inline double l2_norm(const Matrix& a, const DensityState& w) {
  detail::check_dim(a, w, "l2_norm");
  return std::sqrt(std::max(0.0, (w.rho() * a.adjoint() * a).trace().real()));
}

/// sigma_2(a) = ||a - omega(a) 1||_2.
inline double nc_sigma2(const Matrix& a, const DensityState& w) {
  detail::check_dim(a, w, "nc_sigma2");
  const Complex mean = state_apply(a, w);
  return l2_norm(a - mean * Matrix::Identity(a.rows(), a.cols()), w);
}

/// max(sigma_2(a), sigma_2(a*)).
inline double nc_sigma2_max(const Matrix& a, const DensityState& w) {
  return std::max(nc_sigma2(a, w), nc_sigma2(a.adjoint(), w));
}

/// The GNS inner product <a, b> = omega(b* a) in column-major vec coordinates
/// is the Hermitian form rho^T (x) I, so its square root factors the geometry:
/// vector norms are plain l2 after multiplying by gram_factor, and an operator
/// given by a d^2 x d^2 coordinate matrix M has GNS norm
/// sigma_max(gram_factor M gram_factor^{-1}).
class GnsGeometry {
 public:
  explicit GnsGeometry(const DensityState& w) : d_(w.dim()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(w.rho().transpose());
    Matrix sqrt_rho_t = es.operatorSqrt();
    Matrix inv_sqrt_rho_t = es.operatorInverseSqrt();
    const Eigen::Index d2 = d_ * d_;
    factor_ = Matrix::Zero(d2, d2);
    inverse_factor_ = Matrix::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d_; ++i)
      for (Eigen::Index j = 0; j < d_; ++j)
        for (Eigen::Index k = 0; k < d_; ++k) {
          factor_(i * d_ + k, j * d_ + k) = sqrt_rho_t(i, j);
          inverse_factor_(i * d_ + k, j * d_ + k) = inv_sqrt_rho_t(i, j);
        }
  }

  Eigen::Index dim() const { return d_; }
  const Matrix& gram_factor() const { return factor_; }

  /// Coordinate matrix of a linear map on M_d, built by applying it to the
  /// matrix units.
  Matrix coordinate_matrix(const std::function<Matrix(const Matrix&)>& op) const {
    const Eigen::Index d2 = d_ * d_;
    Matrix m(d2, d2);
    Matrix unit = Matrix::Zero(d_, d_);
    for (Eigen::Index col = 0; col < d2; ++col) {
      unit(col % d_, col / d_) = 1.0;
      const Matrix image = op(unit);
      for (Eigen::Index j = 0; j < d_; ++j)
        for (Eigen::Index i = 0; i < d_; ++i) m(j * d_ + i, col) = image(i, j);
      unit(col % d_, col / d_) = 0.0;
    }
    return m;
  }

  double operator_norm_on_gns(const std::function<Matrix(const Matrix&)>& op) const {
    const Matrix m = coordinate_matrix(op);
    return operator_norm(factor_ * m * inverse_factor_);
  }

 private:
  Eigen::Index d_;
  Matrix factor_, inverse_factor_;
};

/// ||[E, L_a]|| on the GNS space, where E b = omega(b) 1 and L_a b = a b.
/// Equals nc_sigma2_max(a) by the commutator identity.
inline double commutator_dirac_norm(const Matrix& a, const DensityState& w) {
  detail::check_dim(a, w, "commutator_dirac_norm");
  const GnsGeometry gns(w);
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  auto op = [&](const Matrix& b) -> Matrix {
    return state_apply(a * b, w) * id - state_apply(b, w) * a;
  };
  return gns.operator_norm_on_gns(op);
}

namespace detail {

inline json matrix_json(const Matrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(value_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json state_json(const DensityState& w) {
  json s;
  s["d"] = w.dim();
  s["tracial"] = w.is_tracial();
  json spec = json::array();
  for (double x : w.spectrum()) spec.push_back(decimal_string(x));
  s["spectrum"] = std::move(spec);
  s["rho"] = matrix_json(w.rho());
  return s;
}

}  // namespace detail

/// ||omega(x) a - omega(xa) 1||_2 <= ||x|| sigma_2(a), for every faithful
/// state. Tight at x = 1.
inline DefectReport state_product_defect(const Matrix& a, const Matrix& x, const DensityState& w,
                                         double tol = kDefaultTol, Capture cap = Capture::on) {
  detail::check_dim(a, w, "state_product_defect");
  detail::check_dim(x, w, "state_product_defect");
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const double lhs = l2_norm(state_apply(x, w) * a - state_apply(x * a, w) * id, w);
  const double rhs = operator_norm(x) * nc_sigma2(a, w);
  json in;
  if (cap == Capture::on) {
    in["a"] = detail::matrix_json(a);
    in["x"] = detail::matrix_json(x);
    in["state"] = detail::state_json(w);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// ||x a||_2 <= ||x|| ||a||_2 (left multiplication is bounded by the operator
/// norm in the GNS geometry).
inline DefectReport left_mult_defect(const Matrix& x, const Matrix& a, const DensityState& w,
                                     double tol = kDefaultTol, Capture cap = Capture::on) {
  detail::check_dim(a, w, "left_mult_defect");
  detail::check_dim(x, w, "left_mult_defect");
  const double lhs = l2_norm(x * a, w);
  const double rhs = operator_norm(x) * l2_norm(a, w);
  json in;
  if (cap == Capture::on) {
    in["x"] = detail::matrix_json(x);
    in["a"] = detail::matrix_json(a);
    in["state"] = detail::state_json(w);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// sigma_2(a^{-1}) <= ||a^{-1}||^2 sigma_2(a) for invertible a.
inline DefectReport inverse_defect(const Matrix& a, const DensityState& w,
                                   double tol = kDefaultTol, double sv_floor = 1e-8,
                                   Capture cap = Capture::on) {
  detail::check_dim(a, w, "inverse_defect");
  if (smallest_singular_value(a) <= sv_floor)
    throw std::domain_error("inverse_defect: matrix is singular or below the invertibility floor");
  const Matrix inv = a.inverse();
  const double ninv = operator_norm(inv);
  const double lhs = nc_sigma2(inv, w);
  const double rhs = ninv * ninv * nc_sigma2(a, w);
  json in;
  if (cap == Capture::on) {
    in["a"] = detail::matrix_json(a);
    in["state"] = detail::state_json(w);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

/// sigma_2(ab) <= ||a|| sigma_2(b) + ||b|| sigma_2(a). Proved for tracial
/// states; evaluated as an experiment for the rest, so the report records the
/// tracial flag even with capture off.
inline DefectReport product_defect(const Matrix& a, const Matrix& b, const DensityState& w,
                                   double tol = kDefaultTol, Capture cap = Capture::on) {
  detail::check_dim(a, w, "product_defect");
  detail::check_dim(b, w, "product_defect");
  const double lhs = nc_sigma2(a * b, w);
  const double rhs = operator_norm(a) * nc_sigma2(b, w) + operator_norm(b) * nc_sigma2(a, w);
  json in;
  in["tracial"] = w.is_tracial();
  if (cap == Capture::on) {
    in["a"] = detail::matrix_json(a);
    in["b"] = detail::matrix_json(b);
    in["state"] = detail::state_json(w);
  }
  return finish_report(lhs, rhs, tol, std::move(in));
}

inline Matrix random_matrix(Eigen::Index d, Rng& rng) {
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      a(i, j) = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  return a;
}

inline DensityState DensityState::random_faithful(Eigen::Index d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("DensityState: dimension must be positive");
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Matrix g = random_matrix(d, rng);
    Matrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    if (tr <= 0.0) continue;
    rho /= tr;
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(d - 1);
    if (lo > 0.0 && hi / lo <= 1e6) return DensityState(std::move(rho));
  }
  throw std::runtime_error("DensityState::random_faithful: rejection sampling failed");
}

/// Checks for the derivation realized on A (+) L2(A, omega) with
/// ||(x,y)|| = max(||x||, ||y||_2), E(x,y) = (0, omega(x) 1) and
/// T_a(x,y) = (xa, ya), for tracial omega:
///   - delta(T_a) = [E, T_a] sends (x, y) to (0, omega(xa) 1 - omega(x) a),
///     so ||delta(T_a)|| = sup_{||x|| <= 1} ||omega(x) a - omega(xa) 1||_2,
///     which equals sigma_2(a), attained at x = 1;
///   - ||T_a|| = ||a||: witnessed at x = 1 and never exceeded on samples;
///   - T_{ab} = applying T_a then T_b (right multiplication composes in
///     reverse), checked on random inputs.
struct DerivationCheck {
  double sampled_sup = 0.0;        // max over sampled unit x, x = 1 included
  double closed_form = 0.0;        // sigma_2(a)
  double t_norm_witness = 0.0;     // ||T_a|| lower bound from x = 1
  double t_norm_sample_max = 0.0;  // max per-sample ratio, must stay <= ||a||
  double a_norm = 0.0;
  double multiplicativity_gap = 0.0;
};

inline DerivationCheck derivation_norm_check(const Matrix& a, const DensityState& w,
                                             long samples = 64,
                                             std::uint64_t seed = 0x5eedULL) {
  detail::check_dim(a, w, "derivation_norm_check");
  if (!w.is_tracial())
    throw std::invalid_argument("derivation_norm_check: state must be tracial");
  const Eigen::Index d = a.rows();
  const Matrix id = Matrix::Identity(d, d);
  Rng rng(derive_stream(seed, 0xdeULL));

  DerivationCheck out;
  out.closed_form = nc_sigma2(a, w);
  out.a_norm = operator_norm(a);

  auto delta_image = [&](const Matrix& x) -> double {
    return l2_norm(state_apply(x, w) * a - state_apply(x * a, w) * id, w);
  };

  // x = 1 first: attains both sups.
  out.sampled_sup = delta_image(id);
  out.t_norm_witness = operator_norm(id * a);
  out.t_norm_sample_max = out.t_norm_witness;

  for (long s = 0; s < samples; ++s) {
    Matrix x = random_matrix(d, rng);
    const double nx = operator_norm(x);
    if (nx == 0.0) continue;
    x /= nx;
    out.sampled_sup = std::max(out.sampled_sup, delta_image(x));
    // ||T_a (x, y)|| / ||(x, y)|| on a random pair with y = another sample.
    Matrix y = random_matrix(d, rng);
    const double denom = std::max(1.0, l2_norm(y, w)); // ||x|| = 1 already
    const double num = std::max(operator_norm(x * a), l2_norm(y * a, w));
    out.t_norm_sample_max = std::max(out.t_norm_sample_max, num / denom);

    // Multiplicativity of a |-> T_a against a random second factor.
    const Matrix b = random_matrix(d, rng);
    const Matrix lhs_x = x * (a * b);
    const Matrix rhs_x = (x * a) * b;
    const Matrix lhs_y = y * (a * b);
    const Matrix rhs_y = (y * a) * b;
    out.multiplicativity_gap =
        std::max({out.multiplicativity_gap, (lhs_x - rhs_x).cwiseAbs().maxCoeff(),
                  (lhs_y - rhs_y).cwiseAbs().maxCoeff()});
  }
  return out;
}

}  // namespace sigmap::nc
