#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigmap/defect.hpp"
#include "sigmap/extreme.hpp"
#include "sigmap/format.hpp"
#include "sigmap/ncalg.hpp"
#include "sigmap/prob.hpp"
#include "sigmap/rng.hpp"

namespace sigmap {

enum class Objective { leibniz, strong_leibniz, auxiliary, nc_product };

inline const char* objective_name(Objective o) {
  switch (o) {
    case Objective::leibniz: return "leibniz";
    case Objective::strong_leibniz: return "strong_leibniz";
    case Objective::auxiliary: return "auxiliary";
    case Objective::nc_product: return "nc_product";
  }
  return "?";
}

inline Objective parse_objective(std::string_view s) {
  if (s == "leibniz") return Objective::leibniz;
  if (s == "strong_leibniz") return Objective::strong_leibniz;
  if (s == "auxiliary") return Objective::auxiliary;
  if (s == "nc_product") return Objective::nc_product;
  throw std::invalid_argument("unknown objective '" + std::string(s) + "'");
}

enum class MeasureFamily { uniform, simplex_random, fixed };

struct SearchTask {
  Objective objective = Objective::leibniz;
  std::size_t n = 2;
  PExp p{2.0};
  MeasureFamily family = MeasureFamily::uniform;
  std::vector<double> fixed_weights;
  long budget = 10000;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  double invert_floor = 0.05; // keeps 1/f conditioned in the strong objective
  int restarts = 20;
  bool record_history = false;
  // nc_product settings
  Eigen::Index d = 2;
  bool nc_tracial = true;
  std::vector<double> nc_spectrum; // overrides nc_tracial when nonempty
};

/// Best instance found. Scalar objectives fill f/weights (g for the product
/// objective, x for the winning inner sign pattern of the auxiliary one);
/// nc_product fills the matrix fields instead.
struct SearchWitness {
  std::vector<double> f, g, x, weights;
  nc::Matrix a, b, rho;
};

struct SearchResult {
  double best_defect = -std::numeric_limits<double>::infinity();
  long evaluations_used = 0;
  SearchWitness witness;
  std::vector<std::pair<long, double>> history; // (evaluations, new best)
  std::optional<int> exact_sign;                // rational recertification, p in {1,2}
};

/// Exact rational measure nearest to mu: each weight converted exactly, then
/// normalized by the exact sum. Uniform weights come out exactly 1/n.
inline MeasureQ exact_measure_from(const MeasureD& mu) {
  std::vector<Rational> q(mu.size());
  Rational sum;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    q[i] = rational_from_double(mu[i]);
    sum += q[i];
  }
  for (Rational& w : q) w /= sum;
  return MeasureQ(std::move(q));
}

inline std::vector<Rational> exact_vector_from(std::span<const double> v) {
  std::vector<Rational> q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = rational_from_double(v[i]);
  return q;
}

namespace detail {

inline void project_feasible(const SearchTask& task, std::vector<double>& theta) {
  if (task.objective == Objective::strong_leibniz) {
    for (double& x : theta) {
      x = std::clamp(x, -1.0, 1.0);
      if (std::abs(x) < task.invert_floor) x = (x < 0.0 ? -task.invert_floor : task.invert_floor);
    }
  } else {
    for (double& x : theta) x = std::clamp(x, -1.0, 1.0);
  }
}

struct ScalarEval {
  double defect = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x; // auxiliary objective only
};

inline ScalarEval scalar_objective(const SearchTask& task, std::span<const double> theta,
                                   const MeasureD& mu) {
  ScalarEval ev;
  const std::size_t n = task.n;
  switch (task.objective) {
    case Objective::leibniz:
      ev.defect = leibniz_defect<double>(theta.first(n), theta.subspan(n, n), mu, task.p,
                                         task.tol, Capture::off)
                      .defect;
      return ev;
    case Objective::strong_leibniz:
      ev.defect =
          strong_leibniz_defect<double>(theta.first(n), mu, task.p, task.tol, Capture::off).defect;
      return ev;
    case Objective::auxiliary:
      for_each_sign_vector(n, [&](std::span<const double> x) {
        const double d =
            mean_product_defect<double>(theta.first(n), x, mu, task.p, task.tol, Capture::off)
                .defect;
        if (d > ev.defect) {
          ev.defect = d;
          ev.best_x.assign(x.begin(), x.end());
        }
      });
      return ev;
    case Objective::nc_product:
      break;
  }
  throw std::logic_error("scalar_objective: nc objective routed here");
}

inline std::size_t scalar_dim(const SearchTask& task) {
  return task.objective == Objective::leibniz ? 2 * task.n : task.n;
}

inline std::vector<double> structured_start(const SearchTask& task) {
  const std::size_t n = task.n;
  std::vector<double> f(n, task.objective == Objective::strong_leibniz ? task.invert_floor : 0.0);
  f.front() = 1.0;
  if (n > 1) f.back() = -1.0;
  if (task.objective == Objective::leibniz) {
    std::vector<double> theta(2 * n);
    std::copy(f.begin(), f.end(), theta.begin());
    std::copy(f.begin(), f.end(), theta.begin() + static_cast<std::ptrdiff_t>(n));
    return theta;
  }
  return f;
}

/// Coordinate pattern search: poll every +/-step move, take the best
/// improving one, halve the step on stall. Shared by the scalar and matrix
/// objectives through the eval callback.
template <class EvalFn, class AcceptFn>
void pattern_search(std::vector<double>& theta, double first_val, long& evals, long eval_cap,
                    const EvalFn& eval, const AcceptFn& on_improve) {
  double cur = first_val;
  std::vector<double> trial = theta;
  double step = 0.5;
  while (step >= 1e-6 && evals < eval_cap) {
    double best_val = cur;
    std::size_t best_j = theta.size();
    double best_coord = 0.0;
    for (std::size_t j = 0; j < theta.size() && evals < eval_cap; ++j) {
      for (double dir : {+1.0, -1.0}) {
        trial[j] = theta[j] + dir * step;
        const double val = eval(trial);
        ++evals;
        if (val > best_val) {
          best_val = val;
          best_j = j;
          best_coord = trial[j];
        }
        trial[j] = theta[j];
        if (evals >= eval_cap) break;
      }
    }
    if (best_j < theta.size()) {
      theta[best_j] = best_coord;
      trial[best_j] = best_coord;
      cur = best_val;
      on_improve(cur);
    } else {
      step *= 0.5;
    }
  }
}

inline SearchResult maximize_scalar(const SearchTask& task) {
  if (task.objective == Objective::auxiliary && task.n > kSignVectorLimit)
    throw std::invalid_argument("maximize_defect: auxiliary objective needs n <= 25");
  SearchResult res;
  const std::size_t dim = scalar_dim(task);
  const long per_restart = std::max<long>(task.budget / std::max(1, task.restarts), 8);
  long evals = 0;

  auto snapshot = [&](const std::vector<double>& theta, const MeasureD& mu) {
    ScalarEval ev = scalar_objective(task, theta, mu);
    if (ev.defect > res.best_defect) {
      res.best_defect = ev.defect;
      res.witness.f.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(task.n));
      if (task.objective == Objective::leibniz)
        res.witness.g.assign(theta.begin() + static_cast<std::ptrdiff_t>(task.n), theta.end());
      res.witness.x = std::move(ev.best_x);
      res.witness.weights = mu.weights();
      if (task.record_history) res.history.emplace_back(evals, res.best_defect);
    }
  };

  for (int r = 0; r < task.restarts && evals < task.budget; ++r) {
    Rng rng(derive_stream(task.seed, static_cast<std::uint64_t>(r)));
    MeasureD mu = [&] {
      switch (task.family) {
        case MeasureFamily::uniform: return MeasureD::uniform(task.n);
        case MeasureFamily::simplex_random: return simplex_sample(rng, task.n);
        case MeasureFamily::fixed: return MeasureD(task.fixed_weights);
      }
      throw std::logic_error("maximize_defect: bad measure family");
    }();

    std::vector<double> theta(dim);
    if (r == 0) {
      theta = structured_start(task);
    } else {
      for (double& x : theta) x = rng.uniform(-1.0, 1.0);
    }
    project_feasible(task, theta);

    const double first = [&] {
      ScalarEval ev = scalar_objective(task, theta, mu);
      ++evals;
      if (ev.defect > res.best_defect) {
        res.best_defect = ev.defect;
        res.witness.f.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(task.n));
        if (task.objective == Objective::leibniz)
          res.witness.g.assign(theta.begin() + static_cast<std::ptrdiff_t>(task.n), theta.end());
        res.witness.x = std::move(ev.best_x);
        res.witness.weights = mu.weights();
        if (task.record_history) res.history.emplace_back(evals, res.best_defect);
      }
      return ev.defect;
    }();

    const long cap = std::min<long>(task.budget, evals + per_restart);
    pattern_search(
        theta, first, evals, cap,
        [&](std::vector<double>& trial) {
          project_feasible(task, trial);
          return scalar_objective(task, trial, mu).defect;
        },
        [&](double) { snapshot(theta, mu); });
  }
  res.evaluations_used = evals;
  return res;
}

inline nc::Matrix unpack_matrix(std::span<const double> theta, Eigen::Index d) {
  nc::Matrix m(d, d);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = nc::Complex(theta[k], theta[k + 1]);
      k += 2;
    }
  return m;
}

inline SearchResult maximize_nc(const SearchTask& task) {
  SearchResult res;
  const Eigen::Index d = task.d;
  if (d < 1) throw std::invalid_argument("maximize_defect: d must be positive");
  const std::size_t dim = 4 * static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const long per_restart = std::max<long>(task.budget / std::max(1, task.restarts), 8);
  long evals = 0;

  for (int r = 0; r < task.restarts && evals < task.budget; ++r) {
    Rng rng(derive_stream(task.seed, 0x4ecULL + static_cast<std::uint64_t>(r)));
    const nc::DensityState w = [&] {
      if (!task.nc_spectrum.empty()) return nc::DensityState::from_spectrum(task.nc_spectrum);
      if (task.nc_tracial) return nc::DensityState::tracial_state(d);
      return nc::DensityState::random_faithful(d, rng);
    }();

    std::vector<double> theta(dim, 0.0);
    if (r == 0) {
      // a = b = diag(1, ..., -1) as the real diagonal start.
      for (Eigen::Index i = 0; i < d; ++i) {
        const double v = i + 1 == d && d > 1 ? -1.0 : 1.0;
        const std::size_t half = dim / 2;
        theta[2 * static_cast<std::size_t>(i * d + i)] = v;
        theta[half + 2 * static_cast<std::size_t>(i * d + i)] = v;
      }
    } else {
      for (double& x : theta) x = rng.uniform(-1.0, 1.0);
    }

    auto eval = [&](std::vector<double>& t) {
      for (double& x : t) x = std::clamp(x, -1.0, 1.0);
      const nc::Matrix a = unpack_matrix(std::span<const double>(t).first(dim / 2), d);
      const nc::Matrix b = unpack_matrix(std::span<const double>(t).subspan(dim / 2), d);
      return nc::product_defect(a, b, w, task.tol, Capture::off).defect;
    };

    const double first = eval(theta);
    ++evals;
    auto snapshot = [&](double val) {
      if (val <= res.best_defect) return;
      res.best_defect = val;
      res.witness.a = unpack_matrix(std::span<const double>(theta).first(dim / 2), d);
      res.witness.b = unpack_matrix(std::span<const double>(theta).subspan(dim / 2), d);
      res.witness.rho = w.rho();
      if (task.record_history) res.history.emplace_back(evals, val);
    };
    snapshot(first);

    const long cap = std::min<long>(task.budget, evals + per_restart);
    pattern_search(theta, first, evals, cap, eval, snapshot);
  }
  res.evaluations_used = evals;
  return res;
}

}  // namespace detail

/// Recompute the defect encoded by a witness; search results must reproduce
/// best_defect through this to 1e-12.
inline double recompute_witness_defect(const SearchTask& task, const SearchWitness& w) {
  if (task.objective == Objective::nc_product) {
    const nc::DensityState state{nc::Matrix(w.rho)};
    return nc::product_defect(w.a, w.b, state, task.tol, Capture::off).defect;
  }
  const MeasureD mu(w.weights);
  switch (task.objective) {
    case Objective::leibniz:
      return leibniz_defect<double>(w.f, w.g, mu, task.p, task.tol, Capture::off).defect;
    case Objective::strong_leibniz:
      return strong_leibniz_defect<double>(w.f, mu, task.p, task.tol, Capture::off).defect;
    case Objective::auxiliary:
      return mean_product_defect<double>(w.f, w.x, mu, task.p, task.tol, Capture::off).defect;
    default:
      throw std::logic_error("recompute_witness_defect: bad objective");
  }
}

/// Rational sign of the witness defect for p in {1, 2}; nullopt otherwise or
/// for the matrix objective. The witness measure is normalized exactly first,
/// so the certified instance is a genuine probability measure.
inline std::optional<int> recertify_witness(const SearchTask& task, const SearchWitness& w) {
  if (task.objective == Objective::nc_product) return std::nullopt;
  if (!task.p.is(1.0) && !task.p.is(2.0)) return std::nullopt;
  const int p = task.p.is(1.0) ? 1 : 2;
  const MeasureQ mu = exact_measure_from(MeasureD(w.weights));
  const auto f = exact_vector_from(w.f);
  switch (task.objective) {
    case Objective::leibniz:
      return exact::leibniz_sign(f, exact_vector_from(w.g), mu, p);
    case Objective::strong_leibniz:
      return exact::strong_leibniz_sign(f, mu, p);
    case Objective::auxiliary:
      return exact::mean_product_sign(f, exact_vector_from(w.x), mu, p);
    default:
      return std::nullopt;
  }
}

inline SearchResult maximize_defect(const SearchTask& task) {
  if (task.budget <= 0) throw std::invalid_argument("maximize_defect: budget must be positive");
  if (task.n < 1) throw std::invalid_argument("maximize_defect: n must be >= 1");
  if (task.family == MeasureFamily::fixed && task.fixed_weights.size() != task.n)
    throw std::invalid_argument("maximize_defect: fixed weights must have length n");
  SearchResult res = task.objective == Objective::nc_product ? detail::maximize_nc(task)
                                                             : detail::maximize_scalar(task);
  res.exact_sign = recertify_witness(task, res.witness);
  return res;
}

/// Whether the task searches a region where the target inequality is proved,
/// so a surviving positive defect means a toolkit bug rather than a finding.
inline bool search_region_proved(const SearchTask& task) {
  switch (task.objective) {
    case Objective::auxiliary:
      return false;
    case Objective::nc_product:
      if (!task.nc_spectrum.empty())
        return nc::DensityState::from_spectrum(task.nc_spectrum).is_tracial();
      return task.nc_tracial;
    default:
      break;
  }
  if (task.p.is(2.0) || task.p.is_inf()) return true;
  return task.family == MeasureFamily::uniform && task.n <= 4;
}

/// Flag policy shared by scan and search: a float defect above tol counts
/// only if exact recertification (when available) confirms a positive sign.
inline bool violation_flagged(const SearchResult& res, double tol) {
  if (res.best_defect <= tol) return false;
  return !res.exact_sign || *res.exact_sign > 0;
}

inline json search_report_json(const SearchTask& task, const SearchResult& res, bool flagged,
                               bool include_exact = false) {
  json out;
  out["schema"] = 1;
  out["kind"] = "search";
  out["objective"] = objective_name(task.objective);
  if (task.objective == Objective::nc_product) {
    out["d"] = static_cast<long>(task.d);
  } else {
    out["n"] = task.n;
    out["p"] = task.p.str();
  }
  out["budget"] = task.budget;
  out["seed"] = task.seed;
  out["evaluations"] = res.evaluations_used;
  out["best_defect"] = decimal_string(res.best_defect);
  out["flagged"] = flagged;
  if (res.exact_sign) out["exact_sign"] = *res.exact_sign;
  json w;
  if (task.objective == Objective::nc_product) {
    w["a"] = nc::detail::matrix_json(res.witness.a);
    w["b"] = nc::detail::matrix_json(res.witness.b);
    w["state"] = nc::detail::matrix_json(res.witness.rho);
  } else {
    w["f"] = vector_json(res.witness.f);
    if (!res.witness.g.empty()) w["g"] = vector_json(res.witness.g);
    if (!res.witness.x.empty()) w["x"] = vector_json(res.witness.x);
    w["weights"] = vector_json(res.witness.weights);
  }
  out["witness"] = std::move(w);
  if (include_exact && task.objective != Objective::nc_product) {
    json e;
    e["weights"] = vector_json(exact_measure_from(MeasureD(res.witness.weights)).weights());
    e["f"] = vector_json(exact_vector_from(res.witness.f));
    if (!res.witness.g.empty()) e["g"] = vector_json(exact_vector_from(res.witness.g));
    if (!res.witness.x.empty()) e["x"] = vector_json(exact_vector_from(res.witness.x));
    out["witness_exact"] = std::move(e);
  }
  if (!res.history.empty()) {
    json h = json::array();
    for (const auto& [ev, val] : res.history) h.push_back({ev, decimal_string(val)});
    out["history"] = std::move(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact reproductions of the two counterexample constructions.

/// The uniform-space family on lambda_n, n >= 5: f = (1, 0, ..., 0, -1),
/// x = (1, ..., 1, -1). Every quantity is exact; closed forms:
/// Ex = 1 - 2/n, E(fx) = 2/n, sigma_1(f) = 2/n, lhs = (4n-8)/n^2,
/// ratio = 2 - 4/n > 1.
struct UniformCounterexample {
  std::size_t n = 0;
  std::vector<Rational> f, x, deviation;
  Rational ef, ex, efx, sigma1_f, lhs, ratio;
  bool matches_closed_form = false;

  json to_json() const {
    json out;
    out["schema"] = 1;
    out["kind"] = "reproduce";
    out["case"] = "example1";
    out["n"] = n;
    out["f"] = vector_json(f);
    out["x"] = vector_json(x);
    out["Ef"] = fraction_string(ef);
    out["Ex"] = fraction_string(ex);
    out["Efx"] = fraction_string(efx);
    out["deviation"] = vector_json(deviation);
    out["lhs"] = fraction_string(lhs);
    out["rhs"] = fraction_string(sigma1_f);
    out["ratio"] = fraction_string(ratio);
    out["matches_closed_form"] = matches_closed_form;
    return out;
  }
};

inline UniformCounterexample uniform_counterexample(std::size_t n) {
  if (n < 5)
    throw std::invalid_argument("uniform_counterexample: the construction needs n >= 5");
  UniformCounterexample ce;
  ce.n = n;
  ce.f.assign(n, Rational(0));
  ce.f.front() = 1;
  ce.f.back() = -1;
  ce.x.assign(n, Rational(1));
  ce.x.back() = -1;
  const MeasureQ mu = MeasureQ::uniform(n);

  ce.ef = exact::expectation(ce.f, mu);
  ce.ex = exact::expectation(ce.x, mu);
  std::vector<Rational> fx(n);
  for (std::size_t i = 0; i < n; ++i) fx[i] = ce.f[i] * ce.x[i];
  ce.efx = exact::expectation(fx, mu);
  ce.deviation.resize(n);
  for (std::size_t i = 0; i < n; ++i) ce.deviation[i] = ce.ex * ce.f[i] - ce.efx;
  ce.lhs = exact::p1_norm(ce.deviation, mu);
  ce.sigma1_f = exact::centered_p1(ce.f, mu);
  ce.ratio = ce.lhs / ce.sigma1_f;

  const Rational nq(n);
  ce.matches_closed_form = ce.ef == 0 && ce.ex == 1 - Rational(2, n) &&
                           ce.efx == Rational(2, n) && ce.sigma1_f == Rational(2, n) &&
                           ce.lhs == Rational(4 * BigInt(n) - 8, BigInt(n) * n) &&
                           ce.ratio == 2 - Rational(4, n);
  return ce;
}

/// The three-atom instance: mu = (1/8, 3/4, 1/8), f = (1, 0, -1),
/// x = (1, 1, -1); deviation vector (1/2, -1/4, -1), lhs 3/8 vs rhs 1/4.
struct ThreeAtomCounterexample {
  std::vector<Rational> weights, f, x, deviation;
  Rational ef, ex, efx, sigma1_f, lhs;
  bool matches_closed_form = false;

  json to_json() const {
    json out;
    out["schema"] = 1;
    out["kind"] = "reproduce";
    out["case"] = "example2";
    out["weights"] = vector_json(weights);
    out["f"] = vector_json(f);
    out["x"] = vector_json(x);
    out["Ef"] = fraction_string(ef);
    out["Ex"] = fraction_string(ex);
    out["Efx"] = fraction_string(efx);
    out["deviation"] = vector_json(deviation);
    out["lhs"] = fraction_string(lhs);
    out["rhs"] = fraction_string(sigma1_f);
    out["matches_closed_form"] = matches_closed_form;
    return out;
  }
};

inline ThreeAtomCounterexample three_atom_counterexample() {
  ThreeAtomCounterexample ce;
  ce.weights = {Rational(1, 8), Rational(3, 4), Rational(1, 8)};
  ce.f = {Rational(1), Rational(0), Rational(-1)};
  ce.x = {Rational(1), Rational(1), Rational(-1)};
  const MeasureQ mu{std::vector<Rational>(ce.weights)};

  ce.ef = exact::expectation(ce.f, mu);
  ce.ex = exact::expectation(ce.x, mu);
  std::vector<Rational> fx(3);
  for (std::size_t i = 0; i < 3; ++i) fx[i] = ce.f[i] * ce.x[i];
  ce.efx = exact::expectation(fx, mu);
  ce.deviation.resize(3);
  for (std::size_t i = 0; i < 3; ++i) ce.deviation[i] = ce.ex * ce.f[i] - ce.efx;
  ce.lhs = exact::p1_norm(ce.deviation, mu);
  ce.sigma1_f = exact::centered_p1(ce.f, mu);

  const std::vector<Rational> want_dev{Rational(1, 2), Rational(-1, 4), Rational(-1)};
  ce.matches_closed_form = ce.ef == 0 && ce.ex == Rational(3, 4) && ce.efx == Rational(1, 4) &&
                           ce.deviation == want_dev && ce.lhs == Rational(3, 8) &&
                           ce.sigma1_f == Rational(1, 4);
  return ce;
}

// ---------------------------------------------------------------------------
// Conjecture scan.

struct ScanCell {
  std::size_t n = 0;
  PExp p{1.0};
  Objective objective = Objective::leibniz;
  double best_defect = 0.0;
  bool flagged = false;
  std::optional<int> exact_sign;
  SearchResult result;
};

struct ScanTable {
  std::vector<ScanCell> cells;
  bool proved_violation = false;

  std::string to_csv() const {
    std::ostringstream os;
    os << "n,p,objective,best_defect,flagged\n";
    for (const ScanCell& c : cells)
      os << c.n << ',' << c.p.str() << ',' << objective_name(c.objective) << ','
         << metric_string(c.best_defect) << ',' << (c.flagged ? "true" : "false") << '\n';
    return os.str();
  }

  json to_json() const {
    json out;
    out["schema"] = 1;
    out["kind"] = "scan";
    json rows = json::array();
    for (const ScanCell& c : cells) {
      json row;
      row["n"] = c.n;
      row["p"] = c.p.str();
      row["objective"] = objective_name(c.objective);
      row["best_defect"] = decimal_string(c.best_defect);
      row["flagged"] = c.flagged;
      if (c.exact_sign) row["exact_sign"] = *c.exact_sign;
      json w;
      w["f"] = vector_json(c.result.witness.f);
      if (!c.result.witness.g.empty()) w["g"] = vector_json(c.result.witness.g);
      if (!c.result.witness.x.empty()) w["x"] = vector_json(c.result.witness.x);
      w["weights"] = vector_json(c.result.witness.weights);
      row["witness"] = std::move(w);
      rows.push_back(std::move(row));
    }
    out["cells"] = std::move(rows);
    out["proved_violation"] = proved_violation;
    return out;
  }
};

/// Whether a (n, p, objective) cell lies in the region covered by proofs:
/// the product and inverse inequalities hold for p = 2 on every space and for
/// every p on uniform spaces with n <= 4 atoms.
inline bool cell_is_proved(std::size_t n, PExp p, Objective obj) {
  if (obj == Objective::auxiliary || obj == Objective::nc_product) return false;
  return p.is(2.0) || n <= 4;
}

/// Sweep (n, p, objective) cells with maximize_defect on uniform lambda_n.
/// leibniz and strong_leibniz probe the open conjecture; auxiliary is the
/// diagnostic column where positive defects are expected from n = 5 on.
/// A float flag at p in {1, 2} must survive exact recertification to stand.
inline ScanTable conjecture_scan(std::size_t n_lo, std::size_t n_hi,
                                 const std::vector<PExp>& p_grid, long per_cell_budget,
                                 std::uint64_t seed, double tol = kDefaultTol) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("conjecture_scan: bad n range");
  ScanTable table;
  std::uint64_t cell_index = 0;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    for (const PExp& p : p_grid) {
      for (Objective obj :
           {Objective::leibniz, Objective::strong_leibniz, Objective::auxiliary}) {
        SearchTask task;
        task.objective = obj;
        task.n = n;
        task.p = p;
        task.family = MeasureFamily::uniform;
        task.budget = per_cell_budget;
        task.seed = derive_stream(seed, cell_index++);
        task.tol = tol;

        ScanCell cell;
        cell.n = n;
        cell.p = p;
        cell.objective = obj;
        cell.result = maximize_defect(task);
        cell.best_defect = cell.result.best_defect;
        cell.exact_sign = cell.result.exact_sign;
        const bool float_flag = cell.best_defect > tol;
        cell.flagged = float_flag && (!cell.exact_sign || *cell.exact_sign > 0);
        if (cell.flagged && cell_is_proved(n, p, obj)) table.proved_violation = true;
        table.cells.push_back(std::move(cell));
      }
    }
  }
  return table;
}

}  // namespace sigmap
