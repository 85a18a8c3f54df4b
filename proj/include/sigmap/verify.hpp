#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "sigmap/defect.hpp"
#include "sigmap/format.hpp"
#include "sigmap/majorization.hpp"
#include "sigmap/ncalg.hpp"
#include "sigmap/projections.hpp"
#include "sigmap/reduction.hpp"
#include "sigmap/rng.hpp"

namespace sigmap {

/// One verification check: metric is the worst value seen (a defect, an
/// absolute error, or a count of exact mismatches) and must stay <= tol.
struct CheckResult {
  std::string name;
  long trials = 0;
  double metric = 0.0;
  double tol = 0.0;
  bool pass = false;
  json worst; // inputs of the worst instance, recorded only on failure
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }

  json to_json() const {
    json out;
    out["schema"] = 1;
    out["kind"] = "verify";
    out["suite"] = suite;
    json rows = json::array();
    for (const CheckResult& c : checks) {
      json row;
      row["name"] = c.name;
      row["trials"] = c.trials;
      row["metric"] = decimal_string(c.metric);
      row["tol"] = decimal_string(c.tol);
      row["pass"] = c.pass;
      if (!c.worst.is_null()) row["worst"] = c.worst;
      rows.push_back(std::move(row));
    }
    out["checks"] = std::move(rows);
    out["pass"] = pass();
    return out;
  }

  std::string table() const {
    std::string out;
    char line[256];
    for (const CheckResult& c : checks) {
      std::snprintf(line, sizeof line, "[%s] %-34s trials=%-8ld metric=%-13s tol=%-8s %s\n",
                    suite.c_str(), c.name.c_str(), c.trials, metric_string(c.metric).c_str(),
                    metric_string(c.tol).c_str(), c.pass ? "pass" : "FAIL");
      out += line;
    }
    std::snprintf(line, sizeof line, "suite %s: %s (%zu checks)\n", suite.c_str(),
                  pass() ? "PASS" : "FAIL", checks.size());
    out += line;
    return out;
  }
};

namespace detail_v {

/// Tracks the worst metric plus the inputs that produced it.
struct Worst {
  double metric = -std::numeric_limits<double>::infinity();
  json inputs;

  template <class MakeJson>
  void offer(double m, const MakeJson& mk) {
    if (m > metric) {
      metric = m;
      inputs = mk();
    }
  }
};

inline CheckResult seal(std::string name, long trials, Worst w, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.trials = trials;
  c.metric = w.metric;
  c.tol = tol;
  c.pass = w.metric <= tol;
  if (!c.pass) c.worst = std::move(w.inputs);
  return c;
}

inline std::vector<double> box_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

inline std::vector<double> floored_vector(Rng& rng, std::size_t n, double floor) {
  std::vector<double> v = box_vector(rng, n);
  for (double& x : v)
    if (std::abs(x) < floor) x = (x < 0.0 ? -floor : floor);
  return v;
}

inline json scalar_instance_json(std::span<const double> f, std::span<const double> g,
                                 const MeasureD& mu, PExp p) {
  json j;
  j["p"] = p.str();
  j["f"] = vector_json(f);
  if (!g.empty()) j["g"] = vector_json(g);
  j["weights"] = vector_json(std::span<const double>(mu.weights()));
  return j;
}

}  // namespace detail_v

/// Random-instance sweep of the proved scalar inequalities. trials counts
/// instances per (objective, n, p) cell.
inline SuiteReport run_scalar_suite(long trials, std::uint64_t seed, double tol = kDefaultTol) {
  using detail_v::Worst;
  SuiteReport rep;
  rep.suite = "scalar";
  std::uint64_t cell = 0;
  const std::vector<PExp> p_small{PExp(1.0), PExp(1.5), PExp(2.0), PExp(3.0)};
  const std::vector<PExp> p_all{PExp(1.0), PExp(1.5), PExp(2.0), PExp(3.0), PExp::infinity()};

  // mean-product bound on uniform spaces with up to four atoms
  {
    Worst w;
    long done = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const PExp& p : p_small) {
        Rng rng(derive_stream(seed, cell++));
        const MeasureD mu = MeasureD::uniform(n);
        for (long t = 0; t < trials; ++t, ++done) {
          const auto f = detail_v::box_vector(rng, n);
          const auto x = detail_v::box_vector(rng, n);
          const double d =
              mean_product_defect<double>(f, x, mu, p, tol, Capture::off).defect;
          w.offer(d, [&] { return detail_v::scalar_instance_json(f, x, mu, p); });
        }
      }
    }
    rep.checks.push_back(detail_v::seal("mean_product_uniform_small_n", done, std::move(w), tol));
  }

  // mean-product bound on arbitrary two-atom measures
  {
    Worst w;
    long done = 0;
    for (const PExp& p : p_small) {
      Rng rng(derive_stream(seed, cell++));
      for (long t = 0; t < trials; ++t, ++done) {
        const MeasureD mu = simplex_sample(rng, 2);
        const auto f = detail_v::box_vector(rng, 2);
        const auto x = detail_v::box_vector(rng, 2);
        const double d = mean_product_defect<double>(f, x, mu, p, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, x, mu, p); });
      }
    }
    rep.checks.push_back(detail_v::seal("mean_product_two_atom", done, std::move(w), tol));
  }

  // product and inverse inequalities in the regimes proved for every measure
  struct PCell {
    const char* name;
    PExp p;
    bool strong;
  };
  for (const PCell& pc : {PCell{"leibniz_sup", PExp::infinity(), false},
                          PCell{"strong_leibniz_sup", PExp::infinity(), true},
                          PCell{"leibniz_p2", PExp(2.0), false},
                          PCell{"strong_leibniz_p2", PExp(2.0), true}}) {
    Worst w;
    Rng rng(derive_stream(seed, cell++));
    for (long t = 0; t < trials; ++t) {
      const std::size_t n = 2 + rng.below(7);
      const MeasureD mu = simplex_sample(rng, n);
      if (pc.strong) {
        const auto f = detail_v::floored_vector(rng, n, 0.05);
        const double d = strong_leibniz_defect<double>(f, mu, pc.p, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, {}, mu, pc.p); });
      } else {
        const auto f = detail_v::box_vector(rng, n);
        const auto g = detail_v::box_vector(rng, n);
        const double d = leibniz_defect<double>(f, g, mu, pc.p, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, g, mu, pc.p); });
      }
    }
    rep.checks.push_back(detail_v::seal(pc.name, trials, std::move(w), tol));
  }

  // squares of nonnegative variables, every p
  {
    Worst w;
    long done = 0;
    for (const PExp& p : p_all) {
      Rng rng(derive_stream(seed, cell++));
      for (long t = 0; t < trials; ++t, ++done) {
        const std::size_t n = 2 + rng.below(7);
        const MeasureD mu = simplex_sample(rng, n);
        std::vector<double> f(n);
        for (double& x : f) x = rng.uniform01();
        const double d = square_defect(f, mu, p, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, {}, mu, p); });
      }
    }
    rep.checks.push_back(detail_v::seal("square_nonnegative", done, std::move(w), tol));
  }

  // nonnegative pairs monotone in the same direction, every p
  {
    Worst w;
    long done = 0;
    for (const PExp& p : p_all) {
      Rng rng(derive_stream(seed, cell++));
      for (long t = 0; t < trials; ++t, ++done) {
        const std::size_t n = 2 + rng.below(7);
        const MeasureD mu = simplex_sample(rng, n);
        std::vector<double> f(n), g(n);
        for (double& x : f) x = rng.uniform01();
        for (double& x : g) x = rng.uniform01();
        std::sort(f.begin(), f.end(), std::greater<>());
        std::sort(g.begin(), g.end(), std::greater<>());
        const double d = comonotone_defect(f, g, mu, p, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, g, mu, p); });
      }
    }
    rep.checks.push_back(detail_v::seal("comonotone_pair", done, std::move(w), tol));
  }

  // rough product bound with the exact centering norm, uniform spaces
  {
    Worst w;
    long done = 0;
    for (const PExp& p : {PExp(1.0), PExp(2.0), PExp::infinity()}) {
      Rng rng(derive_stream(seed, cell++));
      for (long t = 0; t < trials; ++t, ++done) {
        const std::size_t n = 2 + rng.below(7);
        const MeasureD mu = MeasureD::uniform(n);
        const double op = uniform_exact_norm(n, p);
        const auto f = detail_v::box_vector(rng, n);
        const auto g = detail_v::box_vector(rng, n);
        const double d =
            rough_leibniz_defect<double>(f, g, mu, p, op, tol, Capture::off).defect;
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, g, mu, p); });
      }
    }
    rep.checks.push_back(detail_v::seal("rough_product_uniform", done, std::move(w), tol));
  }

  // inverse bounds with the exact centering norm, uniform spaces
  {
    Worst w;
    long done = 0;
    for (const PExp& p : {PExp(1.0), PExp(2.0), PExp::infinity()}) {
      Rng rng(derive_stream(seed, cell++));
      for (long t = 0; t < trials; ++t, ++done) {
        const std::size_t n = 2 + rng.below(7);
        const MeasureD mu = MeasureD::uniform(n);
        const double op = uniform_exact_norm(n, p);
        const auto f = detail_v::floored_vector(rng, n, 0.05);
        const auto pr = inverse_bound_defects<double>(f, mu, p, op, tol, Capture::off);
        const double d = std::max(pr.first.defect, pr.second.defect);
        w.offer(d, [&] { return detail_v::scalar_instance_json(f, {}, mu, p); });
      }
    }
    rep.checks.push_back(detail_v::seal("inverse_bounds_uniform", done, std::move(w), tol));
  }

  return rep;
}

/// Mean-centering norms on uniform spaces and the minimal-projection value.
/// Deterministic; the trials argument is unused but kept for a uniform
/// suite-runner shape.
inline SuiteReport run_projection_suite(long /*trials*/ = 0, std::uint64_t /*seed*/ = 0,
                                        double tol_norm = 1e-6, double tol_exact = 1e-9) {
  using detail_v::Worst;
  SuiteReport rep;
  rep.suite = "projections";

  using Named = std::pair<const char*, PExp>;
  for (const auto& [name, p] : {Named{"centering_norm_p1", PExp(1.0)},
                                Named{"centering_norm_p2", PExp(2.0)},
                                Named{"centering_norm_sup", PExp::infinity()}}) {
    Worst w;
    for (std::size_t n = 1; n <= 10; ++n) {
      const double got = numeric_operator_p_norm(n, p).value;
      const double want = uniform_exact_norm(n, p);
      w.offer(std::abs(got - want), [&, n = n] {
        json j;
        j["n"] = n;
        j["p"] = p.str();
        j["got"] = decimal_string(got);
        j["want"] = decimal_string(want);
        return j;
      });
    }
    rep.checks.push_back(detail_v::seal(name, 10, std::move(w), tol_norm));
  }

  {
    Worst w;
    const double v = franchetti_norm(PExp(2.0)).value;
    w.offer(std::abs(v - 1.0), [&] { return json(decimal_string(v)); });
    rep.checks.push_back(detail_v::seal("franchetti_at_2", 1, std::move(w), tol_exact));
  }

  {
    Worst w;
    long done = 0;
    for (double p : {1.1, 1.25, 1.5, 4.0, 8.0}) {
      const double q = p / (p - 1.0);
      const double fp = franchetti_norm(PExp(p)).value;
      const double fq = franchetti_norm(PExp(q)).value;
      w.offer(std::abs(fp - fq), [&] {
        json j;
        j["p"] = decimal_string(p);
        j["conjugate"] = decimal_string(q);
        j["value_p"] = decimal_string(fp);
        j["value_conjugate"] = decimal_string(fq);
        return j;
      });
      ++done;
    }
    rep.checks.push_back(detail_v::seal("franchetti_conjugate_pairs", done, std::move(w), tol_exact));
  }

  {
    Worst w;
    long done = 0;
    for (double p : {1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0}) {
      const InterpolationBounds b = interpolation_bound(PExp(p));
      const double v = franchetti_norm(PExp(p)).value;
      w.offer(v - b.derived, [&] {
        json j;
        j["p"] = decimal_string(p);
        j["value"] = decimal_string(v);
        j["bound"] = decimal_string(b.derived);
        return j;
      });
      ++done;
    }
    rep.checks.push_back(detail_v::seal("franchetti_grid_bound", done, std::move(w), tol_exact));
  }

  return rep;
}

/// Table of franchetti values against both interpolation-style exponents.
/// Only the 2^|1-2/p| column is a proved bound; the other is printed for
/// comparison and never asserted.
inline std::string franchetti_table() {
  std::string out = "p        franchetti    2^|1-2/p|    2^|1-1/(2p)| (not asserted)\n";
  char line[160];
  for (double p : {1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0}) {
    const InterpolationBounds b = interpolation_bound(PExp(p));
    const double v = franchetti_norm(PExp(p)).value;
    std::snprintf(line, sizeof line, "%-8s %-13s %-12s %s\n", metric_string(p).c_str(),
                  metric_string(v).c_str(), metric_string(b.derived).c_str(),
                  metric_string(b.comparison).c_str());
    out += line;
  }
  return out;
}

/// Aligned random pairs on uniform spaces: the centered combination must
/// majorize the centered product (slack floor) and the product bound must
/// hold at the sampled exponent. trials counts pairs per n in {2..8}.
inline SuiteReport run_majorization_suite(long trials, std::uint64_t seed,
                                          double tol_dominance = 1e-12,
                                          double tol_defect = kDefaultTol) {
  using detail_v::Worst;
  SuiteReport rep;
  rep.suite = "majorization";
  const std::vector<PExp> grid{PExp(1.0), PExp(1.5), PExp(2.0), PExp(3.0), PExp::infinity()};
  Worst w_dom, w_def;
  long done = 0;
  std::uint64_t cell = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_stream(seed, cell++));
    for (long t = 0; t < trials; ++t, ++done) {
      std::vector<double> f(n), g(n);
      for (double& x : f) x = rng.uniform01();
      for (double& x : g) x = rng.uniform01();
      std::sort(f.begin(), f.end(), std::greater<>());
      std::sort(g.begin(), g.end(), std::greater<>());
      if (rng.uniform01() < 0.5) {
        std::vector<double> shifted = f;
        const double c = rng.uniform01();
        for (double& x : shifted) x -= c;
        if (same_order(shifted, g).aligned) f = shifted;
      }
      const PExp p = grid[static_cast<std::size_t>(t) % grid.size()];
      const SchurLeibnizReport r = schur_leibniz_verify(f, g, p, tol_defect);
      double viol = std::abs(r.slacks.back());
      for (std::size_t k = 0; k + 1 < r.slacks.size(); ++k) viol = std::max(viol, -r.slacks[k]);
      auto mk = [&] { return detail_v::scalar_instance_json(f, g, MeasureD::uniform(n), p); };
      w_dom.offer(viol, mk);
      w_def.offer(r.defect.defect, mk);
    }
  }
  rep.checks.push_back(
      detail_v::seal("aligned_partial_sum_dominance", done, std::move(w_dom), tol_dominance));
  rep.checks.push_back(detail_v::seal("aligned_product_bound", done, std::move(w_def), tol_defect));
  return rep;
}

/// Replication onto uniform spaces: expectation, sup norm, sigma_1 and
/// sigma_2^2 transfer exactly; general exponents transfer within 1e-12;
/// products commute with replication exactly. trials counts random rational
/// measures.
inline SuiteReport run_reduction_suite(long trials, std::uint64_t seed,
                                       double tol_general = 1e-12) {
  using detail_v::Worst;
  SuiteReport rep;
  rep.suite = "reduction";
  Worst w_exp, w_sup, w_s1, w_s2, w_gen, w_prod;
  Rng rng(derive_stream(seed, 0));

  auto rational_box = [&](std::size_t n) {
    std::vector<Rational> v(n);
    for (Rational& x : v) x = Rational(static_cast<long>(rng.below(33)) - 16, 16);
    return v;
  };

  for (long t = 0; t < trials; ++t) {
    const std::size_t n = 2 + rng.below(7);
    std::vector<BigInt> counts(n);
    BigInt total = 0;
    for (BigInt& c : counts) {
      c = 1 + static_cast<long>(rng.below(50));
      total += c;
    }
    std::vector<Rational> wts(n);
    for (std::size_t i = 0; i < n; ++i) wts[i] = Rational(counts[i], total);
    const MeasureQ mu{std::move(wts)};
    const auto f = rational_box(n);
    const auto g = rational_box(n);

    const auto rf = replicate<Rational>(f, mu);
    const auto rg = replicate<Rational>(g, mu);
    const std::size_t m = rf.size();
    const MeasureQ uni = MeasureQ::uniform(m);

    auto mk = [&] {
      json j;
      j["weights"] = vector_json(mu.weights());
      j["f"] = vector_json(f);
      return j;
    };

    w_exp.offer(exact::expectation(f, mu) == exact::expectation(rf, uni) ? 0.0 : 1.0, mk);
    w_sup.offer(exact::sup_norm(f) == exact::sup_norm(rf) ? 0.0 : 1.0, mk);
    w_s1.offer(exact::centered_p1(f, mu) == exact::centered_p1(rf, uni) ? 0.0 : 1.0, mk);
    w_s2.offer(
        exact::centered_p2_squared(f, mu) == exact::centered_p2_squared(rf, uni) ? 0.0 : 1.0, mk);

    std::vector<double> fd(n), rfd(m), wd(n);
    for (std::size_t i = 0; i < n; ++i) fd[i] = to_double(f[i]);
    for (std::size_t i = 0; i < n; ++i) wd[i] = to_double(mu[i]);
    for (std::size_t i = 0; i < m; ++i) rfd[i] = to_double(rf[i]);
    const MeasureD mud(wd);
    const MeasureD unid = MeasureD::uniform(m);
    for (const PExp& p : {PExp(1.5), PExp(3.0)}) {
      const double gap =
          std::abs(centered_moment<double>(fd, mud, p) - centered_moment<double>(rfd, unid, p));
      w_gen.offer(gap, mk);
    }

    std::vector<Rational> fg(n);
    for (std::size_t i = 0; i < n; ++i) fg[i] = f[i] * g[i];
    const auto rfg = replicate<Rational>(fg, mu);
    bool prod_ok = rfg.size() == m;
    for (std::size_t i = 0; prod_ok && i < m; ++i) prod_ok = rfg[i] == rf[i] * rg[i];
    prod_ok = prod_ok && exact::expectation(fg, mu) == exact::expectation(rfg, uni);
    w_prod.offer(prod_ok ? 0.0 : 1.0, mk);
  }

  rep.checks.push_back(detail_v::seal("replicate_expectation_exact", trials, std::move(w_exp), 0.0));
  rep.checks.push_back(detail_v::seal("replicate_sup_exact", trials, std::move(w_sup), 0.0));
  rep.checks.push_back(detail_v::seal("replicate_sigma1_exact", trials, std::move(w_s1), 0.0));
  rep.checks.push_back(detail_v::seal("replicate_sigma2sq_exact", trials, std::move(w_s2), 0.0));
  rep.checks.push_back(
      detail_v::seal("replicate_sigma_general_p", trials * 2, std::move(w_gen), tol_general));
  rep.checks.push_back(detail_v::seal("replicate_products_exact", trials, std::move(w_prod), 0.0));
  return rep;
}

/// Matrix-algebra suite over random faithful states, d in {2, 3, 4}. trials
/// counts instances per dimension.
inline SuiteReport run_nc_suite(long trials, std::uint64_t seed, double tol_eq = 1e-8,
                                double tol = kDefaultTol) {
  using detail_v::Worst;
  SuiteReport rep;
  rep.suite = "nc";
  Worst w_comm, w_state, w_mult, w_inv, w_trac, w_deriv;
  long done = 0, inv_done = 0, deriv_done = 0;
  std::uint64_t cell = 0;

  for (Eigen::Index d : {2, 3, 4}) {
    Rng rng(derive_stream(seed, cell++));
    const nc::DensityState tr = nc::DensityState::tracial_state(d);
    for (long t = 0; t < trials; ++t, ++done) {
      const nc::DensityState w = nc::DensityState::random_faithful(d, rng);
      const nc::Matrix a = nc::random_matrix(d, rng);
      const nc::Matrix x = nc::random_matrix(d, rng);

      auto mk = [&] {
        json j;
        j["d"] = static_cast<long>(d);
        j["trial"] = t;
        return j;
      };

      w_comm.offer(std::abs(nc::commutator_dirac_norm(a, w) - nc::nc_sigma2_max(a, w)), mk);
      w_state.offer(nc::state_product_defect(a, x, w, tol, Capture::off).defect, mk);
      w_mult.offer(nc::left_mult_defect(x, a, w, tol, Capture::off).defect, mk);
      if (nc::smallest_singular_value(a) > 1e-3) {
        w_inv.offer(nc::inverse_defect(a, w, tol, 1e-3, Capture::off).defect, mk);
        ++inv_done;
      }
      w_trac.offer(nc::product_defect(a, x, tr, tol, Capture::off).defect, mk);
    }

    Rng rng2(derive_stream(seed, cell++));
    for (long t = 0; t < std::max<long>(trials / 16, 4); ++t, ++deriv_done) {
      const nc::Matrix a = nc::random_matrix(d, rng2);
      const nc::DerivationCheck c =
          nc::derivation_norm_check(a, tr, 32, derive_stream(seed, 0xabcULL + cell));
      w_deriv.offer(std::abs(c.sampled_sup - c.closed_form), [&] {
        json j;
        j["d"] = static_cast<long>(d);
        j["sampled"] = decimal_string(c.sampled_sup);
        j["closed_form"] = decimal_string(c.closed_form);
        return j;
      });
    }
  }

  rep.checks.push_back(
      detail_v::seal("commutator_matches_sigma2_max", done, std::move(w_comm), tol_eq));
  rep.checks.push_back(detail_v::seal("state_product_bound", done, std::move(w_state), tol));
  rep.checks.push_back(detail_v::seal("left_mult_bound", done, std::move(w_mult), tol));
  rep.checks.push_back(detail_v::seal("inverse_bound", inv_done, std::move(w_inv), tol));
  rep.checks.push_back(detail_v::seal("tracial_product_bound", done, std::move(w_trac), tol));
  rep.checks.push_back(detail_v::seal("derivation_norm_match", deriv_done, std::move(w_deriv), tol));
  return rep;
}

}  // namespace sigmap
