#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmap/defect.hpp"
#include "sigmap/prob.hpp"

namespace sigmap {

/// Witness that one permutation sorts f, g and fg descending simultaneously.
struct OrderAlignment {
  std::vector<std::size_t> permutation;
  bool aligned = false;
};

/// Decide whether f and g admit a common descending order. Sorting
/// lexicographically by (f desc, g desc) resolves ties in f in g's favor;
/// if any common order exists, this one works, so the check is complete:
/// within an f-tie block the (g, fg) multiset is order-forced, and across
/// blocks every valid permutation produces the same block sequence.
inline OrderAlignment same_order(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw std::invalid_argument("same_order: size mismatch");
  OrderAlignment out;
  out.permutation.resize(f.size());
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  std::sort(out.permutation.begin(), out.permutation.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return g[a] > g[b];
  });
  const auto& pi = out.permutation;
  out.aligned = true;
  for (std::size_t k = 1; k < pi.size() && out.aligned; ++k) {
    const std::size_t i = pi[k - 1], j = pi[k];
    if (g[i] < g[j] || f[i] * g[i] < f[j] * g[j]) out.aligned = false;
  }
  return out;
}

/// Descending rearrangement.
inline std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Partial-sum slacks sum_{j<=k} u_down_j - sum_{j<=k} v_down_j, k = 1..n.
inline std::vector<double> majorization_slacks(std::span<const double> u,
                                               std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("majorization_slacks: size mismatch");
  const auto ud = sorted_desc(u);
  const auto vd = sorted_desc(v);
  std::vector<double> slack(u.size());
  double su = 0.0, sv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    su += ud[k];
    sv += vd[k];
    slack[k] = su - sv;
  }
  return slack;
}

/// u majorizes v: every partial-sum slack >= -tol and total sums equal
/// within tol.
inline bool majorizes(std::span<const double> u, std::span<const double> v, double tol = 1e-12) {
  const auto slack = majorization_slacks(u, v);
  for (std::size_t k = 0; k + 1 < slack.size(); ++k)
    if (slack[k] < -tol) return false;
  return std::abs(slack.back()) <= tol;
}

struct SchurLeibnizReport {
  OrderAlignment alignment;
  bool majorized = false;
  std::vector<double> slacks;
  DefectReport defect;
};

/// On the uniform space, for an aligned pair (f, g): the centered combination
/// u = ||f||_inf (g - Eg) + ||g||_inf (f - Ef) majorizes v = fg - E(fg), and
/// the Leibniz defect is <= 0 as a consequence (||.||_p circ centering is
/// Schur-convex on majorization-comparable mean-zero vectors).
inline SchurLeibnizReport schur_leibniz_verify(std::span<const double> f,
                                               std::span<const double> g, PExp p,
                                               double tol = kDefaultTol) {
  SchurLeibnizReport rep;
  rep.alignment = same_order(f, g);
  if (!rep.alignment.aligned)
    throw std::invalid_argument("schur_leibniz_verify: pair admits no common descending order");
  const auto mu = MeasureD::uniform(f.size());
  const double ef = expectation(f, mu);
  const double eg = expectation(g, mu);
  const double nf = sup_norm(f);
  const double ng = sup_norm(g);
  std::vector<double> u(f.size()), v(f.size());
  std::vector<double> fg(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fg[i] = f[i] * g[i];
  const double efg = expectation(std::span<const double>(fg), mu);
  for (std::size_t i = 0; i < f.size(); ++i) {
    u[i] = nf * (g[i] - eg) + ng * (f[i] - ef);
    v[i] = fg[i] - efg;
  }
  rep.slacks = majorization_slacks(u, v);
  rep.majorized = majorizes(u, v);
  rep.defect = leibniz_defect<double>(f, g, mu, p, tol);
  return rep;
}

}  // namespace sigmap
