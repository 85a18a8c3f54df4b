#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <sigmap/extreme.hpp>
#include <sigmap/majorization.hpp>
#include <sigmap/reduction.hpp>
#include <sigmap/rng.hpp>

using namespace sigmap;

TEST_CASE("same_order on fixed pairs") {
  const std::vector<double> f{3, 2, 1}, g{9, 4, 1};
  const OrderAlignment a = same_order(f, g);
  CHECK(a.aligned);
  CHECK(a.permutation == std::vector<std::size_t>{0, 1, 2});

  CHECK_FALSE(same_order(std::vector<double>{1, 2}, std::vector<double>{2, 1}).aligned);

  const std::vector<double> h{2, 1, 0};
  CHECK(same_order(h, h).aligned);

  // f and g descending but the product not: no common order
  const std::vector<double> fs{1, -1}, gs{0.5, -1};
  CHECK_FALSE(same_order(fs, gs).aligned);
}

TEST_CASE("majorizes on fixed vectors") {
  CHECK(majorizes(std::vector<double>{1, 0, -1}, std::vector<double>{0, 0, 0}));
  CHECK_FALSE(majorizes(std::vector<double>{0, 0, 0}, std::vector<double>{1, 0, -1}));
  // unequal totals fail even with dominating partial sums
  CHECK_FALSE(majorizes(std::vector<double>{2, 1}, std::vector<double>{1, 1}));
  // permutations majorize each other
  CHECK(majorizes(std::vector<double>{3, 1, 2}, std::vector<double>{1, 2, 3}));
  CHECK(majorizes(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2}));
}

TEST_CASE("schur verification on aligned pairs") {
  const std::vector<double> f{3, 2, 1}, g{9, 4, 1};
  const SchurLeibnizReport rep = schur_leibniz_verify(f, g, PExp(1.5));
  CHECK(rep.alignment.aligned);
  CHECK(rep.majorized);
  CHECK(rep.defect.defect <= 0.0);
  CHECK(rep.slacks.back() == Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(
      schur_leibniz_verify(std::vector<double>{1, 2}, std::vector<double>{2, 1}, PExp(1.0)),
      std::invalid_argument);

  Rng rng(321);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(7);
    std::vector<double> a(n), b(n);
    for (double& x : a) x = rng.uniform01();
    for (double& x : b) x = rng.uniform01();
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    const SchurLeibnizReport r = schur_leibniz_verify(a, b, PExp(1.0 + 3.0 * rng.uniform01()));
    CHECK(r.majorized);
    CHECK(r.defect.defect <= kDefaultTol);
  }
}

TEST_CASE("rationalize recovers small-denominator weights exactly") {
  const MeasureQ nu = rationalize(MeasureD({0.125, 0.75, 0.125}), 1e-9);
  CHECK(nu[0] == Rational(1, 8));
  CHECK(nu[1] == Rational(3, 4));
  CHECK(nu[2] == Rational(1, 8));

  const MeasureQ thirds = rationalize(MeasureD({1.0 / 3.0, 2.0 / 3.0}), 1e-9);
  CHECK(thirds[0] == Rational(1, 3));
  CHECK(thirds[1] == Rational(2, 3));
}

TEST_CASE("rationalize rounding path stays within eps and sums to one") {
  const double a = 1.0 / std::sqrt(2.0);
  const MeasureD mu({a, 1.0 - a});
  const double eps = 1e-3;
  const MeasureQ nu = rationalize(mu, eps);
  Rational sum;
  for (const Rational& w : nu.weights()) sum += w;
  CHECK(sum == 1);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(std::abs(to_double(nu[i]) - mu[i]) <= eps);
  CHECK_THROWS_AS(rationalize(mu, 0.0), std::invalid_argument);
}

TEST_CASE("measure_counts and replicate on the three-atom measure") {
  const MeasureQ mu({Rational(1, 8), Rational(3, 4), Rational(1, 8)});
  const MeasureCounts mc = measure_counts(mu);
  CHECK(mc.denominator == 8);
  CHECK(mc.counts == std::vector<BigInt>{1, 6, 1});

  const std::vector<Rational> f{1, 0, -1};
  const auto rf = replicate<Rational>(f, mu);
  CHECK(rf == std::vector<Rational>{1, 0, 0, 0, 0, 0, 0, -1});
  CHECK(exact::centered_p1(f, mu) == Rational(1, 4));
  CHECK(exact::centered_p1(rf, MeasureQ::uniform(8)) == Rational(1, 4));
}

TEST_CASE("replicate is an exact homomorphism on random rational data") {
  Rng rng(777);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(6);
    std::vector<BigInt> counts(n);
    BigInt total = 0;
    for (BigInt& c : counts) {
      c = 1 + static_cast<long>(rng.below(30));
      total += c;
    }
    std::vector<Rational> w(n), f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = Rational(counts[i], total);
      f[i] = Rational(static_cast<long>(rng.below(33)) - 16, 16);
      g[i] = Rational(static_cast<long>(rng.below(33)) - 16, 16);
    }
    const MeasureQ mu(w);
    const auto rf = replicate<Rational>(f, mu);
    const auto rg = replicate<Rational>(g, mu);
    const MeasureQ uni = MeasureQ::uniform(rf.size());

    CHECK(exact::expectation(f, mu) == exact::expectation(rf, uni));
    CHECK(exact::sup_norm(f) == exact::sup_norm(rf));
    CHECK(exact::centered_p2_squared(f, mu) == exact::centered_p2_squared(rf, uni));

    std::vector<Rational> fg(n);
    for (std::size_t i = 0; i < n; ++i) fg[i] = f[i] * g[i];
    const auto rfg = replicate<Rational>(fg, mu);
    REQUIRE(rfg.size() == rf.size());
    for (std::size_t i = 0; i < rf.size(); ++i) CHECK(rfg[i] == rf[i] * rg[i]);
  }
}

TEST_CASE("replicate rejects measures beyond the size limit") {
  const MeasureQ mu({Rational(1, 7000001), Rational(7000000, 7000001)});
  const std::vector<Rational> f{1, 0};
  CHECK_THROWS_AS(replicate<Rational>(f, mu), std::invalid_argument);
}

TEST_CASE("reduction discrepancy stays within its proved bound") {
  Rng rng(888);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(6);
    const MeasureD mu = simplex_sample(rng, n);
    std::vector<double> f(n);
    for (double& x : f) x = rng.uniform(-1.0, 1.0);
    const double eps = 1e-4;
    const MeasureQ nu = rationalize(mu, eps);
    for (const PExp& p : {PExp(1.0), PExp(2.0), PExp(3.0)}) {
      const ReductionCheck rc = reduction_discrepancy(f, mu, nu, p, eps);
      CHECK(rc.discrepancy <= rc.bound);
      CHECK(rc.mean_shift <= sup_norm<double>(f) * static_cast<double>(n) * eps + 1e-12);
    }
  }
}

TEST_CASE("sign vector enumeration") {
  const SignVectors sv(3);
  CHECK(sv.count() == 8);
  auto it = sv.begin();
  CHECK(*it == std::vector<double>{1, 1, 1});
  ++it;
  CHECK(*it == std::vector<double>{-1, 1, 1});

  long seen = 0;
  for_each_sign_vector(4, [&](std::span<const double> x) {
    ++seen;
    for (double v : x) CHECK(std::abs(v) == 1.0);
  });
  CHECK(seen == 16);
  CHECK_THROWS_AS(for_each_sign_vector(26, [](std::span<const double>) {}),
                  std::invalid_argument);
}

TEST_CASE("mean-zero extreme points on the two-atom uniform space") {
  const auto pts = extreme_mean_zero_points(MeasureQ::uniform(2));
  REQUIRE(pts.size() == 3);
  std::vector<std::vector<Rational>> vals;
  for (const auto& p : pts) vals.push_back(p.values);
  CHECK(std::find(vals.begin(), vals.end(), std::vector<Rational>{1, -1}) != vals.end());
  CHECK(std::find(vals.begin(), vals.end(), std::vector<Rational>{-1, 1}) != vals.end());
  CHECK(std::find(vals.begin(), vals.end(), std::vector<Rational>{0, 0}) != vals.end());
}

TEST_CASE("mean-zero extreme points satisfy the unit shift identities exactly") {
  const MeasureQ mu({Rational(1, 8), Rational(3, 4), Rational(1, 8)});
  bool saw_counterexample_shape = false;
  long count = 0;
  for_each_extreme_mean_zero(mu, [&](const MeanZeroExtreme& pt) {
    ++count;
    std::vector<Rational> up(pt.values.size()), down(pt.values.size());
    Rational mean;
    for (std::size_t i = 0; i < pt.values.size(); ++i) {
      up[i] = 1 + pt.values[i];
      down[i] = 1 - pt.values[i];
      mean += pt.values[i] * mu[i];
    }
    CHECK(mean == 0);
    CHECK(exact::p1_norm(up, mu) == 1);
    CHECK(exact::p1_norm(down, mu) == 1);
    if (pt.values == std::vector<Rational>{1, 0, -1}) saw_counterexample_shape = true;
  });
  CHECK(count > 0);
  CHECK(saw_counterexample_shape);
}
