#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <sigmap/prob.hpp>
#include <sigmap/rng.hpp>

using namespace sigmap;

TEST_CASE("PExp validation and parsing") {
  CHECK_THROWS_AS(PExp(0.5), std::invalid_argument);
  CHECK_THROWS_AS(PExp(std::nan("")), std::invalid_argument);
  CHECK(PExp::parse("inf").is_inf());
  CHECK(PExp::parse("1.5").is(1.5));
  CHECK_THROWS_AS(PExp::parse("two"), std::invalid_argument);
  CHECK(PExp(2.0).conjugate().is(2.0));
  CHECK(PExp(1.0).conjugate().is_inf());
  CHECK(PExp::infinity().conjugate().is(1.0));
  CHECK(PExp(4.0).conjugate().value() == Catch::Approx(4.0 / 3.0));
  CHECK(PExp(1.5).str() == "1.5");
  CHECK(PExp::infinity().str() == "inf");
}

TEST_CASE("Measure validation") {
  CHECK_THROWS_AS(MeasureD(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureD({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureD({-0.1, 1.1}), std::invalid_argument);
  CHECK_NOTHROW(MeasureD({0.5, 0.0, 0.5}));
  CHECK_THROWS_AS(MeasureQ({Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  CHECK(MeasureQ::uniform(3)[0] == Rational(1, 3));
}

TEST_CASE("frozen norm values") {
  // sigma_1((1,0,-1); (1/8,3/4,1/8)) = 1/4 since the mean is zero
  const MeasureQ mu({Rational(1, 8), Rational(3, 4), Rational(1, 8)});
  const std::vector<Rational> f{1, 0, -1};
  CHECK(exact::expectation(f, mu) == 0);
  CHECK(exact::centered_p1(f, mu) == Rational(1, 4));

  // ||(1/2,-1/4,-1)||_1 under the same measure = 3/8
  const std::vector<Rational> v{Rational(1, 2), Rational(-1, 4), Rational(-1)};
  CHECK(exact::p1_norm(v, mu) == Rational(3, 8));

  // sigma_1((1,0,0,0,-1); lambda_5) = 2/5
  const std::vector<Rational> f5{1, 0, 0, 0, -1};
  CHECK(exact::centered_p1(f5, MeasureQ::uniform(5)) == Rational(2, 5));

  const MeasureD mud({0.125, 0.75, 0.125});
  const std::vector<double> fd{1.0, 0.0, -1.0};
  CHECK(centered_moment<double>(fd, mud, PExp(1.0)) == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("sup norm counts every coordinate, essential sup skips null atoms") {
  const MeasureD mu({0.5, 0.5, 0.0});
  const std::vector<double> f{1.0, -2.0, 7.0};
  CHECK(sup_norm<double>(f) == 7.0);
  CHECK(p_norm<double>(f, mu, PExp::infinity()) == 2.0);

  const MeasureQ muq({Rational(1, 2), Rational(1, 2), Rational(0)});
  const std::vector<Rational> fq{1, -2, 7};
  CHECK(exact::sup_norm(fq) == Rational(7));
  CHECK(exact::ess_sup(fq, muq) == Rational(2));
}

TEST_CASE("centered moment properties") {
  Rng rng(2024);
  const std::vector<PExp> grid{PExp(1.0), PExp(1.5), PExp(2.0), PExp(3.0), PExp::infinity()};
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.below(6);
    const MeasureD mu = simplex_sample(rng, n);
    std::vector<double> f(n), shifted(n), scaled(n);
    for (double& x : f) x = rng.uniform(-2.0, 2.0);
    const double c = rng.uniform(-1.0, 1.0);
    const double a = rng.uniform(-2.0, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i] = f[i] + c;
      scaled[i] = a * f[i];
    }
    for (const PExp& p : grid) {
      const double s = centered_moment<double>(f, mu, p);
      CHECK(centered_moment<double>(shifted, mu, p) == Catch::Approx(s).margin(1e-10));
      CHECK(centered_moment<double>(scaled, mu, p) ==
            Catch::Approx(std::abs(a) * s).margin(1e-10));
    }
    // monotone in p on a probability space
    for (std::size_t k = 1; k < grid.size(); ++k)
      CHECK(centered_moment<double>(f, mu, grid[k - 1]) <=
            centered_moment<double>(f, mu, grid[k]) + 1e-12);
  }
}

TEST_CASE("exact and float moments agree on rational data") {
  Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<BigInt> counts(n);
    BigInt total = 0;
    for (BigInt& c : counts) {
      c = 1 + static_cast<long>(rng.below(20));
      total += c;
    }
    std::vector<Rational> wq(n);
    std::vector<double> wd(n);
    std::vector<Rational> fq(n);
    std::vector<double> fd(n);
    for (std::size_t i = 0; i < n; ++i) {
      wq[i] = Rational(counts[i], total);
      wd[i] = to_double(wq[i]);
      fq[i] = Rational(static_cast<long>(rng.below(33)) - 16, 16);
      fd[i] = to_double(fq[i]);
    }
    double sum = 0.0;
    for (double w : wd) sum += w;
    for (double& w : wd) w /= sum;
    const MeasureQ muq(wq);
    const MeasureD mud(wd);
    for (const PExp& p : {PExp(1.0), PExp(2.0), PExp::infinity()}) {
      CHECK(centered_moment<double>(fd, mud, p) ==
            Catch::Approx(centered_moment_exact_as_double(fq, muq, p)).margin(1e-12));
    }
  }
}

TEST_CASE("complex variables are supported at p = 2") {
  using C = std::complex<double>;
  const MeasureD mu = MeasureD::uniform(2);
  const std::vector<C> f{C(0.0, 1.0), C(0.0, -1.0)};
  CHECK(expectation<C>(f, mu) == C(0.0, 0.0));
  CHECK(centered_moment<C>(f, mu, PExp(2.0)) == Catch::Approx(1.0));
  CHECK(sup_norm<C>(f) == Catch::Approx(1.0));
}
