#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include <sigmap/defect.hpp>
#include <sigmap/rng.hpp>

using namespace sigmap;

TEST_CASE("product bound on a frozen instance") {
  // f = g = (2,1,0) on the uniform 3-point space, p = 1:
  // lhs = sigma_1(f^2) = 14/9, rhs = 2 ||f||_inf sigma_1(f) = 8/3.
  const std::vector<double> f{2.0, 1.0, 0.0};
  const MeasureD mu = MeasureD::uniform(3);
  const DefectReport r = leibniz_defect<double>(f, f, mu, PExp(1.0));
  CHECK(r.lhs == Catch::Approx(14.0 / 9.0).margin(1e-15));
  CHECK(r.rhs == Catch::Approx(8.0 / 3.0).margin(1e-15));
  CHECK(r.defect < 0.0);
  CHECK(r.verdict == Verdict::holds);

  const std::vector<Rational> fq{2, 1, 0};
  CHECK(exact::leibniz_sign(fq, fq, MeasureQ::uniform(3), 1) == -1);
  CHECK(exact::leibniz_sign(fq, fq, MeasureQ::uniform(3), 2) == -1);
}

TEST_CASE("report json carries the fixed field order and inputs") {
  const std::vector<double> f{1.0, -1.0};
  const DefectReport r =
      leibniz_defect<double>(f, f, MeasureD::uniform(2), PExp(2.0), kDefaultTol, Capture::on);
  const json j = r.to_json();
  std::vector<std::string> got;
  for (auto it = j.begin(); it != j.end(); ++it) got.push_back(it.key());
  CHECK(got == std::vector<std::string>{"lhs", "rhs", "defect", "verdict", "tolerance", "inputs"});
  CHECK(j["inputs"].contains("f"));
  CHECK(j["inputs"].contains("g"));
  CHECK(j["inputs"].contains("weights"));
}

TEST_CASE("strong bound on frozen instances") {
  // f = (2,1) on lambda_2, p = 1: sigma_1(1/f) = 1/4 vs ||1/f||^2 sigma_1(f) = 1/2.
  const std::vector<double> f{2.0, 1.0};
  const MeasureD mu = MeasureD::uniform(2);
  const DefectReport r = strong_leibniz_defect<double>(f, mu, PExp(1.0));
  CHECK(r.lhs == Catch::Approx(0.25).margin(1e-15));
  CHECK(r.rhs == Catch::Approx(0.5).margin(1e-15));

  // tight at f = (1,-1), p = 2: both sides 1
  const std::vector<double> t{1.0, -1.0};
  const DefectReport rt = strong_leibniz_defect<double>(t, mu, PExp(2.0));
  CHECK(rt.lhs == Catch::Approx(1.0));
  CHECK(rt.rhs == Catch::Approx(1.0));
  CHECK(std::abs(rt.defect) <= 1e-15);

  const std::vector<Rational> tq{1, -1};
  CHECK(exact::strong_leibniz_sign(tq, MeasureQ::uniform(2), 2) == 0);
  const std::vector<Rational> fq{2, 1};
  CHECK(exact::strong_leibniz_sign(fq, MeasureQ::uniform(2), 1) == -1);

  CHECK_THROWS_AS(strong_leibniz_defect<double>(std::vector<double>{1.0, 0.0}, mu, PExp(1.0)),
                  std::domain_error);
}

TEST_CASE("mean-product bound violated on the two frozen counterexamples") {
  // n = 5 uniform: lhs 12/25 vs rhs 2/5, defect 2/25
  const std::vector<double> f{1.0, 0.0, 0.0, 0.0, -1.0};
  const std::vector<double> x{1.0, 1.0, 1.0, 1.0, -1.0};
  const DefectReport r = mean_product_defect<double>(f, x, MeasureD::uniform(5), PExp(1.0));
  CHECK(r.lhs == Catch::Approx(12.0 / 25.0).margin(1e-15));
  CHECK(r.rhs == Catch::Approx(2.0 / 5.0).margin(1e-15));
  CHECK(r.defect == Catch::Approx(2.0 / 25.0).margin(1e-15));
  CHECK(r.verdict == Verdict::violated);

  const std::vector<Rational> fq{1, 0, 0, 0, -1};
  const std::vector<Rational> xq{1, 1, 1, 1, -1};
  CHECK(exact::mean_product_sign(fq, xq, MeasureQ::uniform(5), 1) == 1);

  // three atoms (1/8, 3/4, 1/8): lhs 3/8 vs rhs 1/4, defect 1/8
  const MeasureD mu3({0.125, 0.75, 0.125});
  const std::vector<double> f3{1.0, 0.0, -1.0};
  const std::vector<double> x3{1.0, 1.0, -1.0};
  const DefectReport r3 = mean_product_defect<double>(f3, x3, mu3, PExp(1.0));
  CHECK(r3.lhs == Catch::Approx(0.375).margin(1e-15));
  CHECK(r3.rhs == Catch::Approx(0.25).margin(1e-15));
  CHECK(r3.defect == Catch::Approx(0.125).margin(1e-15));

  const MeasureQ muq({Rational(1, 8), Rational(3, 4), Rational(1, 8)});
  const std::vector<Rational> f3q{1, 0, -1};
  const std::vector<Rational> x3q{1, 1, -1};
  CHECK(exact::mean_product_sign(f3q, x3q, muq, 1) == 1);
}

TEST_CASE("rough product bound") {
  const std::vector<double> f{1.0, -1.0};
  const MeasureD mu = MeasureD::uniform(2);
  CHECK_THROWS_AS(rough_leibniz_defect<double>(f, f, mu, PExp(1.0), 0.5),
                  std::invalid_argument);
  // opNorm = 1 reduces the constant to the plain product bound
  const DefectReport plain = leibniz_defect<double>(f, f, mu, PExp(2.0));
  const DefectReport rough = rough_leibniz_defect<double>(f, f, mu, PExp(2.0), 1.0);
  CHECK(rough.lhs == Catch::Approx(plain.lhs));
  CHECK(rough.rhs == Catch::Approx(plain.rhs));
}

TEST_CASE("inverse bounds on the frozen two-atom instance") {
  // f = (2,1), lambda_2, p = 1, opNorm = 1: first rhs = 2, second lhs = 3/8 vs 1/2
  const std::vector<double> f{2.0, 1.0};
  const auto pr = inverse_bound_defects<double>(f, MeasureD::uniform(2), PExp(1.0), 1.0);
  CHECK(pr.first.lhs == Catch::Approx(0.25).margin(1e-15));
  CHECK(pr.first.rhs == Catch::Approx(2.0).margin(1e-15));
  CHECK(pr.second.lhs == Catch::Approx(0.375).margin(1e-15));
  CHECK(pr.second.rhs == Catch::Approx(0.5).margin(1e-15));
  CHECK(pr.first.defect < 0.0);
  CHECK(pr.second.defect < 0.0);
}

TEST_CASE("square and comonotone bounds reject bad input") {
  const MeasureD mu = MeasureD::uniform(2);
  CHECK_THROWS_AS(square_defect(std::vector<double>{1.0, -0.5}, mu, PExp(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(comonotone_defect(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 1.0},
                                    mu, PExp(1.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(comonotone_defect(std::vector<double>{2.0, 1.0}, std::vector<double>{3.0, 0.0},
                                  mu, PExp(1.0)));
}

TEST_CASE("defect scaling covariance") {
  Rng rng(404);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const MeasureD mu = simplex_sample(rng, n);
    std::vector<double> f(n), g(n);
    for (double& v : f) v = rng.uniform(-1.0, 1.0);
    for (double& v : g) v = rng.uniform(-1.0, 1.0);
    const double a = rng.uniform(0.1, 2.0), b = rng.uniform(0.1, 2.0);
    std::vector<double> fa(n), gb(n);
    for (std::size_t i = 0; i < n; ++i) {
      fa[i] = a * f[i];
      gb[i] = b * g[i];
    }
    const PExp p(1.0 + rng.uniform01() * 3.0);
    const double d0 = leibniz_defect<double>(f, g, mu, p, kDefaultTol, Capture::off).defect;
    const double d1 = leibniz_defect<double>(fa, gb, mu, p, kDefaultTol, Capture::off).defect;
    CHECK(d1 == Catch::Approx(a * b * d0).margin(1e-10));
  }
}

TEST_CASE("exact backends reject unsupported exponents") {
  const std::vector<Rational> f{1, -1};
  const MeasureQ mu = MeasureQ::uniform(2);
  CHECK_THROWS_AS(exact::leibniz_sign(f, f, mu, 3), std::invalid_argument);
  CHECK_THROWS_AS(exact::strong_leibniz_sign(f, mu, 0), std::invalid_argument);
}
