// Unit tests for bayesrec/numerics.hpp:
//  - log_gamma against factorial / half-integer identities and std::lgamma
//  - reg_inc_beta against boost::math::ibeta, boundary values and the
//    reflection identity
//  - Student-t log density, CDF, normal limit, derivative consistency
//  - adaptive quadrature exactness, tail mass and convergence failure

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "bayesrec/numerics.hpp"
#include "oracles.hpp"

using namespace bayesrec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("log_gamma: known values", "[numerics][log_gamma]") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
  CHECK_THAT(log_gamma(5.0), WithinRel(std::log(24.0), 1e-14));
  CHECK_THAT(log_gamma(0.5), WithinRel(0.5 * std::log(std::numbers::pi), 1e-14));
  CHECK_THAT(log_gamma(1.5), WithinRel(std::log(0.5 * std::sqrt(std::numbers::pi)), 1e-13));
}

TEST_CASE("log_gamma: matches std::lgamma and the recurrence over [0.5, 1e6]", "[numerics][log_gamma]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_x(std::log(0.5), std::log(1e6));
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(log_x(rng));
    const double expected = std::lgamma(x);
    // Relative error is meaningless at the zeros of ln Γ (x = 1, 2).
    const double tol = 1e-12 * std::max(1.0, std::abs(expected));
    REQUIRE_THAT(log_gamma(x), WithinAbs(expected, tol));
    REQUIRE_THAT(log_gamma(x + 1.0) - log_gamma(x), WithinAbs(std::log(x), 1e-12 * std::max(1.0, std::abs(expected))));
  }
}

TEST_CASE("log_gamma: domain errors", "[numerics][log_gamma]") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("reg_inc_beta: boundaries and symmetry point", "[numerics][beta]") {
  for (double a : {0.5, 1.0, 3.0, 250.0}) {
    for (double b : {0.5, 2.0, 40.0}) {
      CHECK(reg_inc_beta(0.0, a, b) == 0.0);
      CHECK(reg_inc_beta(1.0, a, b) == 1.0);
    }
    CHECK_THAT(reg_inc_beta(0.5, a, a), WithinAbs(0.5, 1e-12));
  }
  CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(1.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(0.3, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(0.3, 1.0, -2.0), std::domain_error);
}

TEST_CASE("reg_inc_beta: agrees with boost::math::ibeta, reflection, monotone", "[numerics][beta]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_shape(std::log(0.5), std::log(2e4));
  for (int i = 0; i < 3000; ++i) {
    const double a = std::exp(log_shape(rng));
    const double b = std::exp(log_shape(rng));
    const double x = unit(rng);
    const double v = reg_inc_beta(x, a, b);
    REQUIRE_THAT(v, WithinAbs(boost::math::ibeta(a, b, x), 1e-12));
    REQUIRE_THAT(v + reg_inc_beta(1.0 - x, b, a), WithinAbs(1.0, 1e-12));
    const double x2 = std::min(1.0, x + 0.01 * unit(rng));
    REQUIRE(reg_inc_beta(x2, a, b) >= v - 1e-15);
  }
}

TEST_CASE("log_reg_inc_beta: consistent with reg_inc_beta, finite in deep tails", "[numerics][beta]") {
  for (double x : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    for (auto [a, b] : {std::pair{2.0, 3.0}, {50.0, 9.0}, {0.5, 0.5}}) {
      CHECK_THAT(std::exp(log_reg_inc_beta(x, a, b)), WithinRel(reg_inc_beta(x, a, b), 1e-12));
    }
  }
  // I_0.05(9501, 501) is far below the smallest double.
  const double deep = log_reg_inc_beta(0.05, 9501.0, 501.0);
  CHECK(std::isfinite(deep));
  CHECK(deep < -10000.0);
  CHECK(log_reg_inc_beta(0.0, 2.0, 2.0) == -std::numeric_limits<double>::infinity());
  CHECK(log_reg_inc_beta(1.0, 2.0, 2.0) == 0.0);
}

TEST_CASE("student_t_logpdf: Cauchy values", "[numerics][student_t]") {
  CHECK_THAT(student_t_logpdf(0.0, StudentT(1.0, 0.0, 1.0)), WithinAbs(-std::log(std::numbers::pi), 1e-14));
  const double s = std::sqrt(200.0);
  const double expected = std::log(s / (std::numbers::pi * (200.0 + 100.0)));
  CHECK_THAT(student_t_logpdf(15.0, StudentT(1.0, 5.0, s)), WithinAbs(expected, 1e-13));
  CHECK_THAT(expected, WithinAbs(-4.199, 1e-3));
}

TEST_CASE("student_t_logpdf: normal limit at large df", "[numerics][student_t]") {
  const StudentT t(1e6, 3.0, 2.0);
  for (double x : {3.0 - 4.0, 3.0 + 4.0, 3.0}) {
    CHECK_THAT(student_t_logpdf(x, t), WithinAbs(oracle::normal_logpdf(x, 3.0, 4.0), 1e-4));
  }
}

TEST_CASE("student_t_logpdf: symmetric about loc", "[numerics][student_t]") {
  const StudentT t(2.5, -1.25, 3.0);
  for (double d : {0.1, 1.0, 7.0, 123.0}) {
    CHECK(student_t_logpdf(-1.25 + d, t) == student_t_logpdf(-1.25 - d, t));
  }
}

TEST_CASE("StudentT: invalid parameters", "[numerics][student_t]") {
  CHECK_THROWS_AS(StudentT(0.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(StudentT(1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(StudentT(1.0, 0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(StudentT(1.0, std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("student_t_cdf: Cauchy quartiles and center", "[numerics][student_t]") {
  const StudentT c(1.0, 2.0, 3.0);
  CHECK(student_t_cdf(2.0, c) == 0.5);
  CHECK_THAT(student_t_cdf(5.0, c), WithinAbs(0.75, 1e-14));
  CHECK_THAT(student_t_cdf(-1.0, c), WithinAbs(0.25, 1e-14));
  // arctan closed form elsewhere
  for (double x : {-100.0, -3.0, 0.5, 40.0}) {
    CHECK_THAT(student_t_cdf(x, c), WithinAbs(0.5 + std::atan((x - 2.0) / 3.0) / std::numbers::pi, 1e-13));
  }
}

TEST_CASE("student_t_cdf: monotone, and its derivative is the pdf", "[numerics][student_t]") {
  for (const StudentT& t : {StudentT(1.0, 0.0, 1.0), StudentT(3.0, 5.0, 2.0), StudentT(30.0, -2.0, 0.5),
                            StudentT(10001.0, 8.0, 5.0)}) {
    double prev = 0.0;
    for (int i = -500; i <= 500; ++i) {
      const double x = t.loc() + 0.02 * i * t.scale() * 5.0;
      const double f = student_t_cdf(x, t);
      REQUIRE(f >= prev);
      prev = f;
    }
    const double h = 1e-4 * t.scale();
    for (int i = -50; i <= 50; ++i) {
      const double x = t.loc() + 0.1 * i * t.scale();
      const double fd = (student_t_cdf(x + h, t) - student_t_cdf(x - h, t)) / (2.0 * h);
      REQUIRE_THAT(fd, WithinRel(student_t_pdf(x, t), 1e-6));
    }
  }
}

TEST_CASE("integrate: polynomials are exact", "[numerics][integrate]") {
  CHECK_THAT(integrate([](double x) { return x; }, 0.0, 1.0, 1e-12), WithinAbs(0.5, 1e-15));
  CHECK_THAT(integrate([](double q) { return 1.0 - q * q; }, 0.0, 1.0, 1e-12), WithinAbs(2.0 / 3.0, 1e-15));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    double c[6];
    for (double& ci : c) ci = coef(rng);
    const double a = coef(rng);
    const double b = a + std::abs(coef(rng));
    const auto poly = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * (c[4] + x * c[5])))); };
    const auto anti = [&](double x) {
      return x * (c[0] + x * (c[1] / 2 + x * (c[2] / 3 + x * (c[3] / 4 + x * (c[4] / 5 + x * c[5] / 6)))));
    };
    const double exact = anti(b) - anti(a);
    REQUIRE_THAT(integrate(poly, a, b, 1e-9), WithinAbs(exact, 1e-9 + 1e-13 * std::abs(exact)));
  }
}

TEST_CASE("integrate: Student-t mass over ±1000 scales", "[numerics][integrate]") {
  const StudentT cauchy(1.0, 5.0, std::sqrt(200.0));
  const double r = 1000.0 * cauchy.scale();
  const double mass =
      integrate([&](double x) { return student_t_pdf(x, cauchy); }, cauchy.loc() - r, cauchy.loc() + r, 1e-10);
  CHECK_THAT(mass, WithinAbs(1.0 - 2.0 / (1000.0 * std::numbers::pi), 1e-9));
  CHECK(mass >= 0.9993);
  CHECK(std::abs(mass - 1.0) < 7e-4);

  for (double df : {3.0, 4.5, 20.0}) {
    const StudentT t(df, -1.0, 2.0);
    const double rr = 1000.0 * t.scale();
    const double m = integrate([&](double x) { return student_t_pdf(x, t); }, t.loc() - rr, t.loc() + rr, 1e-11);
    CHECK_THAT(m, WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("integrate: deterministic, degenerate interval, errors", "[numerics][integrate]") {
  const auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  const double a = integrate(f, -4.0, 4.0, 1e-12);
  const double b = integrate(f, -4.0, 4.0, 1e-12);
  CHECK(a == b);
  CHECK(integrate(f, 1.0, 1.0, 1e-12) == 0.0);
  CHECK_THROWS_AS(integrate(f, 2.0, 1.0, 1e-12), std::domain_error);
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0, 1e-6), std::domain_error);
}

TEST_CASE("integrate: budget exhaustion carries the best estimate", "[numerics][integrate]") {
  // 1/sqrt(x) near 0 cannot meet 1e-14 with only a handful of panels.
  const auto f = [](double x) { return 1.0 / std::sqrt(x + 1e-12); };
  try {
    (void)integrate(f, 0.0, 1.0, 1e-14, 9);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK_THAT(e.best_estimate(), WithinAbs(2.0, 0.2));
    CHECK(e.error_estimate() > 0.0);
  }
}
