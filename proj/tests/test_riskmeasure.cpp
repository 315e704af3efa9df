#include <doctest.h>

#include <cmath>
#include <vector>

#include "modelrisk/errors.hpp"
#include "modelrisk/riskmeasure.hpp"
#include "oracles.hpp"

using mrisk::Distribution;

namespace {

std::vector<Distribution> laws() {
  const auto n = Distribution::standard_normal();
  return {n,
          Distribution::student_t(3.0, true),
          Distribution::student_t(4.5, false),
          Distribution::two_point(-1.0, 1.0, 0.5),
          Distribution::mixture({n, Distribution::affine(n, -3.0, 2.0)}, {0.8, 0.2}),
          Distribution::stop_loss_maximal()};
}

}  // namespace

TEST_CASE("value_at_risk examples") {
  const auto n = Distribution::standard_normal();
  CHECK(std::abs(mrisk::value_at_risk(n, 0.01) - 2.326348) < 1e-5);
  // t3 1% quantile 4.540703 / sqrt(3) from the closed-form t3 cdf oracle.
  const double t_oracle = -oracle_ref::t3_quantile(0.01) / std::sqrt(3.0);
  CHECK(std::abs(t_oracle - 2.621574) < 1e-5);
  CHECK(std::abs(mrisk::value_at_risk(Distribution::student_t(3.0), 0.01) - t_oracle) < 1e-8);
  for (double b : {-1.0, 0.0, 3.0}) {
    const auto shifted = Distribution::affine(n, b, 1.0);
    CHECK(std::abs(mrisk::value_at_risk(shifted, 0.05) - (mrisk::value_at_risk(n, 0.05) - b)) <
          1e-10);
  }
  CHECK_THROWS_AS(mrisk::value_at_risk(n, 1e-7), mrisk::DomainError);
  CHECK_THROWS_AS(mrisk::value_at_risk(n, 1.0 - 1e-7), mrisk::DomainError);
}

TEST_CASE("expected_shortfall examples") {
  const auto n = Distribution::standard_normal();
  // phi(z_0.01)/0.01 from the oracle quantile: 2.665214
  const double oracle_es = oracle_ref::normal_pdf(oracle_ref::normal_quantile(0.01)) / 0.01;
  CHECK(std::abs(oracle_es - 2.665214) < 1e-6);
  CHECK(std::abs(mrisk::expected_shortfall(n, 0.01) - 2.665214) < 1e-5);
  CHECK(std::abs(mrisk::expected_shortfall_quadrature(n, 0.01) - oracle_es) < 1e-8);

  const auto t3 = Distribution::student_t(3.0);
  // Oracle: Simpson on -q(u) with the bisected closed-form t3 quantile, u = 0.01 s^3
  // (the t3 quantile grows like u^(-1/3), so the integrand is smooth in s).
  const double t_quad =
      oracle_ref::simpson(
          [](double s) {
            if (s <= 0.0) return 0.0;
            return -3.0 * s * s * oracle_ref::t3_quantile(0.01 * s * s * s) / std::sqrt(3.0);
          },
          0.0, 1.0, 1e-10);
  CHECK(std::abs(t_quad - 4.0434) < 1e-3);
  CHECK(std::abs(mrisk::expected_shortfall(t3, 0.01) - 4.0434) < 1e-3);
  CHECK(std::abs(mrisk::expected_shortfall(t3, 0.01) - t_quad) < 1e-7);
  CHECK(std::abs(mrisk::expected_shortfall_quadrature(t3, 0.01) -
                 mrisk::expected_shortfall(t3, 0.01)) < 1e-8);

  CHECK(mrisk::expected_shortfall(Distribution::two_point(-1.0, 1.0, 0.5), 0.25) == 1.0);
  CHECK(mrisk::expected_shortfall(Distribution::two_point(-1.0, 1.0, 0.5), 0.75) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("quadrature matches the Gaussian closed form") {
  const auto n = Distribution::standard_normal();
  for (double a : {0.001, 0.01, 0.05, 0.1}) {
    const double closed = mrisk::expected_shortfall(n, a);
    CHECK(std::abs(mrisk::expected_shortfall_quadrature(n, a) - closed) < 1e-8);
  }
}

TEST_CASE("ES dominates VaR") {
  for (const auto& d : laws()) {
    for (double a : {0.001, 0.01, 0.05, 0.2, 0.5, 0.9}) {
      CHECK(mrisk::expected_shortfall(d, a) >= mrisk::value_at_risk(d, a) - 1e-12);
    }
  }
}

TEST_CASE("positive homogeneity and translation invariance") {
  for (const auto& d : laws()) {
    for (double a : {0.01, 0.1}) {
      for (auto kind : {mrisk::MeasureKind::VaR, mrisk::MeasureKind::ES}) {
        const mrisk::RiskMeasureSpec rho(kind, a);
        const double base = rho(d);
        for (double s : {0.5, 2.0, 10.0}) {
          const double scaled = rho(Distribution::affine(d, 0.0, s));
          CHECK(std::abs(scaled - s * base) <= 1e-9 * std::max(1.0, std::abs(s * base)));
        }
        for (double b : {-1.0, 0.0, 3.0}) {
          CHECK(std::abs(rho(Distribution::affine(d, b, 1.0)) - (base - b)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("atomic ES is exact") {
  const std::vector<mrisk::Atom> atoms{{-4.0, 0.1}, {0.0, 0.3}, {2.0, 0.6}};
  CHECK(mrisk::expected_shortfall_atomic(atoms, 0.05) == 4.0);
  CHECK(mrisk::expected_shortfall_atomic(atoms, 0.2) == doctest::Approx(2.0));
  CHECK(mrisk::expected_shortfall_atomic(atoms, 0.5) == doctest::Approx((0.4 - 0.2) / 0.5));
  CHECK_THROWS_AS(mrisk::RiskMeasureSpec(mrisk::MeasureKind::ES, 0.0), mrisk::DomainError);
}
