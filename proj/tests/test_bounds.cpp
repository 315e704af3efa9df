#include <doctest.h>

#include <cmath>
#include <vector>

#include "modelrisk/bounds.hpp"
#include "modelrisk/envelope.hpp"
#include "modelrisk/errors.hpp"
#include "oracles.hpp"

using mrisk::BoundKind;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
  return g;
}

/// (1/alpha) * integral_0^alpha sqrt((1-u)/u) du with u = alpha s^2.
double cantelli_es_oracle(double alpha) {
  return oracle_ref::simpson(
             [alpha](double s) { return 2.0 * std::sqrt(alpha) * std::sqrt(1.0 - alpha * s * s); },
             0.0, 1.0, 1e-14) /
         alpha;
}

}  // namespace

TEST_CASE("bound examples") {
  CHECK(mrisk::bound(BoundKind::ChebyshevVaR, 1.0, 0.01) == doctest::Approx(10.0));
  CHECK(std::abs(mrisk::bound(BoundKind::CantelliVaR, 1.0, 0.01) - 9.949874) < 1e-6);
  // Oracle: 19.9666165 (mpmath gives 19.96661648722).
  CHECK(std::abs(cantelli_es_oracle(0.01) - 19.9666165) < 1e-6);
  CHECK(std::abs(mrisk::bound(BoundKind::CantelliES, 1.0, 0.01) - cantelli_es_oracle(0.01)) < 1e-9);
  CHECK(mrisk::bound(BoundKind::ChebyshevES, 2.0, 0.04) == doctest::Approx(20.0));
  CHECK_THROWS_AS(mrisk::bound(BoundKind::SharpES, 0.0, 0.01), mrisk::DomainError);
  CHECK_THROWS_AS(mrisk::bound(BoundKind::SharpES, 1.0, 1.0), mrisk::DomainError);
}

TEST_CASE("corrected Cantelli ES matches its integral across alpha") {
  for (double a : grid(0.001, 0.499, 50)) {
    CHECK(std::abs(mrisk::bound(BoundKind::CantelliES, 1.0, a) - cantelli_es_oracle(a)) <
          1e-9 * cantelli_es_oracle(a));
  }
}

TEST_CASE("printed Cantelli ES is kept for diagnostics") {
  CHECK(std::abs(mrisk::cantelli_es_printed(1.0, 0.01) - 157.01) < 0.01);
  // It exceeds the Chebyshev ES bound it claims to improve on.
  CHECK(mrisk::cantelli_es_printed(1.0, 0.01) > mrisk::bound(BoundKind::ChebyshevES, 1.0, 0.01));
}

TEST_CASE("bound ordering") {
  for (double a : grid(0.001, 0.499, 200)) {
    for (double s : {0.5, 1.0, 3.0}) {
      const double cv = mrisk::bound(BoundKind::ChebyshevVaR, s, a);
      const double kv = mrisk::bound(BoundKind::CantelliVaR, s, a);
      const double ce = mrisk::bound(BoundKind::ChebyshevES, s, a);
      const double ke = mrisk::bound(BoundKind::CantelliES, s, a);
      const double se = mrisk::bound(BoundKind::SharpES, s, a);
      CHECK(cv >= kv);
      CHECK(ce >= ke);
      CHECK(ke < ce);
      CHECK(ke >= se);
      CHECK(se == kv);
      CHECK(mrisk::bound(BoundKind::SharpVaR, s, a) == kv);
    }
  }
}

TEST_CASE("sharp VaR bound equals the extremal quantile") {
  const auto e = mrisk::chebyshev_markov_envelope();
  auto bisected = e;
  bisected.Fmax_inverse.reset();
  for (double a : grid(0.001, 0.499, 100)) {
    CHECK(std::abs(mrisk::bound(BoundKind::SharpVaR, 1.0, a) +
                   mrisk::extremal_quantiles(bisected, a).inf_q) < 1e-9);
  }
}

TEST_CASE("multiplier ratio examples") {
  const double z = oracle_ref::normal_quantile(0.01);
  const double phi = oracle_ref::normal_pdf(z);
  // 1/(2.326348 * 0.1) = 4.2986; 0.2/phi = 7.504; sqrt(99)*0.01/phi = 3.733
  CHECK(std::abs(1.0 / (-z * 0.1) - 4.2986) < 1e-3);
  CHECK(std::abs(mrisk::multiplier_ratio(BoundKind::ChebyshevVaR, 0.01) - 1.0 / (-z * 0.1)) < 1e-9);
  CHECK(std::abs(mrisk::multiplier_ratio(BoundKind::ChebyshevVaR, 0.01) - 4.2986) < 1e-3);
  CHECK(std::abs(mrisk::multiplier_ratio(BoundKind::ChebyshevES, 0.01) - 0.2 / phi) < 1e-9);
  CHECK(std::abs(mrisk::multiplier_ratio(BoundKind::ChebyshevES, 0.01) - 7.504) < 1e-2);
  CHECK(std::abs(mrisk::multiplier_ratio(BoundKind::SharpES, 0.01) - 3.733) < 1e-2);
  CHECK_THROWS_AS(mrisk::multiplier_ratio(BoundKind::SharpES, 0.5), mrisk::DomainError);
  CHECK_THROWS_AS(mrisk::multiplier_ratio(BoundKind::SharpES, 0.7), mrisk::DomainError);
}

TEST_CASE("ratio curves") {
  const std::vector<double> one{0.01};
  const auto single = mrisk::ratio_curve(BoundKind::ChebyshevVaR, one);
  REQUIRE(single.size() == 1);
  CHECK(single[0].ratio == mrisk::multiplier_ratio(BoundKind::ChebyshevVaR, 0.01));

  const auto band = grid(0.01, 0.05, 81);
  for (const auto& row : mrisk::ratio_curve(BoundKind::ChebyshevVaR, band)) {
    CHECK(row.ratio >= 2.7);
    CHECK(row.ratio <= 4.3);
  }
  for (const auto& row : mrisk::ratio_curve(BoundKind::ChebyshevES, band)) {
    CHECK(row.ratio >= 4.3);
    CHECK(row.ratio <= 7.6);
  }
  const std::vector<double> unsorted{0.02, 0.01};
  CHECK_THROWS_AS(mrisk::ratio_curve(BoundKind::SharpVaR, unsorted), mrisk::DomainError);
}

TEST_CASE("bound kind names round trip") {
  for (auto k : {BoundKind::ChebyshevVaR, BoundKind::ChebyshevES, BoundKind::CantelliVaR,
                 BoundKind::CantelliES, BoundKind::SharpVaR, BoundKind::SharpES}) {
    CHECK(mrisk::parse_bound_kind(mrisk::to_string(k)) == k);
  }
  CHECK_THROWS_AS(mrisk::parse_bound_kind("markov"), mrisk::DomainError);
}
