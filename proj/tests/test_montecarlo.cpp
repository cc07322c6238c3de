#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "techfolio/curves.hpp"
#include "techfolio/montecarlo.hpp"
#include "techfolio/objective.hpp"
#include "techfolio/technology.hpp"

using namespace techfolio;

namespace {
const TechnologyParams kA{"A", 2.0, 1.0, 0.5, 1.0};
const TechnologyParams kB{"B", 2.0, 1.0, 0.65, 1.1};
const TechnologyParams kIncumbent{"incumbent", 1.0, 100.0, 0.15, 0.1};
const TechnologyParams kChallenger{"challenger", 2.0, 1.0, 0.2, 0.1};

// Reference sampler on a completely separate RNG path (mt19937_64 +
// std::normal_distribution) so agreement with the library cannot come from a
// shared generator or shared formulas.
struct RefStats {
  double mean, se_mean, var, se_var;
};

RefStats reference_one_period_cost(std::uint64_t seed, std::size_t n, double qA) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double K = 2.0;
  const double qB = K - qA;
  const double cbarA = kA.c0 * std::pow(kA.z0 / (kA.z0 + qA), kA.alpha);
  const double cbarB = kB.c0 * std::pow(kB.z0 / (kB.z0 + qB), kB.alpha);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = qA * cbarA * std::exp(kA.sigma * normal(rng)) +
                     qB * cbarB * std::exp(kB.sigma * normal(rng));
    vals[i] = v;
    s1 += v;
  }
  const double mean = s1 / static_cast<double>(n);
  for (const double v : vals) {
    const double d = v - mean;
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const double m2 = s2 / static_cast<double>(n);
  const double m4 = s4 / static_cast<double>(n);
  RefStats out;
  out.mean = mean;
  out.var = s2 / static_cast<double>(n - 1);
  out.se_mean = std::sqrt(out.var / static_cast<double>(n));
  out.se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(n));
  return out;
}
}  // namespace

TEST_CASE("estimator agrees with the analytic objective and an independent sampler") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const std::size_t n = 200000;
  const auto est = montecarlo::estimate_objective(kA, kB, mkt, {1.0}, n, 99001);
  const auto exact = objective::one_period(kA, kB, mkt, 1.0);

  CHECK(std::abs(est.expectation.mean - exact.expectation) <
        4.0 * est.expectation.std_error);
  CHECK(std::abs(est.variance.mean - exact.variance) < 4.0 * est.variance.std_error);

  const auto ref = reference_one_period_cost(5150, n, 1.0);
  CHECK(std::abs(ref.mean - exact.expectation) < 4.0 * ref.se_mean);
  CHECK(std::abs(ref.var - exact.variance) < 4.0 * ref.se_var);

  // the two independent estimators agree within their combined uncertainty
  const double se_mean =
      std::hypot(est.expectation.std_error, ref.se_mean);
  CHECK(std::abs(est.expectation.mean - ref.mean) < 4.0 * se_mean);
  const double se_var = std::hypot(est.variance.std_error, ref.se_var);
  CHECK(std::abs(est.variance.mean - ref.var) < 4.0 * se_var);

  CHECK(est.expectation.n_samples == n);
  CHECK(est.expectation.seed == 99001);
  CHECK(est.expectation.std_error > 0.0);
}

TEST_CASE("estimates are deterministic, thread-invariant and seed-sensitive") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const auto a = montecarlo::estimate_objective(kA, kB, mkt, {0.7}, 60000, 7, 1);
  const auto b = montecarlo::estimate_objective(kA, kB, mkt, {0.7}, 60000, 7, 1);
  CHECK(a.expectation.mean == b.expectation.mean);
  CHECK(a.variance.mean == b.variance.mean);
  CHECK(a.expectation.std_error == b.expectation.std_error);

  const auto c = montecarlo::estimate_objective(kA, kB, mkt, {0.7}, 60000, 7, 3);
  CHECK(a.expectation.mean == c.expectation.mean);      // bit-identical threading
  CHECK(a.variance.mean == c.variance.mean);
  CHECK(a.variance.std_error == c.variance.std_error);

  const auto d = montecarlo::estimate_objective(kA, kB, mkt, {0.7}, 60000, 8, 1);
  CHECK(a.expectation.mean != d.expectation.mean);
}

TEST_CASE("noise-free portfolios are estimated exactly") {
  const TechnologyParams detA{"dA", 2.0, 1.0, 0.5, 0.0};
  const TechnologyParams detB{"dB", 2.0, 1.0, 0.65, 0.0};
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const auto est = montecarlo::estimate_objective(detA, detB, mkt, {0.7}, 1000, 3);
  const auto exact = objective::one_period(detA, detB, mkt, 0.7);
  CHECK(est.expectation.mean == exact.expectation);  // exact, not approximate
  CHECK(est.expectation.std_error == 0.0);
  CHECK(est.variance.mean == 0.0);
  CHECK(est.variance.std_error == 0.0);
}

TEST_CASE("standard error scales like the square root of the sample count") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const auto big = montecarlo::estimate_objective(kA, kB, mkt, {1.0}, 120000, 11);
  const auto small = montecarlo::estimate_objective(kA, kB, mkt, {1.0}, 60000, 12);
  const double ratio = small.expectation.std_error / big.expectation.std_error;
  CHECK(ratio > std::sqrt(2.0) / 1.5);
  CHECK(ratio < std::sqrt(2.0) * 1.5);
}

TEST_CASE("estimator input validation") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  CHECK_THROWS_AS(montecarlo::estimate_objective(kA, kB, mkt, {1.0}, 1, 7),
                  std::invalid_argument);
  CHECK_THROWS_AS(montecarlo::estimate_objective(kA, kB, mkt, {1.0, 1.0}, 100, 7),
                  std::invalid_argument);
  CHECK_THROWS_AS(montecarlo::estimate_objective(kA, kB, mkt, {2.5}, 100, 7),
                  std::domain_error);
  const MarketSpec correlated = MarketSpec(30.0, 0.5, 0.5, 0.1, 2);
  CHECK_THROWS_AS(
      montecarlo::estimate_objective(kIncumbent, kChallenger, correlated,
                                     {10.0, 10.0}, 100, 7),
      std::invalid_argument);
}

TEST_CASE("one-period moment audit covers all analytic inputs") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const auto rows = montecarlo::check_moments(kA, kB, mkt, {1.0}, 400000, 20260816);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].quantity == "unit_cost_mean_A");
  CHECK(rows[1].quantity == "unit_cost_var_A");
  CHECK(rows[2].quantity == "unit_cost_mean_B");
  CHECK(rows[3].quantity == "unit_cost_var_B");
  CHECK(rows[4].quantity == "portfolio_mean");
  CHECK(rows[5].quantity == "portfolio_var");

  CHECK(rows[0].analytic == curves::unit_cost_expectation(kA, 1.0));
  CHECK(rows[3].analytic == curves::unit_cost_variance(kB, 1.0));
  const auto exact = objective::one_period(kA, kB, mkt, 1.0);
  CHECK(rows[4].analytic == exact.expectation);
  CHECK(rows[5].analytic == exact.variance);

  for (const auto& row : rows) {
    CAPTURE(row.quantity);
    CHECK(row.within_3se);
    CHECK(row.std_error > 0.0);
    CHECK(std::abs(row.z) <= 3.0);
  }
}

TEST_CASE("correlated shocks add a cross-technology covariance row") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25, 0.5);
  const auto rows = montecarlo::check_moments(kA, kB, mkt, {1.0}, 400000, 20260816);
  REQUIRE(rows.size() == 7);
  CHECK(rows[4].quantity == "unit_cost_cov_AB");
  const double expected_cov = curves::unit_cost_expectation(kA, 1.0) *
                              curves::unit_cost_expectation(kB, 1.0) *
                              std::expm1(0.5 * kA.sigma * kB.sigma);
  CHECK(rows[4].analytic == doctest::Approx(expected_cov).epsilon(1e-13));
  for (const auto& row : rows) {
    CAPTURE(row.quantity);
    CHECK(row.within_3se);
  }
}

TEST_CASE("two-period moment audit includes the cross-period covariance") {
  const MarketSpec mkt = MarketSpec::two_period(30.0, 0.5, 0.1);
  const auto rows = montecarlo::check_moments(kIncumbent, kChallenger, mkt,
                                              {15.0, 15.0}, 400000, 20260816);
  REQUIRE(rows.size() == 12);
  CHECK(rows[4].quantity == "unit_cost_cov_A12");
  CHECK(rows[9].quantity == "unit_cost_cov_B12");
  CHECK(rows[10].quantity == "portfolio_mean");
  CHECK(rows[11].quantity == "portfolio_var");

  const auto mA = curves::two_period_cost_moments(kIncumbent, 15.0, 15.0);
  const auto mB = curves::two_period_cost_moments(kChallenger, 15.0, 15.0);
  CHECK(rows[4].analytic == mA.cov12);
  CHECK(rows[9].analytic == mB.cov12);
  const auto exact = objective::two_period(kIncumbent, kChallenger, mkt, 15.0, 15.0);
  CHECK(rows[10].analytic == exact.expectation);
  CHECK(rows[11].analytic == exact.variance);

  for (const auto& row : rows) {
    CAPTURE(row.quantity);
    CHECK(row.within_3se);
  }
}

TEST_CASE("cross-period covariance agrees with an independent sampler") {
  // reference path: cumulative shocks via mt19937_64
  const std::size_t n = 200000;
  std::mt19937_64 rng(424242);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& t = kChallenger;
  const double cbar1 = t.c0 * std::pow(t.z0 / (t.z0 + 15.0), t.alpha);
  const double cbar2 = t.c0 * std::pow(t.z0 / (t.z0 + 30.0), t.alpha);
  std::vector<double> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e1 = t.sigma * normal(rng);
    const double e2 = t.sigma * normal(rng);
    c1[i] = cbar1 * std::exp(e1);
    c2[i] = cbar2 * std::exp(e1 + e2);  // period-1 shock persists
  }
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m1 += c1[i];
    m2 += c2[i];
  }
  m1 /= static_cast<double>(n);
  m2 /= static_cast<double>(n);
  double cov = 0.0, mxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (c1[i] - m1) * (c2[i] - m2);
    cov += p;
    mxx += p * p;
  }
  const double m11 = cov / static_cast<double>(n);
  cov /= static_cast<double>(n - 1);
  const double se =
      std::sqrt(std::max(0.0, mxx / static_cast<double>(n) - m11 * m11) /
                static_cast<double>(n));
  const auto analytic = curves::two_period_cost_moments(t, 15.0, 15.0);
  CHECK(std::abs(cov - analytic.cov12) < 4.0 * se);
}

TEST_CASE("coverage tallies behave statistically") {
  const MarketSpec mkt = MarketSpec::one_period(2.0, 0.25);
  const auto rows = montecarlo::coverage(kA, kB, mkt, {1.0}, 20000, 10, 81000);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CAPTURE(row.quantity);
    CHECK(row.trials == 10);
    CHECK(row.within_3se >= 8);  // 3-sigma misses are ~0.3% per trial
    CHECK(row.max_abs_z < 6.0);
    CHECK(row.max_abs_z > 0.0);
  }
}
