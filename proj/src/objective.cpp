#include "techfolio/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "techfolio/curves.hpp"

namespace techfolio::objective {

namespace {

// Compensated summation; the two-period variance mixes terms spanning many
// orders of magnitude when the sigmas differ.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

void check_share(double q, double K, const char* name) {
  if (!std::isfinite(q) || q < 0.0 || q > K)
    throw std::domain_error(std::string(name) + " must lie in [0, K]");
}

ObjectiveValue assemble(double expectation, double variance, double lambda,
                        bool series_valid = true) {
  ObjectiveValue v;
  v.expectation = expectation;
  v.variance = variance;
  v.total = expectation + lambda * variance;
  v.series_valid = series_valid;
  return v;
}

}  // namespace

ObjectiveValue one_period(const TechnologyParams& techA, const TechnologyParams& techB,
                          const MarketSpec& market, double qA) {
  if (market.periods != 1)
    throw std::invalid_argument("one_period requires market.periods == 1");
  const double K = market.demand_K;
  check_share(qA, K, "qA");
  const double qB = K - qA;

  const double eA = curves::unit_cost_expectation(techA, qA);
  const double eB = curves::unit_cost_expectation(techB, qB);
  const double vA = curves::unit_cost_variance(techA, qA);
  const double vB = curves::unit_cost_variance(techB, qB);

  KahanSum expectation;
  expectation.add(eA * qA);
  expectation.add(eB * qB);

  KahanSum variance;
  variance.add(vA * qA * qA);
  variance.add(vB * qB * qB);
  if (market.rho != 0.0) {
    // Cov(cA, cB) = E[cA] E[cB] (e^(rho sigmaA sigmaB) - 1) for jointly
    // lognormal costs with log-correlation rho.
    variance.add(2.0 * qA * qB * eA * eB *
                 std::expm1(market.rho * techA.sigma * techB.sigma));
  }
  return assemble(expectation.value(), variance.value(), market.lambda);
}

ObjectiveValue two_period(const TechnologyParams& techA, const TechnologyParams& techB,
                          const MarketSpec& market, double q1A, double q2A) {
  if (market.periods != 2)
    throw std::invalid_argument("two_period requires market.periods == 2");
  if (market.rho != 0.0)
    throw std::invalid_argument(
        "two_period does not support correlated shocks (rho != 0)");
  const double K = market.demand_K;
  check_share(q1A, K, "q1A");
  check_share(q2A, K, "q2A");

  const double d = std::exp(-market.discount_r);
  KahanSum expectation;
  KahanSum variance;
  const TechnologyParams* techs[2] = {&techA, &techB};
  const double q1s[2] = {q1A, K - q1A};
  const double q2s[2] = {q2A, K - q2A};
  for (int i = 0; i < 2; ++i) {
    const auto m = curves::two_period_cost_moments(*techs[i], q1s[i], q2s[i]);
    expectation.add(m.e1 * q1s[i]);
    expectation.add(d * m.e2 * q2s[i]);
    variance.add(m.var1 * q1s[i] * q1s[i]);
    variance.add(d * d * m.var2 * q2s[i] * q2s[i]);
    variance.add(2.0 * d * m.cov12 * q1s[i] * q2s[i]);
  }
  return assemble(expectation.value(), variance.value(), market.lambda);
}

namespace {

// Shared skeleton for the series approximations. Order 0 drops learning
// entirely; order 1 keeps the leading corrections. Both orders carry the
// correlation penalty built from their own expectation factors, so at
// alpha = 0 each reduces exactly to the full objective for every rho.
ObjectiveValue series_objective(const TechnologyParams& techA,
                                const TechnologyParams& techB,
                                const MarketSpec& market, double qA, int order) {
  if (market.periods != 1)
    throw std::invalid_argument("series approximations are one-period only");
  const double K = market.demand_K;
  check_share(qA, K, "qA");
  const double qB = K - qA;

  const TechnologyParams* techs[2] = {&techA, &techB};
  const double qs[2] = {qA, qB};
  double e_factor[2];  // per-unit expected cost approximation
  bool valid = true;

  KahanSum expectation;
  KahanSum variance;
  for (int i = 0; i < 2; ++i) {
    const auto& t = *techs[i];
    const double s2 = t.sigma * t.sigma;
    const double x = qs[i] / t.z0;
    if (qs[i] >= t.z0) valid = false;
    const double e_corr = order >= 1 ? 1.0 - t.alpha * x : 1.0;
    const double v_corr = order >= 1 ? 1.0 - 2.0 * t.alpha * x : 1.0;
    e_factor[i] = t.c0 * std::exp(0.5 * s2) * e_corr;
    expectation.add(e_factor[i] * qs[i]);
    variance.add(t.c0 * t.c0 * std::exp(s2) * std::expm1(s2) * v_corr * qs[i] * qs[i]);
  }
  if (market.rho != 0.0) {
    variance.add(2.0 * qA * qB * e_factor[0] * e_factor[1] *
                 std::expm1(market.rho * techA.sigma * techB.sigma));
  }
  return assemble(expectation.value(), variance.value(), market.lambda, valid);
}

}  // namespace

ObjectiveValue markowitz_zeroth_order(const TechnologyParams& techA,
                                      const TechnologyParams& techB,
                                      const MarketSpec& market, double qA) {
  return series_objective(techA, techB, market, qA, 0);
}

ObjectiveValue series_first_order(const TechnologyParams& techA,
                                  const TechnologyParams& techB,
                                  const MarketSpec& market, double qA) {
  return series_objective(techA, techB, market, qA, 1);
}

ObjectiveValue safe_technology(double c0_safe, const TechnologyParams& techB,
                               const MarketSpec& market, double qB) {
  if (!(c0_safe > 0.0) || !std::isfinite(c0_safe))
    throw std::domain_error("c0_safe must be finite and > 0");
  const double K = market.demand_K;
  check_share(qB, K, "qB");
  const double s2 = techB.sigma * techB.sigma;
  const double eB = techB.c0 * std::exp(0.5 * s2);
  const double vB = techB.c0 * techB.c0 * std::exp(s2) * std::expm1(s2);
  const double expectation = c0_safe * (K - qB) + eB * qB;
  const double variance = vB * qB * qB;
  return assemble(expectation, variance, market.lambda, qB < techB.z0);
}

double safe_technology_optimal_qB(double c0_safe, const TechnologyParams& techB,
                                  const MarketSpec& market) {
  if (!(c0_safe > 0.0) || !std::isfinite(c0_safe))
    throw std::domain_error("c0_safe must be finite and > 0");
  if (!(market.lambda > 0.0))
    throw std::domain_error("safe_technology_optimal_qB requires lambda > 0");
  if (!(techB.sigma > 0.0))
    throw std::domain_error("safe_technology_optimal_qB requires sigmaB > 0");
  const double s2 = techB.sigma * techB.sigma;
  const double vB = techB.c0 * techB.c0 * std::exp(s2) * std::expm1(s2);
  return (c0_safe - techB.c0 * std::exp(0.5 * s2)) / (2.0 * market.lambda * vB);
}

}  // namespace techfolio::objective
