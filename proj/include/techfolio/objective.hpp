#pragma once

#include "techfolio/technology.hpp"

namespace techfolio::objective {

// Mean-variance objective f = E[V] + lambda * Var(V) for total production cost
// V; smaller is better throughout.
struct ObjectiveValue {
  double total;        // expectation + lambda * variance
  double expectation;  // E[V]
  double variance;     // Var(V)
  // Series approximations set this false when evaluated outside their
  // expansion domain (q >= z0 for either technology). Deliberately a flag and
  // not an error: comparing the approximation against the exact objective
  // outside its domain is a supported use.
  bool series_valid = true;
};

// Exact one-period objective at production split (qA, K - qA). A nonzero
// market.rho adds the cross-technology covariance penalty
// 2 lambda qA qB E[cA] E[cB] (e^(rho sigmaA sigmaB) - 1).
ObjectiveValue one_period(const TechnologyParams& techA, const TechnologyParams& techB,
                          const MarketSpec& market, double qA);

// Exact two-period objective: per technology, period-1 variance, discounted
// period-2 variance and the within-technology cross-period covariance;
// cross-technology terms are zero. Requires market.rho == 0 — the correlated
// two-period covariance structure is not part of the model.
ObjectiveValue two_period(const TechnologyParams& techA, const TechnologyParams& techB,
                          const MarketSpec& market, double q1A, double q2A);

// Quadratic no-learning approximation: alpha dropped entirely. Exact when both
// alphas are zero; useful when K^2 << z0.
ObjectiveValue markowitz_zeroth_order(const TechnologyParams& techA,
                                      const TechnologyParams& techB,
                                      const MarketSpec& market, double qA);

// Cubic approximation keeping the leading learning corrections: factors
// (1 - alpha q / z0) on expectations and (1 - 2 alpha q / z0) on variances.
// Valid for q < z0 per technology.
ObjectiveValue series_first_order(const TechnologyParams& techA,
                                  const TechnologyParams& techB,
                                  const MarketSpec& market, double qA);

// Constant-cost incumbent at c0_safe (no learning, no noise) versus a risky
// challenger held at its initial cost: a convex parabola in qB. Intended for
// K << z0 of the challenger.
ObjectiveValue safe_technology(double c0_safe, const TechnologyParams& techB,
                               const MarketSpec& market, double qB);

// Interior minimizer of safe_technology in qB (unclamped closed form);
// requires lambda > 0 and sigmaB > 0 for the parabola to have a minimum.
double safe_technology_optimal_qB(double c0_safe, const TechnologyParams& techB,
                                  const MarketSpec& market);

}  // namespace techfolio::objective
