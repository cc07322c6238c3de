#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "techfolio/technology.hpp"

namespace techfolio::curves {

struct CostMoments {
  double expectation;  // E[c], currency per unit
  double variance;     // Var(c), currency^2 per unit^2
};

// Deterministic experience-curve factor (z0 / (z0 + q))^alpha, evaluated as
// exp(-alpha * log1p(q / z0)) so q << z0 keeps full precision.
double experience_factor(const TechnologyParams& tech, double q);

// Unit cost with the noise switched off: c0 * (z0 / (z0 + q))^alpha.
double deterministic_unit_cost(const TechnologyParams& tech, double q);

// E[c] after producing q more units: c0 (z0/(z0+q))^alpha e^(sigma^2 / 2).
double unit_cost_expectation(const TechnologyParams& tech, double q);

// Var(c): c0^2 (z0/(z0+q))^(2 alpha) e^(sigma^2) (e^(sigma^2) - 1).
double unit_cost_variance(const TechnologyParams& tech, double q);

CostMoments cost_moments(const TechnologyParams& tech, double q);

// Cost moments for one technology producing q1 in period 1 and q2 in period 2.
// Period-2 experience includes both periods' production; the period-1 shock
// carries into period 2, which is what makes cov12 strictly positive whenever
// sigma > 0. All values undiscounted (discounting belongs to the objective).
struct TwoPeriodCostMoments {
  double e1, e2;      // E[c1], E[c2]
  double var1, var2;  // Var(c1), Var(c2)
  double cov12;       // Cov(c1, c2)
};
TwoPeriodCostMoments two_period_cost_moments(const TechnologyParams& tech,
                                             double q1, double q2);

// Sampled realizations of the cost path (c_1 .. c_T) under a production
// schedule, row-major [sample][period]. Deterministic in (seed, stream);
// `stream` is the technology slot, so two technologies sampled side by side
// with slots 0 and 1 reproduce exactly what the estimators consume.
struct CostPaths {
  std::size_t n_samples = 0;
  std::size_t n_periods = 0;
  std::vector<double> values;

  double at(std::size_t sample, std::size_t period) const {
    return values[sample * n_periods + period];
  }
};
CostPaths sample_cost_paths(const TechnologyParams& tech,
                            const std::vector<double>& q_schedule,
                            std::size_t n_samples, std::uint64_t seed,
                            std::uint32_t stream = 0);

}  // namespace techfolio::curves
