#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "techfolio/technology.hpp"

namespace techfolio::montecarlo {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct ObjectiveEstimate {
  McEstimate expectation;  // E[V]
  McEstimate variance;     // Var(V)
};

// Samples the total (discounted) portfolio cost V at the given per-period
// production of technology A and returns its sample mean and variance with
// standard errors. The variance standard error uses the normal-theory
// fourth-moment approximation. Deterministic in (seed); the thread count only
// changes wall time, never the result.
ObjectiveEstimate estimate_objective(const TechnologyParams& techA,
                                     const TechnologyParams& techB,
                                     const MarketSpec& market,
                                     const std::vector<double>& qA,
                                     std::size_t n_samples, std::uint64_t seed,
                                     int n_threads = 1);

struct MomentCheck {
  std::string quantity;
  double analytic = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;  // (estimate - analytic) / std_error
  bool within_3se = false;
};

// Verifies every analytic moment that feeds the objective — per-technology
// unit-cost means/variances (both periods and the cross-period covariance in
// the two-period setting, the cross-technology covariance when rho != 0) and
// the portfolio mean/variance — against one simulation run.
std::vector<MomentCheck> check_moments(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const std::vector<double>& qA,
                                       std::size_t n_samples,
                                       std::uint64_t seed);

struct CoverageRow {
  std::string quantity;
  double analytic = 0.0;
  int trials = 0;
  int within_3se = 0;
  double max_abs_z = 0.0;
};

// Repeats check_moments over seeds base_seed, base_seed + 1, ... and tallies
// the 3-standard-error coverage per quantity.
std::vector<CoverageRow> coverage(const TechnologyParams& techA,
                                  const TechnologyParams& techB,
                                  const MarketSpec& market,
                                  const std::vector<double>& qA,
                                  std::size_t n_samples, int n_trials,
                                  std::uint64_t base_seed);

}  // namespace techfolio::montecarlo
