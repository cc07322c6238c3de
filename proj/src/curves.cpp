#include "techfolio/curves.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "techfolio/rng.hpp"

namespace techfolio::rng {

double standard_normal(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) {
  const double u1 = uniform01(keyed(seed, stream, 2 * index));
  const double u2 = uniform01(keyed(seed, stream, 2 * index + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace techfolio::rng

namespace techfolio::curves {

namespace {

void require_nonnegative(double q, const char* what) {
  if (!(q >= 0.0) || !std::isfinite(q))
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
}

}  // namespace

double experience_factor(const TechnologyParams& tech, double q) {
  require_nonnegative(q, "production q");
  return std::exp(-tech.alpha * std::log1p(q / tech.z0));
}

double deterministic_unit_cost(const TechnologyParams& tech, double q) {
  return tech.c0 * experience_factor(tech, q);
}

double unit_cost_expectation(const TechnologyParams& tech, double q) {
  return deterministic_unit_cost(tech, q) * std::exp(0.5 * tech.sigma * tech.sigma);
}

double unit_cost_variance(const TechnologyParams& tech, double q) {
  const double base = deterministic_unit_cost(tech, q);
  const double s2 = tech.sigma * tech.sigma;
  return base * base * std::exp(s2) * std::expm1(s2);
}

CostMoments cost_moments(const TechnologyParams& tech, double q) {
  return {unit_cost_expectation(tech, q), unit_cost_variance(tech, q)};
}

TwoPeriodCostMoments two_period_cost_moments(const TechnologyParams& tech,
                                             double q1, double q2) {
  require_nonnegative(q1, "production q1");
  require_nonnegative(q2, "production q2");
  const double s2 = tech.sigma * tech.sigma;
  const double cbar1 = deterministic_unit_cost(tech, q1);
  const double cbar2 = deterministic_unit_cost(tech, q1 + q2);
  TwoPeriodCostMoments m;
  // c1 = cbar1 e^(eta1), c2 = cbar2 e^(eta1 + eta2): the period-1 shock is
  // baked into period 2, doubling the log-variance there.
  m.e1 = cbar1 * std::exp(0.5 * s2);
  m.e2 = cbar2 * std::exp(s2);
  m.var1 = cbar1 * cbar1 * std::exp(s2) * std::expm1(s2);
  m.var2 = cbar2 * cbar2 * std::exp(2.0 * s2) * std::expm1(2.0 * s2);
  m.cov12 = cbar1 * cbar2 * std::exp(1.5 * s2) * std::expm1(s2);
  return m;
}

CostPaths sample_cost_paths(const TechnologyParams& tech,
                            const std::vector<double>& q_schedule,
                            std::size_t n_samples, std::uint64_t seed,
                            std::uint32_t stream) {
  if (q_schedule.empty())
    throw std::domain_error("q_schedule must contain at least one period");
  if (n_samples < 1) throw std::domain_error("n_samples must be >= 1");
  for (double q : q_schedule) require_nonnegative(q, "scheduled production");

  const std::size_t T = q_schedule.size();
  // Deterministic base costs after each period's production.
  std::vector<double> cbar(T);
  double cumulative = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    cumulative += q_schedule[t];
    cbar[t] = deterministic_unit_cost(tech, cumulative);
  }

  CostPaths out;
  out.n_samples = n_samples;
  out.n_periods = T;
  out.values.resize(n_samples * T);
  for (std::size_t i = 0; i < n_samples; ++i) {
    double log_shock = 0.0;  // shocks accumulate along the path
    for (std::size_t t = 0; t < T; ++t) {
      log_shock += tech.sigma *
                   rng::standard_normal(seed, rng::stream_id(stream, static_cast<std::uint32_t>(t)), i);
      out.values[i * T + t] = cbar[t] * std::exp(log_shock);
    }
  }
  return out;
}

}  // namespace techfolio::curves
