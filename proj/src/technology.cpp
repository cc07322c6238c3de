#include "techfolio/technology.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace techfolio {

TechnologyParams::TechnologyParams(std::string name_, double c0_, double z0_,
                                   double alpha_, double sigma_)
    : name(std::move(name_)), c0(c0_), z0(z0_), alpha(alpha_), sigma(sigma_) {
  if (!(c0 > 0.0) || !std::isfinite(c0))
    throw std::domain_error("technology '" + name + "': c0 must be finite and > 0");
  if (!(z0 > 0.0) || !std::isfinite(z0))
    throw std::domain_error("technology '" + name + "': z0 must be finite and > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::domain_error("technology '" + name + "': alpha must be finite and >= 0");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::domain_error("technology '" + name + "': sigma must be finite and >= 0");
  if (sigma > kMaxSigma)
    throw std::range_error("technology '" + name + "': sigma > " +
                           std::to_string(kMaxSigma) +
                           " would overflow the moment formulas");
}

double TechnologyParams::progress_ratio() const { return std::exp2(-alpha); }

double TechnologyParams::learning_rate() const { return 1.0 - std::exp2(-alpha); }

MarketSpec::MarketSpec(double demand_K_, double lambda_, double rho_,
                       double discount_r_, int periods_)
    : demand_K(demand_K_), lambda(lambda_), rho(rho_), discount_r(discount_r_),
      periods(periods_) {
  if (!(demand_K >= 0.0) || !std::isfinite(demand_K))
    throw std::domain_error("market: demand_K must be finite and >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("market: lambda must be finite and >= 0");
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::domain_error("market: rho must lie in [-1, 1]");
  if (!(discount_r >= 0.0) || !std::isfinite(discount_r))
    throw std::domain_error("market: discount_r must be finite and >= 0");
  if (periods != 1 && periods != 2)
    throw std::domain_error("market: periods must be 1 or 2");
}

MarketSpec MarketSpec::one_period(double K, double lambda, double rho) {
  return MarketSpec(K, lambda, rho, 0.0, 1);
}

MarketSpec MarketSpec::two_period(double K, double lambda, double discount_r) {
  return MarketSpec(K, lambda, 0.0, discount_r, 2);
}

}  // namespace techfolio
