#pragma once

#include <string>

namespace techfolio {

// One production technology following a stochastic experience curve: after
// producing q additional units on top of the accumulated experience z0, the
// unit cost is
//
//   c(q) = c0 * (z0 / (z0 + q))^alpha * exp(eta),   eta ~ N(0, sigma^2).
//
// Validation happens at construction; instances are immutable in spirit and
// safe to share across threads.
struct TechnologyParams {
  std::string name;
  double c0;     // initial unit cost, > 0
  double z0;     // initial cumulative production, > 0
  double alpha;  // experience exponent, >= 0
  double sigma;  // std dev of per-period log-cost noise, in [0, kMaxSigma]

  // Beyond sigma = 3 the e^(2 sigma^2) factors in the two-period moments start
  // marching toward overflow; fail loudly instead of returning infinities.
  static constexpr double kMaxSigma = 3.0;

  TechnologyParams(std::string name_, double c0_, double z0_, double alpha_,
                   double sigma_);

  // Cost multiplier per doubling of cumulative production, 2^-alpha in (0, 1].
  double progress_ratio() const;
  // Fractional cost reduction per doubling, 1 - 2^-alpha in [0, 1).
  double learning_rate() const;
};

// Market-level problem setup shared by the objective, optimizer and analysis
// layers.
struct MarketSpec {
  double demand_K;    // total production per period, >= 0
  double lambda;      // risk-aversion weight on Var(V), >= 0
  double rho;         // correlation of same-period shocks across technologies, [-1, 1]
  double discount_r;  // continuous discount rate between periods, >= 0
  int periods;        // 1 or 2

  MarketSpec(double demand_K_, double lambda_, double rho_ = 0.0,
             double discount_r_ = 0.0, int periods_ = 1);

  static MarketSpec one_period(double K, double lambda, double rho = 0.0);
  static MarketSpec two_period(double K, double lambda, double discount_r);
};

}  // namespace techfolio
