#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "techfolio/optimizer.hpp"
#include "techfolio/technology.hpp"

namespace techfolio::analysis {

// Full-specialization corners of the one-period share domain.
enum class Corner { A, B };  // A: qA = K; B: qA = 0

// Risk aversion at which the named corner stops being a stationary boundary
// minimum, i.e. the onset of diversification. Whether the corner is globally
// optimal below the threshold must be verified separately (it can lose to the
// other corner first).
double lambda_diversification(const TechnologyParams& techA,
                              const TechnologyParams& techB, double K,
                              Corner corner);

// Risk aversion at which the two full-specialization corners have equal
// objective value. Interpreting it as the global-optimum switch point is
// valid only where both corners are the competing global minima.
double lambda_switch_closed_form(const TechnologyParams& techA,
                                 const TechnologyParams& techB, double K);

// Experience exponent for technology B at which full-B and full-A portfolios
// have equal objective value (techB.alpha itself is ignored). Closed form at
// lambda = 0; bracketed bisection over [0, alpha_max] otherwise. Returns
// nullopt when no root exists in the admissible range.
std::optional<double> alpha_switch(const TechnologyParams& techA,
                                   const TechnologyParams& techB, double K,
                                   double lambda, double alpha_max = 1.0);

enum class SweepParam { alphaB, sigmaB, c0B, z0B, lambda, K, rho, r };

const char* sweep_param_name(SweepParam p);
std::optional<SweepParam> parse_sweep_param(const std::string& name);

struct SweepAxis {
  SweepParam param;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;  // number of grid nodes along this axis, >= 1
};

struct SweepSpec {
  TechnologyParams techA;
  TechnologyParams techB;
  MarketSpec market;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2{};
  optimizer::Settings settings{};
};

struct SweepNode {
  double axis1 = 0.0;
  double axis2 = 0.0;  // NaN for single-axis sweeps
  bool failed = false;
  std::string error;  // diagnostic when failed
  double share_global = 0.0;  // global-optimum qA as a share of total demand
  int n_local_optima = 0;
  bool tie = false;  // more than one optimum flagged global
  bool discontinuity_adjacent = false;
  std::vector<optimizer::LocalOptimum> optima;
};

struct SweepResult {
  std::vector<SweepNode> nodes;  // axis1-major order: index = i1 * n2 + i2
  int n1 = 0;
  int n2 = 1;
};

// Optimizes at every grid node; per-node failures are flagged, not fatal.
// Adjacent nodes whose global share jumps by more than 0.1 are marked
// discontinuity_adjacent on both sides.
SweepResult sweep_optimal_share(const SweepSpec& spec);

struct FrontierPoint {
  double qA = 0.0;
  double variance = 0.0;
  double expectation = 0.0;
  bool efficient = false;
};

struct FeasibleSetResult {
  std::vector<FrontierPoint> points;
  // Connected components of the efficient subset as inclusive index ranges in
  // qA order; runs separated only by a sampling gap of the lambda scan are
  // merged via a supporting-line test.
  std::vector<std::pair<int, int>> efficient_components;
};

// Traces (Var(V), E[V]) over qA uniform in [0, K] and marks points that
// minimize E + lambda * Var for some lambda >= 0 in a log scan.
FeasibleSetResult feasible_set(const TechnologyParams& techA,
                               const TechnologyParams& techB,
                               const MarketSpec& market, int n_points);

struct MarkowitzAsset {
  double mu = 0.0;  // expected return per period
  double s = 0.0;   // return standard deviation
};

struct MarkowitzResult {
  double qA = 0.0;   // optimal weight in [0, 1]
  bool tie = false;  // knife-edge linear objective with equal means
  std::vector<FrontierPoint> feasible;  // sampled bullet, maximize-sense flags
};

// Classic two-asset no-short-selling mean-variance model: maximizes
// mu.q - lambda * sum((s_i q_i)^2) over qA in [0, 1] in closed form.
MarkowitzResult markowitz_reference(const MarkowitzAsset& assetA,
                                    const MarkowitzAsset& assetB, double lambda,
                                    int n_points = 201);

struct Scenario {
  std::string label;
  double share1A = 0.0;  // period-1 share of demand assigned to technology A
  double share2A = 0.0;  // period-2 share
};

struct ScenarioCrossing {
  int scenario_i = 0;
  int scenario_j = 0;
  double r = 0.0;  // critical discount rate where the two curves cross
};

struct ScenarioComparison {
  std::vector<double> r_grid;
  std::vector<Scenario> scenarios;
  std::vector<std::vector<double>> values;  // values[scenario][r index]
  std::vector<ScenarioCrossing> crossings;
};

// Evaluates the two-period objective for each fixed scenario across a
// discount-rate range and locates pairwise curve crossings by bisection.
ScenarioComparison scenario_compare(const TechnologyParams& techA,
                                    const TechnologyParams& techB,
                                    const MarketSpec& market,
                                    const std::vector<Scenario>& scenarios,
                                    double r_lo, double r_hi, int n_r);

struct SwitchPoint {
  double param_value = 0.0;
  double share_before = 0.0;  // global share just below the switch
  double share_after = 0.0;   // global share just above
  double value_gap = 0.0;     // |f| difference of the two competing optima
};

// Locates every parameter value along a single-axis sweep where the global
// optimum jumps between basins, by bisection between adjacent nodes.
std::vector<SwitchPoint> find_switch_along_sweep(const SweepSpec& spec);

}  // namespace techfolio::analysis
