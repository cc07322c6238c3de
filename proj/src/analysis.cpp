#include "techfolio/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "techfolio/curves.hpp"
#include "techfolio/objective.hpp"
#include "techfolio/parallel.hpp"

namespace techfolio::analysis {

namespace {

constexpr double kJumpThreshold = 0.1;      // share-space jump marking a discontinuity
constexpr double kEfficiencyRelTol = 1e-9;  // argmin tie tolerance in the lambda scan
constexpr int kLambdaScanCount = 200;       // log-spaced scan points, plus lambda = 0

struct NodeParams {
  TechnologyParams techA, techB;
  MarketSpec market;
};

NodeParams with_param(const NodeParams& base, SweepParam p, double v) {
  const TechnologyParams& b = base.techB;
  const MarketSpec& m = base.market;
  switch (p) {
    case SweepParam::alphaB:
      return {base.techA, TechnologyParams(b.name, b.c0, b.z0, v, b.sigma), m};
    case SweepParam::sigmaB:
      return {base.techA, TechnologyParams(b.name, b.c0, b.z0, b.alpha, v), m};
    case SweepParam::c0B:
      return {base.techA, TechnologyParams(b.name, v, b.z0, b.alpha, b.sigma), m};
    case SweepParam::z0B:
      return {base.techA, TechnologyParams(b.name, b.c0, v, b.alpha, b.sigma), m};
    case SweepParam::lambda:
      return {base.techA, b, MarketSpec(m.demand_K, v, m.rho, m.discount_r, m.periods)};
    case SweepParam::K:
      return {base.techA, b, MarketSpec(v, m.lambda, m.rho, m.discount_r, m.periods)};
    case SweepParam::rho:
      return {base.techA, b, MarketSpec(m.demand_K, m.lambda, v, m.discount_r, m.periods)};
    case SweepParam::r:
      return {base.techA, b, MarketSpec(m.demand_K, m.lambda, m.rho, v, m.periods)};
  }
  throw std::logic_error("unknown sweep parameter");
}

double axis_value(const SweepAxis& ax, int k) {
  if (ax.steps == 1) return ax.lo;
  if (k == ax.steps - 1) return ax.hi;
  return ax.lo + (ax.hi - ax.lo) * k / (ax.steps - 1);
}

// Global-optimum production in A as a share of total demand across periods.
// NaN for a zero-demand market, by design.
double share_of(const std::vector<double>& location, const MarketSpec& m) {
  double total = 0.0;
  for (double q : location) total += q;
  return total / (static_cast<double>(m.periods) * m.demand_K);
}

optimizer::OptimizationResult optimize_node(const NodeParams& p,
                                            const optimizer::Settings& s) {
  return p.market.periods == 2
             ? optimizer::optimize_two_period(p.techA, p.techB, p.market, s)
             : optimizer::optimize_one_period(p.techA, p.techB, p.market, s);
}

std::vector<double> lambda_scan() {
  std::vector<double> lams;
  lams.reserve(kLambdaScanCount + 1);
  lams.push_back(0.0);
  for (int j = 0; j < kLambdaScanCount; ++j)
    lams.push_back(1e-4 *
                   std::pow(1e8, static_cast<double>(j) / (kLambdaScanCount - 1)));
  return lams;
}

// Marks every point that minimizes e[i] + lambda * v[i] (ties within a
// relative tolerance included) for at least one scanned lambda.
std::vector<char> mark_scan_minima(const std::vector<double>& e,
                                   const std::vector<double>& v) {
  const std::size_t n = e.size();
  std::vector<char> marked(n, 0);
  for (double lam : lambda_scan()) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, e[i] + lam * v[i]);
    const double tol = kEfficiencyRelTol * std::max(std::abs(best), 1e-300);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] + lam * v[i] <= best + tol) marked[i] = 1;
  }
  return marked;
}

// Supporting line through marked points b and c at their crossing lambda.
// If every point strictly between lies strictly above the tied value, nothing
// in the gap is ever optimal and the efficient set genuinely jumps from b to
// c; otherwise the gap is a sampling artifact of the finite lambda scan.
bool genuine_split(const std::vector<double>& e, const std::vector<double>& v,
                   int b, int c) {
  const double dv = v[b] - v[c];
  if (dv == 0.0) return e[b] != e[c];
  const double lam = (e[c] - e[b]) / dv;
  if (!std::isfinite(lam) || lam < 0.0) return true;
  const double tied = e[b] + lam * v[b];
  const double tol = kEfficiencyRelTol * std::max(std::abs(tied), 1e-300);
  for (int j = b + 1; j < c; ++j)
    if (e[j] + lam * v[j] <= tied + tol) return false;
  return true;
}

}  // namespace

const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::alphaB: return "alphaB";
    case SweepParam::sigmaB: return "sigmaB";
    case SweepParam::c0B: return "c0B";
    case SweepParam::z0B: return "z0B";
    case SweepParam::lambda: return "lambda";
    case SweepParam::K: return "K";
    case SweepParam::rho: return "rho";
    case SweepParam::r: return "r";
  }
  return "?";
}

std::optional<SweepParam> parse_sweep_param(const std::string& name) {
  if (name == "alphaB") return SweepParam::alphaB;
  if (name == "sigmaB") return SweepParam::sigmaB;
  if (name == "c0B") return SweepParam::c0B;
  if (name == "z0B") return SweepParam::z0B;
  if (name == "lambda") return SweepParam::lambda;
  if (name == "K") return SweepParam::K;
  if (name == "rho") return SweepParam::rho;
  if (name == "r") return SweepParam::r;
  return std::nullopt;
}

double lambda_diversification(const TechnologyParams& techA,
                              const TechnologyParams& techB, double K,
                              Corner corner) {
  if (!(K > 0.0)) throw std::domain_error("demand K must be positive");
  const TechnologyParams& produced = corner == Corner::B ? techB : techA;
  const TechnologyParams& entrant = corner == Corner::B ? techA : techB;
  // First-order stationarity of f at the corner: the produced technology's
  // marginal expectation and variance terms carry the learning correction
  // factor phi = d(q E[c(q)])/dq / E[c(q)] evaluated at q = K.
  const double phi = 1.0 - produced.alpha * K / (produced.z0 + K);
  const double entrant_e0 = curves::unit_cost_expectation(entrant, 0.0);
  const double produced_eK = curves::unit_cost_expectation(produced, K);
  const double produced_vK = curves::unit_cost_variance(produced, K);
  const double denom = 2.0 * K * produced_vK * phi;
  if (denom == 0.0 || !std::isfinite(denom))
    throw std::domain_error(
        "degenerate diversification threshold: corner-technology variance term vanishes");
  return (entrant_e0 - produced_eK * phi) / denom;
}

double lambda_switch_closed_form(const TechnologyParams& techA,
                                 const TechnologyParams& techB, double K) {
  if (!(K > 0.0)) throw std::domain_error("demand K must be positive");
  const double eA = curves::unit_cost_expectation(techA, K);
  const double eB = curves::unit_cost_expectation(techB, K);
  const double vA = curves::unit_cost_variance(techA, K);
  const double vB = curves::unit_cost_variance(techB, K);
  const double denom = K * (vB - vA);
  if (denom == 0.0 || !std::isfinite(denom))
    throw std::domain_error(
        "degenerate switch threshold: the two corner variances are equal");
  return (eA - eB) / denom;
}

std::optional<double> alpha_switch(const TechnologyParams& techA,
                                   const TechnologyParams& techB, double K,
                                   double lambda, double alpha_max) {
  if (!(K > 0.0))
    throw std::invalid_argument("alpha_switch requires positive demand K");
  if (!(alpha_max > 0.0))
    throw std::invalid_argument("alpha_max must be positive");
  if (lambda < 0.0) throw std::domain_error("risk aversion must be nonnegative");

  if (lambda == 0.0) {
    // f(0) = f(K) is log-linear in alphaB when the variance penalty is off.
    const double num = std::log(techA.c0 / techB.c0) +
                       0.5 * (techA.sigma * techA.sigma - techB.sigma * techB.sigma) +
                       techA.alpha * std::log(techA.z0 / (techA.z0 + K));
    const double root = num / std::log(techB.z0 / (techB.z0 + K));
    if (root < 0.0 || root > alpha_max) return std::nullopt;
    return root;
  }

  const MarketSpec market = MarketSpec::one_period(K, lambda);
  // g is strictly decreasing in alpha: a larger exponent only cheapens the
  // full-B portfolio while f(K) does not involve technology B at all.
  const auto g = [&](double a) {
    const TechnologyParams b(techB.name, techB.c0, techB.z0, a, techB.sigma);
    return objective::one_period(techA, b, market, 0.0).total -
           objective::one_period(techA, b, market, K).total;
  };
  double lo = 0.0, hi = alpha_max;
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return 0.0;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
  const double tol = 1e-12 * std::max(1.0, alpha_max);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SweepResult sweep_optimal_share(const SweepSpec& spec) {
  if (spec.axis1.steps < 1)
    throw std::invalid_argument("axis1 step count must be >= 1");
  if (spec.axis2) {
    if (spec.axis2->steps < 1)
      throw std::invalid_argument("axis2 step count must be >= 1");
    if (spec.axis2->param == spec.axis1.param)
      throw std::invalid_argument("sweep axes must use distinct parameters");
  }
  const int n1 = spec.axis1.steps;
  const int n2 = spec.axis2 ? spec.axis2->steps : 1;

  SweepResult result;
  result.n1 = n1;
  result.n2 = n2;
  result.nodes.resize(static_cast<std::size_t>(n1) * n2);

  optimizer::Settings node_settings = spec.settings;
  node_settings.n_threads = 1;  // parallelism lives at node granularity
  const NodeParams base{spec.techA, spec.techB, spec.market};

  parallel_chunks(result.nodes.size(), spec.settings.n_threads,
                  [&](std::size_t first, std::size_t last) {
    for (std::size_t idx = first; idx < last; ++idx) {
      const int i1 = static_cast<int>(idx / n2);
      const int i2 = static_cast<int>(idx % n2);
      SweepNode& node = result.nodes[idx];
      node.axis1 = axis_value(spec.axis1, i1);
      node.axis2 = spec.axis2 ? axis_value(*spec.axis2, i2)
                              : std::numeric_limits<double>::quiet_NaN();
      try {
        NodeParams p = with_param(base, spec.axis1.param, node.axis1);
        if (spec.axis2) p = with_param(p, spec.axis2->param, node.axis2);
        const auto opt = optimize_node(p, node_settings);
        const auto& g = opt.global();
        node.share_global = share_of(g.location, p.market);
        node.n_local_optima = static_cast<int>(opt.optima.size());
        int globals = 0;
        for (const auto& o : opt.optima) globals += o.is_global ? 1 : 0;
        node.tie = globals > 1;
        node.optima = opt.optima;
      } catch (const std::exception& e) {
        node.failed = true;
        node.error = e.what();
        node.share_global = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });

  auto mark_jump = [&](std::size_t a, std::size_t b) {
    SweepNode& na = result.nodes[a];
    SweepNode& nb = result.nodes[b];
    if (na.failed || nb.failed) return;
    if (!std::isfinite(na.share_global) || !std::isfinite(nb.share_global)) return;
    if (std::abs(na.share_global - nb.share_global) > kJumpThreshold) {
      na.discontinuity_adjacent = true;
      nb.discontinuity_adjacent = true;
    }
  };
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const std::size_t idx = static_cast<std::size_t>(i1) * n2 + i2;
      if (i1 + 1 < n1) mark_jump(idx, idx + n2);
      if (i2 + 1 < n2) mark_jump(idx, idx + 1);
    }
  }
  return result;
}

FeasibleSetResult feasible_set(const TechnologyParams& techA,
                               const TechnologyParams& techB,
                               const MarketSpec& market, int n_points) {
  if (n_points < 2) throw std::invalid_argument("n_points must be >= 2");
  const double K = market.demand_K;

  FeasibleSetResult out;
  out.points.resize(n_points);
  std::vector<double> es(n_points), vs(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double qA = i == n_points - 1 ? K : K * i / (n_points - 1);
    const auto ov = objective::one_period(techA, techB, market, qA);
    out.points[i] = {qA, ov.variance, ov.expectation, false};
    es[i] = ov.expectation;
    vs[i] = ov.variance;
  }

  const auto marked = mark_scan_minima(es, vs);
  for (int i = 0; i < n_points; ++i) out.points[i].efficient = marked[i] != 0;

  // Runs of consecutive marked indices, then merge across scan-artifact gaps.
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < n_points;) {
    if (!marked[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n_points && marked[j + 1]) ++j;
    runs.emplace_back(i, j);
    i = j + 1;
  }
  for (const auto& run : runs) {
    if (!out.efficient_components.empty() &&
        !genuine_split(es, vs, out.efficient_components.back().second, run.first)) {
      out.efficient_components.back().second = run.second;
    } else {
      out.efficient_components.push_back(run);
    }
  }
  return out;
}

MarkowitzResult markowitz_reference(const MarkowitzAsset& assetA,
                                    const MarkowitzAsset& assetB, double lambda,
                                    int n_points) {
  if (assetA.s < 0.0 || assetB.s < 0.0)
    throw std::domain_error("return standard deviation must be nonnegative");
  if (lambda < 0.0) throw std::domain_error("risk aversion must be nonnegative");
  if (n_points < 2) throw std::invalid_argument("n_points must be >= 2");

  MarkowitzResult out;
  const double sa2 = assetA.s * assetA.s;
  const double sb2 = assetB.s * assetB.s;
  const double denom = 2.0 * lambda * (sa2 + sb2);
  if (denom == 0.0) {
    // Linear objective: corner by mean, knife-edge tie when means agree.
    if (assetA.mu > assetB.mu) {
      out.qA = 1.0;
    } else if (assetB.mu > assetA.mu) {
      out.qA = 0.0;
    } else {
      out.qA = 0.5;
      out.tie = true;
    }
  } else {
    out.qA = std::clamp((assetA.mu - assetB.mu + 2.0 * lambda * sb2) / denom, 0.0, 1.0);
  }

  out.feasible.resize(n_points);
  std::vector<double> neg_e(n_points), vs(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double w = static_cast<double>(i) / (n_points - 1);
    const double mu = assetA.mu * w + assetB.mu * (1.0 - w);
    const double var = sa2 * w * w + sb2 * (1.0 - w) * (1.0 - w);
    out.feasible[i] = {w, var, mu, false};
    neg_e[i] = -mu;  // returns are maximized, so flip into the minimize sense
    vs[i] = var;
  }
  const auto marked = mark_scan_minima(neg_e, vs);
  for (int i = 0; i < n_points; ++i) out.feasible[i].efficient = marked[i] != 0;
  return out;
}

ScenarioComparison scenario_compare(const TechnologyParams& techA,
                                    const TechnologyParams& techB,
                                    const MarketSpec& market,
                                    const std::vector<Scenario>& scenarios,
                                    double r_lo, double r_hi, int n_r) {
  if (market.periods != 2)
    throw std::invalid_argument("scenario comparison requires a two-period market");
  if (!(r_hi > r_lo))
    throw std::invalid_argument("discount-rate range must satisfy r_hi > r_lo");
  if (n_r < 2) throw std::invalid_argument("n_r must be >= 2");
  if (r_lo < 0.0) throw std::domain_error("discount rate must be nonnegative");
  for (const auto& s : scenarios)
    if (!(s.share1A >= 0.0) || !(s.share1A <= 1.0) || !(s.share2A >= 0.0) ||
        !(s.share2A <= 1.0))
      throw std::domain_error("scenario shares must lie in [0, 1]");

  ScenarioComparison out;
  out.scenarios = scenarios;
  out.r_grid.resize(n_r);
  for (int k = 0; k < n_r; ++k)
    out.r_grid[k] = k == n_r - 1 ? r_hi : r_lo + (r_hi - r_lo) * k / (n_r - 1);

  const double K = market.demand_K;
  const auto value_at = [&](const Scenario& s, double r) {
    const MarketSpec m(K, market.lambda, market.rho, r, 2);
    return objective::two_period(techA, techB, m, s.share1A * K, s.share2A * K).total;
  };
  out.values.assign(scenarios.size(), std::vector<double>(n_r));
  for (std::size_t s = 0; s < scenarios.size(); ++s)
    for (int k = 0; k < n_r; ++k)
      out.values[s][k] = value_at(scenarios[s], out.r_grid[k]);

  const double tol = 1e-9 * (r_hi - r_lo);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (std::size_t j = i + 1; j < scenarios.size(); ++j) {
      for (int k = 0; k + 1 < n_r; ++k) {
        const double d0 = out.values[i][k] - out.values[j][k];
        const double d1 = out.values[i][k + 1] - out.values[j][k + 1];
        if (!(d0 * d1 < 0.0)) continue;  // strict sign change; identical curves never cross
        double lo = out.r_grid[k], hi = out.r_grid[k + 1];
        double dlo = d0;
        while (hi - lo > tol) {
          const double mid = 0.5 * (lo + hi);
          const double dm = value_at(scenarios[i], mid) - value_at(scenarios[j], mid);
          if (dm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((dm > 0.0) == (dlo > 0.0)) {
            lo = mid;
            dlo = dm;
          } else {
            hi = mid;
          }
        }
        out.crossings.push_back({static_cast<int>(i), static_cast<int>(j),
                                 0.5 * (lo + hi)});
      }
    }
  }
  return out;
}

std::vector<SwitchPoint> find_switch_along_sweep(const SweepSpec& spec) {
  if (spec.axis2)
    throw std::invalid_argument("switch location requires a single-axis sweep");
  const SweepResult sweep = sweep_optimal_share(spec);

  const NodeParams base{spec.techA, spec.techB, spec.market};
  struct Eval {
    optimizer::OptimizationResult result;
    MarketSpec market;
  };
  const auto eval = [&](double v) {
    const NodeParams p = with_param(base, spec.axis1.param, v);
    return Eval{optimize_node(p, spec.settings), p.market};
  };

  std::vector<SwitchPoint> out;
  for (int k = 0; k + 1 < sweep.n1; ++k) {
    const SweepNode& a = sweep.nodes[k];
    const SweepNode& b = sweep.nodes[k + 1];
    if (a.failed || b.failed) continue;
    if (!std::isfinite(a.share_global) || !std::isfinite(b.share_global)) continue;
    if (std::abs(a.share_global - b.share_global) <= kJumpThreshold) continue;

    double lo = a.axis1, hi = b.axis1;
    double share_lo = a.share_global, share_hi = b.share_global;
    const double tol =
        1e-6 * std::max({std::abs(lo), std::abs(hi), hi - lo});
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const Eval em = eval(mid);
      const double sm = share_of(em.result.global().location, em.market);
      if (std::abs(sm - share_lo) <= std::abs(sm - share_hi)) {
        lo = mid;
        share_lo = sm;
      } else {
        hi = mid;
        share_hi = sm;
      }
    }

    const double at = 0.5 * (lo + hi);
    const Eval ea = eval(at);
    // Value agreement of the two competing optima at the located switch.
    int idx_before = -1, idx_after = -1;
    double dist_before = std::numeric_limits<double>::infinity();
    double dist_after = std::numeric_limits<double>::infinity();
    for (std::size_t oi = 0; oi < ea.result.optima.size(); ++oi) {
      const double sh = share_of(ea.result.optima[oi].location, ea.market);
      if (std::abs(sh - share_lo) < dist_before) {
        dist_before = std::abs(sh - share_lo);
        idx_before = static_cast<int>(oi);
      }
      if (std::abs(sh - share_hi) < dist_after) {
        dist_after = std::abs(sh - share_hi);
        idx_after = static_cast<int>(oi);
      }
    }
    double gap;
    if (idx_before >= 0 && idx_after >= 0 && idx_before != idx_after) {
      gap = std::abs(ea.result.optima[idx_before].value -
                     ea.result.optima[idx_after].value);
    } else {
      // Both basins collapsed onto one optimum at the midpoint; bound the gap
      // by the global values on either side of the final bracket.
      gap = std::abs(eval(lo).result.global().value -
                     eval(hi).result.global().value);
    }
    out.push_back({at, share_lo, share_hi, gap});
  }
  return out;
}

}  // namespace techfolio::analysis
