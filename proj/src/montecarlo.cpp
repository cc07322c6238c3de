#include "techfolio/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "techfolio/curves.hpp"
#include "techfolio/objective.hpp"
#include "techfolio/parallel.hpp"
#include "techfolio/rng.hpp"

namespace techfolio::montecarlo {

namespace {

// Fixed accumulation granularity: chunk totals are merged in index order, so
// results are bit-identical no matter how chunks are assigned to threads.
constexpr std::size_t kChunk = std::size_t{1} << 16;

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  void merge(const Kahan& o) {
    add(o.sum);
    add(-o.carry);
  }
};

// Power sums s1..s4 of samples shifted by a fixed offset. Shifting by the
// first sample keeps the sums small (good conditioning) without changing any
// central moment, and makes the zero-noise case exact: all samples equal the
// shift, so every sum is exactly zero.
struct MomentSums {
  double shift = 0.0;
  Kahan s1, s2, s3, s4;
  void add(double raw) {
    const double y = raw - shift;
    const double y2 = y * y;
    s1.add(y);
    s2.add(y2);
    s3.add(y2 * y);
    s4.add(y2 * y2);
  }
  void merge(const MomentSums& o) {
    s1.merge(o.s1);
    s2.merge(o.s2);
    s3.merge(o.s3);
    s4.merge(o.s4);
  }
};

struct Moments {
  double mean, variance, se_mean, se_variance;
};

Moments finish(const MomentSums& ms, std::size_t n_samples) {
  const double n = static_cast<double>(n_samples);
  const double ybar = ms.s1.sum / n;
  const double r2 = ms.s2.sum / n;
  const double r3 = ms.s3.sum / n;
  const double r4 = ms.s4.sum / n;
  const double m2 = std::max(0.0, r2 - ybar * ybar);
  const double m4 = std::max(
      0.0, r4 - 4.0 * ybar * r3 + 6.0 * ybar * ybar * r2 - 3.0 * std::pow(ybar, 4));
  const double svar = n_samples > 1 ? m2 * n / (n - 1.0) : 0.0;
  return {ms.shift + ybar, svar, std::sqrt(svar / n),
          std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

// Cross power sums for a covariance estimate, both coordinates shifted.
struct CrossSums {
  double shift_x = 0.0, shift_y = 0.0;
  Kahan sx, sy, sxy, sx2, sy2, sx2y, sxy2, sx2y2;
  void add(double rx, double ry) {
    const double x = rx - shift_x;
    const double y = ry - shift_y;
    sx.add(x);
    sy.add(y);
    sxy.add(x * y);
    sx2.add(x * x);
    sy2.add(y * y);
    sx2y.add(x * x * y);
    sxy2.add(x * y * y);
    sx2y2.add(x * x * y * y);
  }
  void merge(const CrossSums& o) {
    sx.merge(o.sx);
    sy.merge(o.sy);
    sxy.merge(o.sxy);
    sx2.merge(o.sx2);
    sy2.merge(o.sy2);
    sx2y.merge(o.sx2y);
    sxy2.merge(o.sxy2);
    sx2y2.merge(o.sx2y2);
  }
};

struct CovMoments {
  double covariance, se_covariance;
};

CovMoments finish_cov(const CrossSums& cs, std::size_t n_samples) {
  const double n = static_cast<double>(n_samples);
  const double a = cs.sx.sum / n;
  const double b = cs.sy.sum / n;
  const double cov =
      n_samples > 1 ? (cs.sxy.sum - cs.sx.sum * cs.sy.sum / n) / (n - 1.0) : 0.0;
  const double m11 = cs.sxy.sum / n - a * b;
  const double m22 = cs.sx2y2.sum / n - 2.0 * b * (cs.sx2y.sum / n) -
                     2.0 * a * (cs.sxy2.sum / n) + 4.0 * a * b * (cs.sxy.sum / n) +
                     b * b * (cs.sx2.sum / n) + a * a * (cs.sy2.sum / n) -
                     3.0 * a * a * b * b;
  return {cov, std::sqrt(std::max(0.0, m22 - m11 * m11) / n)};
}

// One joint draw of both technologies' unit costs and the resulting portfolio
// cost, keyed purely by (seed, sample index). Stream discipline matches
// curves::sample_cost_paths with the technology as the stream slot, so at
// rho = 0 these are exactly the same cost paths the curves module produces.
struct Sampler {
  int periods;
  std::uint64_t seed;
  double d = 1.0;  // period-2 discount factor e^(-r)
  double qa1 = 0.0, qa2 = 0.0, qb1 = 0.0, qb2 = 0.0;
  double cbarA1 = 0.0, cbarA2 = 0.0, cbarB1 = 0.0, cbarB2 = 0.0;
  double sigA = 0.0, sigB = 0.0, rho = 0.0, rho_c = 1.0;

  Sampler(const TechnologyParams& techA, const TechnologyParams& techB,
          const MarketSpec& market, const std::vector<double>& qA,
          std::uint64_t seed_)
      : periods(market.periods), seed(seed_) {
    if (qA.size() != static_cast<std::size_t>(market.periods))
      throw std::invalid_argument(
          "portfolio must specify one production value per period");
    for (double q : qA)
      if (!(q >= 0.0) || !(q <= market.demand_K))
        throw std::domain_error("production must lie in [0, K]");
    if (market.periods == 2 && market.rho != 0.0)
      throw std::invalid_argument(
          "correlated shocks are only modeled in the one-period setting");
    sigA = techA.sigma;
    sigB = techB.sigma;
    rho = market.rho;
    rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    qa1 = qA[0];
    qb1 = market.demand_K - qA[0];
    cbarA1 = curves::deterministic_unit_cost(techA, qa1);
    cbarB1 = curves::deterministic_unit_cost(techB, qb1);
    if (periods == 2) {
      qa2 = qA[1];
      qb2 = market.demand_K - qA[1];
      d = std::exp(-market.discount_r);
      cbarA2 = curves::deterministic_unit_cost(techA, qa1 + qa2);
      cbarB2 = curves::deterministic_unit_cost(techB, qb1 + qb2);
    }
  }

  struct Draw {
    double cA1, cB1, cA2, cB2, v;
  };

  Draw sample(std::size_t i) const {
    Draw out{};
    if (periods == 1) {
      const double xiA = rng::standard_normal(seed, rng::stream_id(0, 0), i);
      const double xiB = rng::standard_normal(seed, rng::stream_id(1, 0), i);
      out.cA1 = cbarA1 * std::exp(sigA * xiA);
      out.cB1 = cbarB1 * std::exp(sigB * (rho * xiA + rho_c * xiB));
      out.v = qa1 * out.cA1 + qb1 * out.cB1;
    } else {
      const double xiA1 = rng::standard_normal(seed, rng::stream_id(0, 0), i);
      const double xiA2 = rng::standard_normal(seed, rng::stream_id(0, 1), i);
      const double xiB1 = rng::standard_normal(seed, rng::stream_id(1, 0), i);
      const double xiB2 = rng::standard_normal(seed, rng::stream_id(1, 1), i);
      out.cA1 = cbarA1 * std::exp(sigA * xiA1);
      out.cA2 = cbarA2 * std::exp(sigA * (xiA1 + xiA2));
      out.cB1 = cbarB1 * std::exp(sigB * xiB1);
      out.cB2 = cbarB2 * std::exp(sigB * (xiB1 + xiB2));
      out.v = qa1 * out.cA1 + d * qa2 * out.cA2 + qb1 * out.cB1 + d * qb2 * out.cB2;
    }
    return out;
  }
};

MomentCheck make_check(std::string quantity, double analytic, double estimate,
                       double std_error) {
  MomentCheck c;
  c.quantity = std::move(quantity);
  c.analytic = analytic;
  c.estimate = estimate;
  c.std_error = std_error;
  if (std_error > 0.0)
    c.z = (estimate - analytic) / std_error;
  else
    c.z = estimate == analytic ? 0.0 : std::numeric_limits<double>::infinity();
  c.within_3se = std::abs(c.z) <= 3.0;
  return c;
}

}  // namespace

ObjectiveEstimate estimate_objective(const TechnologyParams& techA,
                                     const TechnologyParams& techB,
                                     const MarketSpec& market,
                                     const std::vector<double>& qA,
                                     std::size_t n_samples, std::uint64_t seed,
                                     int n_threads) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  const Sampler sampler(techA, techB, market, qA, seed);
  const double shift = sampler.sample(0).v;

  const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<MomentSums> chunk_sums(n_chunks);
  parallel_chunks(n_chunks, n_threads, [&](std::size_t first, std::size_t last) {
    for (std::size_t c = first; c < last; ++c) {
      MomentSums ms;
      ms.shift = shift;
      const std::size_t hi = std::min(n_samples, (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < hi; ++i) ms.add(sampler.sample(i).v);
      chunk_sums[c] = ms;
    }
  });
  MomentSums total;
  total.shift = shift;
  for (const auto& cs : chunk_sums) total.merge(cs);

  const Moments m = finish(total, n_samples);
  ObjectiveEstimate out;
  out.expectation = {m.mean, m.se_mean, n_samples, seed};
  out.variance = {m.variance, m.se_variance, n_samples, seed};
  return out;
}

std::vector<MomentCheck> check_moments(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const std::vector<double>& qA,
                                       std::size_t n_samples,
                                       std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  const Sampler sampler(techA, techB, market, qA, seed);
  const Sampler::Draw first = sampler.sample(0);

  if (market.periods == 1) {
    MomentSums mA, mB, mV;
    mA.shift = first.cA1;
    mB.shift = first.cB1;
    mV.shift = first.v;
    CrossSums cAB;
    cAB.shift_x = first.cA1;
    cAB.shift_y = first.cB1;
    for (std::size_t i = 0; i < n_samples; ++i) {
      const auto s = sampler.sample(i);
      mA.add(s.cA1);
      mB.add(s.cB1);
      mV.add(s.v);
      if (market.rho != 0.0) cAB.add(s.cA1, s.cB1);
    }
    const Moments a = finish(mA, n_samples);
    const Moments b = finish(mB, n_samples);
    const Moments v = finish(mV, n_samples);
    const auto amA = curves::cost_moments(techA, qA[0]);
    const auto amB = curves::cost_moments(techB, market.demand_K - qA[0]);
    const auto obj = objective::one_period(techA, techB, market, qA[0]);

    std::vector<MomentCheck> rows;
    rows.push_back(make_check("unit_cost_mean_A", amA.expectation, a.mean, a.se_mean));
    rows.push_back(make_check("unit_cost_var_A", amA.variance, a.variance, a.se_variance));
    rows.push_back(make_check("unit_cost_mean_B", amB.expectation, b.mean, b.se_mean));
    rows.push_back(make_check("unit_cost_var_B", amB.variance, b.variance, b.se_variance));
    if (market.rho != 0.0) {
      const double analytic_cov =
          curves::deterministic_unit_cost(techA, qA[0]) *
          curves::deterministic_unit_cost(techB, market.demand_K - qA[0]) *
          std::exp(0.5 * (techA.sigma * techA.sigma + techB.sigma * techB.sigma)) *
          std::expm1(market.rho * techA.sigma * techB.sigma);
      const CovMoments cm = finish_cov(cAB, n_samples);
      rows.push_back(make_check("unit_cost_cov_AB", analytic_cov, cm.covariance,
                                cm.se_covariance));
    }
    rows.push_back(make_check("portfolio_mean", obj.expectation, v.mean, v.se_mean));
    rows.push_back(make_check("portfolio_var", obj.variance, v.variance, v.se_variance));
    return rows;
  }

  MomentSums mA1, mA2, mB1, mB2, mV;
  mA1.shift = first.cA1;
  mA2.shift = first.cA2;
  mB1.shift = first.cB1;
  mB2.shift = first.cB2;
  mV.shift = first.v;
  CrossSums cA12, cB12;
  cA12.shift_x = first.cA1;
  cA12.shift_y = first.cA2;
  cB12.shift_x = first.cB1;
  cB12.shift_y = first.cB2;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto s = sampler.sample(i);
    mA1.add(s.cA1);
    mA2.add(s.cA2);
    mB1.add(s.cB1);
    mB2.add(s.cB2);
    mV.add(s.v);
    cA12.add(s.cA1, s.cA2);
    cB12.add(s.cB1, s.cB2);
  }
  const double K = market.demand_K;
  const auto amA = curves::two_period_cost_moments(techA, qA[0], qA[1]);
  const auto amB = curves::two_period_cost_moments(techB, K - qA[0], K - qA[1]);
  const auto obj = objective::two_period(techA, techB, market, qA[0], qA[1]);

  const Moments a1 = finish(mA1, n_samples);
  const Moments a2 = finish(mA2, n_samples);
  const Moments b1 = finish(mB1, n_samples);
  const Moments b2 = finish(mB2, n_samples);
  const Moments v = finish(mV, n_samples);
  const CovMoments covA = finish_cov(cA12, n_samples);
  const CovMoments covB = finish_cov(cB12, n_samples);

  std::vector<MomentCheck> rows;
  rows.push_back(make_check("unit_cost_mean_A1", amA.e1, a1.mean, a1.se_mean));
  rows.push_back(make_check("unit_cost_var_A1", amA.var1, a1.variance, a1.se_variance));
  rows.push_back(make_check("unit_cost_mean_A2", amA.e2, a2.mean, a2.se_mean));
  rows.push_back(make_check("unit_cost_var_A2", amA.var2, a2.variance, a2.se_variance));
  rows.push_back(make_check("unit_cost_cov_A12", amA.cov12, covA.covariance,
                            covA.se_covariance));
  rows.push_back(make_check("unit_cost_mean_B1", amB.e1, b1.mean, b1.se_mean));
  rows.push_back(make_check("unit_cost_var_B1", amB.var1, b1.variance, b1.se_variance));
  rows.push_back(make_check("unit_cost_mean_B2", amB.e2, b2.mean, b2.se_mean));
  rows.push_back(make_check("unit_cost_var_B2", amB.var2, b2.variance, b2.se_variance));
  rows.push_back(make_check("unit_cost_cov_B12", amB.cov12, covB.covariance,
                            covB.se_covariance));
  rows.push_back(make_check("portfolio_mean", obj.expectation, v.mean, v.se_mean));
  rows.push_back(make_check("portfolio_var", obj.variance, v.variance, v.se_variance));
  return rows;
}

std::vector<CoverageRow> coverage(const TechnologyParams& techA,
                                  const TechnologyParams& techB,
                                  const MarketSpec& market,
                                  const std::vector<double>& qA,
                                  std::size_t n_samples, int n_trials,
                                  std::uint64_t base_seed) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  std::vector<CoverageRow> rows;
  for (int t = 0; t < n_trials; ++t) {
    const auto checks =
        check_moments(techA, techB, market, qA, n_samples, base_seed + t);
    if (t == 0) {
      rows.resize(checks.size());
      for (std::size_t i = 0; i < checks.size(); ++i) {
        rows[i].quantity = checks[i].quantity;
        rows[i].analytic = checks[i].analytic;
      }
    }
    for (std::size_t i = 0; i < checks.size(); ++i) {
      rows[i].trials += 1;
      rows[i].within_3se += checks[i].within_3se ? 1 : 0;
      rows[i].max_abs_z = std::max(rows[i].max_abs_z, std::abs(checks[i].z));
    }
  }
  return rows;
}

}  // namespace techfolio::montecarlo
