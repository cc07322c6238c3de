#include "techfolio/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "techfolio/objective.hpp"
#include "techfolio/parallel.hpp"

namespace techfolio::optimizer {

namespace {

constexpr double kInvPhi = 0.6180339887498949;   // (sqrt(5) - 1) / 2
constexpr double kInvPhi2 = 0.3819660112501051;  // kInvPhi^2

double guarded(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

struct BestPoint {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
  void offer(double px, double pv) {
    if (pv < value) {
      value = pv;
      x = px;
    }
  }
};

// Classic four-point golden-section search on [a, b]; returns the best point
// actually evaluated (seeded with `seed_x`, `seed_v` so the result can never
// be worse than the grid candidate that produced the bracket).
BestPoint golden_section(const std::function<double(double)>& f, double a, double b,
                         double tol, double seed_x, double seed_v) {
  BestPoint best;
  best.offer(seed_x, seed_v);
  double x1 = a + kInvPhi2 * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = guarded(f, x1);
  double f2 = guarded(f, x2);
  best.offer(x1, f1);
  best.offer(x2, f2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = a + kInvPhi2 * (b - a);
      f1 = guarded(f, x1);
      best.offer(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = guarded(f, x2);
      best.offer(x2, f2);
    }
  }
  return best;
}

OptimizationResult degenerate_result(std::size_t dims) {
  OptimizationResult r;
  LocalOptimum o;
  o.location.assign(dims, 0.0);
  o.value = 0.0;
  o.kind = SolutionKind::corner;
  o.is_global = true;
  r.optima.push_back(std::move(o));
  r.grid_resolution = 1;
  r.refined = false;
  return r;
}

void flag_globals(std::vector<LocalOptimum>& optima, double value_tol) {
  double vmin = std::numeric_limits<double>::infinity();
  for (const auto& o : optima) vmin = std::min(vmin, o.value);
  for (auto& o : optima) o.is_global = o.value <= vmin + value_tol;
}

}  // namespace

const LocalOptimum& OptimizationResult::global() const {
  for (const auto& o : optima)
    if (o.is_global) return o;
  return optima.front();
}

OptimizationResult minimize_scalar(const std::function<double(double)>& f,
                                   double lo, double hi, const Settings& settings) {
  if (!(hi > lo)) throw std::invalid_argument("minimize_scalar requires hi > lo");
  const int n = settings.grid_resolution > 0 ? settings.grid_resolution : 2001;
  if (n < 3) throw std::invalid_argument("grid_resolution must be >= 3");

  const double width = hi - lo;
  const double step = width / (n - 1);
  const double loc_tol = settings.location_tolerance_rel * width;
  const double btol = settings.boundary_tolerance_rel * width;

  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? hi : lo + i * step;
    fs[i] = guarded(f, xs[i]);
  }
  const double f_mid = fs[(n - 1) / 2];
  const double value_tol =
      settings.value_tolerance_rel * std::max(std::abs(f_mid), 1e-300);

  std::vector<BestPoint> found;
  // Interior brackets: discrete slope changes from non-increasing to
  // non-decreasing.
  for (int i = 1; i + 1 < n; ++i) {
    if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1])
      found.push_back(golden_section(f, xs[i - 1], xs[i + 1], loc_tol, xs[i], fs[i]));
  }
  // Boundary candidates: always evaluated, kept when the discrete slope points
  // into the boundary.
  if (fs[0] <= fs[1]) found.push_back({xs[0], fs[0]});
  if (fs[n - 1] <= fs[n - 2]) found.push_back({xs[n - 1], fs[n - 1]});

  // Undefined regions (NaN, mapped to +inf) form plateaus that pass the
  // discrete tests above but are not minima of anything; drop them. Keep one
  // boundary point if the whole domain is undefined so the result is never
  // empty.
  found.erase(std::remove_if(found.begin(), found.end(),
                             [](const BestPoint& p) {
                               return !std::isfinite(p.value);
                             }),
              found.end());
  if (found.empty()) found.push_back({xs[0], fs[0]});

  // Snap near-boundary refinements onto the boundary exactly.
  for (auto& p : found) {
    if (p.x - lo <= btol) p.x = lo;
    if (hi - p.x <= btol) p.x = hi;
  }

  std::sort(found.begin(), found.end(),
            [](const BestPoint& a, const BestPoint& b) { return a.x < b.x; });
  // Merge refinements that collapsed into the same basin minimum.
  const double merge_dist = std::max(0.5 * step, 4.0 * loc_tol);
  std::vector<BestPoint> merged;
  for (const auto& p : found) {
    if (!merged.empty() && p.x - merged.back().x < merge_dist) {
      if (p.value < merged.back().value) merged.back() = p;
    } else {
      merged.push_back(p);
    }
  }

  OptimizationResult result;
  result.grid_resolution = n;
  result.refined = true;
  result.value_tolerance = value_tol;
  result.location_tolerance = loc_tol;
  for (const auto& p : merged) {
    LocalOptimum o;
    o.location = {p.x};
    o.value = p.value;
    o.kind = (p.x <= lo + btol || p.x >= hi - btol) ? SolutionKind::corner
                                                    : SolutionKind::interior;
    o.is_global = false;
    result.optima.push_back(std::move(o));
  }
  flag_globals(result.optima, value_tol);
  return result;
}

OptimizationResult optimize_one_period(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const Settings& settings) {
  if (market.periods != 1)
    throw std::invalid_argument("optimize_one_period requires market.periods == 1");
  if (market.demand_K == 0.0) return degenerate_result(1);
  const auto f = [&](double qA) {
    return objective::one_period(techA, techB, market, qA).total;
  };
  return minimize_scalar(f, 0.0, market.demand_K, settings);
}

OptimizationResult optimize_two_period(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const Settings& settings) {
  if (market.periods != 2)
    throw std::invalid_argument("optimize_two_period requires market.periods == 2");
  const double K = market.demand_K;
  if (K == 0.0) return degenerate_result(2);
  const int n = settings.grid_resolution > 0 ? settings.grid_resolution : 301;
  if (n < 3) throw std::invalid_argument("grid_resolution must be >= 3");

  const double step = K / (n - 1);
  const double loc_tol = settings.location_tolerance_rel * K;
  const double btol = settings.boundary_tolerance_rel * K;

  const auto f = [&](double q1A, double q2A) {
    const double v = objective::two_period(techA, techB, market, q1A, q2A).total;
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = i == n - 1 ? K : i * step;

  std::vector<double> vals(static_cast<std::size_t>(n) * n);
  parallel_chunks(n, settings.n_threads, [&](std::size_t row_first, std::size_t row_last) {
    for (std::size_t i = row_first; i < row_last; ++i)
      for (int j = 0; j < n; ++j)
        vals[i * n + j] = f(xs[i], xs[j]);
  });

  const double f_mid = f(0.5 * K, 0.5 * K);
  const double value_tol =
      settings.value_tolerance_rel * std::max(std::abs(f_mid), 1e-300);

  // Cells no worse than every existing 8-neighbour are refinement seeds;
  // boundary cells just have fewer neighbours to beat.
  struct Candidate {
    double x, y, value;
  };
  std::vector<Candidate> seeds;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = vals[static_cast<std::size_t>(i) * n + j];
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
          if (vals[static_cast<std::size_t>(ii) * n + jj] < v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) seeds.push_back({xs[i], xs[j], v});
    }
  }

  // Undefined regions (NaN, mapped to +inf) form plateaus whose cells all pass
  // the neighbour test; they are not minima and must not seed refinement.
  seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                             [](const Candidate& c) {
                               return !std::isfinite(c.value);
                             }),
              seeds.end());
  if (seeds.empty()) seeds.push_back({xs[0], xs[0], vals[0]});

  // Coordinate-descent refinement; each line search stays within one grid cell
  // of the current point so the seed cannot hop into a different basin.
  std::vector<Candidate> refined(seeds.size());
  parallel_chunks(seeds.size(), settings.n_threads,
                  [&](std::size_t first, std::size_t last) {
    for (std::size_t s = first; s < last; ++s) {
      double x = seeds[s].x, y = seeds[s].y, v = seeds[s].value;
      for (int iter = 0; iter < 200; ++iter) {
        const auto fx = [&](double t) { return f(t, y); };
        BestPoint bx = golden_section(fx, std::max(0.0, x - step),
                                      std::min(K, x + step), loc_tol, x, v);
        const auto fy = [&](double t) { return f(bx.x, t); };
        BestPoint by = golden_section(fy, std::max(0.0, y - step),
                                      std::min(K, y + step), loc_tol, y, bx.value);
        const double move = std::max(std::abs(bx.x - x), std::abs(by.x - y));
        x = bx.x;
        y = by.x;
        v = by.value;
        if (move < loc_tol) break;
      }
      if (x <= btol) x = 0.0;
      if (K - x <= btol) x = K;
      if (y <= btol) y = 0.0;
      if (K - y <= btol) y = K;
      refined[s] = {x, y, f(x, y)};
    }
  });

  // Cluster refinements that converged to the same point.
  std::sort(refined.begin(), refined.end(), [](const Candidate& a, const Candidate& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  std::vector<Candidate> merged;
  const double merge_dist = 0.5 * step;
  for (const auto& c : refined) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (std::abs(m.x - c.x) < merge_dist && std::abs(m.y - c.y) < merge_dist) {
        if (c.value < m.value) m = c;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(c);
  }

  OptimizationResult result;
  result.grid_resolution = n;
  result.refined = true;
  result.value_tolerance = value_tol;
  result.location_tolerance = loc_tol;
  for (const auto& c : merged) {
    LocalOptimum o;
    o.location = {c.x, c.y};
    o.value = c.value;
    const bool on_boundary = c.x <= btol || c.x >= K - btol || c.y <= btol || c.y >= K - btol;
    o.kind = on_boundary ? SolutionKind::corner : SolutionKind::interior;
    o.is_global = false;
    result.optima.push_back(std::move(o));
  }
  std::sort(result.optima.begin(), result.optima.end(),
            [](const LocalOptimum& a, const LocalOptimum& b) {
              return a.location < b.location;
            });
  flag_globals(result.optima, value_tol);
  return result;
}

SolutionKind classify_solution(const std::vector<double>& location,
                               const MarketSpec& market,
                               double boundary_tolerance_rel) {
  const double K = market.demand_K;
  const double btol = boundary_tolerance_rel * K;
  for (double c : location) {
    if (c < 0.0 || c > K)
      throw std::domain_error("location outside the closed share domain");
    if (c <= btol || c >= K - btol) return SolutionKind::corner;
  }
  return SolutionKind::interior;
}

}  // namespace techfolio::optimizer
