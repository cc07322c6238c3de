#pragma once

#include <functional>
#include <vector>

#include "techfolio/technology.hpp"

namespace techfolio::optimizer {

enum class SolutionKind { corner, interior };

struct LocalOptimum {
  std::vector<double> location;  // {qA} for one period, {q1A, q2A} for two
  double value;
  SolutionKind kind;
  bool is_global;  // all optima tied within the value tolerance carry true
};

struct Settings {
  // Evaluation points per axis; 0 picks the problem default (2001 one-period,
  // 301 per axis two-period). Must be >= 3 when given.
  int grid_resolution = 0;
  // All tolerances are dimensionless and get scaled by the problem:
  // location by the domain width, value by |f| at the domain midpoint.
  double location_tolerance_rel = 1e-10;
  double value_tolerance_rel = 1e-12;
  double boundary_tolerance_rel = 1e-9;
  // Threads for grid evaluation (two-period) and batch callers; 0 = hardware
  // concurrency. Results are merged in index order, so the output is
  // bit-identical for every thread count.
  int n_threads = 1;
};

struct OptimizationResult {
  std::vector<LocalOptimum> optima;  // sorted by location, never empty
  int grid_resolution = 0;
  bool refined = false;
  double value_tolerance = 0.0;      // resolved absolute tie tolerance
  double location_tolerance = 0.0;   // resolved absolute location tolerance

  const LocalOptimum& global() const;  // first (smallest-location) global
};

// Minimize an arbitrary scalar function on [lo, hi]: uniform grid, discrete
// local-minimum detection, golden-section refinement of each bracket, boundary
// candidates always evaluated then filtered, tie-aware global flagging.
OptimizationResult minimize_scalar(const std::function<double(double)>& f,
                                   double lo, double hi,
                                   const Settings& settings = {});

// All local minima of the one-period objective over qA in [0, K].
OptimizationResult optimize_one_period(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const Settings& settings = {});

// All local minima of the two-period objective over (q1A, q2A) in [0, K]^2:
// full-grid evaluation, 8-neighbour local-minimum cells, coordinate-descent
// golden-section refinement.
OptimizationResult optimize_two_period(const TechnologyParams& techA,
                                       const TechnologyParams& techB,
                                       const MarketSpec& market,
                                       const Settings& settings = {});

// corner iff any coordinate lies within the boundary tolerance of 0 or K.
// A boundary point that also happens to be stationary still counts as corner.
SolutionKind classify_solution(const std::vector<double>& location,
                               const MarketSpec& market,
                               double boundary_tolerance_rel = 1e-9);

}  // namespace techfolio::optimizer
