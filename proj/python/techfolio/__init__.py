"""Optimal production portfolios for competing experience-curve technologies.

Thin python layer over the C++ core: parameter types, analytic cost moments,
the mean-variance objective, local-optima enumeration, closed-form thresholds,
efficient-frontier geometry and Monte Carlo validation.
"""

from ._core import (
    Corner,
    FeasibleSetResult,
    FrontierPoint,
    LocalOptimum,
    MarketSpec,
    McEstimate,
    MomentCheck,
    ObjectiveEstimate,
    ObjectiveValue,
    OptimizationResult,
    SolutionKind,
    TechnologyParams,
    TwoPeriodCostMoments,
    __version__,
    alpha_switch,
    check_moments,
    deterministic_unit_cost,
    estimate_objective,
    feasible_set,
    lambda_diversification,
    lambda_switch_closed_form,
    markowitz_zeroth_order,
    one_period_objective,
    optimize_one_period,
    optimize_two_period,
    series_first_order,
    two_period_cost_moments,
    two_period_objective,
    unit_cost_expectation,
    unit_cost_variance,
)

__all__ = [
    "Corner",
    "FeasibleSetResult",
    "FrontierPoint",
    "LocalOptimum",
    "MarketSpec",
    "McEstimate",
    "MomentCheck",
    "ObjectiveEstimate",
    "ObjectiveValue",
    "OptimizationResult",
    "SolutionKind",
    "TechnologyParams",
    "TwoPeriodCostMoments",
    "__version__",
    "alpha_switch",
    "check_moments",
    "deterministic_unit_cost",
    "estimate_objective",
    "feasible_set",
    "lambda_diversification",
    "lambda_switch_closed_form",
    "markowitz_zeroth_order",
    "one_period_objective",
    "optimize_one_period",
    "optimize_two_period",
    "series_first_order",
    "two_period_cost_moments",
    "two_period_objective",
    "unit_cost_expectation",
    "unit_cost_variance",
]
