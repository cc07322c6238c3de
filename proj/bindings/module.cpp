#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "techfolio/analysis.hpp"
#include "techfolio/curves.hpp"
#include "techfolio/montecarlo.hpp"
#include "techfolio/objective.hpp"
#include "techfolio/optimizer.hpp"
#include "techfolio/technology.hpp"
#include "techfolio/version.hpp"

namespace py = pybind11;
using namespace techfolio;

namespace {

optimizer::Settings make_settings(int grid_resolution, int n_threads) {
  optimizer::Settings s;
  s.grid_resolution = grid_resolution;
  s.n_threads = n_threads;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal production portfolios for competing experience-curve "
            "technologies under mean-variance risk";
  m.attr("__version__") = kVersion;

  py::class_<TechnologyParams>(m, "TechnologyParams")
      .def(py::init<std::string, double, double, double, double>(),
           py::arg("name"), py::arg("c0"), py::arg("z0"), py::arg("alpha"),
           py::arg("sigma"))
      .def_readonly("name", &TechnologyParams::name)
      .def_readonly("c0", &TechnologyParams::c0)
      .def_readonly("z0", &TechnologyParams::z0)
      .def_readonly("alpha", &TechnologyParams::alpha)
      .def_readonly("sigma", &TechnologyParams::sigma)
      .def("progress_ratio", &TechnologyParams::progress_ratio)
      .def("learning_rate", &TechnologyParams::learning_rate)
      .def("__repr__", [](const TechnologyParams& t) {
        return "TechnologyParams(name='" + t.name +
               "', c0=" + std::to_string(t.c0) + ", z0=" + std::to_string(t.z0) +
               ", alpha=" + std::to_string(t.alpha) +
               ", sigma=" + std::to_string(t.sigma) + ")";
      });

  py::class_<MarketSpec>(m, "MarketSpec")
      .def(py::init<double, double, double, double, int>(), py::arg("K"),
           py::arg("lam"), py::arg("rho") = 0.0, py::arg("r") = 0.0,
           py::arg("periods") = 1)
      .def_readonly("K", &MarketSpec::demand_K)
      .def_readonly("lam", &MarketSpec::lambda)
      .def_readonly("rho", &MarketSpec::rho)
      .def_readonly("r", &MarketSpec::discount_r)
      .def_readonly("periods", &MarketSpec::periods)
      .def_static("one_period", &MarketSpec::one_period, py::arg("K"),
                  py::arg("lam"), py::arg("rho") = 0.0)
      .def_static("two_period", &MarketSpec::two_period, py::arg("K"),
                  py::arg("lam"), py::arg("r"));

  // --- cost curves ---------------------------------------------------------
  m.def("deterministic_unit_cost", &curves::deterministic_unit_cost,
        py::arg("tech"), py::arg("q"));
  m.def("unit_cost_expectation", &curves::unit_cost_expectation, py::arg("tech"),
        py::arg("q"));
  m.def("unit_cost_variance", &curves::unit_cost_variance, py::arg("tech"),
        py::arg("q"));

  py::class_<curves::TwoPeriodCostMoments>(m, "TwoPeriodCostMoments")
      .def_readonly("e1", &curves::TwoPeriodCostMoments::e1)
      .def_readonly("e2", &curves::TwoPeriodCostMoments::e2)
      .def_readonly("var1", &curves::TwoPeriodCostMoments::var1)
      .def_readonly("var2", &curves::TwoPeriodCostMoments::var2)
      .def_readonly("cov12", &curves::TwoPeriodCostMoments::cov12);
  m.def("two_period_cost_moments", &curves::two_period_cost_moments,
        py::arg("tech"), py::arg("q1"), py::arg("q2"));

  // --- objective -------------------------------------------------------------
  py::class_<objective::ObjectiveValue>(m, "ObjectiveValue")
      .def_readonly("total", &objective::ObjectiveValue::total)
      .def_readonly("expectation", &objective::ObjectiveValue::expectation)
      .def_readonly("variance", &objective::ObjectiveValue::variance)
      .def_readonly("series_valid", &objective::ObjectiveValue::series_valid);
  m.def("one_period_objective", &objective::one_period, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("qA"));
  m.def("two_period_objective", &objective::two_period, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("q1A"), py::arg("q2A"));
  m.def("markowitz_zeroth_order", &objective::markowitz_zeroth_order,
        py::arg("techA"), py::arg("techB"), py::arg("market"), py::arg("qA"));
  m.def("series_first_order", &objective::series_first_order, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("qA"));

  // --- optimizer -------------------------------------------------------------
  py::enum_<optimizer::SolutionKind>(m, "SolutionKind")
      .value("corner", optimizer::SolutionKind::corner)
      .value("interior", optimizer::SolutionKind::interior);

  py::class_<optimizer::LocalOptimum>(m, "LocalOptimum")
      .def_readonly("location", &optimizer::LocalOptimum::location)
      .def_readonly("value", &optimizer::LocalOptimum::value)
      .def_readonly("kind", &optimizer::LocalOptimum::kind)
      .def_readonly("is_global", &optimizer::LocalOptimum::is_global);

  py::class_<optimizer::OptimizationResult>(m, "OptimizationResult")
      .def_readonly("optima", &optimizer::OptimizationResult::optima)
      .def_readonly("grid_resolution", &optimizer::OptimizationResult::grid_resolution)
      .def_readonly("value_tolerance", &optimizer::OptimizationResult::value_tolerance)
      .def_readonly("location_tolerance",
                    &optimizer::OptimizationResult::location_tolerance)
      .def("global_optimum", &optimizer::OptimizationResult::global,
           py::return_value_policy::reference_internal);

  m.def(
      "optimize_one_period",
      [](const TechnologyParams& a, const TechnologyParams& b,
         const MarketSpec& mkt, int grid_resolution, int n_threads) {
        return optimizer::optimize_one_period(a, b, mkt,
                                              make_settings(grid_resolution, n_threads));
      },
      py::arg("techA"), py::arg("techB"), py::arg("market"),
      py::arg("grid_resolution") = 0, py::arg("n_threads") = 1);
  m.def(
      "optimize_two_period",
      [](const TechnologyParams& a, const TechnologyParams& b,
         const MarketSpec& mkt, int grid_resolution, int n_threads) {
        return optimizer::optimize_two_period(a, b, mkt,
                                              make_settings(grid_resolution, n_threads));
      },
      py::arg("techA"), py::arg("techB"), py::arg("market"),
      py::arg("grid_resolution") = 0, py::arg("n_threads") = 1);

  // --- analysis --------------------------------------------------------------
  py::enum_<analysis::Corner>(m, "Corner")
      .value("A", analysis::Corner::A)
      .value("B", analysis::Corner::B);

  m.def("lambda_diversification", &analysis::lambda_diversification,
        py::arg("techA"), py::arg("techB"), py::arg("K"), py::arg("corner"));
  m.def("lambda_switch_closed_form", &analysis::lambda_switch_closed_form,
        py::arg("techA"), py::arg("techB"), py::arg("K"));
  m.def("alpha_switch", &analysis::alpha_switch, py::arg("techA"),
        py::arg("techB"), py::arg("K"), py::arg("lam"),
        py::arg("alpha_max") = 1.0);

  py::class_<analysis::FrontierPoint>(m, "FrontierPoint")
      .def_readonly("qA", &analysis::FrontierPoint::qA)
      .def_readonly("variance", &analysis::FrontierPoint::variance)
      .def_readonly("expectation", &analysis::FrontierPoint::expectation)
      .def_readonly("efficient", &analysis::FrontierPoint::efficient);

  py::class_<analysis::FeasibleSetResult>(m, "FeasibleSetResult")
      .def_readonly("points", &analysis::FeasibleSetResult::points)
      .def_readonly("efficient_components",
                    &analysis::FeasibleSetResult::efficient_components);
  m.def("feasible_set", &analysis::feasible_set, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("n_points") = 201);

  // --- monte carlo -----------------------------------------------------------
  py::class_<montecarlo::McEstimate>(m, "McEstimate")
      .def_readonly("mean", &montecarlo::McEstimate::mean)
      .def_readonly("std_error", &montecarlo::McEstimate::std_error)
      .def_readonly("n_samples", &montecarlo::McEstimate::n_samples)
      .def_readonly("seed", &montecarlo::McEstimate::seed);

  py::class_<montecarlo::ObjectiveEstimate>(m, "ObjectiveEstimate")
      .def_readonly("expectation", &montecarlo::ObjectiveEstimate::expectation)
      .def_readonly("variance", &montecarlo::ObjectiveEstimate::variance);

  m.def("estimate_objective", &montecarlo::estimate_objective, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("qA"), py::arg("n_samples"),
        py::arg("seed"), py::arg("n_threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<montecarlo::MomentCheck>(m, "MomentCheck")
      .def_readonly("quantity", &montecarlo::MomentCheck::quantity)
      .def_readonly("analytic", &montecarlo::MomentCheck::analytic)
      .def_readonly("estimate", &montecarlo::MomentCheck::estimate)
      .def_readonly("std_error", &montecarlo::MomentCheck::std_error)
      .def_readonly("z", &montecarlo::MomentCheck::z)
      .def_readonly("within_3se", &montecarlo::MomentCheck::within_3se);
  m.def("check_moments", &montecarlo::check_moments, py::arg("techA"),
        py::arg("techB"), py::arg("market"), py::arg("qA"), py::arg("n_samples"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
}
