#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "techfolio/analysis.hpp"
#include "techfolio/format.hpp"
#include "techfolio/montecarlo.hpp"
#include "techfolio/optimizer.hpp"
#include "techfolio/technology.hpp"
#include "techfolio/version.hpp"

using nlohmann::json;
namespace tf = techfolio;

namespace {

// Configuration problems exit with status 2, I/O problems with status 5;
// domain/range errors from the library map to 3/4 in main().
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Config access with diagnostics that name the offending key.

const json& require_key(const json& obj, const std::string& key,
                        const std::string& ctx) {
  if (!obj.is_object())
    throw ConfigError("config section '" + ctx + "' must be an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("missing config key '" + ctx + key + "'");
  return *it;
}

double get_number(const json& obj, const std::string& key, const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (!v.is_number())
    throw ConfigError("config key '" + ctx + key + "' must be a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& key,
                     const std::string& ctx, double dflt) {
  if (!obj.is_object() || !obj.contains(key)) return dflt;
  return get_number(obj, key, ctx);
}

long long get_integer(const json& obj, const std::string& key,
                      const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long long>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return static_cast<long long>(d);
  }
  throw ConfigError("config key '" + ctx + key + "' must be an integer");
}

long long get_integer_or(const json& obj, const std::string& key,
                         const std::string& ctx, long long dflt) {
  if (!obj.is_object() || !obj.contains(key)) return dflt;
  return get_integer(obj, key, ctx);
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (!v.is_string())
    throw ConfigError("config key '" + ctx + key + "' must be a string");
  return v.get<std::string>();
}

std::string get_string_or(const json& obj, const std::string& key,
                          const std::string& ctx, const std::string& dflt) {
  if (!obj.is_object() || !obj.contains(key)) return dflt;
  return get_string(obj, key, ctx);
}

// ---------------------------------------------------------------------------

struct RunConfig {
  tf::TechnologyParams techA;
  tf::TechnologyParams techB;
  tf::MarketSpec market;
  std::string command;
  json options;  // raw per-command options (may be an empty object)
  std::string out_path;
  std::string out_format;  // "csv" or "json"
  int precision = 12;
  int threads = 0;
  std::optional<std::uint64_t> seed_override;
  json resolved;  // effective configuration, echoed into JSON meta
};

tf::TechnologyParams parse_technology(const json& j, const std::string& ctx,
                                      const std::string& default_name) {
  return tf::TechnologyParams(get_string_or(j, "name", ctx, default_name),
                              get_number(j, "c0", ctx), get_number(j, "z0", ctx),
                              get_number(j, "alpha", ctx),
                              get_number(j, "sigma", ctx));
}

RunConfig load_config(const std::string& path, const std::string& command,
                      const std::string& out_override,
                      const std::string& format_override, int threads,
                      std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  const json& techs = require_key(doc, "technologies", "");
  if (!techs.is_array() || techs.size() != 2)
    throw ConfigError("config key 'technologies' must list exactly two entries");
  tf::TechnologyParams techA = parse_technology(techs[0], "technologies[0].", "A");
  tf::TechnologyParams techB = parse_technology(techs[1], "technologies[1].", "B");

  const json& mkt = require_key(doc, "market", "");
  tf::MarketSpec market(
      get_number(mkt, "K", "market."), get_number(mkt, "lambda", "market."),
      get_number_or(mkt, "rho", "market.", 0.0),
      get_number_or(mkt, "r", "market.", 0.0),
      static_cast<int>(get_integer_or(mkt, "periods", "market.", 1)));

  if (doc.contains("command")) {
    const std::string declared = get_string(doc, "command", "");
    if (declared != command)
      throw ConfigError("config key 'command' (" + declared +
                        ") does not match the invoked command (" + command + ")");
  }

  json options = json::object();
  if (doc.contains("options")) {
    if (!doc.at("options").is_object())
      throw ConfigError("config key 'options' must be an object");
    options = doc.at("options");
  }

  const json output = doc.contains("output") ? doc.at("output") : json::object();
  if (!output.is_object())
    throw ConfigError("config key 'output' must be an object");
  std::string out_path = get_string_or(output, "path", "output.", "");
  if (!out_override.empty()) out_path = out_override;
  if (out_path.empty())
    throw ConfigError("missing config key 'output.path' (or pass --out)");
  std::string out_format = get_string_or(output, "format", "output.", "csv");
  if (!format_override.empty()) out_format = format_override;
  if (out_format != "csv" && out_format != "json")
    throw ConfigError("config key 'output.format' must be 'csv' or 'json'");
  const long long precision = get_integer_or(output, "precision", "output.", 12);
  if (precision < 1 || precision > 17)
    throw ConfigError("config key 'output.precision' must be in [1, 17]");

  RunConfig cfg{std::move(techA),
                std::move(techB),
                market,
                command,
                options,
                std::move(out_path),
                std::move(out_format),
                static_cast<int>(precision),
                threads,
                seed_override,
                json::object()};
  cfg.resolved = {
      {"technologies",
       json::array({{{"name", cfg.techA.name},
                     {"c0", cfg.techA.c0},
                     {"z0", cfg.techA.z0},
                     {"alpha", cfg.techA.alpha},
                     {"sigma", cfg.techA.sigma}},
                    {{"name", cfg.techB.name},
                     {"c0", cfg.techB.c0},
                     {"z0", cfg.techB.z0},
                     {"alpha", cfg.techB.alpha},
                     {"sigma", cfg.techB.sigma}}})},
      {"market",
       {{"K", market.demand_K},
        {"lambda", market.lambda},
        {"rho", market.rho},
        {"r", market.discount_r},
        {"periods", market.periods}}},
      {"command", command},
      {"options", json::object()},  // filled with effective values per command
      {"output",
       {{"path", cfg.out_path}, {"format", cfg.out_format}, {"precision", cfg.precision}}},
      {"threads", threads}};
  return cfg;
}

// ---------------------------------------------------------------------------
// Output rendering.

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;
  json meta_extra = json::object();
};

std::string format_cell(const json& v, bool shortest, int precision) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return tf::format::csv_escape(v.get<std::string>());
  if (v.is_number_integer() || v.is_number_unsigned())
    return std::to_string(v.get<long long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "";
    if (shortest) return tf::format::format_double(d);
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, d, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
  }
  return tf::format::csv_escape(v.dump());
}

std::string render_csv(const Table& t, bool shortest, int precision) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += tf::format::csv_escape(t.columns[c]);
  }
  out += '\n';
  for (const json& row : t.rows) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ',';
      const auto it = row.find(t.columns[c]);
      if (it != row.end()) out += format_cell(*it, shortest, precision);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t, const RunConfig& cfg) {
  json doc;
  doc["meta"] = {{"tool_version", tf::kVersion}, {"config", cfg.resolved}};
  for (const auto& [k, v] : t.meta_extra.items()) doc["meta"][k] = v;
  doc["data"] = t.rows;
  return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write output file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed while writing output file: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move output into place: " + target.string() + ": " +
                  ec.message());
  }
}

// ---------------------------------------------------------------------------
// Command handlers.

double opt_share_sum(const tf::optimizer::LocalOptimum& o) {
  double s = 0.0;
  for (double q : o.location) s += q;
  return s;
}

Table optima_table(const tf::optimizer::OptimizationResult& res, int periods) {
  Table t;
  if (periods == 2)
    t.columns = {"q1A", "q2A", "value", "kind", "is_global"};
  else
    t.columns = {"qA", "value", "kind", "is_global"};
  for (const auto& o : res.optima) {
    json row;
    if (periods == 2) {
      row["q1A"] = o.location[0];
      row["q2A"] = o.location[1];
    } else {
      row["qA"] = o.location[0];
    }
    row["value"] = o.value;
    row["kind"] =
        o.kind == tf::optimizer::SolutionKind::corner ? "corner" : "interior";
    row["is_global"] = o.is_global;
    t.rows.push_back(std::move(row));
  }
  t.meta_extra = {{"grid_resolution", res.grid_resolution},
                  {"value_tolerance", res.value_tolerance},
                  {"location_tolerance", res.location_tolerance}};
  return t;
}

tf::optimizer::Settings make_settings(RunConfig& cfg) {
  tf::optimizer::Settings s;
  s.grid_resolution = static_cast<int>(
      get_integer_or(cfg.options, "grid_resolution", "options.", 0));
  s.n_threads = cfg.threads;
  cfg.resolved["options"]["grid_resolution"] = s.grid_resolution;
  return s;
}

Table run_optimize(RunConfig& cfg) {
  const auto s = make_settings(cfg);
  const auto res =
      cfg.market.periods == 2
          ? tf::optimizer::optimize_two_period(cfg.techA, cfg.techB, cfg.market, s)
          : tf::optimizer::optimize_one_period(cfg.techA, cfg.techB, cfg.market, s);
  return optima_table(res, cfg.market.periods);
}

Table run_two_period(RunConfig& cfg) {
  if (cfg.market.periods != 2)
    throw ConfigError("the two-period command requires config key 'market.periods' = 2");
  return run_optimize(cfg);
}

tf::analysis::SweepAxis parse_axis(const json& j, const std::string& ctx) {
  const std::string name = get_string(j, "param", ctx);
  const auto param = tf::analysis::parse_sweep_param(name);
  if (!param)
    throw ConfigError("config key '" + ctx +
                      "param' must be one of alphaB, sigmaB, c0B, z0B, lambda, "
                      "K, rho, r (got '" +
                      name + "')");
  tf::analysis::SweepAxis axis;
  axis.param = *param;
  axis.lo = get_number(j, "lo", ctx);
  axis.hi = get_number(j, "hi", ctx);
  axis.steps = static_cast<int>(get_integer(j, "steps", ctx));
  return axis;
}

json axis_echo(const tf::analysis::SweepAxis& axis) {
  return {{"param", tf::analysis::sweep_param_name(axis.param)},
          {"lo", axis.lo},
          {"hi", axis.hi},
          {"steps", axis.steps}};
}

Table run_sweep(RunConfig& cfg) {
  tf::analysis::SweepSpec spec{cfg.techA, cfg.techB, cfg.market,
                               parse_axis(require_key(cfg.options, "axis1", "options."),
                                          "options.axis1."),
                               std::nullopt, make_settings(cfg)};
  cfg.resolved["options"]["axis1"] = axis_echo(spec.axis1);
  if (cfg.options.contains("axis2")) {
    spec.axis2 = parse_axis(cfg.options.at("axis2"), "options.axis2.");
    cfg.resolved["options"]["axis2"] = axis_echo(*spec.axis2);
  }

  const auto res = tf::analysis::sweep_optimal_share(spec);
  Table t;
  t.columns = {"axis1", "axis2",
               "qA_share_global", "n_local_optima", "tie", "discontinuity_adjacent"};
  int failed = 0;
  for (const auto& node : res.nodes) {
    json row;
    row["axis1"] = node.axis1;
    row["axis2"] = node.axis2;  // NaN renders as an empty field / JSON null
    row["qA_share_global"] = node.share_global;
    row["n_local_optima"] = node.n_local_optima;
    row["tie"] = node.tie;
    row["discontinuity_adjacent"] = node.discontinuity_adjacent;
    t.rows.push_back(std::move(row));
    failed += node.failed ? 1 : 0;
  }
  t.meta_extra = {{"n1", res.n1}, {"n2", res.n2}, {"failed_nodes", failed}};
  return t;
}

Table run_frontier(RunConfig& cfg) {
  const int n_points =
      static_cast<int>(get_integer_or(cfg.options, "n_points", "options.", 201));
  cfg.resolved["options"]["n_points"] = n_points;
  const auto fs =
      tf::analysis::feasible_set(cfg.techA, cfg.techB, cfg.market, n_points);

  Table t;
  t.columns = {"qA", "variance", "expectation", "efficient", "component"};
  for (int i = 0; i < static_cast<int>(fs.points.size()); ++i) {
    const auto& p = fs.points[i];
    json row;
    row["qA"] = p.qA;
    row["variance"] = p.variance;
    row["expectation"] = p.expectation;
    row["efficient"] = p.efficient;
    row["component"] = nullptr;
    if (p.efficient) {
      for (std::size_t c = 0; c < fs.efficient_components.size(); ++c) {
        if (i >= fs.efficient_components[c].first &&
            i <= fs.efficient_components[c].second) {
          row["component"] = static_cast<int>(c);
          break;
        }
      }
    }
    t.rows.push_back(std::move(row));
  }
  json comps = json::array();
  for (const auto& [first, last] : fs.efficient_components)
    comps.push_back({first, last});
  t.meta_extra = {{"efficient_components", comps},
                  {"n_components", fs.efficient_components.size()}};
  return t;
}

Table run_thresholds(RunConfig& cfg) {
  const double alpha_max =
      get_number_or(cfg.options, "alpha_max", "options.", 1.0);
  cfg.resolved["options"]["alpha_max"] = alpha_max;
  const double K = cfg.market.demand_K;

  Table t;
  t.columns = {"name", "detail", "value"};
  json notes = json::array();
  const auto add_row = [&](const std::string& name, const std::string& detail,
                           const json& value) {
    t.rows.push_back({{"name", name}, {"detail", detail}, {"value", value}});
  };

  for (const auto corner : {tf::analysis::Corner::A, tf::analysis::Corner::B}) {
    const std::string detail =
        corner == tf::analysis::Corner::A ? "A-corner" : "B-corner";
    try {
      add_row("lambda_diversification", detail,
              tf::analysis::lambda_diversification(cfg.techA, cfg.techB, K, corner));
    } catch (const std::domain_error& e) {
      add_row("lambda_diversification", detail, nullptr);
      notes.push_back(std::string("lambda_diversification ") + detail + ": " +
                      e.what());
    }
  }
  try {
    add_row("lambda_switch", "corners",
            tf::analysis::lambda_switch_closed_form(cfg.techA, cfg.techB, K));
  } catch (const std::domain_error& e) {
    add_row("lambda_switch", "corners", nullptr);
    notes.push_back(std::string("lambda_switch: ") + e.what());
  }
  {
    const std::string detail =
        "lambda=" + tf::format::format_double(cfg.market.lambda);
    const auto root = tf::analysis::alpha_switch(cfg.techA, cfg.techB, K,
                                                 cfg.market.lambda, alpha_max);
    if (root)
      add_row("alpha_switch", detail, *root);
    else {
      add_row("alpha_switch", detail, nullptr);
      notes.push_back("alpha_switch " + detail + ": no root in [0, " +
                      tf::format::format_double(alpha_max) + "]");
    }
  }

  if (cfg.options.contains("switch_axis")) {
    tf::analysis::SweepSpec spec{
        cfg.techA, cfg.techB, cfg.market,
        parse_axis(cfg.options.at("switch_axis"), "options.switch_axis."),
        std::nullopt, tf::optimizer::Settings{}};
    spec.settings.n_threads = cfg.threads;
    cfg.resolved["options"]["switch_axis"] = axis_echo(spec.axis1);
    json switches = json::array();
    for (const auto& sw : tf::analysis::find_switch_along_sweep(spec)) {
      add_row(std::string("switch_") + tf::analysis::sweep_param_name(spec.axis1.param),
              "bisection", sw.param_value);
      switches.push_back({{"param_value", sw.param_value},
                          {"share_before", sw.share_before},
                          {"share_after", sw.share_after},
                          {"value_gap", sw.value_gap}});
    }
    t.meta_extra["switches"] = switches;
  }
  if (!notes.empty()) t.meta_extra["notes"] = notes;
  return t;
}

Table run_scenarios(RunConfig& cfg) {
  const json& spec = require_key(cfg.options, "scenarios", "options.");
  if (!spec.is_array() || spec.empty())
    throw ConfigError("config key 'options.scenarios' must be a non-empty array");
  std::vector<tf::analysis::Scenario> scenarios;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const std::string ctx = "options.scenarios[" + std::to_string(i) + "].";
    scenarios.push_back({get_string(spec[i], "label", ctx),
                         get_number(spec[i], "share1A", ctx),
                         get_number(spec[i], "share2A", ctx)});
  }
  const double r_lo = get_number_or(cfg.options, "r_lo", "options.", 0.0);
  const double r_hi = get_number_or(cfg.options, "r_hi", "options.", 3.0);
  const int r_steps =
      static_cast<int>(get_integer_or(cfg.options, "r_steps", "options.", 61));
  cfg.resolved["options"] = {{"scenarios", spec},
                             {"r_lo", r_lo},
                             {"r_hi", r_hi},
                             {"r_steps", r_steps}};

  const auto cmp = tf::analysis::scenario_compare(cfg.techA, cfg.techB, cfg.market,
                                                  scenarios, r_lo, r_hi, r_steps);
  Table t;
  t.columns = {"scenario", "r", "value"};
  for (std::size_t s = 0; s < cmp.scenarios.size(); ++s) {
    for (std::size_t k = 0; k < cmp.r_grid.size(); ++k) {
      t.rows.push_back({{"scenario", cmp.scenarios[s].label},
                        {"r", cmp.r_grid[k]},
                        {"value", cmp.values[s][k]}});
    }
  }
  json crossings = json::array();
  for (const auto& x : cmp.crossings) {
    t.rows.push_back({{"scenario", "crossing:" + cmp.scenarios[x.scenario_i].label +
                                       "|" + cmp.scenarios[x.scenario_j].label},
                      {"r", x.r},
                      {"value", nullptr}});
    crossings.push_back({{"scenario_i", x.scenario_i},
                         {"scenario_j", x.scenario_j},
                         {"r", x.r}});
  }
  t.meta_extra = {{"crossings", crossings}};
  return t;
}

Table run_validate_mc(RunConfig& cfg) {
  const auto n_samples = static_cast<std::size_t>(
      get_integer_or(cfg.options, "n_samples", "options.", 1000000));
  const int n_trials =
      static_cast<int>(get_integer_or(cfg.options, "n_trials", "options.", 100));
  std::uint64_t base_seed = static_cast<std::uint64_t>(
      get_integer_or(cfg.options, "base_seed", "options.", 20260816));
  if (cfg.seed_override) base_seed = *cfg.seed_override;

  std::vector<double> qA;
  if (cfg.options.contains("qA")) {
    const json& arr = cfg.options.at("qA");
    if (!arr.is_array())
      throw ConfigError("config key 'options.qA' must be an array of numbers");
    for (const auto& v : arr) {
      if (!v.is_number())
        throw ConfigError("config key 'options.qA' must be an array of numbers");
      qA.push_back(v.get<double>());
    }
  } else {
    qA.assign(cfg.market.periods, 0.5 * cfg.market.demand_K);
  }
  cfg.resolved["options"] = {{"n_samples", n_samples},
                             {"n_trials", n_trials},
                             {"base_seed", base_seed},
                             {"qA", qA}};

  const auto rows = tf::montecarlo::coverage(cfg.techA, cfg.techB, cfg.market, qA,
                                             n_samples, n_trials, base_seed);
  Table t;
  t.columns = {"quantity", "analytic", "trials", "within_3se", "max_abs_z"};
  for (const auto& row : rows) {
    t.rows.push_back({{"quantity", row.quantity},
                      {"analytic", row.analytic},
                      {"trials", row.trials},
                      {"within_3se", row.within_3se},
                      {"max_abs_z", row.max_abs_z}});
  }
  return t;
}

Table dispatch(RunConfig& cfg) {
  if (cfg.command == "optimize") return run_optimize(cfg);
  if (cfg.command == "two-period") return run_two_period(cfg);
  if (cfg.command == "sweep") return run_sweep(cfg);
  if (cfg.command == "frontier") return run_frontier(cfg);
  if (cfg.command == "thresholds") return run_thresholds(cfg);
  if (cfg.command == "scenarios") return run_scenarios(cfg);
  if (cfg.command == "validate-mc") return run_validate_mc(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal production portfolios for competing experience-curve "
               "technologies under mean-variance risk"};
  app.require_subcommand(1);

  std::string config_path, out_override, format_override;
  int threads = 0;
  std::uint64_t seed_value = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"optimize", "Enumerate local optima of the production split"},
      {"sweep", "Optimal-share surface over one or two parameter axes"},
      {"frontier", "Feasible set and efficient-frontier classification"},
      {"thresholds", "Closed-form and bisection critical parameter values"},
      {"two-period", "Two-period optimization (requires market.periods = 2)"},
      {"scenarios", "Fixed-portfolio comparison across discount rates"},
      {"validate-mc", "Monte Carlo coverage check of the analytic moments"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_override,
                    "Output path (overrides output.path; '-' for stdout)");
    sub->add_option("--format", format_override, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (0 = auto)");
    sub->add_option("--seed", seed_value, "Base seed override (validate-mc)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::optional<std::uint64_t> seed_override;
  if (sub->count("--seed") > 0) seed_override = seed_value;

  try {
    RunConfig cfg = load_config(config_path, sub->get_name(), out_override,
                                format_override, threads, seed_override);
    const Table t = dispatch(cfg);
    const std::string content =
        cfg.out_format == "json"
            ? render_json(t, cfg)
            : render_csv(t, cfg.command == "sweep", cfg.precision);
    write_output(cfg.out_path, content);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const json::exception& e) {
    std::cerr << "error: config parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
