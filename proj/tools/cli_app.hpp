#pragma once

// Command-line front end: compute, sweep and validate.
//
// Exit codes:
//   0  success
//   1  validate: at least one check failed
//   2  argument or configuration error
//   3  quadrature failure
//   4  file I/O error

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casimir/closed_form.hpp"
#include "casimir/crosscheck.hpp"
#include "casimir/dispersion.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/units.hpp"
#include "json.hpp"
#include "output.hpp"

namespace casimir::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kQuadrature = 3,
  kFileIo = 4,
};

struct ScenarioArgs {
  std::optional<double> separation;
  std::optional<double> n0;
  std::optional<double> n1;
  std::optional<double> surface;
  std::string table_path;
};

struct NumericArgs {
  std::string method = "both";
  std::string lifshitz_mode = "auto";
  double rel_tol = QuadratureSpec{}.rel_tol;
  double abs_tol = QuadratureSpec{}.abs_tol;
  int max_subdivisions = QuadratureSpec{}.max_subdivisions;
  double h_rel = 1e-4;
};

struct OutputArgs {
  bool si = false;
  std::optional<double> length_unit;
  std::string format;
  std::string out_path;
  std::string config_path;
};

struct SweepArgs {
  std::string variable = "L";
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  std::string scale = "linear";
};

namespace detail {

inline void add_scenario_options(CLI::App& app, ScenarioArgs& s) {
  app.add_option("--L", s.separation, "Plate separation (length unit)");
  app.add_option("--n0", s.n0, "Static refractive index n0");
  app.add_option("--n1", s.n1, "Cauchy coefficient n1 (length unit^2)");
  app.add_option("--cs", s.surface, "Surface term coefficient c_s, E_s = c_s / L^4");
  app.add_option("--ns-table", s.table_path, "CSV of (xi, n(i xi)) samples");
}

inline void add_numeric_options(CLI::App& app, NumericArgs& n) {
  app.add_option("--method", n.method, "analytic | lifshitz | both")
      ->check(CLI::IsMember({"analytic", "lifshitz", "both"}));
  app.add_option("--lifshitz-mode", n.lifshitz_mode, "auto | split | full")
      ->check(CLI::IsMember({"auto", "split", "full"}));
  app.add_option("--rel-tol", n.rel_tol, "Relative quadrature tolerance");
  app.add_option("--abs-tol", n.abs_tol, "Absolute quadrature tolerance (energy/area)");
  app.add_option("--max-subdivisions", n.max_subdivisions, "Adaptive subdivision limit");
  app.add_option("--h-rel", n.h_rel, "Relative step for the Lifshitz force difference");
}

inline void add_output_options(CLI::App& app, OutputArgs& o, const std::string& default_format) {
  o.format = default_format;
  app.add_flag("--si", o.si, "Report energies in J/m^2 and forces in Pa");
  app.add_option("--length-unit", o.length_unit, "Length unit in meters (with --si)");
  app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out_path, "Write output to a file instead of standard output");
  app.add_option("--config", o.config_path, "Flat key = value file mirroring the flags");
}

inline DispersionModel build_model(const ScenarioArgs& s) {
  if (!s.table_path.empty()) {
    if (s.n0 || s.n1) throw ConfigError("--ns-table cannot be combined with --n0/--n1");
    return load_index_table(s.table_path);
  }
  if (!s.n0) throw ConfigError("--n0 is required unless --ns-table is given");
  if (!s.n1) return DispersionModel::constant(*s.n0);
  return DispersionModel::cauchy(*s.n0, *s.n1);
}

inline std::optional<SurfaceTerm> build_surface(const ScenarioArgs& s) {
  if (!s.surface) return std::nullopt;
  return SurfaceTerm{*s.surface};
}

inline QuadratureSpec build_quadrature(const NumericArgs& n) {
  QuadratureSpec q;
  q.rel_tol = n.rel_tol;
  q.abs_tol = n.abs_tol;
  q.max_subdivisions = n.max_subdivisions;
  q.validate();
  return q;
}

inline UnitSystem build_units(const OutputArgs& o) {
  if (!o.si) {
    if (o.length_unit) throw ConfigError("--length-unit requires --si");
    return UnitSystem::natural();
  }
  UnitSystem u = UnitSystem::si_with(o.length_unit.value_or(0.0));
  if (!o.length_unit) u.length_unit_in_meters.reset();
  u.length_unit();  // validates
  return u;
}

inline std::optional<LifshitzMode> build_mode(const NumericArgs& n) {
  if (n.lifshitz_mode == "split") return LifshitzMode::FirstOrderSplit;
  if (n.lifshitz_mode == "full") return LifshitzMode::FullKappa1;
  return std::nullopt;
}

inline std::vector<ResultRow> evaluate(const Scenario& s, double variable, const NumericArgs& n,
                                       const QuadratureSpec& q) {
  std::vector<ResultRow> rows;
  if (n.method == "analytic" || n.method == "both") {
    const auto e = total_energy_analytic(s);
    rows.push_back(make_row(variable, e, force_analytic(s), 0.0));
  }
  if (n.method == "lifshitz" || n.method == "both") {
    const LifshitzMode mode = build_mode(n).value_or(default_mode(s.model()));
    const auto e = total_energy_lifshitz(s, q, mode);
    const auto f = force_lifshitz(s, q, n.h_rel, mode);
    auto row = make_row(variable, e, f.value, f.error);
    row.kappa_clamped = row.kappa_clamped || f.kappa_clamped;
    rows.push_back(row);
  }
  return rows;
}

inline void warn_validity(std::ostream& err, const Scenario& s, const std::vector<ResultRow>& rows) {
  const bool outside = std::any_of(rows.begin(), rows.end(),
                                   [](const ResultRow& r) { return r.outside_validity; });
  const bool clamped = std::any_of(rows.begin(), rows.end(),
                                   [](const ResultRow& r) { return r.kappa_clamped; });
  if (outside) {
    err << "warning: L = " << s.separation()
        << " is not above the perturbative limit 2*pi*sqrt(n1) = "
        << validity(s.model()).min_separation << "\n";
  }
  if (clamped) {
    err << "warning: L = " << s.separation()
        << ": kappa_1 reached zero; the full-kappa integral was truncated at the clamp\n";
  }
}

inline nlohmann::ordered_json scenario_json(const ScenarioArgs& s, const DispersionModel& m) {
  nlohmann::ordered_json j;
  if (s.separation) j["L"] = *s.separation;
  nlohmann::ordered_json model;
  if (m.is_tabulated()) {
    model["type"] = "tabulated";
    model["table"] = s.table_path;
  } else {
    const auto c = *m.cauchy_parameters();
    model["type"] = s.n1 ? "cauchy" : "constant";
    model["n0"] = c.n0;
    model["n1"] = c.n1;
  }
  j["model"] = model;
  j["surface_coefficient"] = s.surface ? nlohmann::ordered_json(*s.surface) : nullptr;
  return j;
}

inline nlohmann::ordered_json units_json(const UnitSystem& u) {
  nlohmann::ordered_json j;
  if (u.mode == UnitMode::Natural) {
    j["system"] = "natural";
    j["energy"] = "length^-3";
    j["force"] = "length^-4";
  } else {
    j["system"] = "si";
    j["length_unit_m"] = *u.length_unit_in_meters;
    j["hbar_c_J_m"] = si::hbar_c;
    j["energy"] = "J/m^2";
    j["force"] = "Pa";
  }
  return j;
}

inline nlohmann::ordered_json quadrature_json(const NumericArgs& n) {
  return {{"rel_tol", n.rel_tol},
          {"abs_tol", n.abs_tol},
          {"max_subdivisions", n.max_subdivisions},
          {"h_rel", n.h_rel},
          {"lifshitz_mode", n.lifshitz_mode}};
}

/// Sends `text` to --out or to `out`.
inline void emit(const std::string& text, const OutputArgs& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw FileError("cannot open '" + o.out_path + "' for writing");
  f << text;
  if (!f) throw FileError("write to '" + o.out_path + "' failed");
}

inline std::vector<double> sweep_grid(const SweepArgs& a) {
  if (a.points < 2) throw ConfigError("--points must be >= 2");
  if (!(a.min < a.max)) throw ConfigError("--min must be below --max");
  if (a.scale == "log" && !(a.min > 0.0)) throw ConfigError("log scale requires --min > 0");
  std::vector<double> grid(static_cast<std::size_t>(a.points));
  const double last = a.points - 1;
  for (int i = 0; i < a.points; ++i) {
    const double t = i / last;
    grid[static_cast<std::size_t>(i)] =
        a.scale == "log" ? std::exp(std::log(a.min) + t * (std::log(a.max) - std::log(a.min)))
                         : a.min + t * (a.max - a.min);
  }
  grid.front() = a.min;
  grid.back() = a.max;
  return grid;
}

// Flat "key = value" lines; '#' starts a comment.
inline std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open config '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FileError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    out[key] = value;
  }
  return out;
}

inline std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config entries go in front of the user's arguments; options take the last
// value given, so the command line wins.
inline std::vector<std::string> merge_config(CLI::App& sub, const std::string& path,
                                             const std::vector<std::string>& user_args,
                                             std::ostream& err) {
  std::vector<std::string> merged;
  for (const auto& [key, value] : read_flat_config(path)) {
    if (key == "config") continue;
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) {
      err << "warning: config key '" << key << "' is not used by '" << sub.get_name() << "'\n";
      continue;
    }
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") {
        merged.push_back("--" + key);
      }
      continue;
    }
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  merged.insert(merged.end(), user_args.begin(), user_args.end());
  return merged;
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name) and returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir energy and force between ideal plates with a dispersive medium"};
  app.name("casimir");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  ScenarioArgs compute_scenario;
  NumericArgs compute_numeric;
  OutputArgs compute_output;
  auto* compute = app.add_subcommand("compute", "Energy and force at one separation");
  detail::add_scenario_options(*compute, compute_scenario);
  detail::add_numeric_options(*compute, compute_numeric);
  detail::add_output_options(*compute, compute_output, "json");

  ScenarioArgs sweep_scenario;
  NumericArgs sweep_numeric;
  OutputArgs sweep_output;
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Tabulate results over a grid in L or n1");
  detail::add_scenario_options(*sweep, sweep_scenario);
  detail::add_numeric_options(*sweep, sweep_numeric);
  detail::add_output_options(*sweep, sweep_output, "csv");
  sweep->add_option("--var", sweep_args.variable, "L | n1")
      ->check(CLI::IsMember({"L", "n1"}));
  sweep->add_option("--min", sweep_args.min, "Grid start")->required();
  sweep->add_option("--max", sweep_args.max, "Grid end")->required();
  sweep->add_option("--points", sweep_args.points, "Number of grid points (>= 2)")->required();
  sweep->add_option("--scale", sweep_args.scale, "linear | log")
      ->check(CLI::IsMember({"linear", "log"}));

  double validate_tol = 1e-7;
  NumericArgs validate_numeric;
  auto* validate = app.add_subcommand("validate", "Run the analytic-vs-Lifshitz agreement grid");
  validate->add_option("--tol", validate_tol, "Relative tolerance for method agreement");
  validate->add_option("--rel-tol", validate_numeric.rel_tol, "Relative quadrature tolerance");

  try {
    if (auto path = detail::find_config_path(args); path && !args.empty()) {
      CLI::App* sub = app.get_subcommand_no_throw(args.front());
      if (sub != nullptr && (sub == compute || sub == sweep)) {
        std::vector<std::string> rest(args.begin() + 1, args.end());
        args = detail::merge_config(*sub, *path, rest, err);
        args.insert(args.begin(), sub->get_name());
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return kFileIo;
  }

  try {
    if (compute->parsed()) {
      const auto model = detail::build_model(compute_scenario);
      if (!compute_scenario.separation) throw ConfigError("--L is required");
      const Scenario s(*compute_scenario.separation, model,
                       detail::build_surface(compute_scenario));
      const auto q = detail::build_quadrature(compute_numeric);
      const auto units = detail::build_units(compute_output);
      auto rows = detail::evaluate(s, s.separation(), compute_numeric, q);
      detail::warn_validity(err, s, rows);
      for (auto& r : rows) r = to_units(r, units);

      std::ostringstream text;
      if (compute_output.format == "csv") {
        write_csv(text, "L", rows);
      } else {
        nlohmann::ordered_json j;
        j["scenario"] = detail::scenario_json(compute_scenario, model);
        j["units"] = detail::units_json(units);
        j["quadrature"] = detail::quadrature_json(compute_numeric);
        j["results"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) j["results"].push_back(to_json(r, "L"));
        text << j.dump(2) << "\n";
      }
      detail::emit(text.str(), compute_output, out);
      return kOk;
    }

    if (sweep->parsed()) {
      const auto grid = detail::sweep_grid(sweep_args);
      const bool over_n1 = sweep_args.variable == "n1";
      if (over_n1) {
        if (!sweep_scenario.table_path.empty()) {
          throw ConfigError("--var n1 needs a Cauchy model, not --ns-table");
        }
        if (!(sweep_args.min >= 0.0)) throw ConfigError("n1 grid must be >= 0");
        if (!sweep_scenario.separation) throw ConfigError("--L is required for --var n1");
        if (!sweep_scenario.n0) throw ConfigError("--n0 is required");
      } else if (!(sweep_args.min > 0.0)) {
        throw ConfigError("separation grid must be > 0");
      }
      const auto q = detail::build_quadrature(sweep_numeric);
      const auto units = detail::build_units(sweep_output);
      const auto surface = detail::build_surface(sweep_scenario);
      const auto base_model = over_n1 ? DispersionModel::constant(1.0)
                                      : detail::build_model(sweep_scenario);

      std::vector<ResultRow> rows;
      for (double v : grid) {
        const Scenario s = over_n1 ? Scenario(*sweep_scenario.separation,
                                              DispersionModel::cauchy(*sweep_scenario.n0, v),
                                              surface)
                                   : Scenario(v, base_model, surface);
        auto point_rows = detail::evaluate(s, v, sweep_numeric, q);
        detail::warn_validity(err, s, point_rows);
        for (auto& r : point_rows) rows.push_back(to_units(r, units));
      }

      const std::string var_name = over_n1 ? "n1" : "L";
      std::ostringstream text;
      if (sweep_output.format == "csv") {
        write_csv(text, var_name, rows);
      } else {
        nlohmann::ordered_json j;
        ScenarioArgs echo = sweep_scenario;
        if (over_n1) echo.n1 = 0.0;
        j["sweep"] = {{"variable", var_name},
                      {"min", sweep_args.min},
                      {"max", sweep_args.max},
                      {"points", sweep_args.points},
                      {"scale", sweep_args.scale},
                      {"method", sweep_numeric.method}};
        j["scenario"] = detail::scenario_json(
            echo, over_n1 ? DispersionModel::cauchy(*sweep_scenario.n0, 0.0) : base_model);
        j["units"] = detail::units_json(units);
        j["quadrature"] = detail::quadrature_json(sweep_numeric);
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) j["rows"].push_back(to_json(r, var_name));
        text << j.dump(2) << "\n";
      }
      detail::emit(text.str(), sweep_output, out);
      return kOk;
    }

    if (validate->parsed()) {
      if (!(validate_tol >= 0.0)) throw ConfigError("--tol must be >= 0");
      const auto q = detail::build_quadrature(validate_numeric);
      const auto checks = run_validation(validate_tol, q);
      int failed = 0;
      for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << std::setprecision(6)
            << c.measured << " threshold=" << c.threshold << "\n";
        failed += c.pass ? 0 : 1;
      }
      out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size()
          << " checks passed\n";
      return failed == 0 ? kOk : kCheckFailed;
    }
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return kFileIo;
  } catch (const QuadratureFailure& e) {
    err << "error: " << e.what() << "\n";
    return kQuadrature;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedModel& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace casimir::cli
