// csdamp: cubed-sphere grid metrics and damping stability limits.

#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csdamp/report.hpp"

namespace {

using namespace csdamp;
namespace rep = csdamp::report;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string mapping = "equiangular";
  std::string ne = "48";
  std::string stagger = "offset";
  std::string op = "pseudo";
  int order = 2;
  std::string coef = "osc-free";
  std::optional<double> coef2;
  int samples = 65;
  std::uint64_t seed = 1;
  double tol = 1e-5;
  int steps = 5000;
  int patch = 8;
  std::string location = "argmin";
  std::vector<int> orders = {1, 2, 3, 4};
  std::string out;
  std::string format;
};

void add_grid_flags(CLI::App* sub, Options& o) {
  sub->add_option("--mapping", o.mapping, "equidistant | equiangular | equi-edge")
      ->capture_default_str();
  sub->add_option("--ne", o.ne, "cells per panel edge, e.g. 96 or C96")->capture_default_str();
}

void add_stagger_flag(CLI::App* sub, Options& o) {
  sub->add_option("--stagger", o.stagger, "primary | offset")->capture_default_str();
}

void add_damping_flags(CLI::App* sub, Options& o, bool with_coef) {
  sub->add_option("--operator", o.op, "pseudo | full")->capture_default_str();
  sub->add_option("--order", o.order, "q, damping order 2q")->capture_default_str();
  if (with_coef) {
    sub->add_option("--coef", o.coef, "C_2q, or osc-free")->capture_default_str();
  }
  sub->add_option("--coef2", o.coef2, "second-order coefficient C_2");
}

void add_output_flags(CLI::App* sub, Options& o, const std::string& default_format) {
  sub->add_option("--out", o.out, "output path");
  sub->add_option("--format", o.format, "csv | json (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
}

PanelGrid make_grid(const Options& o) {
  GridSpec spec;
  spec.mapping = parse_mapping(o.mapping);
  spec.ne = rep::parse_resolution(o.ne);
  spec.validate();
  return PanelGrid(spec);
}

void check_order(int q) {
  if (q < 1) throw std::invalid_argument("--order must be >= 1");
}

void check_coef2(const std::optional<double>& c2) {
  if (c2 && !(*c2 >= 0.0)) throw std::invalid_argument("--coef2 must be >= 0");
}

// CSV goes to --out; the JSON document goes to stdout, or to --out in json mode.
void emit(const Options& o, const rep::ReportDocument& doc, const std::string* csv) {
  const std::string json = doc.to_json().dump(2) + "\n";
  if (o.format == "csv") {
    if (!csv) throw std::invalid_argument("this command has no CSV output");
    if (o.out.empty()) throw std::invalid_argument("--out is required with --format csv");
    rep::write_file_atomic(o.out, *csv);
    std::cout << json;
    return;
  }
  if (o.out.empty()) {
    std::cout << json;
  } else {
    rep::write_file_atomic(o.out, json);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubed-sphere grid metrics and damping stability limits"};
  app.set_version_flag("--version", std::string(rep::kToolVersion));
  app.require_subcommand(1);

  Options o;

  auto* grid_cmd = app.add_subcommand("grid-metrics", "per-point cell metrics and area summary");
  add_grid_flags(grid_cmd, o);
  add_stagger_flag(grid_cmd, o);

  auto* limits_cmd = app.add_subcommand("limits", "stability function minimum and limits");
  add_grid_flags(limits_cmd, o);
  add_stagger_flag(limits_cmd, o);
  limits_cmd->add_option("--operator", o.op, "pseudo | full")->capture_default_str();
  limits_cmd->add_option("--orders", o.orders, "orders q to tabulate")->delimiter(',');
  limits_cmd->add_option("--coef2", o.coef2, "second-order coefficient C_2");

  auto* amp_cmd = app.add_subcommand("amplification", "amplification along k dx = l dy");
  add_grid_flags(amp_cmd, o);
  add_stagger_flag(amp_cmd, o);
  add_damping_flags(amp_cmd, o, true);
  amp_cmd->add_option("--location", o.location, "argmin, flat or panel,i,j")
      ->capture_default_str();
  amp_cmd->add_option("--samples", o.samples, "points on the sweep")->capture_default_str();

  auto* tdx_cmd = app.add_subcommand("two-dx-field", "2dx amplification at every grid point");
  add_grid_flags(tdx_cmd, o);
  add_stagger_flag(tdx_cmd, o);
  add_damping_flags(tdx_cmd, o, true);

  auto* emp_cmd = app.add_subcommand("empirical-limit", "bisect the simulated stability limit");
  add_grid_flags(emp_cmd, o);
  add_stagger_flag(emp_cmd, o);
  add_damping_flags(emp_cmd, o, false);
  emp_cmd->add_option("--location", o.location, "argmin, flat or panel,i,j")
      ->capture_default_str();
  emp_cmd->add_option("--tol", o.tol, "bisection width")->capture_default_str();
  emp_cmd->add_option("--steps", o.steps, "steps per probe")->capture_default_str();
  emp_cmd->add_option("--patch", o.patch, "patch side length")->capture_default_str();
  emp_cmd->add_option("--seed", o.seed, "noise seed")->capture_default_str();

  add_output_flags(grid_cmd, o, "csv");
  add_output_flags(limits_cmd, o, "json");
  add_output_flags(amp_cmd, o, "csv");
  add_output_flags(tdx_cmd, o, "csv");
  add_output_flags(emp_cmd, o, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (o.format.empty()) o.format = (*limits_cmd || *emp_cmd) ? "json" : "csv";

  try {
    const PanelGrid grid = make_grid(o);
    const Staggering stagger = parse_staggering(o.stagger);
    const OperatorKind op = parse_operator(o.op);
    check_coef2(o.coef2);

    if (*grid_cmd) {
      const auto doc = rep::grid_metrics_report(grid, stagger);
      std::string csv;
      if (o.format == "csv") csv = rep::grid_metrics_csv(grid, metric_field(grid, stagger));
      emit(o, doc, &csv);
    } else if (*limits_cmd) {
      for (int q : o.orders) check_order(q);
      const auto doc = rep::limits_report(grid, {stagger, op, o.orders, o.coef2});
      const std::string csv = rep::limits_csv(doc);
      emit(o, doc, &csv);
    } else if (*amp_cmd) {
      check_order(o.order);
      rep::AmplificationRequest req;
      req.stagger = stagger;
      req.op = op;
      req.q = o.order;
      req.coef = rep::parse_coefficient(o.coef);
      req.coef2 = o.coef2;
      req.location = rep::parse_location(o.location);
      req.samples = o.samples;
      const auto doc = rep::amplification_report(grid, req);
      const std::string csv = rep::amplification_csv(doc);
      if (o.format == "csv") {
        auto summary = doc;
        summary.payload.erase("curve");
        emit(o, summary, &csv);
      } else {
        emit(o, doc, nullptr);
      }
    } else if (*tdx_cmd) {
      check_order(o.order);
      rep::TwoDxRequest req{stagger, op, o.order, rep::parse_coefficient(o.coef), o.coef2};
      const auto res = rep::two_dx_report(grid, req);
      emit(o, res.summary, &res.csv);
    } else if (*emp_cmd) {
      check_order(o.order);
      rep::EmpiricalRequest req;
      req.stagger = stagger;
      req.op = op;
      req.q = o.order;
      req.coef2 = o.coef2;
      req.location = rep::parse_location(o.location);
      req.tol = o.tol;
      req.steps = o.steps;
      req.patch = o.patch;
      req.seed = o.seed;
      if (!(req.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
      const auto doc = rep::empirical_limit_report(grid, req);
      emit(o, doc, nullptr);
    }
  } catch (const BracketError& e) {
    std::cerr << "csdamp: bracket failure: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "csdamp: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "csdamp: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "csdamp: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
