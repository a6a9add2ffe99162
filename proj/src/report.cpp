#include "csdamp/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <system_error>

namespace csdamp::report {

using nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

int parse_resolution(std::string_view text) {
  if (!text.empty() && (text.front() == 'C' || text.front() == 'c')) text.remove_prefix(1);
  return parse_int(text, "resolution");
}

Location parse_location(std::string_view text) {
  if (text == "argmin") return {};
  if (text == "flat") return {Location::Kind::flat, {}};
  PointIndex p;
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw std::invalid_argument("invalid location '" + std::string(text) +
                                "'; expected argmin, flat or panel,i,j");
  }
  p.panel = parse_int(text.substr(0, c1), "location panel");
  p.i = parse_int(text.substr(c1 + 1, c2 - c1 - 1), "location i");
  p.j = parse_int(text.substr(c2 + 1), "location j");
  return {Location::Kind::point, p};
}

Coefficient parse_coefficient(std::string_view text) {
  if (text == "osc-free") return {true, 0.0};
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end || !(v >= 0.0) ||
      !std::isfinite(v)) {
    throw std::invalid_argument("invalid coefficient '" + std::string(text) +
                                "'; expected a non-negative number or osc-free");
  }
  return {false, v};
}

ordered_json ReportDocument::to_json() const {
  return ordered_json{{"metadata", metadata}, {"payload", payload}};
}

ordered_json base_metadata(std::string_view command, const GridSpec& spec) {
  return ordered_json{
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", command},
      {"grid",
       {{"mapping", mapping_name(spec.mapping)}, {"ne", spec.ne}, {"radius_m", spec.radius}}},
  };
}

ordered_json to_json(const PointIndex& p) {
  return ordered_json{{"panel", p.panel}, {"i", p.i}, {"j", p.j}};
}

ordered_json to_json(const CellMetrics& m) {
  return ordered_json{{"dx_m", m.dx},       {"dy_m", m.dy},   {"chi", m.chi},
                      {"alpha_rad", m.alpha}, {"sin_alpha", m.sin_alpha}, {"area_m2", m.area}};
}

ordered_json to_json(const GridSummary& s) {
  ordered_json j{
      {"max_area_m2", s.max_area},
      {"min_area_m2", s.min_area},
      {"area_ratio", s.area_ratio},
      {"max_area_location", to_json(s.max_location)},
      {"max_area_region", region_name(s.max_region)},
      {"min_area_location", to_json(s.min_location)},
      {"min_area_region", region_name(s.min_region)},
      {"chi_corner", s.chi_corner},
      {"sin_alpha_corner", s.sin_alpha_corner},
  };
  if (s.chi_mid_edge) {
    j["chi_mid_edge"] = {s.chi_mid_edge->first, s.chi_mid_edge->second};
  } else {
    j["chi_mid_edge"] = nullptr;
  }
  j["sin_alpha_mid_edge"] = s.sin_alpha_mid_edge ? ordered_json(*s.sin_alpha_mid_edge)
                                                 : ordered_json(nullptr);
  return j;
}

std::string grid_metrics_csv(const PanelGrid& grid, const MetricField& metrics,
                             const std::vector<double>* gamma_2dx) {
  if (gamma_2dx && gamma_2dx->size() != metrics.cells.size()) {
    throw std::invalid_argument("grid_metrics_csv: gamma column has the wrong length");
  }
  std::string out = "panel_id,i,j,lon_deg,lat_deg,dx_m,dy_m,chi,sin_alpha,area_m2";
  out += gamma_2dx ? ",gamma_2dx\n" : "\n";
  const double to_deg = 180.0 / std::numbers::pi;
  for (std::size_t k = 0; k < metrics.cells.size(); ++k) {
    const PointIndex p = metrics.point_at(k);
    const LonLat ll = cart_to_lonlat(grid.point(metrics.stagger, p));
    const CellMetrics& m = metrics.cells[k];
    out += std::to_string(p.panel) + ',' + std::to_string(p.i) + ',' + std::to_string(p.j);
    for (double v : {ll.lon * to_deg, ll.lat * to_deg, m.dx, m.dy, m.chi, m.sin_alpha, m.area}) {
      out += ',';
      out += format_double(v);
    }
    if (gamma_2dx) {
      out += ',';
      out += format_double((*gamma_2dx)[k]);
    }
    out += '\n';
  }
  return out;
}

ReportDocument grid_metrics_report(const PanelGrid& grid, Staggering stagger) {
  ReportDocument doc;
  doc.metadata = base_metadata("grid-metrics", grid.spec());
  doc.metadata["stagger"] = staggering_name(stagger);
  const MetricField field = metric_field(grid, stagger);
  doc.payload = {
      {"points", field.cells.size()},
      {"stagger_min_area_m2", field.min_area()},
      {"stagger_max_area_m2", field.max_area()},
      {"summary", to_json(grid_summary(grid))},
  };
  return doc;
}

ReportDocument limits_report(const PanelGrid& grid, const LimitsRequest& req) {
  ReportDocument doc;
  doc.metadata = base_metadata("limits", grid.spec());
  doc.metadata["stagger"] = staggering_name(req.stagger);
  doc.metadata["operator"] = operator_name(req.op);
  doc.metadata["orders"] = req.orders;
  doc.metadata["coef2"] = req.coef2 ? ordered_json(*req.coef2) : ordered_json(nullptr);

  const MetricField field = metric_field(grid, req.stagger);
  const StabilityField sf = stability_field(field, req.op);
  const FieldMinimum lo = psi_min(sf);
  const double osc = oscillation_free_coefficient(lo.value);

  ordered_json limits = ordered_json::array();
  for (int q : req.orders) {
    const double c = max_stable_coefficient(lo.value, q);
    ordered_json row{{"q", q},
                     {"order", 2 * q},
                     {"max_stable", c},
                     {"max_stable_rounded_down", format_round_down_3dp(c)}};
    if (req.coef2) {
      const auto mixed = mixed_order_limit(*req.coef2, q, lo.value);
      row["mixed_limit"] = mixed ? ordered_json(*mixed) : ordered_json(nullptr);
      row["mixed_limit_rounded_down"] =
          mixed ? ordered_json(format_round_down_3dp(*mixed)) : ordered_json(nullptr);
    }
    limits.push_back(std::move(row));
  }

  doc.payload = {
      {"area_min_m2", sf.area_min},
      {"psi_min",
       {{"value", lo.value},
        {"rounded_down", format_round_down_3dp(lo.value)},
        {"location", to_json(lo.location)},
        {"region", region_name(classify_point(sf.n, lo.location.i, lo.location.j))}}},
      {"oscillation_free", {{"value", osc}, {"rounded_down", format_round_down_3dp(osc)}}},
      {"limits", std::move(limits)},
  };
  return doc;
}

std::string limits_csv(const ReportDocument& doc) {
  const auto& limits = doc.payload.at("limits");
  const bool mixed = !limits.empty() && limits.front().contains("mixed_limit");
  std::string out = "q,order,max_stable,max_stable_rounded_down";
  out += mixed ? ",mixed_limit,mixed_limit_rounded_down\n" : "\n";
  for (const auto& row : limits) {
    out += std::to_string(row.at("q").get<int>()) + ',' +
           std::to_string(row.at("order").get<int>()) + ',' +
           format_double(row.at("max_stable").get<double>()) + ',' +
           row.at("max_stable_rounded_down").get<std::string>();
    if (mixed) {
      const auto& m = row.at("mixed_limit");
      out += ',' + (m.is_null() ? std::string("none") : format_double(m.get<double>())) + ',' +
             (m.is_null() ? std::string("none")
                          : row.at("mixed_limit_rounded_down").get<std::string>());
    }
    out += '\n';
  }
  return out;
}

FrozenCell resolve_cell(const MetricField& field, OperatorKind op, const Location& loc) {
  switch (loc.kind) {
    case Location::Kind::flat: {
      CellMetrics m;
      m.dx = 1.0;
      m.dy = 1.0;
      m.chi = 1.0;
      m.alpha = std::numbers::pi / 2.0;
      m.sin_alpha = 1.0;
      m.area = 1.0;
      return {m, 1.0, std::nullopt};
    }
    case Location::Kind::argmin: {
      const StabilityField sf = stability_field(field, op);
      const PointIndex p = psi_min(sf).location;
      return {field.at(p), sf.area_min, p};
    }
    case Location::Kind::point: {
      const PointIndex& p = loc.point;
      if (p.panel < 1 || p.panel > kPanelCount || p.i < 0 || p.j < 0 || p.i >= field.n ||
          p.j >= field.n) {
        throw std::invalid_argument("location outside the grid");
      }
      return {field.at(p), field.min_area(), p};
    }
  }
  throw std::logic_error("resolve_cell: unknown location kind");
}

namespace {

ordered_json cell_json(const FrozenCell& cell, OperatorKind op) {
  return ordered_json{
      {"location", cell.point ? to_json(*cell.point) : ordered_json("flat")},
      {"metrics", to_json(cell.metrics)},
      {"area_min_m2", cell.area_min},
      {"psi", grid_stability_function(cell.metrics, cell.area_min, op)},
  };
}

double resolve_coefficient(const Coefficient& c, const MetricField& field, OperatorKind op,
                           const FrozenCell& cell) {
  if (!c.osc_free) return c.value;
  if (!cell.point) {
    return oscillation_free_coefficient(
        grid_stability_function(cell.metrics, cell.area_min, op));
  }
  return oscillation_free_coefficient(psi_min(stability_field(field, op)).value);
}

ordered_json damping_metadata(OperatorKind op, int q, const Coefficient& c,
                              const std::optional<double>& coef2) {
  return ordered_json{
      {"operator", operator_name(op)},
      {"q", q},
      {"coef", c.osc_free ? ordered_json("osc-free") : ordered_json(c.value)},
      {"coef2", coef2 ? ordered_json(*coef2) : ordered_json(nullptr)},
  };
}

}  // namespace

ReportDocument amplification_report(const PanelGrid& grid, const AmplificationRequest& req) {
  ReportDocument doc;
  doc.metadata = base_metadata("amplification", grid.spec());
  doc.metadata["stagger"] = staggering_name(req.stagger);
  doc.metadata.update(damping_metadata(req.op, req.q, req.coef, req.coef2));
  doc.metadata["samples"] = req.samples;

  const MetricField field = metric_field(grid, req.stagger);
  const FrozenCell cell = resolve_cell(field, req.op, req.location);
  DampingSpec spec{req.q, resolve_coefficient(req.coef, field, req.op, cell), req.op,
                   req.coef2.value_or(0.0)};
  spec.validate();

  ordered_json curve = ordered_json::array();
  for (const auto& [k, g] : diagonal_sweep(spec, cell.metrics, cell.area_min, req.samples)) {
    curve.push_back({{"k_dx", k}, {"gamma", g}});
  }
  doc.payload = {
      {"coef_resolved", spec.coef},
      {"cell", cell_json(cell, req.op)},
      {"curve", std::move(curve)},
  };
  return doc;
}

std::string amplification_csv(const ReportDocument& doc) {
  std::string out = "k_dx,gamma\n";
  for (const auto& row : doc.payload.at("curve")) {
    out += format_double(row.at("k_dx").get<double>()) + ',' +
           format_double(row.at("gamma").get<double>()) + '\n';
  }
  return out;
}

TwoDxResult two_dx_report(const PanelGrid& grid, const TwoDxRequest& req) {
  TwoDxResult res;
  ReportDocument& doc = res.summary;
  doc.metadata = base_metadata("two-dx-field", grid.spec());
  doc.metadata["stagger"] = staggering_name(req.stagger);
  doc.metadata.update(damping_metadata(req.op, req.q, req.coef, req.coef2));

  const MetricField field = metric_field(grid, req.stagger);
  const FieldMinimum lo = psi_min(stability_field(field, req.op));
  const double coef =
      req.coef.osc_free ? oscillation_free_coefficient(lo.value) : req.coef.value;
  const DampingSpec spec{req.q, coef, req.op, req.coef2.value_or(0.0)};
  const TwoDxField f = two_dx_field(spec, field);

  doc.payload = {
      {"coef_resolved", coef},
      {"psi_min", lo.value},
      {"gamma_min", f.min},
      {"gamma_max", f.max},
      {"gamma_spread", f.max - f.min},
      {"argmin", to_json(f.argmin)},
      {"argmin_region", region_name(classify_point(field.n, f.argmin.i, f.argmin.j))},
      {"argmax", to_json(f.argmax)},
      {"argmax_region", region_name(classify_point(field.n, f.argmax.i, f.argmax.j))},
  };
  res.csv = grid_metrics_csv(grid, field, &f.values);
  return res;
}

ReportDocument empirical_limit_report(const PanelGrid& grid, const EmpiricalRequest& req) {
  ReportDocument doc;
  doc.metadata = base_metadata("empirical-limit", grid.spec());
  doc.metadata["stagger"] = staggering_name(req.stagger);
  doc.metadata.update(damping_metadata(req.op, req.q, Coefficient{}, req.coef2));
  doc.metadata.erase("coef");
  doc.metadata["tol"] = req.tol;
  doc.metadata["steps"] = req.steps;
  doc.metadata["patch"] = req.patch;
  doc.metadata["seed"] = req.seed;

  const MetricField field = metric_field(grid, req.stagger);
  const FrozenCell cell = resolve_cell(field, req.op, req.location);
  const double psi = grid_stability_function(cell.metrics, cell.area_min, req.op);

  double analytic = 0.0;
  if (req.coef2) {
    const auto lim = mixed_order_limit(*req.coef2, req.q, psi);
    if (!lim) {
      throw std::invalid_argument("coef2 exceeds psi/2 at this cell: no stable hyperviscosity");
    }
    analytic = *lim;
  } else {
    analytic = max_stable_coefficient(psi, req.q);
  }

  PatchConfig cfg;
  cfg.nx = req.patch;
  cfg.ny = req.patch;
  cfg.metrics = cell.metrics;
  cfg.area_min = cell.area_min;
  cfg.damping = DampingSpec{req.q, 0.0, req.op, req.coef2.value_or(0.0)};
  cfg.n_steps = req.steps;
  cfg.validate();

  ScalarField init = checkerboard(req.patch, req.patch);
  const ScalarField noise = seeded_noise(req.patch, req.patch, req.seed);
  for (std::size_t k = 0; k < init.values().size(); ++k) init.values()[k] += noise.values()[k];

  const double empirical = empirical_threshold(cfg, init, 0.5 * analytic, 1.5 * analytic, req.tol);
  const double gap = std::abs(empirical - analytic) / analytic;
  doc.payload = {
      {"cell", cell_json(cell, req.op)},
      {"analytic_limit", analytic},
      {"analytic_limit_rounded_down", format_round_down_3dp(analytic)},
      {"empirical_threshold", empirical},
      {"relative_gap", gap},
      {"within_half_percent", gap < 0.005},
  };
  return doc;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace csdamp::report
