#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "csdamp/diffusion_sim.hpp"
#include "csdamp/gnomonic_grid.hpp"
#include "csdamp/stability.hpp"

namespace csdamp::report {

inline constexpr std::string_view kToolName = "csdamp";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Accepts "C96" / "c96" or a plain integer.
int parse_resolution(std::string_view text);

/// Where to evaluate frozen metrics: the stability-function minimum, an
/// explicit grid point, or the flat reference cell (chi = 1, sin a = 1,
/// dA = dA_min).
struct Location {
  enum class Kind { argmin, point, flat } kind = Kind::argmin;
  PointIndex point;
};

/// "argmin", "flat" or "panel,i,j".
Location parse_location(std::string_view text);

/// Coefficient flag: a number or "osc-free".
struct Coefficient {
  bool osc_free = false;
  double value = 0.0;
};

Coefficient parse_coefficient(std::string_view text);

/// Metadata + payload wrapper shared by every subcommand.
struct ReportDocument {
  nlohmann::ordered_json metadata;
  nlohmann::ordered_json payload;

  nlohmann::ordered_json to_json() const;
};

/// Base metadata block: tool, version, command and grid specification.
nlohmann::ordered_json base_metadata(std::string_view command, const GridSpec& spec);

nlohmann::ordered_json to_json(const PointIndex& p);
nlohmann::ordered_json to_json(const CellMetrics& m);
nlohmann::ordered_json to_json(const GridSummary& s);

/// One row per grid point:
/// panel_id,i,j,lon_deg,lat_deg,dx_m,dy_m,chi,sin_alpha,area_m2
/// with an optional trailing gamma_2dx column.
std::string grid_metrics_csv(const PanelGrid& grid, const MetricField& metrics,
                             const std::vector<double>* gamma_2dx = nullptr);

ReportDocument grid_metrics_report(const PanelGrid& grid, Staggering stagger);

struct LimitsRequest {
  Staggering stagger = Staggering::offset;
  OperatorKind op = OperatorKind::pseudo;
  std::vector<int> orders = {1, 2, 3, 4};
  std::optional<double> coef2;
};

/// Psi_min with its location, oscillation-free coefficient, and per-order
/// stability limits, each with a rounded-down three-decimal column.
ReportDocument limits_report(const PanelGrid& grid, const LimitsRequest& req);
std::string limits_csv(const ReportDocument& doc);

/// Frozen metrics at `loc` plus the dA_min they are normalised by.
struct FrozenCell {
  CellMetrics metrics;
  double area_min = 0.0;
  std::optional<PointIndex> point;  // absent for the flat cell
};

FrozenCell resolve_cell(const MetricField& field, OperatorKind op, const Location& loc);

struct AmplificationRequest {
  Staggering stagger = Staggering::offset;
  OperatorKind op = OperatorKind::pseudo;
  int q = 2;
  Coefficient coef;
  std::optional<double> coef2;
  Location location;
  int samples = 65;
};

/// Diagonal sweep k dx = l dy; payload holds the resolved coefficient, the
/// cell, and the curve. CSV columns: k_dx,gamma.
ReportDocument amplification_report(const PanelGrid& grid, const AmplificationRequest& req);
std::string amplification_csv(const ReportDocument& doc);

struct TwoDxRequest {
  Staggering stagger = Staggering::offset;
  OperatorKind op = OperatorKind::pseudo;
  int q = 2;
  Coefficient coef;
  std::optional<double> coef2;
};

struct TwoDxResult {
  ReportDocument summary;
  std::string csv;
};

TwoDxResult two_dx_report(const PanelGrid& grid, const TwoDxRequest& req);

struct EmpiricalRequest {
  Staggering stagger = Staggering::offset;
  OperatorKind op = OperatorKind::pseudo;
  int q = 2;
  std::optional<double> coef2;
  Location location;
  double tol = 1e-5;
  int steps = 5000;
  int patch = 8;
  std::uint64_t seed = 1;
};

/// Bisects the frozen-coefficient patch at the chosen cell and compares with
/// the analytic limit. Throws BracketError when the bracket fails.
ReportDocument empirical_limit_report(const PanelGrid& grid, const EmpiricalRequest& req);

/// Writes `content` to `path` through a temporary file and a rename.
/// Throws std::runtime_error when the file cannot be written.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace csdamp::report
