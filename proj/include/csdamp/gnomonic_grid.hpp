#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csdamp/sphere_geometry.hpp"

namespace csdamp {

/// The three gnomonic cubed-sphere mappings.
///
///   kind          theta_max          beta(theta)
///   equidistant   1                  theta
///   equiangular   pi/4               tan(theta)
///   equi-edge     asin(1/sqrt(3))    sqrt(2) tan(theta)
///
/// All three satisfy beta(theta_max) = 1, so theta_max maps onto the cube edge.
enum class MappingKind { equidistant, equiangular, equi_edge };

double theta_max(MappingKind kind);
double beta(MappingKind kind, double theta);

std::string_view mapping_name(MappingKind kind);
/// Accepts "equidistant", "equiangular", "equi-edge". Throws std::invalid_argument
/// listing the valid names otherwise.
MappingKind parse_mapping(std::string_view name);

struct GridSpec {
  MappingKind mapping = MappingKind::equiangular;
  int ne = 48;  ///< cells per panel edge
  double radius = kEarthRadius;

  /// Throws std::invalid_argument for ne < 2 or a non-positive radius.
  void validate() const;
};

/// Primary: Ne x Ne cell centres per panel. Offset: (Ne+1) x (Ne+1) points,
/// the primary vertices, whose cells have primary cell centres as corners.
enum class Staggering { primary, offset };

std::string_view staggering_name(Staggering s);
Staggering parse_staggering(std::string_view name);

inline int points_per_side(int ne, Staggering s) {
  return s == Staggering::primary ? ne : ne + 1;
}

/// Reference angles of the cell-centre points of a staggering, ascending.
/// Primary: midpoints -theta_max + (i - 1/2) dtheta, i = 1..Ne.
/// Offset (= primary vertices): -theta_max + (i - 1) dtheta, i = 1..Ne+1, with
/// the endpoints exactly +-theta_max. The list is exactly antisymmetric.
std::vector<double> reference_angles(const GridSpec& spec, Staggering stagger);

/// Point on the sphere of panel `panel` (1..6) at reference angles (tx, ty).
/// Angles beyond theta_max continue the same gnomonic mapping (ghost extension).
///
/// Panel axes: P1 = (a, xi, eta); panels 2-4 are successive 90 degree turns of
/// P1 about +Z; panel 5 is the north cap (-eta, xi, a) and panel 6 the south
/// cap (eta, xi, -a). Here a = R/sqrt(3), xi = a beta(tx), eta = a beta(ty).
CartPoint panel_point(const GridSpec& spec, int panel, double tx, double ty);

inline constexpr int kPanelCount = 6;

/// A grid point: panel in 1..6, 0-based column i and row j.
struct PointIndex {
  int panel = 1;
  int i = 0;
  int j = 0;

  friend constexpr bool operator==(const PointIndex&, const PointIndex&) = default;
};

enum class PanelSide { west, east, south, north };

/// The side of the neighbouring panel that shares an edge. `reversed` is set
/// when the along-edge index runs in the opposite direction on the neighbour.
struct PanelEdgeLink {
  int panel = 0;
  PanelSide side = PanelSide::west;
  bool reversed = false;
};

/// Six-panel gnomonic lattice. Immutable after construction.
///
/// Holds, per panel, the (Ne+1)^2 primary vertices (= offset cell centres) and
/// the primary cell centres with one extra ring of ghost centres obtained by
/// extending the panel's own mapping half a cell past theta_max. The ghost
/// ring supplies the corners of offset cells on panel edges and corners.
class PanelGrid {
 public:
  explicit PanelGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int ne() const { return spec_.ne; }

  /// Primary vertex, i, j in [0, Ne].
  const CartPoint& vertex(int panel, int i, int j) const;
  /// Primary cell centre, i, j in [-1, Ne]; -1 and Ne are ghost centres.
  const CartPoint& centre(int panel, int i, int j) const;
  /// Cell-centre point of a staggering, i, j in [0, points_per_side).
  const CartPoint& point(Staggering stagger, const PointIndex& idx) const;

  PanelEdgeLink neighbor(int panel, PanelSide side) const;

  /// Resolves a primary cell index one step outside a panel edge to the
  /// neighbouring panel's own cell, using exact points from that panel.
  /// In-panel indices are returned unchanged; cells diagonally off a panel
  /// corner (no such cell exists on the cube) give std::nullopt.
  std::optional<PointIndex> resolve_primary_centre(int panel, int i, int j) const;

 private:
  void check_panel(int panel) const;
  void link_panels();

  GridSpec spec_;
  std::vector<CartPoint> vertices_;  // [panel][j][i], (ne+1)^2 per panel
  std::vector<CartPoint> centres_;   // [panel][j][i], (ne+2)^2 per panel, ghost ring
  std::array<std::array<PanelEdgeLink, 4>, kPanelCount> links_{};
};

PanelGrid build_grid(const GridSpec& spec);

/// Metric terms of one cell of either staggering.
struct CellMetrics {
  double dx = 0.0;         ///< mean of the south and north edge lengths
  double dy = 0.0;         ///< mean of the west and east edge lengths
  double chi = 1.0;        ///< aspect ratio dy/dx
  double alpha = 0.0;      ///< angle between the x and y grid lines, radians
  double sin_alpha = 1.0;
  double area = 0.0;       ///< spherical-excess area

  double cos_alpha() const { return std::cos(alpha); }
};

/// Metrics of the cell with corners p1 (SW), p2 (SE), p3 (NE), p4 (NW).
///
/// alpha averages the angle between the +x and +y grid lines over the four
/// corners: the interior angle at SW and NE, its supplement at SE and NW.
CellMetrics metrics_from_corners(const CartPoint& p1, const CartPoint& p2,
                                 const CartPoint& p3, const CartPoint& p4,
                                 double radius);

/// Metrics of grid point (i, j) of a staggering. Primary cells use their four
/// vertices; offset cells use the four surrounding primary cell centres.
/// Throws std::out_of_range for an invalid index.
CellMetrics cell_metrics_at(const PanelGrid& grid, Staggering stagger, int panel,
                            int i, int j);

/// Metrics at every point of a staggering, ordered by panel, then row j, then
/// column i.
struct MetricField {
  Staggering stagger = Staggering::primary;
  int ne = 0;
  int n = 0;  ///< points per panel side
  std::vector<CellMetrics> cells;

  std::size_t index(const PointIndex& idx) const {
    return (static_cast<std::size_t>(idx.panel - 1) * n + idx.j) * n + idx.i;
  }
  PointIndex point_at(std::size_t flat) const {
    const auto per_panel = static_cast<std::size_t>(n) * n;
    const int panel = static_cast<int>(flat / per_panel) + 1;
    const auto rem = flat % per_panel;
    return {panel, static_cast<int>(rem % n), static_cast<int>(rem / n)};
  }
  const CellMetrics& at(const PointIndex& idx) const { return cells[index(idx)]; }

  double min_area() const;
  double max_area() const;
};

MetricField metric_field(const PanelGrid& grid, Staggering stagger);

/// Coarse position of a point within its panel.
enum class PanelRegion { corner, mid_edge, edge, centre, interior };

std::string_view region_name(PanelRegion r);

/// Corner: touches a panel corner. Mid-edge: on an edge, at the middle index
/// (one index for odd counts, either of the two for even). Centre: middle in
/// both directions.
PanelRegion classify_point(int n, int i, int j);

/// Panel-level summary of cell areas (primary grid) and of chi and sin(alpha)
/// at the offset panel corners and mid-edges.
struct GridSummary {
  double max_area = 0.0;
  double min_area = 0.0;
  PointIndex max_location;
  PointIndex min_location;
  PanelRegion max_region = PanelRegion::interior;
  PanelRegion min_region = PanelRegion::interior;
  double area_ratio = 0.0;

  double chi_corner = 0.0;
  double sin_alpha_corner = 0.0;
  /// Both aspect ratios found at mid-edges, larger first. Absent for odd Ne,
  /// where no offset point sits at the middle of an edge.
  std::optional<std::pair<double, double>> chi_mid_edge;
  std::optional<double> sin_alpha_mid_edge;
};

GridSummary grid_summary(const PanelGrid& grid);

}  // namespace csdamp
