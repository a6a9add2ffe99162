#include "csdamp/gnomonic_grid.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace csdamp {

double theta_max(MappingKind kind) {
  switch (kind) {
    case MappingKind::equidistant:
      return 1.0;
    case MappingKind::equiangular:
      return std::numbers::pi / 4.0;
    case MappingKind::equi_edge:
      return std::asin(1.0 / std::sqrt(3.0));
  }
  throw std::logic_error("theta_max: unknown mapping");
}

double beta(MappingKind kind, double theta) {
  switch (kind) {
    case MappingKind::equidistant:
      return theta;
    case MappingKind::equiangular:
      return std::tan(theta);
    case MappingKind::equi_edge:
      return std::numbers::sqrt2 * std::tan(theta);
  }
  throw std::logic_error("beta: unknown mapping");
}

std::string_view mapping_name(MappingKind kind) {
  switch (kind) {
    case MappingKind::equidistant:
      return "equidistant";
    case MappingKind::equiangular:
      return "equiangular";
    case MappingKind::equi_edge:
      return "equi-edge";
  }
  return "unknown";
}

MappingKind parse_mapping(std::string_view name) {
  for (auto k : {MappingKind::equidistant, MappingKind::equiangular,
                 MappingKind::equi_edge}) {
    if (name == mapping_name(k)) return k;
  }
  throw std::invalid_argument("unknown mapping '" + std::string(name) +
                              "'; valid: equidistant, equiangular, equi-edge");
}

void GridSpec::validate() const {
  if (ne < 2) {
    throw std::invalid_argument("grid: ne must be at least 2, got " + std::to_string(ne));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("grid: radius must be positive and finite");
  }
}

std::string_view staggering_name(Staggering s) {
  return s == Staggering::primary ? "primary" : "offset";
}

Staggering parse_staggering(std::string_view name) {
  if (name == "primary") return Staggering::primary;
  if (name == "offset") return Staggering::offset;
  throw std::invalid_argument("unknown staggering '" + std::string(name) +
                              "'; valid: primary, offset");
}

namespace {

// theta_max * m / ne for odd or even integer m; exactly antisymmetric in m and
// exactly +-theta_max at m = +-ne.
double lattice_angle(double tmax, int m, int ne) {
  return tmax * (static_cast<double>(m) / ne);
}

}  // namespace

std::vector<double> reference_angles(const GridSpec& spec, Staggering stagger) {
  spec.validate();
  const double tmax = theta_max(spec.mapping);
  const int ne = spec.ne;
  std::vector<double> out;
  if (stagger == Staggering::primary) {
    out.reserve(ne);
    for (int i = 1; i <= ne; ++i) out.push_back(lattice_angle(tmax, 2 * i - 1 - ne, ne));
  } else {
    out.reserve(ne + 1);
    for (int i = 0; i <= ne; ++i) out.push_back(lattice_angle(tmax, 2 * i - ne, ne));
  }
  return out;
}

CartPoint panel_point(const GridSpec& spec, int panel, double tx, double ty) {
  const double a = spec.radius / std::sqrt(3.0);
  const double xi = a * beta(spec.mapping, tx);
  const double eta = a * beta(spec.mapping, ty);
  CartPoint p;
  switch (panel) {
    case 1: p = {a, xi, eta}; break;
    case 2: p = {-xi, a, eta}; break;
    case 3: p = {-a, -xi, eta}; break;
    case 4: p = {xi, -a, eta}; break;
    case 5: p = {-eta, xi, a}; break;
    case 6: p = {eta, xi, -a}; break;
    default:
      throw std::out_of_range("panel_point: panel must be in 1..6");
  }
  return (spec.radius / std::sqrt(a * a + xi * xi + eta * eta)) * p;
}

PanelGrid::PanelGrid(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  const int ne = spec_.ne;
  const double tmax = theta_max(spec_.mapping);
  const int nv = ne + 1;
  const int nc = ne + 2;
  vertices_.resize(static_cast<std::size_t>(kPanelCount) * nv * nv);
  centres_.resize(static_cast<std::size_t>(kPanelCount) * nc * nc);

  for (int panel = 1; panel <= kPanelCount; ++panel) {
    for (int j = 0; j <= ne; ++j) {
      const double ty = lattice_angle(tmax, 2 * j - ne, ne);
      for (int i = 0; i <= ne; ++i) {
        const double tx = lattice_angle(tmax, 2 * i - ne, ne);
        vertices_[(static_cast<std::size_t>(panel - 1) * nv + j) * nv + i] =
            panel_point(spec_, panel, tx, ty);
      }
    }
    for (int j = -1; j <= ne; ++j) {
      const double ty = lattice_angle(tmax, 2 * j + 1 - ne, ne);
      for (int i = -1; i <= ne; ++i) {
        const double tx = lattice_angle(tmax, 2 * i + 1 - ne, ne);
        centres_[(static_cast<std::size_t>(panel - 1) * nc + (j + 1)) * nc + (i + 1)] =
            panel_point(spec_, panel, tx, ty);
      }
    }
  }
  link_panels();
}

void PanelGrid::check_panel(int panel) const {
  if (panel < 1 || panel > kPanelCount) {
    throw std::out_of_range("panel must be in 1..6, got " + std::to_string(panel));
  }
}

const CartPoint& PanelGrid::vertex(int panel, int i, int j) const {
  check_panel(panel);
  const int nv = spec_.ne + 1;
  if (i < 0 || j < 0 || i >= nv || j >= nv) {
    throw std::out_of_range("vertex index out of range");
  }
  return vertices_[(static_cast<std::size_t>(panel - 1) * nv + j) * nv + i];
}

const CartPoint& PanelGrid::centre(int panel, int i, int j) const {
  check_panel(panel);
  const int ne = spec_.ne;
  const int nc = ne + 2;
  if (i < -1 || j < -1 || i > ne || j > ne) {
    throw std::out_of_range("centre index out of range");
  }
  return centres_[(static_cast<std::size_t>(panel - 1) * nc + (j + 1)) * nc + (i + 1)];
}

const CartPoint& PanelGrid::point(Staggering stagger, const PointIndex& idx) const {
  const int n = points_per_side(spec_.ne, stagger);
  if (idx.i < 0 || idx.j < 0 || idx.i >= n || idx.j >= n) {
    throw std::out_of_range("grid point index out of range");
  }
  return stagger == Staggering::primary ? centre(idx.panel, idx.i, idx.j)
                                        : vertex(idx.panel, idx.i, idx.j);
}

namespace {

struct SideEnds {
  CartPoint first;
  CartPoint last;
};

SideEnds side_ends(const PanelGrid& g, int panel, PanelSide side) {
  const int ne = g.ne();
  switch (side) {
    case PanelSide::west:
      return {g.vertex(panel, 0, 0), g.vertex(panel, 0, ne)};
    case PanelSide::east:
      return {g.vertex(panel, ne, 0), g.vertex(panel, ne, ne)};
    case PanelSide::south:
      return {g.vertex(panel, 0, 0), g.vertex(panel, ne, 0)};
    case PanelSide::north:
      return {g.vertex(panel, 0, ne), g.vertex(panel, ne, ne)};
  }
  throw std::logic_error("side_ends: unknown side");
}

constexpr std::array<PanelSide, 4> kSides = {PanelSide::west, PanelSide::east,
                                             PanelSide::south, PanelSide::north};

}  // namespace

void PanelGrid::link_panels() {
  const double tol = 1e-9 * spec_.radius;
  auto same = [tol](const CartPoint& a, const CartPoint& b) { return norm(a - b) < tol; };

  for (int p = 1; p <= kPanelCount; ++p) {
    for (auto side : kSides) {
      const SideEnds mine = side_ends(*this, p, side);
      bool found = false;
      for (int q = 1; q <= kPanelCount && !found; ++q) {
        if (q == p) continue;
        for (auto other : kSides) {
          const SideEnds theirs = side_ends(*this, q, other);
          if (same(mine.first, theirs.first) && same(mine.last, theirs.last)) {
            links_[p - 1][static_cast<int>(side)] = {q, other, false};
            found = true;
            break;
          }
          if (same(mine.first, theirs.last) && same(mine.last, theirs.first)) {
            links_[p - 1][static_cast<int>(side)] = {q, other, true};
            found = true;
            break;
          }
        }
      }
      if (!found) throw std::logic_error("PanelGrid: panel edge without a neighbour");
    }
  }
}

PanelEdgeLink PanelGrid::neighbor(int panel, PanelSide side) const {
  check_panel(panel);
  return links_[panel - 1][static_cast<int>(side)];
}

std::optional<PointIndex> PanelGrid::resolve_primary_centre(int panel, int i, int j) const {
  check_panel(panel);
  const int ne = spec_.ne;
  const bool i_in = i >= 0 && i < ne;
  const bool j_in = j >= 0 && j < ne;
  if (i_in && j_in) return PointIndex{panel, i, j};
  if (!i_in && !j_in) return std::nullopt;

  PanelSide side;
  int along;
  if (!i_in) {
    if (i == -1) side = PanelSide::west;
    else if (i == ne) side = PanelSide::east;
    else return std::nullopt;
    along = j;
  } else {
    if (j == -1) side = PanelSide::south;
    else if (j == ne) side = PanelSide::north;
    else return std::nullopt;
    along = i;
  }

  const PanelEdgeLink link = neighbor(panel, side);
  const int k = link.reversed ? ne - 1 - along : along;
  switch (link.side) {
    case PanelSide::west:
      return PointIndex{link.panel, 0, k};
    case PanelSide::east:
      return PointIndex{link.panel, ne - 1, k};
    case PanelSide::south:
      return PointIndex{link.panel, k, 0};
    case PanelSide::north:
      return PointIndex{link.panel, k, ne - 1};
  }
  return std::nullopt;
}

PanelGrid build_grid(const GridSpec& spec) { return PanelGrid(spec); }

CellMetrics metrics_from_corners(const CartPoint& p1, const CartPoint& p2,
                                 const CartPoint& p3, const CartPoint& p4,
                                 double radius) {
  const QuadAngles a = quad_interior_angles(p1, p2, p3, p4);
  CellMetrics m;
  m.area = radius * radius * (a.sum() - 2.0 * std::numbers::pi);
  m.dx = 0.5 * radius * (central_angle(p1, p2) + central_angle(p4, p3));
  m.dy = 0.5 * radius * (central_angle(p1, p4) + central_angle(p2, p3));
  m.chi = m.dy / m.dx;
  m.alpha = 0.25 * (a.at1 + (std::numbers::pi - a.at2) + a.at3 + (std::numbers::pi - a.at4));
  m.sin_alpha = std::sin(m.alpha);
  return m;
}

CellMetrics cell_metrics_at(const PanelGrid& grid, Staggering stagger, int panel, int i,
                            int j) {
  const int n = points_per_side(grid.ne(), stagger);
  if (panel < 1 || panel > kPanelCount || i < 0 || j < 0 || i >= n || j >= n) {
    throw std::out_of_range("cell_metrics_at: index out of range");
  }
  const double r = grid.spec().radius;
  if (stagger == Staggering::primary) {
    return metrics_from_corners(grid.vertex(panel, i, j), grid.vertex(panel, i + 1, j),
                                grid.vertex(panel, i + 1, j + 1),
                                grid.vertex(panel, i, j + 1), r);
  }
  return metrics_from_corners(grid.centre(panel, i - 1, j - 1), grid.centre(panel, i, j - 1),
                              grid.centre(panel, i, j), grid.centre(panel, i - 1, j), r);
}

double MetricField::min_area() const {
  double v = cells.at(0).area;
  for (const auto& c : cells) v = std::min(v, c.area);
  return v;
}

double MetricField::max_area() const {
  double v = cells.at(0).area;
  for (const auto& c : cells) v = std::max(v, c.area);
  return v;
}

MetricField metric_field(const PanelGrid& grid, Staggering stagger) {
  MetricField f;
  f.stagger = stagger;
  f.ne = grid.ne();
  f.n = points_per_side(grid.ne(), stagger);
  f.cells.resize(static_cast<std::size_t>(kPanelCount) * f.n * f.n);
  for (std::size_t k = 0; k < f.cells.size(); ++k) {
    const PointIndex p = f.point_at(k);
    f.cells[k] = cell_metrics_at(grid, stagger, p.panel, p.i, p.j);
  }
  return f;
}

std::string_view region_name(PanelRegion r) {
  switch (r) {
    case PanelRegion::corner: return "corner";
    case PanelRegion::mid_edge: return "mid-edge";
    case PanelRegion::edge: return "edge";
    case PanelRegion::centre: return "centre";
    case PanelRegion::interior: return "interior";
  }
  return "unknown";
}

PanelRegion classify_point(int n, int i, int j) {
  const auto boundary = [n](int k) { return k == 0 || k == n - 1; };
  const auto middle = [n](int k) { return k == (n - 1) / 2 || k == n / 2; };
  const bool bi = boundary(i);
  const bool bj = boundary(j);
  if (bi && bj) return PanelRegion::corner;
  if (bi || bj) return middle(bi ? j : i) ? PanelRegion::mid_edge : PanelRegion::edge;
  if (middle(i) && middle(j)) return PanelRegion::centre;
  return PanelRegion::interior;
}

GridSummary grid_summary(const PanelGrid& grid) {
  const MetricField primary = metric_field(grid, Staggering::primary);
  GridSummary s;
  std::size_t kmin = 0;
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < primary.cells.size(); ++k) {
    if (primary.cells[k].area < primary.cells[kmin].area) kmin = k;
    if (primary.cells[k].area > primary.cells[kmax].area) kmax = k;
  }
  s.min_area = primary.cells[kmin].area;
  s.max_area = primary.cells[kmax].area;
  s.min_location = primary.point_at(kmin);
  s.max_location = primary.point_at(kmax);
  s.min_region = classify_point(primary.n, s.min_location.i, s.min_location.j);
  s.max_region = classify_point(primary.n, s.max_location.i, s.max_location.j);
  s.area_ratio = s.max_area / s.min_area;

  const int ne = grid.ne();
  const CellMetrics corner = cell_metrics_at(grid, Staggering::offset, 1, 0, 0);
  s.chi_corner = corner.chi;
  s.sin_alpha_corner = corner.sin_alpha;
  if (ne % 2 == 0) {
    const CellMetrics west = cell_metrics_at(grid, Staggering::offset, 1, 0, ne / 2);
    const CellMetrics south = cell_metrics_at(grid, Staggering::offset, 1, ne / 2, 0);
    s.chi_mid_edge = std::pair{std::max(west.chi, south.chi), std::min(west.chi, south.chi)};
    s.sin_alpha_mid_edge = west.sin_alpha;
  }
  return s;
}

}  // namespace csdamp
