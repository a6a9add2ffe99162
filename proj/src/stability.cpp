#include "csdamp/stability.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace csdamp {

std::string_view operator_name(OperatorKind op) {
  return op == OperatorKind::pseudo ? "pseudo" : "full";
}

OperatorKind parse_operator(std::string_view name) {
  if (name == "pseudo") return OperatorKind::pseudo;
  if (name == "full") return OperatorKind::full;
  throw std::invalid_argument("unknown operator '" + std::string(name) +
                              "'; valid: pseudo, full");
}

void DampingSpec::validate() const {
  if (q < 1) throw std::invalid_argument("damping: order q must be >= 1");
  if (!(coef >= 0.0) || !std::isfinite(coef)) {
    throw std::invalid_argument("damping: coefficient must be finite and >= 0");
  }
  if (!(laplacian_coef >= 0.0) || !std::isfinite(laplacian_coef)) {
    throw std::invalid_argument("damping: Laplacian coefficient must be finite and >= 0");
  }
}

double grid_stability_function(const CellMetrics& m, double area_min, OperatorKind op) {
  const double pseudo = m.area / (m.sin_alpha * area_min * (m.chi + 1.0 / m.chi));
  return op == OperatorKind::pseudo ? pseudo : m.sin_alpha * m.sin_alpha * pseudo;
}

PointIndex StabilityField::point_at(std::size_t flat) const {
  MetricField layout;
  layout.n = n;
  return layout.point_at(flat);
}

StabilityField stability_field(const MetricField& metrics, OperatorKind op) {
  StabilityField f;
  f.op = op;
  f.stagger = metrics.stagger;
  f.n = metrics.n;
  f.area_min = metrics.min_area();
  f.values.reserve(metrics.cells.size());
  for (const auto& c : metrics.cells) {
    f.values.push_back(grid_stability_function(c, f.area_min, op));
  }
  return f;
}

FieldMinimum psi_min(const StabilityField& field) {
  if (field.values.empty()) throw std::invalid_argument("psi_min: empty field");
  std::size_t best = 0;
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] < field.values[best]) best = k;
  }
  return {field.values[best], field.point_at(best)};
}

std::vector<PointIndex> psi_min_locations(const StabilityField& field, double rel_tol) {
  const double lo = psi_min(field).value;
  std::vector<PointIndex> out;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (field.values[k] <= lo * (1.0 + rel_tol)) out.push_back(field.point_at(k));
  }
  return out;
}

namespace {

double damping_bracket(const CellMetrics& m, double area_min, OperatorKind op,
                       const WaveNumber& w) {
  const double sx = std::sin(0.5 * w.kdx);
  const double sy = std::sin(0.5 * w.ldy);
  if (op == OperatorKind::pseudo) {
    return area_min * m.sin_alpha / m.area * (m.chi * sx * sx + sy * sy / m.chi);
  }
  const double cx = std::cos(0.5 * w.kdx);
  const double cy = std::cos(0.5 * w.ldy);
  return area_min / (m.area * m.sin_alpha) *
         (m.chi * sx * sx - 2.0 * m.cos_alpha() * sx * sy * cx * cy + sy * sy / m.chi);
}

double combine(const DampingSpec& spec, double bracket) {
  return 1.0 - 4.0 * spec.laplacian_coef * bracket -
         std::pow(4.0 * spec.coef * bracket, spec.q);
}

}  // namespace

double amplification(const DampingSpec& spec, const CellMetrics& m, double area_min,
                     const WaveNumber& w) {
  return combine(spec, damping_bracket(m, area_min, spec.op, w));
}

double two_dx_amplification(const DampingSpec& spec, const CellMetrics& m,
                            double area_min) {
  // At (pi, pi) the bracket reduces to 1 / Psi; evaluating it through the same
  // path keeps the two functions bitwise consistent.
  return amplification(spec, m, area_min, {std::numbers::pi, std::numbers::pi});
}

double max_stable_coefficient(double psi_min, int q) {
  if (!(psi_min > 0.0)) throw std::invalid_argument("max_stable_coefficient: psi_min <= 0");
  if (q < 1) throw std::invalid_argument("max_stable_coefficient: q < 1");
  return std::pow(2.0, 1.0 / q) * psi_min / 4.0;
}

double oscillation_free_coefficient(double psi_min) {
  if (!(psi_min > 0.0)) {
    throw std::invalid_argument("oscillation_free_coefficient: psi_min <= 0");
  }
  return psi_min / 4.0;
}

double mixed_order_two_dx(double coef2, double coef_2q, int q, double psi_min) {
  return 1.0 - 4.0 * coef2 / psi_min - std::pow(4.0 * coef_2q / psi_min, q);
}

std::optional<double> mixed_order_limit(double coef2, int q, double psi_min) {
  if (!(psi_min > 0.0)) throw std::invalid_argument("mixed_order_limit: psi_min <= 0");
  if (q < 1) throw std::invalid_argument("mixed_order_limit: q < 1");
  if (coef2 < 0.0) throw std::invalid_argument("mixed_order_limit: C2 < 0");
  const double headroom = 2.0 - 4.0 * coef2 / psi_min;
  if (headroom < 0.0) return std::nullopt;
  return psi_min / 4.0 * std::pow(headroom, 1.0 / q);
}

double flow_dependent_nu(double coef_star, double area_min, double divergence,
                         double vorticity) {
  return coef_star * area_min * std::hypot(divergence, vorticity);
}

std::vector<std::pair<double, double>> diagonal_sweep(const DampingSpec& spec,
                                                      const CellMetrics& m,
                                                      double area_min, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("diagonal_sweep: need at least 2 samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    const double k = s == n_samples - 1
                         ? std::numbers::pi
                         : std::numbers::pi * static_cast<double>(s) / (n_samples - 1);
    out.emplace_back(k, amplification(spec, m, area_min, {k, k}));
  }
  return out;
}

TwoDxField two_dx_field(const DampingSpec& spec, const MetricField& metrics) {
  spec.validate();
  const double area_min = metrics.min_area();
  TwoDxField f;
  f.values.reserve(metrics.cells.size());
  for (const auto& c : metrics.cells) {
    f.values.push_back(two_dx_amplification(spec, c, area_min));
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t k = 1; k < f.values.size(); ++k) {
    if (f.values[k] < f.values[lo]) lo = k;
    if (f.values[k] > f.values[hi]) hi = k;
  }
  f.min = f.values[lo];
  f.max = f.values[hi];
  f.argmin = metrics.point_at(lo);
  f.argmax = metrics.point_at(hi);
  return f;
}

double round_down_3dp(double x) {
  return std::floor(x * 1000.0 + 1e-9) / 1000.0;
}

std::string format_round_down_3dp(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", round_down_3dp(x));
  return buf;
}

}  // namespace csdamp
