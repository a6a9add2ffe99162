#include "csdamp/diffusion_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace csdamp {

ScalarField::ScalarField(int nx, int ny, double fill)
    : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, fill) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("ScalarField: empty dimensions");
}

std::size_t ScalarField::wrap(int i, int j) const {
  i %= nx_;
  j %= ny_;
  if (i < 0) i += nx_;
  if (j < 0) j += ny_;
  return static_cast<std::size_t>(j) * nx_ + i;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : data_) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

bool ScalarField::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void PatchConfig::validate() const {
  if (nx < 4 || ny < 4) throw std::invalid_argument("patch: nx and ny must be >= 4");
  if (n_steps < 1) throw std::invalid_argument("patch: n_steps must be >= 1");
  if (!(area_min > 0.0)) throw std::invalid_argument("patch: area_min must be positive");
  if (const auto* per_cell = std::get_if<std::vector<CellMetrics>>(&metrics)) {
    if (per_cell->size() != static_cast<std::size_t>(nx) * ny) {
      throw std::invalid_argument("patch: per-cell metrics do not match nx * ny");
    }
  }
  damping.validate();
}

const CellMetrics& PatchConfig::metrics_at(int i, int j) const {
  if (const auto* uniform = std::get_if<CellMetrics>(&metrics)) return *uniform;
  return std::get<std::vector<CellMetrics>>(metrics)[static_cast<std::size_t>(j) * nx + i];
}

ScalarField apply_operator(const ScalarField& s, const PatchConfig& cfg) {
  ScalarField out(s.nx(), s.ny());
  const bool full = cfg.damping.op == OperatorKind::full;
  for (int j = 0; j < s.ny(); ++j) {
    for (int i = 0; i < s.nx(); ++i) {
      const CellMetrics& m = cfg.metrics_at(i, j);
      const double c = s(i, j);
      const double d2x = s(i + 1, j) - 2.0 * c + s(i - 1, j);
      const double d2y = s(i, j + 1) - 2.0 * c + s(i, j - 1);
      if (!full) {
        out(i, j) = m.sin_alpha / m.area * (m.chi * d2x + d2y / m.chi);
        continue;
      }
      // Mean of dx dy s over the four corners (i +- 1/2, j +- 1/2).
      const double cross =
          0.25 * (s(i + 1, j + 1) - s(i - 1, j + 1) - s(i + 1, j - 1) + s(i - 1, j - 1));
      out(i, j) = (m.chi * d2x + d2y / m.chi - 2.0 * m.cos_alpha() * cross) /
                  (m.area * m.sin_alpha);
    }
  }
  return out;
}

ScalarField step(const ScalarField& s, const PatchConfig& cfg) {
  const DampingSpec& d = cfg.damping;
  const double scale = d.coef * cfg.area_min;

  ScalarField next = s;
  if (d.coef > 0.0) {
    ScalarField hyper = s;
    for (int p = 0; p < d.q; ++p) {
      hyper = apply_operator(hyper, cfg);
      for (double& v : hyper.values()) v *= scale;
    }
    const double sign = d.q % 2 == 1 ? 1.0 : -1.0;
    auto dst = next.values();
    auto src = hyper.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += sign * src[k];
  }
  if (d.laplacian_coef > 0.0) {
    const ScalarField lap = apply_operator(s, cfg);
    const double c2 = d.laplacian_coef * cfg.area_min;
    auto dst = next.values();
    auto src = lap.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c2 * src[k];
  }
  return next;
}

RunOutcome run(const PatchConfig& cfg, ScalarField field) {
  cfg.validate();
  if (field.nx() != cfg.nx || field.ny() != cfg.ny) {
    throw std::invalid_argument("run: initial field does not match the patch size");
  }
  RunOutcome out;
  const double initial = field.max_abs();
  if (initial == 0.0) {
    out.steps_taken = cfg.n_steps;
    return out;
  }

  for (int n = 0; n < cfg.n_steps; ++n) {
    field = step(field, cfg);
    out.steps_taken = n + 1;
    const double m = field.max_abs();
    if (!std::isfinite(m) || m > kBlowUpFactor * initial) {
      out.classification = Classification::unstable;
      break;
    }
  }

  out.final_max_abs = field.max_abs();
  out.growth_per_step = std::pow(out.final_max_abs / initial, 1.0 / out.steps_taken);

  double best = -1.0;
  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      const double v = std::isfinite(field(i, j)) ? std::abs(field(i, j))
                                                  : std::numeric_limits<double>::infinity();
      if (v > best) {
        best = v;
        out.argmax_i = i;
        out.argmax_j = j;
      }
    }
  }
  return out;
}

ScalarField checkerboard(int nx, int ny) {
  ScalarField f(nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) f(i, j) = (i + j) % 2 == 0 ? 1.0 : -1.0;
  }
  return f;
}

ScalarField seeded_noise(int nx, int ny, std::uint64_t seed) {
  // Bits are mapped to [-1, 1) by hand so the sequence does not depend on the
  // standard library's distribution implementation.
  std::mt19937_64 gen(seed);
  ScalarField f(nx, ny);
  for (double& v : f.values()) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v = 2.0 * u - 1.0;
  }
  return f;
}

double empirical_threshold(const PatchConfig& tmpl, const ScalarField& initial, double lo,
                           double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw std::invalid_argument("empirical_threshold: need lo < hi and tol > 0");
  }
  auto stable_at = [&](double c) {
    PatchConfig cfg = tmpl;
    cfg.damping.coef = c;
    return run(cfg, initial).classification == Classification::stable;
  };
  if (!stable_at(lo)) throw BracketError("empirical_threshold: lower bracket is unstable");
  if (stable_at(hi)) throw BracketError("empirical_threshold: upper bracket is stable");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable_at(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<CellMetrics> panel_metrics(const MetricField& field, int panel) {
  const auto per_panel = static_cast<std::size_t>(field.n) * field.n;
  const auto first = field.cells.begin() + static_cast<std::ptrdiff_t>((panel - 1) * per_panel);
  return {first, first + static_cast<std::ptrdiff_t>(per_panel)};
}

RunOutcome panel_run(const MetricField& field, const DampingSpec& spec, int n_steps,
                     std::uint64_t seed) {
  PatchConfig cfg;
  cfg.nx = field.n;
  cfg.ny = field.n;
  cfg.metrics = panel_metrics(field);
  cfg.area_min = field.min_area();
  cfg.damping = spec;
  cfg.n_steps = n_steps;
  return run(cfg, seeded_noise(field.n, field.n, seed));
}

RunOutcome panel_run(const PanelGrid& grid, Staggering stagger, const DampingSpec& spec,
                     int n_steps, std::uint64_t seed) {
  return panel_run(metric_field(grid, stagger), spec, n_steps, seed);
}

}  // namespace csdamp
