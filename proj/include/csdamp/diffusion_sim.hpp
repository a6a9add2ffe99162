#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "csdamp/gnomonic_grid.hpp"
#include "csdamp/stability.hpp"

namespace csdamp {

/// Doubly periodic nx x ny scalar field, stored row-major (i fastest).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int nx, int ny, double fill = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double& operator()(int i, int j) { return data_[wrap(i, j)]; }
  double operator()(int i, int j) const { return data_[wrap(i, j)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t wrap(int i, int j) const;

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

/// Frozen-coefficient damping problem on a periodic patch. `metrics` is either
/// one CellMetrics for the whole patch or one per cell (row-major).
struct PatchConfig {
  int nx = 8;
  int ny = 8;
  std::variant<CellMetrics, std::vector<CellMetrics>> metrics = CellMetrics{};
  double area_min = 1.0;
  DampingSpec damping;
  int n_steps = 200;

  /// Throws std::invalid_argument when the patch is smaller than 4 x 4,
  /// n_steps < 1, the per-cell metric count does not match, or the damping
  /// spec is invalid.
  void validate() const;
  const CellMetrics& metrics_at(int i, int j) const;
};

/// One application of the discrete pseudo or full Laplacian with periodic
/// wraparound. The full operator evaluates its cross terms at the four cell
/// corners and averages them back to the centre.
ScalarField apply_operator(const ScalarField& field, const PatchConfig& cfg);

/// One forward-Euler damping step:
///   s += C2 dA_min L s + (-1)^(q+1) (C dA_min)^q L^q s
/// with L^q formed by q successive applications of apply_operator.
ScalarField step(const ScalarField& field, const PatchConfig& cfg);

enum class Classification { stable, unstable };

struct RunOutcome {
  Classification classification = Classification::stable;
  double growth_per_step = 1.0;  ///< geometric mean of max|s| growth per step
  int steps_taken = 0;
  double final_max_abs = 0.0;
  int argmax_i = 0;  ///< location of max|s| after the last step
  int argmax_j = 0;
};

/// A run is unstable once max|s| exceeds this factor times its initial value.
inline constexpr double kBlowUpFactor = 1e6;

/// Steps the field up to cfg.n_steps times, stopping early on blow-up.
RunOutcome run(const PatchConfig& cfg, ScalarField initial);

/// (-1)^(i+j), the 2dx wave in both directions.
ScalarField checkerboard(int nx, int ny);
/// Uniform noise in [-1, 1] from a fixed-seed generator.
ScalarField seeded_noise(int nx, int ny, std::uint64_t seed);

/// Raised when an empirical_threshold bracket does not straddle the boundary.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bisects on the damping coefficient between a stable `lo` and unstable `hi`
/// until the bracket is narrower than `tol`; returns its midpoint. Every probe
/// restarts from `initial`.
double empirical_threshold(const PatchConfig& tmpl, const ScalarField& initial, double lo,
                           double hi, double tol);

/// Per-cell metrics of panel 1 of `field`, in the row-major order PatchConfig
/// expects.
std::vector<CellMetrics> panel_metrics(const MetricField& field, int panel = 1);

/// Runs damping on one panel with per-cell metrics and a periodic scalar
/// field, from seeded noise. The field's own minimum area sets dA_min.
RunOutcome panel_run(const MetricField& field, const DampingSpec& spec, int n_steps,
                     std::uint64_t seed = 1);
RunOutcome panel_run(const PanelGrid& grid, Staggering stagger, const DampingSpec& spec,
                     int n_steps, std::uint64_t seed = 1);

}  // namespace csdamp
