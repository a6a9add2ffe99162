#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csdamp/gnomonic_grid.hpp"

namespace csdamp {

/// pseudo: (sin a / dA) [chi d2x + chi^-1 d2y], the divergence of the plain
///         gradient (no cross-derivative terms).
/// full:   the curvilinear Laplacian, including the cos(a) cross terms.
enum class OperatorKind { pseudo, full };

std::string_view operator_name(OperatorKind op);
OperatorKind parse_operator(std::string_view name);

/// Order-2q damping with nondimensional coefficient C, where the dimensional
/// coefficient is nu = (C dA_min)^q / dt. `laplacian_coef` adds a second-order
/// term with its own coefficient C2 (mixed-order damping).
struct DampingSpec {
  int q = 2;
  double coef = 0.0;
  OperatorKind op = OperatorKind::pseudo;
  double laplacian_coef = 0.0;

  /// Throws std::invalid_argument for q < 1 or negative/non-finite coefficients.
  void validate() const;
};

/// Normalised wavenumbers (k dx, l dy). Components lie in [-pi, pi]; the
/// 2dx wave is (pi, pi).
struct WaveNumber {
  double kdx = 0.0;
  double ldy = 0.0;
};

/// Grid stability function at one point.
///   pseudo: Psi~ = dA / (sin a dA_min (chi + 1/chi))
///   full:   Psi  = dA sin a / (dA_min (chi + 1/chi)) = sin^2(a) Psi~
double grid_stability_function(const CellMetrics& m, double area_min, OperatorKind op);

/// Psi~ or Psi over all points of a metric field, normalised by the field's
/// own minimum cell area.
struct StabilityField {
  OperatorKind op = OperatorKind::pseudo;
  Staggering stagger = Staggering::primary;
  int n = 0;
  double area_min = 0.0;
  std::vector<double> values;  // same ordering as MetricField::cells

  PointIndex point_at(std::size_t flat) const;
};

StabilityField stability_field(const MetricField& metrics, OperatorKind op);

struct FieldMinimum {
  double value = 0.0;
  PointIndex location;
};

/// Global minimum. Ties resolve to the lowest panel, then row-major index.
FieldMinimum psi_min(const StabilityField& field);

/// Every point whose value is within `rel_tol` of the minimum.
std::vector<PointIndex> psi_min_locations(const StabilityField& field, double rel_tol);

/// One-step amplification factor of Fourier mode w at a cell with frozen
/// metrics `m`:
///   Gamma = 1 - 4 C2 K - (4 C K)^q,
///   K = dA_min sin a / dA * (chi sx^2 + sy^2/chi)                      (pseudo)
///   K = dA_min / (dA sin a) * (chi sx^2 - 2 cos a sx sy cx cy + sy^2/chi) (full)
/// with sx = sin(k dx / 2), cx = cos(k dx / 2), etc.
double amplification(const DampingSpec& spec, const CellMetrics& m, double area_min,
                     const WaveNumber& w);

/// Amplification of the 2dx wave, 1 - 4 C2 / Psi - (4 C / Psi)^q, with Psi the
/// grid stability function of the spec's operator.
double two_dx_amplification(const DampingSpec& spec, const CellMetrics& m,
                            double area_min);

/// Largest stable coefficient, 2^(1/q) Psi_min / 4.
double max_stable_coefficient(double psi_min, int q);

/// Coefficient with Gamma(pi, pi) = 0 at the minimum of Psi: Psi_min / 4.
double oscillation_free_coefficient(double psi_min);

/// 2dx amplification under combined Laplacian and order-2q damping at Psi_min.
/// Stable iff the result is >= -1.
double mixed_order_two_dx(double coef2, double coef_2q, int q, double psi_min);

/// Largest stable hyperviscosity given a Laplacian coefficient C2:
/// (Psi_min / 4) (2 - 4 C2 / Psi_min)^(1/q). Empty when C2 > Psi_min / 2,
/// where the Laplacian term alone is already unstable.
std::optional<double> mixed_order_limit(double coef2, int q, double psi_min);

/// Flow-dependent Laplacian coefficient C* dA_min sqrt(D^2 + zeta^2).
double flow_dependent_nu(double coef_star, double area_min, double divergence,
                         double vorticity);

/// Gamma along k dx = l dy at `n_samples` evenly spaced points of [0, pi].
std::vector<std::pair<double, double>> diagonal_sweep(const DampingSpec& spec,
                                                      const CellMetrics& m,
                                                      double area_min, int n_samples);

struct TwoDxField {
  std::vector<double> values;  // same ordering as MetricField::cells
  double min = 0.0;
  double max = 0.0;
  PointIndex argmin;
  PointIndex argmax;
};

/// Gamma(pi, pi) at every point, normalised by the field's minimum area.
TwoDxField two_dx_field(const DampingSpec& spec, const MetricField& metrics);

/// Truncates toward -inf at three decimals, guarding against representation
/// error (0.288 stored as 0.28799999...).
double round_down_3dp(double x);
/// round_down_3dp formatted with exactly three decimals.
std::string format_round_down_3dp(double x);

}  // namespace csdamp
