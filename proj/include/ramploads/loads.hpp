#pragma once

#include <span>
#include <vector>

#include "ramploads/geometry.hpp"
#include "ramploads/solvers.hpp"

namespace ramploads {

/// Layer state and wall loads at one surface station. N, f, drag_cum,
/// lift_cum are forces on the ramp; wf1, wf2 are the ramp's force on the gas.
struct SurfaceStation {
  double x = 0.0;
  double s = 0.0;
  double w = 0.0;
  double u = 0.0;
  double v = 0.0;
  double w_rho = 0.0;
  double wf1 = 0.0;
  double wf2 = 0.0;
  double N = 0.0;
  double f = 0.0;
  double drag_cum = 0.0;
  double lift_cum = 0.0;
};

struct SurfaceProfile {
  std::vector<SurfaceStation> stations;
  /// Validity horizon after the N ≥ 0, f ≥ 0 checks.
  double s_valid = 0.0;
  /// True when some requested station was dropped by the N/f checks.
  bool truncated = false;
};

/// f in (−clamp, 0) is reported as 0.
inline constexpr double kFrictionClamp = 1e-9;

/// Evaluates the surface state at each requested arc length (sorted,
/// within [0, field.s_valid()]) and accumulates drag/lift by panel-wise
/// Gauss-Legendre quadrature of −(w_f1, w_f2).
SurfaceProfile surface_state(const ArcChart& chart, const SpeedField& field,
                             std::span<const double> stations);

/// Frozen-layer table: w = u = v = 0, w_ρ = +∞.
SurfaceProfile frozen_surface_state(const ArcChart& chart, std::span<const double> stations);

struct CumulativeLoad {
  double drag_cum = 0.0;
  double lift_cum = 0.0;
};

/// Cumulative force on the ramp from the station values alone, by
/// piecewise-cubic quadrature through neighbouring stations.
std::vector<CumulativeLoad> cumulative_loads(std::span<const SurfaceStation> stations);

struct ConservationResidual {
  double s = 0.0;
  double mass = 0.0;
  double x_momentum = 0.0;
  double y_momentum = 0.0;
  double energy = 0.0;
};

std::vector<ConservationResidual> conservation_report(const ArcChart& chart,
                                                      const SurfaceProfile& profile,
                                                      double E0 = 1.0);

/// Dirac-layer weights of the measure solution, tabulated on the stations and
/// interpolated by local cubics. The pressure measure is identically zero.
class WeakFormWeights {
 public:
  WeakFormWeights() = default;
  WeakFormWeights(std::vector<double> s, std::vector<double> x, double E0);

  double wm(int eq, double s) const;
  double wn(int eq, double s) const;
  double wf1(double s) const;
  double wf2(double s) const;
  double pressure_weight(double) const { return 0.0; }
  double E0() const { return E0_; }
  double s_min() const { return s_.front(); }
  double s_max() const { return s_.back(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& s_grid() const { return s_; }

  /// Multiplies one weight table; used to build negative controls.
  void perturb(int eq, double factor);

  std::vector<double> wm_table[4];
  std::vector<double> wn_table[4];
  std::vector<double> wf1_table;
  std::vector<double> wf2_table;

 private:
  std::vector<double> s_;
  std::vector<double> x_;
  double E0_ = 1.0;
};

WeakFormWeights weak_weights(const ArcChart& chart, const SurfaceProfile& profile,
                             double E0 = 1.0);

/// Arc-length stations: `count` points uniform in s on [0, s_end].
std::vector<double> uniform_s_stations(double s_end, std::size_t count);
/// `count` points uniform in x on [0, x_end], mapped to arc length.
std::vector<double> uniform_x_stations(const ArcChart& chart, double x_end, std::size_t count);

}  // namespace ramploads
