#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramploads/friction.hpp"
#include "ramploads/geometry.hpp"
#include "ramploads/loads.hpp"

namespace ramploads {

/// One step of the particle-accretion oracle. N, f are the per-unit-arc
/// forces recovered on the step ending at s.
struct AccretionState {
  double s = 0.0;
  double M = 0.0;
  double P = 0.0;
  double w = 0.0;
  double N = 0.0;
  double f = 0.0;
  /// Tangential impulse taken out by friction on this step.
  double J_f = 0.0;
};

/// Marches s_n = nΔs: each step accretes the free-stream mass b(s_{n+1}) − b(s_n)
/// with unit x-momentum, projects onto the new tangent, and removes the
/// friction impulse. Needs b̃'(0) > 0.
std::vector<AccretionState> run_accretion(const ArcChart& chart, const FrictionSpec& model,
                                          double ds, double s_max);

/// φ(x, y) = [(1 − ξ²)₊]³ [(1 − ζ²)₊]³ with ξ = (x − x_c)/r_x, ζ = (y − y_c)/r_y.
class BumpTestFunction {
 public:
  BumpTestFunction(double xc, double yc, double rx, double ry);

  double value(double x, double y) const;
  double dx(double x, double y) const;
  double dy(double x, double y) const;

  double xc() const { return xc_; }
  double yc() const { return yc_; }
  double rx() const { return rx_; }
  double ry() const { return ry_; }

 private:
  double xc_, yc_, rx_, ry_;
};

enum class WeakEquation { Mass = 0, XMomentum = 1, YMomentum = 2, Energy = 3 };

struct WeakResidualOptions {
  /// Drop the ⟨w_f δ_R, φ⟩ source term; a negative control.
  bool omit_friction_source = false;
};

struct WeakResidual {
  double residual = 0.0;  // |Σ terms| / Σ ∫|integrand|
  double sum = 0.0;
  double magnitude = 0.0;
  double area = 0.0;
  double line_m = 0.0;
  double line_n = 0.0;
  double source = 0.0;
  double inflow = 0.0;
};

WeakResidual weak_form_residual(const ArcChart& chart, const WeakFormWeights& weights,
                                const BumpTestFunction& phi, WeakEquation equation,
                                const WeakResidualOptions& options = {});

/// Bumps inside the gas region, straddling the ramp, and over the tip at x = 0,
/// sized from the chart.
struct BumpPlacement {
  std::string name;
  BumpTestFunction phi;
};
std::vector<BumpPlacement> standard_bumps(const ArcChart& chart);

struct ConvergenceRow {
  double ds = 0.0;
  double err_w = 0.0;
  double err_N = 0.0;
  double err_f = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Least-squares log-log slopes; empty when fewer than two rows or when
  /// every error sits at round-off.
  std::optional<double> order_w;
  std::optional<double> order_N;
  std::optional<double> order_f;
};

/// Errors below this are treated as round-off when fitting orders.
inline constexpr double kRoundoffFloor = 1e-12;

ConvergenceStudy convergence_study(const ArcChart& chart, const FrictionSpec& model,
                                   const std::vector<double>& ds_list);

}  // namespace ramploads
