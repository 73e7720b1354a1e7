#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ramploads/friction.hpp"
#include "ramploads/geometry.hpp"

namespace ramploads {

enum class SolveMethod { ClosedForm, Ode };

struct SpeedSample {
  ChartPoint point;
  double w = 0.0;
  double w_dot = 0.0;
  /// True inside the start region, where w is the tip limit and ẇ is reported as 0.
  bool tip = false;
};

/// Layer speed along the ramp. Internally the solvers carry the tangential
/// momentum flux P(s) = w(s)·b(s), which vanishes at the tip; w = P/b.
class SpeedField {
 public:
  class Impl;

  double w(double s) const;
  double w_dot(double s) const;
  /// P = w·b.
  double momentum(double s) const;
  /// Geometry plus (w, ẇ) at one arc length, with a single chart inversion.
  SpeedSample sample(double s) const;

  double s_valid() const { return s_valid_; }
  double s_max() const { return chart_.s_max(); }
  double w0() const { return w0_; }
  /// Below this arc length the field reports tip limits.
  double s_start() const { return s_start_; }
  SolveMethod method() const { return method_; }
  const FrictionSpec& model() const { return model_; }
  const ArcChart& chart() const { return chart_; }

  /// Returns a copy whose speed is scaled by `factor` (VelocityScaled).
  SpeedField scaled(double factor, FrictionSpec model) const;

  SpeedField(ArcChart chart, FrictionSpec model, SolveMethod method,
             std::shared_ptr<const Impl> impl, double w0, double s_valid, double s_start,
             double scale = 1.0)
      : chart_(std::move(chart)),
        model_(model),
        method_(method),
        impl_(std::move(impl)),
        w0_(w0),
        s_valid_(s_valid),
        s_start_(s_start),
        scale_(scale) {}

 private:
  ArcChart chart_;
  FrictionSpec model_;
  SolveMethod method_;
  std::shared_ptr<const Impl> impl_;
  double w0_ = 1.0;
  double s_valid_ = 0.0;
  double s_start_ = 0.0;
  double scale_ = 1.0;
};

struct OdeOptions {
  std::size_t initial_steps = 4096;
  std::size_t max_steps = std::size_t{1} << 18;
  double refine_tol = 1e-8;
  /// Series start s₀ = max(start_abs, start_rel·s_max).
  double start_abs = 1e-6;
  double start_rel = 1e-6;
};

struct VelocityPowerOptions {
  /// Use the numerical integrator even where a closed form exists (α = 1, 2).
  bool force_ode = false;
  OdeOptions ode;
};

SpeedField solve_frictionless(const ArcChart& chart);
SpeedField solve_velocity_power(const ArcChart& chart, double k, double alpha,
                                const VelocityPowerOptions& options = {});
SpeedField solve_coulomb(const ArcChart& chart, double eta);
SpeedField solve_velocity_scaled(const ArcChart& chart, double mu);

/// Dispatches on the friction model.
SpeedField solve(const ArcChart& chart, const FrictionSpec& spec,
                 const VelocityPowerOptions& options = {});

/// Loads of the μ→0 frozen layer at abscissa x. w ≡ 0 and w_ρ = +∞.
struct FrozenLoads {
  double x = 0.0;
  double N = 0.0;
  double f = 0.0;
  double wf1 = 0.0;
  double wf2 = 0.0;
};
FrozenLoads frozen_limit_loads(const ArcChart& chart, double x);
std::vector<FrozenLoads> frozen_limit_loads(const ArcChart& chart, const std::vector<double>& xs);

/// First t > 0 where the α = 1 integrand ḃψ̇(t) − k·b(t) turns negative, if any.
std::optional<double> velocity_power_alpha1_integrand_root(const ArcChart& chart, double k,
                                                           double tol = 1e-12);

}  // namespace ramploads
