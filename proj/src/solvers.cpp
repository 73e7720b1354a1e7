#include "ramploads/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "ramploads/errors.hpp"
#include "ramploads/interpolation.hpp"
#include "ramploads/quadrature.hpp"

namespace ramploads {

class SpeedField::Impl {
 public:
  virtual ~Impl() = default;
  /// P = w·b at a point past the start.
  virtual double momentum(const ChartPoint& pt) const = 0;
  virtual double w_dot(const ChartPoint& pt, double P) const = 0;
};

namespace {

constexpr std::size_t kPanels = 1024;
constexpr std::size_t kRootScan = 4096;
constexpr double kRootTol = 1e-10;
// Tip speeds at or below this count as a layer that never starts moving.
constexpr double kTipSpeedFloor = 1e-12;

double tip_speed(const ArcChart& chart) { return chart.at_x(0.0).psi_dot; }

void require_layer(const ArcChart& chart) {
  const double probe = chart.profile().value(1e-6 * chart.x_max());
  if (!(probe > 0.0)) {
    throw Error(ErrorCode::LayerUndefined, "b(x) vanishes next to the tip; no layer forms");
  }
}

/// Closed-form P expressed as a function of x, with Ṗ from differentiating
/// the closed form (the model's balance law).
class ClosedForm final : public SpeedField::Impl {
 public:
  using MomentumFn = std::function<double(double x)>;
  using RateFn = std::function<double(const ChartPoint&, double P)>;

  ClosedForm(MomentumFn p, RateFn rate) : p_(std::move(p)), rate_(std::move(rate)) {}

  double momentum(const ChartPoint& pt) const override { return p_(pt.x); }
  double w_dot(const ChartPoint& pt, double P) const override {
    return (rate_(pt, P) - pt.b_dot * P / pt.b) / pt.b;
  }
  double momentum_x(double x) const { return p_(x); }

 private:
  MomentumFn p_;
  RateFn rate_;
};

/// Uniform-step RK4 solution of Ṗ = rhs(s, P) on [s₀, s_end].
class OdeGrid final : public SpeedField::Impl {
 public:
  double s0 = 0.0;
  double h = 0.0;
  std::vector<double> s, P, Pdot, w, wdot;

  double momentum(const ChartPoint& pt) const override {
    const double x = pt.s;
    if (s.size() < 2) return P.empty() ? 0.0 : P.front();
    const std::size_t j = interp::bracket(s, x);
    const double hj = s[j + 1] - s[j];
    const double t = std::clamp((x - s[j]) / hj, 0.0, 1.0);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * P[j] + (t3 - 2 * t2 + t) * hj * Pdot[j] +
           (-2 * t3 + 3 * t2) * P[j + 1] + (t3 - t2) * hj * Pdot[j + 1];
  }
  double w_dot(const ChartPoint& pt, double) const override {
    return interp::lagrange4(s, wdot, pt.s);
  }
};

struct Geometry {
  double b, b_dot, psi_dot;
};

// Fourth-order differences on a uniform grid; one-sided near the ends.
std::vector<double> differentiate(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = i == 0 ? 0 : i - 1;
      const std::size_t b = i + 1 == n ? i : i + 1;
      d[i] = b > a ? (f[b] - f[a]) / (h * static_cast<double>(b - a)) : 0.0;
    }
    return d;
  }
  const double c = 12.0 * h;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / c;
  }
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / c;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / c;
  const std::size_t m = n - 1;
  d[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) / c;
  d[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) / c;
  return d;
}

struct OdeRun {
  std::shared_ptr<OdeGrid> grid;
  double root = -1.0;  // first zero of P, if reached
};

OdeRun integrate_velocity_power(const ArcChart& chart, double k, double alpha, double s0,
                                std::size_t steps) {
  const double s_end = chart.s_max();
  const double h = (s_end - s0) / static_cast<double>(steps);
  std::vector<Geometry> geo(2 * steps + 1);
  for (std::size_t i = 0; i < geo.size(); ++i) {
    const double s = (i == geo.size() - 1) ? s_end : s0 + 0.5 * h * static_cast<double>(i);
    const ChartPoint p = chart.at_s(s);
    geo[i] = {p.b, p.b_dot, p.psi_dot};
  }
  const auto rhs = [&](const Geometry& g, double P) {
    const double ratio = std::max(P, 0.0) / g.b;
    return g.b_dot * g.psi_dot - k * g.b * std::pow(ratio, alpha - 1.0);
  };

  OdeRun run;
  auto grid = std::make_shared<OdeGrid>();
  grid->s0 = s0;
  grid->h = h;
  grid->s.reserve(steps + 1);
  // Integrate the balance over [0, s₀] with w frozen at its tip value in the
  // friction term; the start error in w is then second order in s₀.
  const double w_tip = tip_speed(chart);
  double P = quad::gauss_legendre(
      [&](double t) {
        const ChartPoint p = chart.at_s(t);
        return p.b_dot * p.psi_dot - k * p.b * std::pow(w_tip, alpha - 1.0);
      },
      0.0, s0);
  grid->s.push_back(s0);
  grid->P.push_back(P);
  grid->Pdot.push_back(rhs(geo[0], P));
  for (std::size_t n = 0; n < steps; ++n) {
    const Geometry& g0 = geo[2 * n];
    const Geometry& gm = geo[2 * n + 1];
    const Geometry& g1 = geo[2 * n + 2];
    const double k1 = rhs(g0, P);
    const double k2 = rhs(gm, P + 0.5 * h * k1);
    const double k3 = rhs(gm, P + 0.5 * h * k2);
    const double k4 = rhs(g1, P + h * k3);
    const double next = P + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    const double s_next = s0 + h * static_cast<double>(n + 1);
    grid->s.push_back(n + 1 == steps ? s_end : s_next);
    grid->P.push_back(next);
    grid->Pdot.push_back(rhs(g1, next));
    if (next <= 0.0) {
      const double s_lo = grid->s[n];
      const double s_hi = grid->s[n + 1];
      const OdeGrid& view = *grid;
      run.root = quad::bisect_root(
          [&](double s) {
            ChartPoint pt;
            pt.s = s;
            return view.momentum(pt);
          },
          s_lo, s_hi, kRootTol);
      break;
    }
    P = next;
  }
  grid->w.resize(grid->s.size());
  for (std::size_t i = 0; i < grid->s.size(); ++i) {
    grid->w[i] = grid->P[i] / geo[std::min(2 * i, geo.size() - 1)].b;
  }
  grid->wdot = differentiate(grid->w, h);
  run.grid = std::move(grid);
  return run;
}

double first_root_closed_form(const ArcChart& chart, const ClosedForm& cf) {
  const double x_max = chart.x_max();
  double x_prev = 0.0;
  for (std::size_t i = 1; i <= kRootScan; ++i) {
    const double x = x_max * static_cast<double>(i) / kRootScan;
    if (cf.momentum_x(x) <= 0.0) {
      const double s_lo = chart.s_of_x(x_prev);
      const double s_hi = chart.s_of_x(x);
      if (i == 1) return 0.0;
      return quad::bisect_root([&](double s) { return cf.momentum_x(chart.psi_of_s(s)); }, s_lo,
                               s_hi, kRootTol);
    }
    x_prev = x;
  }
  return chart.s_max();
}

SpeedField make_closed(const ArcChart& chart, FrictionSpec model, std::shared_ptr<ClosedForm> cf,
                       double w0, bool can_vanish) {
  const double s_start = 1e-12 * chart.s_max();
  double s_valid = chart.s_max();
  if (w0 <= kTipSpeedFloor) {
    s_valid = 0.0;
  } else if (can_vanish) {
    s_valid = first_root_closed_form(chart, *cf);
  }
  return SpeedField(chart, model, SolveMethod::ClosedForm, std::move(cf), w0, s_valid, s_start);
}

quad::CumulativeIntegral cumulative(const ArcChart& chart, quad::Integrand f) {
  return quad::CumulativeIntegral(std::move(f), 0.0, chart.x_max(), kPanels, chart.quad_tol());
}

std::shared_ptr<ClosedForm> frictionless_form(const ArcChart& chart) {
  const RampProfile& profile = chart.profile();
  auto h0 = std::make_shared<quad::CumulativeIntegral>(cumulative(chart, [profile](double t) {
    const double d = profile.slope(t);
    return d / std::sqrt(1.0 + d * d);
  }));
  return std::make_shared<ClosedForm>([h0](double x) { return (*h0)(x); },
                                      [](const ChartPoint& p, double) { return p.b_dot * p.psi_dot; });
}

}  // namespace

double SpeedField::momentum(double s) const {
  if (s < s_start_) return w0_ * chart_.b_of_s(std::max(s, 0.0));
  const ChartPoint pt = chart_.at_s(s);
  return scale_ * impl_->momentum(pt);
}

double SpeedField::w(double s) const {
  if (s < s_start_) return w0_;
  const ChartPoint pt = chart_.at_s(s);
  return scale_ * impl_->momentum(pt) / pt.b;
}

double SpeedField::w_dot(double s) const {
  const double s_eval = std::max(s, std::max(s_start_, 1e-6 * chart_.s_max()));
  const ChartPoint pt = chart_.at_s(s_eval);
  return scale_ * impl_->w_dot(pt, impl_->momentum(pt));
}

SpeedSample SpeedField::sample(double s) const {
  SpeedSample out;
  out.point = chart_.at_s(std::max(s, 0.0));
  if (s < s_start_) {
    out.w = w0_;
    out.w_dot = 0.0;
    out.tip = true;
    return out;
  }
  const double P = impl_->momentum(out.point);
  out.w = scale_ * P / out.point.b;
  out.w_dot = scale_ * impl_->w_dot(out.point, P);
  return out;
}

SpeedField SpeedField::scaled(double factor, FrictionSpec model) const {
  return SpeedField(chart_, model, method_, impl_, w0_ * factor, s_valid_, s_start_,
                    scale_ * factor);
}

SpeedField solve_frictionless(const ArcChart& chart) {
  require_layer(chart);
  return make_closed(chart, Frictionless{}, frictionless_form(chart), tip_speed(chart), false);
}

SpeedField solve_velocity_power(const ArcChart& chart, double k, double alpha,
                                const VelocityPowerOptions& options) {
  const VelocityPower model{k, alpha};
  validate(model);
  const RampProfile& profile = chart.profile();
  const double w0 = tip_speed(chart);

  if (!options.force_ode && alpha == 1.0) {
    require_layer(chart);
    auto h0 = std::make_shared<quad::CumulativeIntegral>(cumulative(chart, [profile](double t) {
      const double d = profile.slope(t);
      return d / std::sqrt(1.0 + d * d);
    }));
    // ∫₀ˢ b dt carried in x: ∫₀ˣ b̃ √(1+b̃'²) dt.
    auto mass = std::make_shared<quad::CumulativeIntegral>(cumulative(chart, [profile](double t) {
      const double d = profile.slope(t);
      return profile.value(t) * std::sqrt(1.0 + d * d);
    }));
    auto cf = std::make_shared<ClosedForm>(
        [h0, mass, k](double x) { return (*h0)(x) - k * (*mass)(x); },
        [k](const ChartPoint& p, double) { return p.b_dot * p.psi_dot - k * p.b; });
    return make_closed(chart, model, std::move(cf), w0, true);
  }

  if (!options.force_ode && alpha == 2.0) {
    require_layer(chart);
    auto hk = std::make_shared<quad::CumulativeIntegral>(
        cumulative(chart, [profile, chart, k](double t) {
          const double d = profile.slope(t);
          return d / std::sqrt(1.0 + d * d) * std::exp(k * chart.s_of_x(t));
        }));
    auto cf = std::make_shared<ClosedForm>(
        [hk, chart, k](double x) { return (*hk)(x) * std::exp(-k * chart.s_of_x(x)); },
        [k](const ChartPoint& p, double P) { return p.b_dot * p.psi_dot - k * P; });
    return make_closed(chart, model, std::move(cf), w0, false);
  }

  const OdeOptions& ode = options.ode;
  const double s_max = chart.s_max();
  const double s0 = std::max(ode.start_abs, ode.start_rel * s_max);
  if (!(s0 < s_max)) throw Error(ErrorCode::StartFailure, "ramp shorter than the series start");
  if (!(chart.b_of_s(s0) > 0.0)) {
    throw Error(ErrorCode::StartFailure, "b(s0) = 0: tip too flat for the series start");
  }

  std::size_t steps = std::max<std::size_t>(ode.initial_steps, 8);
  OdeRun coarse = integrate_velocity_power(chart, k, alpha, s0, steps);
  while (2 * steps <= ode.max_steps) {
    OdeRun fine = integrate_velocity_power(chart, k, alpha, s0, 2 * steps);
    const auto& cw = coarse.grid->w;
    const auto& fw = fine.grid->w;
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < cw.size() && 2 * j < fw.size(); ++j) {
      diff = std::max(diff, std::abs(cw[j] - fw[2 * j]));
      scale = std::max(scale, std::abs(fw[2 * j]));
    }
    if ((coarse.root < 0.0) != (fine.root < 0.0)) diff = std::numeric_limits<double>::infinity();
    coarse = std::move(fine);
    steps *= 2;
    if (diff <= ode.refine_tol * scale) break;
  }

  const double s_valid = coarse.root >= 0.0 ? coarse.root : s_max;
  return SpeedField(chart, model, SolveMethod::Ode, coarse.grid, w0, s_valid, s0);
}

SpeedField solve_coulomb(const ArcChart& chart, double eta) {
  const Coulomb model{eta};
  validate(model);
  require_layer(chart);
  const RampProfile& profile = chart.profile();
  const double theta0 = std::atan(profile.slope(0.0));
  // I = exp(−η∫κ ds) and κ ds is the change of tangent angle.
  const auto factor = [profile, eta, theta0](double x) {
    return std::exp(-eta * (std::atan(profile.slope(x)) - theta0));
  };
  auto weighted = std::make_shared<quad::CumulativeIntegral>(
      cumulative(chart, [profile, eta, factor](double t) {
        const double d = profile.slope(t);
        return d * (1.0 - eta * d) / (factor(t) * std::sqrt(1.0 + d * d));
      }));
  auto cf = std::make_shared<ClosedForm>(
      [weighted, factor](double x) { return factor(x) * (*weighted)(x); },
      [eta](const ChartPoint& p, double P) {
        return -eta * p.curvature * P - eta * p.b_dot * p.b_dot + p.b_dot * p.psi_dot;
      });
  const ChartPoint tip = chart.at_x(0.0);
  const double w0 = tip.psi_dot - eta * tip.b_dot;
  return make_closed(chart, model, std::move(cf), w0, true);
}

SpeedField solve_velocity_scaled(const ArcChart& chart, double mu) {
  const VelocityScaled model{mu};
  validate(model);
  return solve_frictionless(chart).scaled(mu, model);
}

SpeedField solve(const ArcChart& chart, const FrictionSpec& spec,
                 const VelocityPowerOptions& options) {
  validate(spec);
  if (std::holds_alternative<Frictionless>(spec)) return solve_frictionless(chart);
  if (const auto* vp = std::get_if<VelocityPower>(&spec)) {
    return solve_velocity_power(chart, vp->k, vp->alpha, options);
  }
  if (const auto* c = std::get_if<Coulomb>(&spec)) return solve_coulomb(chart, c->eta);
  return solve_velocity_scaled(chart, std::get<VelocityScaled>(spec).mu);
}

FrozenLoads frozen_limit_loads(const ArcChart& chart, double x) {
  const double d = chart.profile().slope(x);
  const double g = 1.0 + d * d;
  FrozenLoads out;
  out.x = x;
  out.N = d * d / g;
  out.f = d / g;
  out.wf1 = -d / std::sqrt(g);
  out.wf2 = 0.0;
  return out;
}

std::vector<FrozenLoads> frozen_limit_loads(const ArcChart& chart, const std::vector<double>& xs) {
  std::vector<FrozenLoads> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(frozen_limit_loads(chart, x));
  return out;
}

std::optional<double> velocity_power_alpha1_integrand_root(const ArcChart& chart, double k,
                                                           double tol) {
  const RampProfile& profile = chart.profile();
  const auto in_x = [&](double x) {
    const double d = profile.slope(x);
    return d / (1.0 + d * d) - k * profile.value(x);
  };
  const double x_max = chart.x_max();
  double x_prev = 0.0;
  for (std::size_t i = 1; i <= kRootScan; ++i) {
    const double x = x_max * static_cast<double>(i) / kRootScan;
    if (in_x(x) < 0.0) {
      return quad::bisect_root([&](double s) { return in_x(chart.psi_of_s(s)); },
                               chart.s_of_x(x_prev), chart.s_of_x(x), tol);
    }
    x_prev = x;
  }
  return std::nullopt;
}

}  // namespace ramploads
