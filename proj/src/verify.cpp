#include "ramploads/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ramploads/errors.hpp"
#include "ramploads/quadrature.hpp"
#include "ramploads/solvers.hpp"

namespace ramploads {

std::vector<AccretionState> run_accretion(const ArcChart& chart, const FrictionSpec& model,
                                          double ds, double s_max) {
  if (!(ds > 0.0)) throw Error(ErrorCode::DomainError, "accretion step must be positive");
  validate(model);
  if (std::holds_alternative<VelocityScaled>(model)) {
    throw Error(ErrorCode::InvalidParameter, "the accretion oracle has no rule for velocity scaling");
  }
  if (!(chart.profile().slope(0.0) > 0.0)) {
    throw Error(ErrorCode::DomainError, "the accretion oracle needs b'(0) > 0");
  }
  s_max = std::min(s_max, chart.s_max());
  const auto steps = static_cast<std::size_t>(std::floor(s_max / ds * (1.0 + 1e-12)));

  std::vector<AccretionState> out;
  out.reserve(steps);
  ChartPoint prev = chart.at_s(0.0);
  double P = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double s_next = std::min(ds * static_cast<double>(n + 1), chart.s_max());
    const ChartPoint next = chart.at_s(s_next);
    const double dM = next.b - prev.b;
    const Vec2 Q = P * prev.tangent() + Vec2{dM, 0.0};
    const double P_star = dot(Q, next.tangent());
    const double J_N = dot(Q, next.normal());
    if (P_star < 0.0) {
      throw Error(ErrorCode::StepTooLarge, "tangent turns faster than the projection can follow");
    }
    const double M = next.b;
    double J_f = 0.0;
    if (const auto* vp = std::get_if<VelocityPower>(&model)) {
      const double w_mid = P_star / M;
      J_f = vp->k * M * std::pow(w_mid, vp->alpha - 1.0) * ds;
    } else if (const auto* c = std::get_if<Coulomb>(&model)) {
      J_f = c->eta * J_N;
    }
    P = std::max(P_star - J_f, 0.0);

    AccretionState st;
    st.s = s_next;
    st.M = M;
    st.P = P;
    st.w = P / M;
    st.N = J_N / ds;
    st.f = J_f / ds;
    st.J_f = J_f;
    out.push_back(st);
    prev = next;
  }
  return out;
}

BumpTestFunction::BumpTestFunction(double xc, double yc, double rx, double ry)
    : xc_(xc), yc_(yc), rx_(rx), ry_(ry) {
  if (!(rx > 0.0 && ry > 0.0)) throw Error(ErrorCode::DomainError, "bump radii must be positive");
}

namespace {

double cube_bump(double t) {
  const double a = 1.0 - t * t;
  return a > 0.0 ? a * a * a : 0.0;
}

double cube_bump_d(double t) {
  const double a = 1.0 - t * t;
  return a > 0.0 ? -6.0 * t * a * a : 0.0;
}

// Largest x in [lo, hi] with pred(x) true, for pred monotone true→false.
template <class Pred>
double last_true(Pred pred, double lo, double hi) {
  if (pred(hi)) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace

double BumpTestFunction::value(double x, double y) const {
  return cube_bump((x - xc_) / rx_) * cube_bump((y - yc_) / ry_);
}

double BumpTestFunction::dx(double x, double y) const {
  return cube_bump_d((x - xc_) / rx_) / rx_ * cube_bump((y - yc_) / ry_);
}

double BumpTestFunction::dy(double x, double y) const {
  return cube_bump((x - xc_) / rx_) * cube_bump_d((y - yc_) / ry_) / ry_;
}

WeakResidual weak_form_residual(const ArcChart& chart, const WeakFormWeights& weights,
                                const BumpTestFunction& phi, WeakEquation equation,
                                const WeakResidualOptions& options) {
  const RampProfile& profile = chart.profile();
  const double xl = std::max(0.0, phi.xc() - phi.rx());
  const double xr = phi.xc() + phi.rx();
  const double yb = phi.yc() - phi.ry();
  const double yt = phi.yc() + phi.ry();
  if (xr <= xl || profile.value(xl) >= yt) {
    throw Error(ErrorCode::SupportOutsideDomain, "bump support misses the gas region");
  }

  // Columns with gas: b̃(x) < yt. The curve enters the support where b̃ reaches yb.
  const double x_top = last_true([&](double x) { return profile.value(x) < yt; }, xl, xr);
  const double x_enter =
      profile.value(xl) >= yb ? xl : last_true([&](double x) { return profile.value(x) < yb; }, xl, x_top);
  const bool meets_curve = x_top > x_enter;
  if (meets_curve && x_top > weights.x_max() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::SupportOutsideDomain, "bump meets the ramp beyond the tabulated weights");
  }

  const int eq = static_cast<int>(equation);
  const double E0 = weights.E0();
  double area_coeff = 0.0;
  double inflow_coeff = 0.0;
  switch (equation) {
    case WeakEquation::Mass: area_coeff = 1.0; inflow_coeff = 1.0; break;
    case WeakEquation::XMomentum: area_coeff = 1.0; inflow_coeff = 1.0; break;
    case WeakEquation::YMomentum: break;
    case WeakEquation::Energy: area_coeff = E0; inflow_coeff = E0; break;
  }

  WeakResidual out;
  const auto add = [](double& term, double& magnitude, quad::SignedAbs part) {
    term += part.value;
    magnitude += part.magnitude;
  };
  double magnitude = 0.0;

  if (area_coeff != 0.0) {
    const auto column = [&](double x, double lower) {
      if (lower >= yt) return quad::SignedAbs{};
      return quad::gauss_legendre_abs([&](double y) { return area_coeff * phi.dx(x, y); }, lower, yt);
    };
    // Outer rule on a column split where the lower limit switches from yb to b̃(x).
    const auto outer = [&](double a, double b, bool on_curve) {
      quad::SignedAbs acc;
      if (b <= a) return acc;
      std::vector<double> nodes, wts;
      quad::gauss_legendre_nodes(a, b, nodes, wts);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double lower = on_curve ? std::max(profile.value(nodes[i]), yb) : yb;
        const auto inner = column(nodes[i], lower);
        acc.value += wts[i] * inner.value;
        acc.magnitude += wts[i] * inner.magnitude;
      }
      return acc;
    };
    add(out.area, magnitude, outer(xl, x_enter, false));
    add(out.area, magnitude, outer(x_enter, x_top, true));
  }

  if (x_top > x_enter) {
    // Line integrals along R in x; ds = √(1+b̃'²) dx. Panels follow the weight stations.
    std::vector<double> cuts{x_enter};
    for (double s : weights.s_grid()) {
      const double x = chart.psi_of_s(std::min(s, chart.s_max()));
      if (x > x_enter && x < x_top) cuts.push_back(x);
    }
    cuts.push_back(x_top);
    const bool with_source =
        !options.omit_friction_source &&
        (equation == WeakEquation::XMomentum || equation == WeakEquation::YMomentum);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      std::vector<double> nodes, wts;
      quad::gauss_legendre_nodes(cuts[i], cuts[i + 1], nodes, wts);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double x = nodes[j];
        const double y = profile.value(x);
        const double d = profile.slope(x);
        const double jac = std::sqrt(1.0 + d * d) * wts[j];
        const double s = chart.s_of_x(x);
        const double m = weights.wm(eq, s) * phi.dx(x, y) * jac;
        const double n = weights.wn(eq, s) * phi.dy(x, y) * jac;
        out.line_m += m;
        out.line_n += n;
        magnitude += std::abs(m) + std::abs(n);
        if (with_source) {
          const double wf = equation == WeakEquation::XMomentum ? weights.wf1(s) : weights.wf2(s);
          const double src = wf * phi.value(x, y) * jac;
          out.source += src;
          magnitude += std::abs(src);
        }
      }
    }
  }

  if (inflow_coeff != 0.0 && phi.xc() - phi.rx() <= 0.0 && xr >= 0.0) {
    const double lo = std::max(0.0, yb);
    if (yt > lo) {
      add(out.inflow, magnitude,
          quad::gauss_legendre_abs([&](double y) { return inflow_coeff * phi.value(0.0, y); }, lo, yt));
    }
  }

  out.sum = out.area + out.line_m + out.line_n + out.source + out.inflow;
  out.magnitude = magnitude;
  out.residual = magnitude > 0.0 ? std::abs(out.sum) / magnitude : 0.0;
  return out;
}

std::vector<BumpPlacement> standard_bumps(const ArcChart& chart) {
  const RampProfile& profile = chart.profile();
  const double L = chart.x_max();
  std::vector<BumpPlacement> out;
  {
    const double r = 0.15 * L;
    const double xc = 0.5 * L;
    const double yc = profile.value(xc + r) + 1.2 * r;
    out.push_back({"interior", BumpTestFunction(xc, yc, r, r)});
  }
  {
    const double r = 0.2 * L;
    const double xc = 0.5 * L;
    out.push_back({"straddle", BumpTestFunction(xc, profile.value(xc), r, r)});
  }
  {
    const double r = 0.25 * L;
    out.push_back({"tip", BumpTestFunction(0.0, 0.1 * L, r, r)});
  }
  return out;
}

namespace {

std::optional<double> fit_order(const std::vector<double>& ds, const std::vector<double>& err) {
  if (ds.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!(err[i] > kRoundoffFloor)) return std::nullopt;
    const double lx = std::log(ds[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(ds.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

ConvergenceStudy convergence_study(const ArcChart& chart, const FrictionSpec& model,
                                   const std::vector<double>& ds_list) {
  ConvergenceStudy study;
  if (ds_list.empty()) return study;
  const SpeedField field = solve(chart, model);
  std::vector<double> ds_used, ew, eN, ef;
  for (double ds : ds_list) {
    const auto states = run_accretion(chart, model, ds, field.s_valid());
    std::vector<double> stations;
    for (const auto& st : states) stations.push_back(st.s);
    const SurfaceProfile ref = surface_state(chart, field, stations);
    ConvergenceRow row;
    row.ds = ds;
    for (std::size_t i = 0; i < ref.stations.size(); ++i) {
      row.err_w = std::max(row.err_w, std::abs(states[i].w - ref.stations[i].w));
      row.err_N = std::max(row.err_N, std::abs(states[i].N - ref.stations[i].N));
      row.err_f = std::max(row.err_f, std::abs(states[i].f - ref.stations[i].f));
    }
    study.rows.push_back(row);
    ds_used.push_back(ds);
    ew.push_back(row.err_w);
    eN.push_back(row.err_N);
    ef.push_back(row.err_f);
  }
  study.order_w = fit_order(ds_used, ew);
  study.order_N = fit_order(ds_used, eN);
  study.order_f = fit_order(ds_used, ef);
  return study;
}

}  // namespace ramploads
