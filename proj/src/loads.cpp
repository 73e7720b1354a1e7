#include "ramploads/loads.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ramploads/errors.hpp"
#include "ramploads/interpolation.hpp"
#include "ramploads/quadrature.hpp"

namespace ramploads {
namespace {

struct WallForce {
  double wf1 = 0.0;
  double wf2 = 0.0;
};

SurfaceStation evaluate_station(const SpeedSample& sample) {
  const ChartPoint& p = sample.point;
  // A root located by bisection can leave w a hair below zero at the horizon.
  const double w = sample.w < 0.0 && sample.w > -kFrictionClamp ? 0.0 : sample.w;
  const double wd = sample.w_dot;
  SurfaceStation st;
  st.x = p.x;
  st.s = p.s;
  st.w = w;
  st.u = w * p.psi_dot;
  st.v = w * p.b_dot;
  st.w_rho = w == 0.0 ? std::numeric_limits<double>::infinity() : p.b / w;
  st.wf1 = wd * p.psi_dot * p.b + w * p.psi_ddot * p.b + w * p.psi_dot * p.b_dot - p.b_dot;
  st.wf2 = wd * p.b_dot * p.b + w * p.b_ddot * p.b + w * p.b_dot * p.b_dot;
  st.N = w * p.b * p.curvature + p.b_dot * p.b_dot;
  st.f = -wd * p.b - p.b_dot * w + p.b_dot * p.psi_dot;
  return st;
}

WallForce wall_force(const SpeedField& field, double s) {
  const SurfaceStation st = evaluate_station(field.sample(s));
  return {st.wf1, st.wf2};
}

void require_sorted(std::span<const double> stations) {
  for (std::size_t i = 1; i < stations.size(); ++i) {
    if (stations[i] < stations[i - 1]) {
      throw Error(ErrorCode::UnsortedStations, "stations must be sorted by arc length");
    }
  }
}

template <class ForceAt>
void accumulate(std::vector<SurfaceStation>& stations, ForceAt&& force_at) {
  double drag = 0.0;
  double lift = 0.0;
  double prev = 0.0;
  for (auto& st : stations) {
    if (st.s > prev) {
      drag += quad::gauss_legendre([&](double t) { return -force_at(t).wf1; }, prev, st.s);
      lift += quad::gauss_legendre([&](double t) { return -force_at(t).wf2; }, prev, st.s);
    }
    st.drag_cum = drag;
    st.lift_cum = lift;
    prev = st.s;
  }
}

}  // namespace

SurfaceProfile surface_state(const ArcChart& chart, const SpeedField& field,
                             std::span<const double> stations) {
  require_sorted(stations);
  SurfaceProfile out;
  out.s_valid = field.s_valid();
  const double slack = 1e-9 * (1.0 + chart.s_max());
  for (double s : stations) {
    if (s < -slack || s > field.s_valid() + slack) {
      throw Error(ErrorCode::OutOfValidityRange,
                  "station s = " + std::to_string(s) + " outside [0, s_valid = " +
                      std::to_string(field.s_valid()) + "]");
    }
  }

  out.stations.reserve(stations.size());
  for (double s : stations) {
    const SpeedSample sample = field.sample(std::min(std::max(s, 0.0), field.s_valid()));
    if (!sample.tip && !(sample.point.b > 0.0)) {
      throw Error(ErrorCode::DegenerateStation, "b(s) = 0 at s = " + std::to_string(s));
    }
    SurfaceStation st = evaluate_station(sample);
    if (st.f < 0.0 && st.f > -kFrictionClamp) st.f = 0.0;
    if (st.N < 0.0 || st.f < -kFrictionClamp) {
      out.s_valid = st.s;
      out.truncated = true;
      break;
    }
    out.stations.push_back(st);
  }
  accumulate(out.stations, [&](double t) { return wall_force(field, t); });
  return out;
}

SurfaceProfile frozen_surface_state(const ArcChart& chart, std::span<const double> stations) {
  require_sorted(stations);
  SurfaceProfile out;
  out.s_valid = chart.s_max();
  const auto at = [&](double s) {
    const ChartPoint p = chart.at_s(s);
    const FrozenLoads loads = frozen_limit_loads(chart, p.x);
    SurfaceStation st;
    st.x = p.x;
    st.s = p.s;
    st.w_rho = std::numeric_limits<double>::infinity();
    st.wf1 = loads.wf1;
    st.wf2 = loads.wf2;
    st.N = loads.N;
    st.f = loads.f;
    return st;
  };
  for (double s : stations) {
    if (s < 0.0 || s > chart.s_max() * (1.0 + 1e-12)) {
      throw Error(ErrorCode::OutOfValidityRange, "station outside the ramp");
    }
    out.stations.push_back(at(s));
  }
  accumulate(out.stations, [&](double t) {
    const SurfaceStation st = at(t);
    return WallForce{st.wf1, st.wf2};
  });
  return out;
}

std::vector<CumulativeLoad> cumulative_loads(std::span<const SurfaceStation> stations) {
  std::vector<CumulativeLoad> out;
  if (stations.empty()) return out;
  std::vector<double> s, drag_rate, lift_rate;
  for (const auto& st : stations) {
    if (!s.empty() && st.s < s.back()) {
      throw Error(ErrorCode::UnsortedStations, "stations must be sorted by arc length");
    }
    s.push_back(st.s);
    drag_rate.push_back(-st.wf1);
    lift_rate.push_back(-st.wf2);
  }
  out.reserve(stations.size());
  // The first station may sit past the tip; integrate from s = 0 by extrapolation.
  CumulativeLoad acc;
  double prev = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > prev) {
      acc.drag_cum +=
          quad::gauss_legendre([&](double t) { return interp::lagrange4(s, drag_rate, t); }, prev, s[i]);
      acc.lift_cum +=
          quad::gauss_legendre([&](double t) { return interp::lagrange4(s, lift_rate, t); }, prev, s[i]);
    }
    out.push_back(acc);
    prev = s[i];
  }
  return out;
}

std::vector<ConservationResidual> conservation_report(const ArcChart& chart,
                                                      const SurfaceProfile& profile, double E0) {
  std::vector<ConservationResidual> out;
  out.reserve(profile.stations.size());
  const double E = E0;  // total enthalpy is carried unchanged into the layer
  for (const auto& st : profile.stations) {
    const double b = chart.profile().value(st.x);
    ConservationResidual r;
    r.s = st.s;
    r.mass = std::isinf(st.w_rho) ? 0.0 : st.w_rho * st.w - b;
    r.x_momentum = b * st.u - b + st.drag_cum;
    r.y_momentum = b * st.v + st.lift_cum;
    r.energy = E - E0;
    out.push_back(r);
  }
  return out;
}

WeakFormWeights::WeakFormWeights(std::vector<double> s, std::vector<double> x, double E0)
    : s_(std::move(s)), x_(std::move(x)), E0_(E0) {}

double WeakFormWeights::wm(int eq, double s) const {
  return interp::lagrange4(s_, wm_table[eq], s);
}
double WeakFormWeights::wn(int eq, double s) const {
  return interp::lagrange4(s_, wn_table[eq], s);
}
double WeakFormWeights::wf1(double s) const { return interp::lagrange4(s_, wf1_table, s); }
double WeakFormWeights::wf2(double s) const { return interp::lagrange4(s_, wf2_table, s); }

void WeakFormWeights::perturb(int eq, double factor) {
  for (auto& v : wm_table[eq]) v *= factor;
  for (auto& v : wn_table[eq]) v *= factor;
}

WeakFormWeights weak_weights(const ArcChart& chart, const SurfaceProfile& profile, double E0) {
  std::vector<double> s, x;
  for (const auto& st : profile.stations) {
    s.push_back(st.s);
    x.push_back(st.x);
  }
  if (s.size() < 2) throw Error(ErrorCode::DomainError, "weights need at least two stations");
  WeakFormWeights weights(s, x, E0);
  for (auto& t : weights.wm_table) t.reserve(s.size());
  for (auto& t : weights.wn_table) t.reserve(s.size());
  for (const auto& st : profile.stations) {
    const ChartPoint p = chart.at_x(st.x);
    const double b = p.b;
    const double x_flux = b - st.drag_cum;  // b + ∫w_f1
    const double y_flux = -st.lift_cum;     // ∫w_f2
    weights.wm_table[0].push_back(b * p.psi_dot);
    weights.wn_table[0].push_back(b * p.b_dot);
    weights.wm_table[1].push_back(p.psi_dot * x_flux);
    weights.wn_table[1].push_back(p.b_dot * x_flux);
    weights.wm_table[2].push_back(p.psi_dot * y_flux);
    weights.wn_table[2].push_back(p.b_dot * y_flux);
    weights.wm_table[3].push_back(E0 * b * p.psi_dot);
    weights.wn_table[3].push_back(E0 * b * p.b_dot);
    weights.wf1_table.push_back(st.wf1);
    weights.wf2_table.push_back(st.wf2);
  }
  return weights;
}

std::vector<double> uniform_s_stations(double s_end, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {0.0};
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? s_end : s_end * static_cast<double>(i) / (count - 1));
  }
  return out;
}

std::vector<double> uniform_x_stations(const ArcChart& chart, double x_end, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = count == 1 ? 0.0 : x_end * static_cast<double>(i) / (count - 1);
    out.push_back(chart.s_of_x(x));
  }
  return out;
}

}  // namespace ramploads
