#include "ramploads/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "ramploads/errors.hpp"

namespace ramploads {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_d1(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
  return acc;
}

double horner_d2(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 2;) {
    acc = acc * x + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
  }
  return acc;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Slopes below -kSlopeTol·(1 + max|b̃'|) count as decreasing.
constexpr double kSlopeTol = 1e-12;
constexpr std::size_t kValidationSamples = 4096;

}  // namespace

RampProfile RampProfile::polynomial(std::vector<double> coeffs, double x_max) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return RampProfile(Polynomial{std::move(coeffs)}, x_max);
}

RampProfile RampProfile::tabulated(std::vector<double> xs, std::vector<double> bs) {
  const double x_max = xs.empty() ? 0.0 : xs.back();
  return tabulated(std::move(xs), std::move(bs), x_max);
}

RampProfile RampProfile::tabulated(std::vector<double> xs, std::vector<double> bs, double x_max) {
  return RampProfile(Tabulated{interp::CubicSpline(std::move(xs), std::move(bs))}, x_max);
}

RampProfile RampProfile::straight(double theta, double x_max) {
  return RampProfile(Straight{theta}, x_max);
}

RampProfile RampProfile::power(double c, double q, double x_max) {
  return RampProfile(Power{c, q}, x_max);
}

RampProfile RampProfile::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open profile table '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,b") {
    throw Error(ErrorCode::ConfigError, "profile table '" + path + "' must start with header x,b");
  }
  std::vector<double> xs, bs;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(row) + ": expected x,b");
    }
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      bs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(row) + ": bad number");
    }
  }
  return tabulated(std::move(xs), std::move(bs));
}

double RampProfile::value(double x) const {
  return std::visit(overloaded{
                        [&](const Polynomial& p) { return horner(p.coeffs, x); },
                        [&](const Tabulated& t) { return t.spline.value(x); },
                        [&](const Straight& s) { return std::tan(s.theta) * x; },
                        [&](const Power& p) { return x <= 0.0 ? 0.0 : p.c * std::pow(x, p.q); },
                    },
                    kind_);
}

double RampProfile::slope(double x) const {
  return std::visit(overloaded{
                        [&](const Polynomial& p) { return horner_d1(p.coeffs, x); },
                        [&](const Tabulated& t) { return t.spline.derivative(x); },
                        [&](const Straight& s) { return std::tan(s.theta); },
                        [&](const Power& p) {
                          if (p.q == 1.0) return p.c;
                          return x <= 0.0 ? 0.0 : p.c * p.q * std::pow(x, p.q - 1.0);
                        },
                    },
                    kind_);
}

double RampProfile::second_derivative(double x) const {
  return std::visit(overloaded{
                        [&](const Polynomial& p) { return horner_d2(p.coeffs, x); },
                        [&](const Tabulated& t) { return t.spline.second_derivative(x); },
                        [&](const Straight&) { return 0.0; },
                        [&](const Power& p) {
                          if (p.q == 1.0) return 0.0;
                          if (p.q == 2.0) return 2.0 * p.c;
                          if (x <= 0.0) {
                            return p.q > 2.0 ? 0.0 : std::numeric_limits<double>::infinity();
                          }
                          return p.c * p.q * (p.q - 1.0) * std::pow(x, p.q - 2.0);
                        },
                    },
                    kind_);
}

RampProfile RampProfile::with_x_max(double x_max) const { return RampProfile(kind_, x_max); }

std::vector<Finding> validate_profile(const RampProfile& profile) {
  std::vector<Finding> out;
  const double x_max = profile.x_max();
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    out.push_back({Severity::Fatal, "domain", "x_max must be positive and finite"});
    return out;
  }

  std::visit(overloaded{
                 [&](const RampProfile::Straight& s) {
                   if (s.theta < 0.0) {
                     out.push_back({Severity::Fatal, "negative-slope",
                                    "straight ramp with negative inclination"});
                   } else if (s.theta >= std::numbers::pi / 2) {
                     out.push_back({Severity::Fatal, "domain",
                                    "straight ramp inclination must be below 90 degrees"});
                   }
                 },
                 [&](const RampProfile::Power& p) {
                   if (p.q < 1.0) {
                     out.push_back({Severity::Fatal, "domain", "power profile needs q >= 1"});
                   } else if (p.q > 1.0 && p.q < 2.0) {
                     out.push_back({Severity::Warning, "unbounded-curvature",
                                    "b'' is unbounded at the tip for 1 < q < 2"});
                   }
                   if (p.c < 0.0) {
                     out.push_back(
                         {Severity::Fatal, "negative-slope", "power profile with c < 0 decreases"});
                   }
                 },
                 [&](const RampProfile::Tabulated& t) {
                   const auto& xs = t.spline.knots();
                   const auto& ys = t.spline.values();
                   if (xs.front() != 0.0) {
                     out.push_back({Severity::Fatal, "domain", "tabulated profile must start at x = 0"});
                   }
                   if (x_max > xs.back()) {
                     out.push_back({Severity::Fatal, "domain", "x_max lies beyond the last sample"});
                   }
                   for (std::size_t i = 1; i < xs.size(); ++i) {
                     if (ys[i] < ys[i - 1]) {
                       std::ostringstream msg;
                       msg << "b' < 0 on (" << xs[i - 1] << ", " << xs[i] << "): samples decrease";
                       out.push_back({Severity::Fatal, "negative-slope", msg.str()});
                     }
                   }
                   out.push_back({Severity::Info, "curvature-accuracy",
                                  "b'' of a tabulated profile is second-order accurate only"});
                 },
                 [&](const RampProfile::Polynomial&) {},
             },
             profile.kind());

  const double b0 = profile.value(0.0);
  if (std::abs(b0) > 1e-14) {
    std::ostringstream msg;
    msg << "b(0) = " << b0 << ", ramp must start at the origin";
    out.push_back({Severity::Fatal, "tip-offset", msg.str()});
  }

  const bool already_negative = std::any_of(out.begin(), out.end(), [](const Finding& f) {
    return f.code == "negative-slope";
  });
  if (!already_negative) {
    double max_slope = 0.0;
    double first_bad = -1.0;
    double last_bad = -1.0;
    for (std::size_t i = 0; i <= kValidationSamples; ++i) {
      const double x = x_max * static_cast<double>(i) / kValidationSamples;
      max_slope = std::max(max_slope, std::abs(profile.slope(x)));
    }
    for (std::size_t i = 0; i <= kValidationSamples; ++i) {
      const double x = x_max * static_cast<double>(i) / kValidationSamples;
      if (profile.slope(x) < -kSlopeTol * (1.0 + max_slope)) {
        if (first_bad < 0.0) first_bad = x;
        last_bad = x;
      }
    }
    if (first_bad >= 0.0) {
      std::ostringstream msg;
      msg << "b' < 0 on [" << first_bad << ", " << last_bad << "]";
      out.push_back({Severity::Fatal, "negative-slope", msg.str()});
    }
  }

  if (profile.slope(0.0) == 0.0) {
    out.push_back({Severity::Warning, "flat-tip",
                   "b'(0) = 0: the layer may not start concentrating at the tip"});
  }
  return out;
}

bool has_fatal(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Fatal; });
}

ArcChart build_chart(const RampProfile& profile, const ChartOptions& options) {
  if (!(profile.x_max() > 0.0)) throw Error(ErrorCode::DomainError, "x_max must be positive");
  for (const auto& finding : validate_profile(profile)) {
    if (finding.severity != Severity::Fatal) continue;
    if (finding.code == "negative-slope") {
      throw Error(ErrorCode::NonMonotoneProfile, finding.message);
    }
    if (finding.code == "domain") throw Error(ErrorCode::DomainError, finding.message);
    throw Error(ErrorCode::InvalidProfile, finding.message);
  }

  auto data = std::make_shared<ArcChart::Data>(ArcChart::Data{profile, options, {}, {}});
  const std::size_t panels = std::max<std::size_t>(options.panels, 1);
  const double x_max = profile.x_max();
  data->x_table.resize(panels + 1);
  data->s_table.resize(panels + 1, 0.0);
  const auto speed = [&profile](double t) {
    const double d = profile.slope(t);
    if (d < -kSlopeTol * (1.0 + std::abs(d))) {
      throw Error(ErrorCode::NonMonotoneProfile, "b' < 0 at quadrature node x = " + std::to_string(t));
    }
    return std::sqrt(1.0 + d * d);
  };
  for (std::size_t i = 0; i <= panels; ++i) {
    data->x_table[i] = (i == panels) ? x_max : x_max * static_cast<double>(i) / panels;
  }
  for (std::size_t i = 0; i < panels; ++i) {
    data->s_table[i + 1] =
        data->s_table[i] +
        quad::adaptive_simpson(speed, data->x_table[i], data->x_table[i + 1], options.quad_tol);
  }
  return ArcChart(std::move(data));
}

double ArcChart::s_of_x(double x) const {
  const auto& xs = data_->x_table;
  const auto& ss = data_->s_table;
  if (x <= 0.0) return 0.0;
  const auto& profile = data_->profile;
  const auto speed = [&profile](double t) {
    const double d = profile.slope(t);
    return std::sqrt(1.0 + d * d);
  };
  if (x >= xs.back()) {
    return ss.back() + (x > xs.back() ? quad::adaptive_simpson(speed, xs.back(), x, quad_tol()) : 0.0);
  }
  const std::size_t i = interp::bracket(xs, x);
  if (x == xs[i]) return ss[i];
  return ss[i] + quad::adaptive_simpson(speed, xs[i], x, quad_tol());
}

double ArcChart::psi_of_s(double s) const {
  const auto& xs = data_->x_table;
  const auto& ss = data_->s_table;
  const double slack = 1e-12 * (1.0 + ss.back());
  if (s < -slack || s > ss.back() + slack) {
    throw Error(ErrorCode::DomainError, "arc length " + std::to_string(s) + " outside [0, " +
                                            std::to_string(ss.back()) + "]");
  }
  if (s <= 0.0) return 0.0;
  if (s >= ss.back()) return xs.back();
  const std::size_t i = interp::bracket(ss, s);
  double lo = xs[i];
  double hi = xs[i + 1];
  const double s_lo = ss[i];
  if (s == s_lo) return lo;
  const auto& profile = data_->profile;
  const auto speed = [&profile](double t) {
    const double d = profile.slope(t);
    return std::sqrt(1.0 + d * d);
  };
  // Newton on s(x) − s with the panel as a bisection safeguard.
  double x = lo + (hi - lo) * (s - s_lo) / (ss[i + 1] - s_lo);
  const double tol = data_->options.inversion_tol;
  for (int it = 0; it < 100; ++it) {
    const double r = s_lo + quad::adaptive_simpson(speed, xs[i], x, quad_tol()) - s;
    if (std::abs(r) <= tol) break;
    if (r > 0.0) hi = x; else lo = x;
    double next = x - r / speed(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * (1.0 + x)) break;
    x = next;
  }
  return x;
}

ChartPoint ArcChart::at_x(double x) const {
  const auto& profile = data_->profile;
  ChartPoint p;
  p.x = x;
  p.s = s_of_x(x);
  p.b = profile.value(x);
  p.slope = profile.slope(x);
  p.slope2 = profile.second_derivative(x);
  const double g = 1.0 + p.slope * p.slope;
  const double root = std::sqrt(g);
  p.psi_dot = 1.0 / root;
  p.b_dot = p.slope / root;
  p.psi_ddot = -p.slope * p.slope2 / (g * g);
  p.b_ddot = p.slope2 / (g * g);
  p.curvature = p.b_ddot * p.psi_dot - p.b_dot * p.psi_ddot;
  return p;
}

ChartPoint ArcChart::at_s(double s) const {
  ChartPoint p = at_x(psi_of_s(s));
  p.s = std::clamp(s, 0.0, s_max());
  return p;
}

Frame frame_at(const ArcChart& chart, double s) {
  const double slack = 1e-12 * (1.0 + chart.s_max());
  if (s < -slack || s > chart.s_max() + slack) {
    throw Error(ErrorCode::DomainError, "frame requested outside the ramp");
  }
  const ChartPoint p = chart.at_s(s);
  return {p.tangent(), p.normal(), p.curvature};
}

}  // namespace ramploads
