#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ramploads/interpolation.hpp"
#include "ramploads/quadrature.hpp"
#include "ramploads/vec2.hpp"

namespace ramploads {

/// Ramp surface y = b̃(x) on [0, x_max]. Analytic kinds carry exact
/// derivatives; tabulated data goes through a natural cubic spline.
class RampProfile {
 public:
  struct Polynomial {
    std::vector<double> coeffs;  // b̃(x) = Σ coeffs[i] xⁱ
  };
  struct Tabulated {
    interp::CubicSpline spline;
  };
  struct Straight {
    double theta = 0.0;  // radians
  };
  struct Power {
    double c = 1.0;
    double q = 1.0;
  };
  using Kind = std::variant<Polynomial, Tabulated, Straight, Power>;

  static RampProfile polynomial(std::vector<double> coeffs, double x_max);
  static RampProfile tabulated(std::vector<double> xs, std::vector<double> bs);
  static RampProfile tabulated(std::vector<double> xs, std::vector<double> bs, double x_max);
  static RampProfile straight(double theta, double x_max);
  static RampProfile power(double c, double q, double x_max);

  /// Reads a two-column CSV with header `x,b`.
  static RampProfile from_csv(const std::string& path);

  double value(double x) const;
  double slope(double x) const;
  double second_derivative(double x) const;

  double x_max() const { return x_max_; }
  const Kind& kind() const { return kind_; }
  RampProfile with_x_max(double x_max) const;

  bool is_tabulated() const { return std::holds_alternative<Tabulated>(kind_); }

 private:
  RampProfile(Kind kind, double x_max) : kind_(std::move(kind)), x_max_(x_max) {}

  Kind kind_;
  double x_max_ = 1.0;
};

enum class Severity { Info, Warning, Fatal };

struct Finding {
  Severity severity = Severity::Info;
  std::string code;
  std::string message;
};

std::vector<Finding> validate_profile(const RampProfile& profile);
bool has_fatal(const std::vector<Finding>& findings);

/// Local geometry of the ramp surface at one point, with all s-derivatives
/// obtained from b̃', b̃'' by the chain rule.
struct ChartPoint {
  double x = 0.0;
  double s = 0.0;
  double b = 0.0;          // b(s) = b̃(ψ(s))
  double slope = 0.0;      // b̃'(x)
  double slope2 = 0.0;     // b̃''(x)
  double psi_dot = 1.0;    // ψ̇
  double b_dot = 0.0;      // ḃ
  double psi_ddot = 0.0;   // ψ̈
  double b_ddot = 0.0;     // b̈
  double curvature = 0.0;  // κ = b̈ψ̇ − ḃψ̈

  Vec2 tangent() const { return {psi_dot, b_dot}; }
  Vec2 normal() const { return {b_dot, -psi_dot}; }
};

struct Frame {
  Vec2 tangent;
  Vec2 normal;
  double curvature = 0.0;
};

struct ChartOptions {
  double quad_tol = 1e-10;
  double inversion_tol = 1e-12;
  std::size_t panels = 1024;
};

/// Arc-length chart of a ramp. Immutable; copies share the underlying tables.
class ArcChart {
 public:
  const RampProfile& profile() const { return data_->profile; }
  double x_max() const { return data_->profile.x_max(); }
  double s_max() const { return data_->s_table.back(); }
  double quad_tol() const { return data_->options.quad_tol; }

  double s_of_x(double x) const;
  double psi_of_s(double s) const;
  double b_of_s(double s) const { return profile().value(psi_of_s(s)); }

  ChartPoint at_x(double x) const;
  ChartPoint at_s(double s) const;

 private:
  friend ArcChart build_chart(const RampProfile&, const ChartOptions&);

  struct Data {
    RampProfile profile;
    ChartOptions options;
    std::vector<double> x_table;
    std::vector<double> s_table;
  };
  explicit ArcChart(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

ArcChart build_chart(const RampProfile& profile, const ChartOptions& options = {});
inline ArcChart build_chart(const RampProfile& profile, double quad_tol) {
  ChartOptions options;
  options.quad_tol = quad_tol;
  return build_chart(profile, options);
}

Frame frame_at(const ArcChart& chart, double s);

}  // namespace ramploads
