#pragma once

#include <span>
#include <vector>

namespace ramploads::interp {

/// Natural cubic spline through strictly increasing knots. C² everywhere;
/// the second derivative is only second-order accurate.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const std::vector<double>& knots() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> m_;  // second derivatives at knots
};

/// Local cubic (4-point Lagrange) interpolation on an arbitrary sorted grid.
/// Falls back to lower order when fewer than four points exist.
double lagrange4(std::span<const double> xs, std::span<const double> ys, double x);

/// Index i with xs[i] <= x < xs[i+1], clamped to [0, n-2].
std::size_t bracket(std::span<const double> xs, double x);

}  // namespace ramploads::interp
