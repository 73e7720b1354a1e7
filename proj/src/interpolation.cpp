#include "ramploads/interpolation.hpp"

#include <algorithm>

#include "ramploads/errors.hpp"

namespace ramploads::interp {

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) {
    throw Error(ErrorCode::InvalidProfile, "spline needs at least two matching samples");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(xs_[i] > xs_[i - 1])) {
      throw Error(ErrorCode::InvalidProfile, "spline knots must be strictly increasing");
    }
  }
  // Natural end conditions; Thomas algorithm on the interior second derivatives.
  m_.assign(n, 0.0);
  if (n == 2) return;
  std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = xs_[i] - xs_[i - 1];
    const double factor = lower / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs[i] -= factor * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::segment(double x) const { return bracket(xs_, x); }

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h;
  const double b = (x - xs_[i]) / h;
  return a * ys_[i] + b * ys_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h;
  const double b = (x - xs_[i]) / h;
  return (ys_[i + 1] - ys_[i]) / h +
         ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h;
  const double b = (x - xs_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

std::size_t bracket(std::span<const double> xs, double x) {
  if (xs.size() < 2) return 0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(i, xs.size() - 2);
}

double lagrange4(std::span<const double> xs, std::span<const double> ys, double x) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n == 1) return ys[0];
  const std::size_t order = std::min<std::size_t>(4, n);
  const std::size_t i = bracket(xs, x);
  // Centre the stencil on the bracketing interval.
  std::size_t first = (i >= 1) ? i - 1 : 0;
  if (first + order > n) first = n - order;
  double sum = 0.0;
  for (std::size_t j = first; j < first + order; ++j) {
    double basis = 1.0;
    for (std::size_t m = first; m < first + order; ++m) {
      if (m != j) basis *= (x - xs[m]) / (xs[j] - xs[m]);
    }
    sum += basis * ys[j];
  }
  return sum;
}

}  // namespace ramploads::interp
