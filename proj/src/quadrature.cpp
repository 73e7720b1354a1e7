#include "ramploads/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "ramploads/errors.hpp"

namespace ramploads::quad {
namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double recurse(const Integrand& f, const Panel& p, double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || p.b - p.a < 1e-15 * (1.0 + std::abs(p.a))) {
    return left + right + delta / 15.0;
  }
  return recurse(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         recurse(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

constexpr unsigned kGaussOrder = 32;
using Rule = boost::math::quadrature::gauss<double, kGaussOrder>;

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(a, b, fa, fm, fb);
  const double scale =
      std::max(std::abs(whole), std::abs(b - a) * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb)) / 6.0);
  const double tol = std::max(rel_tol * scale, std::numeric_limits<double>::min());
  return recurse(f, {a, m, b, fa, fm, fb, whole}, tol, max_depth);
}

CumulativeIntegral::CumulativeIntegral(Integrand f, double a, double b, std::size_t panels,
                                       double rel_tol)
    : f_(std::move(f)), a_(a), b_(b), rel_tol_(rel_tol) {
  if (!(b > a) || panels == 0) {
    throw Error(ErrorCode::DomainError, "cumulative integral needs b > a and at least one panel");
  }
  h_ = (b - a) / static_cast<double>(panels);
  nodes_.resize(panels + 1, 0.0);
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + h_ * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : lo + h_;
    nodes_[i + 1] = nodes_[i] + adaptive_simpson(f_, lo, hi, rel_tol_);
  }
}

double CumulativeIntegral::operator()(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return nodes_.back() + (x > b_ ? adaptive_simpson(f_, b_, x, rel_tol_) : 0.0);
  const auto panels = nodes_.size() - 1;
  auto i = static_cast<std::size_t>((x - a_) / h_);
  i = std::min(i, panels - 1);
  const double lo = a_ + h_ * static_cast<double>(i);
  if (x == lo) return nodes_[i];
  return nodes_[i] + adaptive_simpson(f_, lo, x, rel_tol_);
}

double gauss_legendre(const Integrand& f, double a, double b) {
  if (a == b) return 0.0;
  return Rule::integrate(f, a, b);
}

SignedAbs gauss_legendre_abs(const Integrand& f, double a, double b) {
  SignedAbs out;
  if (a == b) return out;
  std::vector<double> nodes, weights;
  gauss_legendre_nodes(a, b, nodes, weights);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = f(nodes[i]);
    out.value += weights[i] * v;
    out.magnitude += weights[i] * std::abs(v);
  }
  return out;
}

void gauss_legendre_nodes(double a, double b, std::vector<double>& nodes,
                          std::vector<double>& weights) {
  const auto& abscissa = Rule::abscissa();
  const auto& w = Rule::weights();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  nodes.clear();
  weights.clear();
  // Boost stores the non-negative half of a symmetric rule; even order has no zero node.
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    nodes.push_back(mid - half * abscissa[i]);
    weights.push_back(half * w[i]);
    nodes.push_back(mid + half * abscissa[i]);
    weights.push_back(half * w[i]);
  }
}

double bisect_root(const Integrand& g, double lo, double hi, double x_tol, int max_iter) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  const double ghi = g(hi);
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw Error(ErrorCode::DomainError, "bisection bracket does not change sign");
  }
  for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ramploads::quad
