#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ramploads::quad {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [a, b]. The stopping tolerance is relative to the
/// larger of |estimate| and the Simpson estimate of ∫|f|, so integrands that
/// cancel do not recurse to the depth limit.
double adaptive_simpson(const Integrand& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 48);

/// Running integral F(x) = ∫_a^x f. Panel sums are precomputed on a uniform
/// grid; evaluation adds one adaptive Simpson pass over the partial panel.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(Integrand f, double a, double b, std::size_t panels, double rel_tol);

  double operator()(double x) const;
  double total() const { return nodes_.empty() ? 0.0 : nodes_.back(); }
  double lower() const { return a_; }
  double upper() const { return b_; }

 private:
  Integrand f_;
  double a_ = 0.0;
  double b_ = 0.0;
  double h_ = 0.0;
  double rel_tol_ = 1e-10;
  std::vector<double> nodes_;
};

/// Fixed-order Gauss-Legendre on [a, b].
double gauss_legendre(const Integrand& f, double a, double b);

/// Same rule, returning both ∫f and ∫|f| (used for scale-free residuals).
struct SignedAbs {
  double value = 0.0;
  double magnitude = 0.0;
};
SignedAbs gauss_legendre_abs(const Integrand& f, double a, double b);

/// Nodes/weights of the 32-point rule mapped to [a, b].
void gauss_legendre_nodes(double a, double b, std::vector<double>& nodes,
                          std::vector<double>& weights);

/// Bisection for a sign change of g on [lo, hi]; requires g(lo)·g(hi) ≤ 0.
double bisect_root(const Integrand& g, double lo, double hi, double x_tol = 1e-12,
                   int max_iter = 200);

}  // namespace ramploads::quad
