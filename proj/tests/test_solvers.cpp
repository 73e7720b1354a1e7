#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ramploads/errors.hpp"
#include "ramploads/solvers.hpp"

using namespace ramploads;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

ArcChart straight45(double x_max = 1.0) { return build_chart(RampProfile::straight(kPi / 4, x_max)); }
ArcChart parabola(double x_max = 1.0) { return build_chart(RampProfile::power(0.5, 2.0, x_max)); }

double max_abs_diff(const SpeedField& a, const SpeedField& b, double s_lo, double s_hi, int n = 400) {
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / n;
    err = std::max(err, std::abs(a.w(s) - b.w(s)));
  }
  return err;
}

}  // namespace

TEST_CASE("frictionless speed") {
  const SpeedField st = solve_frictionless(straight45());
  for (double s : {0.0, 0.1, 0.7, 1.4}) CHECK(st.w(s) == Approx(kSqrt2 / 2).epsilon(1e-12));
  CHECK(st.s_valid() == Approx(kSqrt2).epsilon(1e-12));

  const ArcChart pc = parabola();
  const SpeedField pf = solve_frictionless(pc);
  CHECK(pf.w(pc.s_of_x(1.0)) == Approx((kSqrt2 - 1) / 0.5).epsilon(1e-9));
  CHECK(pf.w0() == Approx(1.0));
}

TEST_CASE("velocity power, alpha = 2 closed form") {
  const double x = kSqrt2 * std::log(2.0);
  const ArcChart chart = straight45(2.0);
  const SpeedField f = solve_velocity_power(chart, 1.0, 2.0);
  CHECK(f.method() == SolveMethod::ClosedForm);
  CHECK(f.w(chart.s_of_x(x)) == Approx(0.75 / (2 * kSqrt2 * std::log(2.0))).epsilon(1e-9));
  // (cos²θ/(kx))(1 − e^{−kx/cosθ}) at this x is 0.75/(2√2 ln 2) = 0.3825520.
  CHECK(f.w(chart.s_of_x(x)) == Approx(0.3825520).epsilon(1e-6));
}

TEST_CASE("velocity power, alpha = 1 loses validity at sqrt 2") {
  const ArcChart chart = straight45(2.0);
  const SpeedField f = solve_velocity_power(chart, 1.0, 1.0);
  CHECK(std::abs(f.s_valid() - kSqrt2) < 1e-6);
  for (double s : {0.2, 0.5, 1.0, 1.3}) {
    const double ref = (s / 2 - kSqrt2 / 4 * s * s) / (kSqrt2 / 2 * s);
    CHECK(f.w(s) == Approx(ref).epsilon(1e-9));
  }
  const auto root = velocity_power_alpha1_integrand_root(chart, 1.0);
  REQUIRE(root.has_value());
  CHECK(std::abs(*root - kSqrt2 / 2) < 1e-8);
}

TEST_CASE("general-alpha integrator agrees with the closed forms") {
  VelocityPowerOptions ode;
  ode.force_ode = true;
  struct Case {
    ArcChart chart;
    double k;
  };
  for (const Case& c : {Case{straight45(2.0), 1.0}, Case{parabola(2.0), 0.5}}) {
    const SpeedField closed = solve_velocity_power(c.chart, c.k, 2.0);
    const SpeedField num = solve_velocity_power(c.chart, c.k, 2.0, ode);
    CHECK(num.method() == SolveMethod::Ode);
    const double s0 = num.s_start();
    double wmax = 0.0;
    for (int i = 0; i <= 400; ++i) wmax = std::max(wmax, std::abs(closed.w(s0 + (c.chart.s_max() - s0) * i / 400)));
    CHECK(max_abs_diff(closed, num, s0, c.chart.s_max()) < 1e-6 * wmax);
  }
  // α = 1 as well, up to the validity horizon.
  const ArcChart chart = straight45(1.0);
  const SpeedField closed = solve_velocity_power(chart, 0.5, 1.0);
  const SpeedField num = solve_velocity_power(chart, 0.5, 1.0, ode);
  CHECK(max_abs_diff(closed, num, num.s_start(), 0.9 * chart.s_max()) < 1e-6);
}

TEST_CASE("non-integer alpha uses the integrator") {
  const ArcChart chart = parabola(1.5);
  const SpeedField f = solve_velocity_power(chart, 0.5, 1.5);
  CHECK(f.method() == SolveMethod::Ode);
  const SpeedField lo = solve_velocity_power(chart, 0.5, 1.0);
  const SpeedField hi = solve_velocity_power(chart, 0.5, 2.0);
  // Speeds below 1 here, so w^α is ordered in α.
  for (double s : {0.3, 0.8, 1.2}) {
    CHECK(f.w(s) < hi.w(s));
    CHECK(f.w(s) > lo.w(s));
  }
}

TEST_CASE("coulomb speed") {
  const SpeedField f = solve_coulomb(straight45(), 0.5);
  for (double s : {0.05, 0.5, 1.2}) CHECK(f.w(s) == Approx(kSqrt2 / 4).epsilon(1e-10));
  CHECK(solve_coulomb(straight45(), 1.0).s_valid() == 0.0);
  CHECK(solve_coulomb(straight45(), 1.5).s_valid() == 0.0);
}

TEST_CASE("velocity scaled speed") {
  const ArcChart chart = straight45();
  const SpeedField free = solve_frictionless(chart);
  const SpeedField one = solve_velocity_scaled(chart, 1.0);
  for (double s : {0.1, 0.9}) CHECK(one.w(s) == free.w(s));
  CHECK(solve_velocity_scaled(chart, 0.3).w(0.5) == Approx(0.3 * kSqrt2 / 2).epsilon(1e-12));
  const ArcChart pc = parabola();
  CHECK(solve_velocity_scaled(pc, 1e-6).w(pc.s_max()) == Approx(8.2843e-7).epsilon(1e-4));
}

TEST_CASE("reduction to frictionless as the friction parameter vanishes") {
  const ArcChart chart = parabola(1.0);
  const SpeedField free = solve_frictionless(chart);
  double prev_k = 0.0, prev_eta = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ek = max_abs_diff(solve_velocity_power(chart, eps, 2.0), free, 0.01, chart.s_max());
    const double ee = max_abs_diff(solve_coulomb(chart, eps), free, 0.01, chart.s_max());
    if (prev_k > 0.0) {
      CHECK(prev_k / ek == Approx(10.0).epsilon(0.2));
      CHECK(prev_eta / ee == Approx(10.0).epsilon(0.2));
    }
    prev_k = ek;
    prev_eta = ee;
  }
}

TEST_CASE("speed decreases with the friction coefficient") {
  const ArcChart chart = straight45(1.0);
  for (double s : {0.2, 0.8, 1.3}) {
    CHECK(solve_velocity_power(chart, 0.5, 2.0).w(s) > solve_velocity_power(chart, 1.0, 2.0).w(s));
    CHECK(solve_coulomb(chart, 0.2).w(s) > solve_coulomb(chart, 0.4).w(s));
    CHECK(solve_velocity_scaled(chart, 0.4).w(s) == Approx(0.4 * solve_frictionless(chart).w(s)).epsilon(1e-12));
  }
}

TEST_CASE("tip limits") {
  const ArcChart chart = build_chart(RampProfile::polynomial({0.0, 1.0, 0.5}, 1.0));
  const double psi0 = chart.at_s(0.0).psi_dot;
  const double bd0 = chart.at_s(0.0).b_dot;
  const double s = 1e-4 * chart.s_max();
  CHECK(solve_frictionless(chart).w(s) == Approx(psi0).epsilon(1e-3));
  CHECK(solve_velocity_power(chart, 1.0, 2.0).w(s) == Approx(psi0).epsilon(1e-3));
  CHECK(solve_velocity_power(chart, 1.0, 1.5).w(s) == Approx(psi0).epsilon(1e-3));
  // Coulomb and scaled layers start slower than ψ̇(0).
  CHECK(solve_coulomb(chart, 0.3).w(s) == Approx(psi0 - 0.3 * bd0).epsilon(1e-3));
  CHECK(solve_velocity_scaled(chart, 0.5).w(s) == Approx(0.5 * psi0).epsilon(1e-3));
  CHECK(solve_coulomb(chart, 0.3).w0() == Approx(psi0 - 0.3 * bd0));
}

TEST_CASE("frozen limit loads") {
  const ArcChart st = straight45();
  const FrozenLoads a = frozen_limit_loads(st, 0.5);
  CHECK(a.N == Approx(0.5));
  CHECK(a.f == Approx(0.5));
  const ArcChart pc = parabola();
  const FrozenLoads flat = frozen_limit_loads(pc, 0.0);
  CHECK(flat.N == 0.0);
  CHECK(flat.f == 0.0);
  const FrozenLoads one = frozen_limit_loads(pc, 1.0);
  CHECK(one.N == Approx(0.5));
  CHECK(one.f == Approx(0.5));
  CHECK(-one.wf1 == Approx(1.0 / kSqrt2));
  CHECK(one.wf2 == 0.0);
  CHECK(frozen_limit_loads(pc, std::vector<double>{0.1, 0.5}).size() == 2);
}

TEST_CASE("parameter validation") {
  const ArcChart chart = straight45();
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code_of([&] { solve_velocity_power(chart, 1.0, 0.5); }) == ErrorCode::InvalidExponent);
  CHECK(code_of([&] { solve_velocity_power(chart, 0.0, 2.0); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([&] { solve_coulomb(chart, -0.1); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([&] { solve_velocity_scaled(chart, 1.5); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([&] { solve_velocity_scaled(chart, 0.0); }) == ErrorCode::InvalidParameter);
  // b̃ that stays zero near the tip has no layer.
  const ArcChart dead = build_chart(RampProfile::polynomial({0.0}, 1.0));
  CHECK(code_of([&] { solve_frictionless(dead); }) == ErrorCode::LayerUndefined);
}
