#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ramploads/errors.hpp"
#include "ramploads/loads.hpp"

using namespace ramploads;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

ArcChart straight45(double x_max = 1.0) { return build_chart(RampProfile::straight(kPi / 4, x_max)); }
ArcChart parabola(double x_max = 1.0) { return build_chart(RampProfile::power(0.5, 2.0, x_max)); }

std::vector<ArcChart> test_ramps() {
  return {straight45(), parabola(),
          build_chart(RampProfile::polynomial({0.0, 0.8, 0.4, 0.1}, 1.0)),
          build_chart(RampProfile::straight(kPi / 6, 1.5))};
}

std::vector<FrictionSpec> test_models() {
  return {Frictionless{}, VelocityPower{0.5, 2.0}, VelocityPower{0.3, 1.5}, Coulomb{0.2},
          VelocityScaled{0.3}};
}

SurfaceProfile table(const ArcChart& chart, const SpeedField& f, std::size_t n) {
  const double s_end = std::min(f.s_valid(), chart.s_max());
  const auto st = uniform_x_stations(chart, chart.psi_of_s(s_end), n);
  return surface_state(chart, f, st);
}

}  // namespace

TEST_CASE("sine-squared law on a straight ramp") {
  const ArcChart chart = straight45();
  const SurfaceProfile p = table(chart, solve_frictionless(chart), 64);
  REQUIRE(p.stations.size() == 64);
  for (const auto& st : p.stations) {
    CHECK(st.N == Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(st.f) < 1e-12);
  }
  CHECK(p.stations.back().drag_cum == Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(p.truncated);
}

TEST_CASE("frictionless parabola at x = 1") {
  const ArcChart chart = parabola();
  const std::vector<double> s{0.0, 0.5, chart.s_of_x(1.0)};
  const SurfaceProfile p = surface_state(chart, solve_frictionless(chart), s);
  const SurfaceStation& st = p.stations.back();
  CHECK(st.u == Approx(0.5857864).epsilon(1e-7));
  CHECK(st.v == Approx(0.5857864).epsilon(1e-7));
  CHECK(st.w_rho == Approx(0.6035534).epsilon(1e-7));
  CHECK(st.N == Approx((kSqrt2 - 1) / (2 * kSqrt2) + 0.5).epsilon(1e-9));
  CHECK(std::abs(st.f) < 1e-9);
  CHECK(st.drag_cum == Approx(0.5 * (1 - 0.5857864)).epsilon(1e-6));
}

TEST_CASE("coulomb on a straight ramp") {
  const ArcChart chart = straight45();
  const SurfaceProfile p = table(chart, solve_coulomb(chart, 0.5), 32);
  for (const auto& st : p.stations) {
    CHECK(st.N == Approx(0.5).epsilon(1e-10));
    CHECK(st.f == Approx(0.25).epsilon(1e-10));
  }
}

TEST_CASE("tip station limits") {
  const ArcChart chart = build_chart(RampProfile::polynomial({0.0, 1.0, 0.5}, 1.0));
  const double bd = chart.at_s(0.0).b_dot;
  const double pd = chart.at_s(0.0).psi_dot;
  const std::vector<double> s0{0.0};
  CHECK(surface_state(chart, solve_frictionless(chart), s0).stations[0].N == Approx(bd * bd));
  CHECK(surface_state(chart, solve_frictionless(chart), s0).stations[0].f == 0.0);
  const SurfaceStation c = surface_state(chart, solve_coulomb(chart, 0.4), s0).stations[0];
  CHECK(c.f == Approx(0.4 * c.N));
  const SurfaceStation m = surface_state(chart, solve_velocity_scaled(chart, 0.5), s0).stations[0];
  CHECK(m.f == Approx(bd * (pd - 0.5 * pd)));
}

TEST_CASE("pointwise friction laws") {
  for (const ArcChart& chart : test_ramps()) {
    for (const FrictionSpec& spec : test_models()) {
      const SpeedField f = solve(chart, spec);
      const SurfaceProfile p = table(chart, f, 128);
      for (const auto& st : p.stations) {
        if (std::holds_alternative<Frictionless>(spec)) {
          CHECK(std::abs(st.f) < 1e-8);
        } else if (const auto* vp = std::get_if<VelocityPower>(&spec)) {
          if (st.s > 0.0) CHECK(std::abs(st.f - vp->k * st.w_rho * std::pow(st.w, vp->alpha)) < 1e-7 * (1 + std::abs(st.f)));
        } else if (const auto* c = std::get_if<Coulomb>(&spec)) {
          CHECK(std::abs(st.f - c->eta * st.N) < 1e-7 * (1 + std::abs(st.f)));
        }
      }
    }
  }
}

TEST_CASE("conservation residuals") {
  for (const ArcChart& chart : test_ramps()) {
    for (const FrictionSpec& spec : test_models()) {
      const SurfaceProfile p = table(chart, solve(chart, spec), 128);
      const auto res = conservation_report(chart, p, 1.3);
      REQUIRE(res.size() == p.stations.size());
      for (const auto& r : res) {
        const double scale = 1.0 + chart.b_of_s(r.s);
        CHECK(std::abs(r.mass) < 1e-13 * scale);
        CHECK(std::abs(r.x_momentum) < 1e-7 * scale);
        CHECK(std::abs(r.y_momentum) < 1e-7 * scale);
        CHECK(r.energy == 0.0);
      }
    }
  }
}

TEST_CASE("slip condition") {
  for (const ArcChart& chart : test_ramps()) {
    const SurfaceProfile p = table(chart, solve_coulomb(chart, 0.1), 64);
    for (const auto& st : p.stations) {
      const ChartPoint pt = chart.at_s(st.s);
      CHECK(std::abs(st.u * pt.normal().x + st.v * pt.normal().y) < 1e-12);
    }
  }
}

TEST_CASE("scaled layer: lift identity by two routes") {
  const ArcChart chart = parabola();
  const SurfaceProfile p = table(chart, solve_velocity_scaled(chart, 0.3), 128);
  for (const auto& r : conservation_report(chart, p)) CHECK(std::abs(r.y_momentum) < 1e-8);
}

TEST_CASE("cumulative loads from station values") {
  const ArcChart chart = parabola();
  const SurfaceProfile p = table(chart, solve_frictionless(chart), 256);
  const auto cum = cumulative_loads(p.stations);
  REQUIRE(cum.size() == p.stations.size());
  CHECK(cum.back().drag_cum == Approx(0.2071068).epsilon(1e-6));
  CHECK(cum.back().lift_cum == Approx(p.stations.back().lift_cum).epsilon(1e-8));
  CHECK(cumulative_loads({}).empty());
  for (std::size_t i = 1; i < p.stations.size(); ++i) {
    CHECK(p.stations[i].drag_cum >= p.stations[i - 1].drag_cum);
    CHECK(p.stations[i].lift_cum <= p.stations[i - 1].lift_cum);
  }

  std::vector<SurfaceStation> shuffled = p.stations;
  std::swap(shuffled[3], shuffled[7]);
  CHECK_THROWS_AS(cumulative_loads(shuffled), Error);
}

TEST_CASE("station errors") {
  const ArcChart chart = straight45(2.0);
  const SpeedField f = solve_velocity_power(chart, 1.0, 1.0);
  const std::vector<double> over{0.5, 2.0};
  const std::vector<double> unsorted{0.5, 0.2};
  auto code_of = [&](const std::vector<double>& st) {
    try {
      surface_state(chart, f, st);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code_of(over) == ErrorCode::OutOfValidityRange);
  CHECK(code_of(unsorted) == ErrorCode::UnsortedStations);
  CHECK(surface_state(chart, f, std::vector<double>{}).stations.empty());
}

TEST_CASE("validity tightening when friction turns the layer around") {
  // Coulomb on a ramp that steepens fast: f stays ≥ 0 while w > 0.
  const ArcChart chart = build_chart(RampProfile::polynomial({0.0, 0.2, 2.0}, 1.0));
  const SpeedField f = solve_coulomb(chart, 0.8);
  CHECK(f.s_valid() < chart.s_max());
  const SurfaceProfile p = table(chart, f, 64);
  for (const auto& st : p.stations) {
    CHECK(st.N >= 0.0);
    CHECK(st.f >= 0.0);
    CHECK(st.w >= 0.0);
  }
}

TEST_CASE("weak-form weights") {
  const ArcChart chart = straight45(2.0);
  const SurfaceProfile p = table(chart, solve_frictionless(chart), 256);
  const WeakFormWeights w = weak_weights(chart, p, 1.7);
  for (int eq = 0; eq < 4; ++eq) {
    CHECK(w.wm(eq, 0.0) == Approx(0.0).scale(1.0));
    CHECK(w.wn(eq, 0.0) == Approx(0.0).scale(1.0));
  }
  CHECK(w.wn(0, 1.0) == Approx(0.5).epsilon(1e-10));
  CHECK(w.pressure_weight(0.3) == 0.0);
  for (double s : {0.2, 0.9, 2.1}) {
    CHECK(w.wm(3, s) / w.wm(0, s) == Approx(1.7).epsilon(1e-12));
    CHECK(w.wn(3, s) / w.wn(0, s) == Approx(1.7).epsilon(1e-12));
  }
}

TEST_CASE("frozen table") {
  const ArcChart chart = parabola();
  const SurfaceProfile p = frozen_surface_state(chart, uniform_x_stations(chart, 1.0, 16));
  REQUIRE(p.stations.size() == 16);
  for (const auto& st : p.stations) {
    const double d = st.x;
    CHECK(st.w == 0.0);
    CHECK(st.u == 0.0);
    CHECK(st.v == 0.0);
    CHECK(std::isinf(st.w_rho));
    CHECK(st.N == Approx(d * d / (1 + d * d)));
    CHECK(st.f == Approx(d / (1 + d * d)));
  }
  const auto res = conservation_report(chart, p);
  for (const auto& r : res) CHECK(r.mass == 0.0);
}

TEST_CASE("frozen limit approached by the scaled layer") {
  const ArcChart chart = parabola();
  const SpeedField f = solve_velocity_scaled(chart, 1e-6);
  const auto st = uniform_x_stations(chart, 1.0, 91);
  std::vector<double> s;
  for (double v : st) {
    if (chart.psi_of_s(v) >= 0.1 - 1e-12) s.push_back(v);
  }
  const SurfaceProfile p = surface_state(chart, f, s);
  for (const auto& t : p.stations) {
    const double d = chart.profile().slope(t.x);
    CHECK(std::abs(t.f - d / (1 + d * d)) < 1e-5);
    CHECK(std::abs(t.N - d * d / (1 + d * d)) < 1e-5 * (1 + solve_frictionless(chart).momentum(t.s)));
  }
}
