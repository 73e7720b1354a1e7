#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ramploads/errors.hpp"
#include "ramploads/verify.hpp"

using namespace ramploads;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

ArcChart straight45(double x_max = 1.0) { return build_chart(RampProfile::straight(kPi / 4, x_max)); }
ArcChart curved() { return build_chart(RampProfile::polynomial({0.0, 1.0, 0.5}, 1.0)); }

SurfaceProfile table(const ArcChart& chart, const SpeedField& f, std::size_t n) {
  const double s_end = std::min(f.s_valid(), chart.s_max());
  return surface_state(chart, f, uniform_x_stations(chart, chart.psi_of_s(s_end), n));
}

}  // namespace

TEST_CASE("accretion oracle on a straight ramp") {
  const ArcChart chart = straight45(2.0 / kSqrt2);
  const auto states = run_accretion(chart, Frictionless{}, 0.01, 2.0);
  REQUIRE(states.size() == 200);
  CHECK(states.front().s == Approx(0.01));
  for (const auto& st : states) {
    CHECK(std::abs(st.w - kSqrt2 / 2) < 0.01);
    CHECK(std::abs(st.N - 0.5) < 0.01);
    CHECK(st.f == 0.0);
  }
}

TEST_CASE("oracle mass is bookkeeping") {
  const ArcChart chart = curved();
  for (double ds : {0.05, 0.013}) {
    for (const auto& st : run_accretion(chart, Coulomb{0.3}, ds, chart.s_max())) {
      CHECK(std::abs(st.M - chart.b_of_s(st.s)) <= 4 * std::numeric_limits<double>::epsilon() * (1 + st.M));
    }
  }
}

TEST_CASE("oracle tangential momentum balance on a straight ramp") {
  const ArcChart chart = straight45(1.0);
  for (const FrictionSpec& spec : {FrictionSpec{Coulomb{0.4}}, FrictionSpec{VelocityPower{1.0, 2.0}},
                                   FrictionSpec{Frictionless{}}}) {
    double impulse = 0.0;
    for (const auto& st : run_accretion(chart, spec, 0.02, chart.s_max())) {
      impulse += st.J_f;
      const double t_x = chart.at_s(st.s).psi_dot;
      CHECK(std::abs(st.P + impulse - st.M * t_x) < 1e-12);
    }
  }
}

TEST_CASE("oracle converges at first order on a curved ramp") {
  const ArcChart chart = curved();
  for (const FrictionSpec& spec : {FrictionSpec{Frictionless{}}, FrictionSpec{Coulomb{0.2}},
                                   FrictionSpec{VelocityPower{1.0, 2.0}}, FrictionSpec{VelocityPower{0.5, 1.5}}}) {
    const ConvergenceStudy study = convergence_study(chart, spec, {0.04, 0.02, 0.01});
    REQUIRE(study.rows.size() == 3);
    REQUIRE(study.order_w.has_value());
    CHECK(std::abs(*study.order_w - 1.0) < 0.3);
    CHECK(study.rows[0].err_w / study.rows[1].err_w == Approx(2.0).epsilon(0.15));
    CHECK(study.rows[1].err_w / study.rows[2].err_w == Approx(2.0).epsilon(0.15));
    REQUIRE(study.order_N.has_value());
    CHECK(std::abs(*study.order_N - 1.0) < 0.3);
  }
  CHECK(convergence_study(chart, Frictionless{}, {}).rows.empty());
}

TEST_CASE("oracle on a straight ramp is exact up to round-off") {
  const ConvergenceStudy study = convergence_study(straight45(), Coulomb{0.3}, {0.04, 0.02, 0.01});
  for (const auto& r : study.rows) CHECK(r.err_w < 1e-12);
  CHECK_FALSE(study.order_w.has_value());
}

TEST_CASE("oracle rejects unsupported inputs") {
  const ArcChart chart = straight45();
  CHECK_THROWS_AS(run_accretion(chart, Frictionless{}, 0.0, 1.0), Error);
  CHECK_THROWS_AS(run_accretion(chart, VelocityScaled{0.5}, 0.01, 1.0), Error);
  const ArcChart flat = build_chart(RampProfile::power(0.5, 2.0, 1.0));
  CHECK_THROWS_AS(run_accretion(flat, Frictionless{}, 0.01, 1.0), Error);
  try {
    run_accretion(chart, Coulomb{0.9}, 0.5, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
}

TEST_CASE("bump test function") {
  const BumpTestFunction phi(0.5, 0.5, 0.2, 0.1);
  CHECK(phi.value(0.5, 0.5) == 1.0);
  CHECK(phi.value(0.71, 0.5) == 0.0);
  CHECK(phi.value(0.5, 0.61) == 0.0);
  const double h = 1e-6;
  for (auto [x, y] : {std::pair{0.55, 0.47}, std::pair{0.41, 0.56}}) {
    CHECK(phi.dx(x, y) == Approx((phi.value(x + h, y) - phi.value(x - h, y)) / (2 * h)).epsilon(1e-6));
    CHECK(phi.dy(x, y) == Approx((phi.value(x, y + h) - phi.value(x, y - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("weak-form residuals vanish for every model and placement") {
  const std::vector<ArcChart> charts{straight45(), curved()};
  const std::vector<FrictionSpec> models{Frictionless{}, VelocityPower{0.5, 2.0}, Coulomb{0.3},
                                         VelocityScaled{0.4}};
  for (const auto& chart : charts) {
    for (const auto& spec : models) {
      const SurfaceProfile p = table(chart, solve(chart, spec), 512);
      const WeakFormWeights w = weak_weights(chart, p, 1.2);
      for (const auto& bump : standard_bumps(chart)) {
        for (int eq = 0; eq < 4; ++eq) {
          const WeakResidual r = weak_form_residual(chart, w, bump.phi, static_cast<WeakEquation>(eq));
          CHECK(r.residual < 1e-6);
          // The free stream carries no y-momentum, so that pairing is identically empty.
          if (!(bump.name == "interior" && eq == 2)) CHECK(r.magnitude > 0.0);
        }
      }
    }
  }
}

TEST_CASE("interior bump sees only the free stream") {
  const ArcChart chart = straight45();
  const SurfaceProfile p = table(chart, solve_frictionless(chart), 128);
  const WeakFormWeights w = weak_weights(chart, p);
  const auto bumps = standard_bumps(chart);
  const WeakResidual r = weak_form_residual(chart, w, bumps[0].phi, WeakEquation::Mass);
  CHECK(bumps[0].name == "interior");
  CHECK(r.line_m == 0.0);
  CHECK(r.line_n == 0.0);
  CHECK(std::abs(r.area) < 1e-14);
}

TEST_CASE("negative controls") {
  const ArcChart chart = straight45();
  const SurfaceProfile p = table(chart, solve_coulomb(chart, 0.5), 512);
  const WeakFormWeights w = weak_weights(chart, p);
  WeakResidualOptions omit;
  omit.omit_friction_source = true;
  const auto bumps = standard_bumps(chart);
  const WeakResidual r = weak_form_residual(chart, w, bumps[1].phi, WeakEquation::XMomentum, omit);
  CHECK(r.residual > 1e-3);

  WeakFormWeights bad = w;
  bad.perturb(1, 1.01);
  CHECK(weak_form_residual(chart, bad, bumps[1].phi, WeakEquation::XMomentum).residual > 1e-4);
}

TEST_CASE("bump outside the domain") {
  const ArcChart chart = straight45();
  const SurfaceProfile p = table(chart, solve_frictionless(chart), 64);
  const WeakFormWeights w = weak_weights(chart, p);
  const BumpTestFunction far(0.95, 0.5, 0.2, 0.2);
  try {
    weak_form_residual(chart, w, far, WeakEquation::Mass);
    FAIL("expected SupportOutsideDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportOutsideDomain);
  }
}
