#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "beltrami/errors.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"
#include "support/ruled_family.hpp"

using namespace beltrami;

namespace {

std::shared_ptr<const RuledInvariants> invariants_of(const SurfaceSpec& spec, double s0,
                                                     int order) {
  return std::make_shared<const RuledInvariants>(
      ruled_invariants(spec.directrix(), spec.ruling(), s0, order));
}

// Numeric reference: one application of the J=II second operator on the
// position vector, evaluated at (s0, t0) from high-order chart jets.
std::array<double, 3> numeric_p1(const SurfaceSpec& spec, double s0, double t0, int order = 5) {
  const FormBundle fb = fundamental_forms(evaluate_chart(spec, s0, t0, order));
  const ConnectionBundle cb = connections(fb, Form::II);
  const JetVec3 lx = beltrami_second(Form::II, fb.position, fb, cb);
  return {lx.x.value(), lx.y.value(), lx.z.value()};
}

} // namespace

TEST_CASE("helicoid invariants: zeta = c^2 and everything else exactly zero") {
  const double c = 1.5, s0 = 0.4;
  const SurfaceSpec spec = SurfaceSpec::helicoid(c);
  const auto inv = invariants_of(spec, s0, 6);

  CHECK(inv->zeta.value() == doctest::Approx(c * c).epsilon(1e-14));
  CHECK(inv->area.value() == doctest::Approx(c).epsilon(1e-14));
  CHECK(is_exact_zero(inv->eta));
  CHECK(is_exact_zero(inv->mu));
  // nu mixes two triple products whose convolutions round differently, so it
  // lands within a few ulps of zero rather than exactly on it.
  CHECK(max_abs(inv->nu) <= 1e-15);
  CHECK(is_exact_zero(inv->xi));

  const auto mq = inv->metric_quad();
  REQUIRE(mq.size() == 3);
  CHECK(mq[0].value() == doctest::Approx(c * c));
  CHECK(is_exact_zero(mq[1]));
  CHECK(mq[2].value() == doctest::Approx(1.0));
}

TEST_CASE("trig-family invariants have a constant skewness and nonzero mu") {
  std::mt19937 rng(501);
  const SurfaceSpec spec = testing::random_ruled_trig_directrix(rng);
  const auto inv = invariants_of(spec, 0.2, 6);
  CHECK(std::abs(inv->area.value()) >= 0.5);
  // the skewness of this family is the constant beta
  CHECK(std::abs(inv->area.coeff(1)) <= 1e-12);
  CHECK(std::abs(inv->mu.value()) > 1e-3);
}

TEST_CASE("closed-form first iterate matches the generic operator on the helicoid") {
  const double c = 1.5, s0 = 0.4;
  const SurfaceSpec spec = SurfaceSpec::helicoid(c);
  const auto inv = invariants_of(spec, s0, 6);
  const HalfPowerVec3 p1 = p1_closed_form(inv);

  CHECK(p1.half_exponent() == 1);
  CHECK(p1.degree() == 2);
  CHECK(p1[2].is_zero()); // the ruling rotates in a horizontal plane

  for (double t0 : {-1.2, 0.3, 0.9}) {
    const auto expect = numeric_p1(spec, s0, t0);
    const auto got = p1.eval(t0);
    // hand value: -(2 / c) sqrt(t^2 + c^2) * rho'(s)
    const double mag = 2.0 / c * std::sqrt(t0 * t0 + c * c);
    CHECK(got[0] == doctest::Approx(mag * std::sin(s0)).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(mag * -std::cos(s0)).epsilon(1e-12));
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(got[comp] ==
            doctest::Approx(expect[comp]).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("one symbolic operator application equals the closed-form first iterate") {
  std::mt19937 rng(733);
  for (int trial = 0; trial < 4; ++trial) {
    const SurfaceSpec spec = testing::random_ruled(rng);
    const auto inv = invariants_of(spec, -0.15, 7);
    const HalfPowerVec3 via_operator = delta2_ruled(ruled_position_field(inv));
    const HalfPowerVec3 closed = p1_closed_form(inv);

    CHECK(via_operator.half_exponent() == closed.half_exponent());
    CHECK(via_operator.degree() == closed.degree());
    for (double t0 : {-0.8, 0.1, 0.75}) {
      const auto a = via_operator.eval(t0);
      const auto b = closed.eval(t0);
      for (int comp = 0; comp < 3; ++comp) {
        CHECK(a[comp] == doctest::Approx(b[comp]).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("symbolic iterates track the numeric operator through two applications") {
  std::mt19937 rng(864);
  for (int trial = 0; trial < 3; ++trial) {
    const SurfaceSpec spec = testing::random_ruled(rng);
    const double s0 = 0.3, t0 = 0.45;

    const auto inv = invariants_of(spec, s0, 8);
    const HalfPowerVec3 p1 = delta2_ruled(ruled_position_field(inv));
    const HalfPowerVec3 p2 = delta2_ruled(p1);

    const auto num1 = numeric_p1(spec, s0, t0, 5);
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(p1.eval(t0)[comp] ==
            doctest::Approx(num1[comp]).epsilon(1e-9).scale(1.0));
    }

    const FormBundle fb = fundamental_forms(evaluate_chart(spec, s0, t0, 7));
    const ConnectionBundle cb = connections(fb, Form::II);
    const JetVec3 once = beltrami_second(Form::II, fb.position, fb, cb);
    const JetVec3 twice = beltrami_second(Form::II, once, fb, cb);
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(p2.eval(t0)[comp] ==
            doctest::Approx(twice[comp].value()).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("degree and exponent ladder follows 4k-1 and 3k-2") {
  std::mt19937 rng(91);
  for (int trial = 0; trial < 3; ++trial) {
    const SurfaceSpec spec = testing::random_ruled(rng);
    const auto inv = invariants_of(spec, 0.0, 7);
    const std::vector<TraceStep> trace = degree_trace(inv, 5);
    REQUIRE(trace.size() == 6);
    CHECK(trace[0].degree == 1);
    CHECK(trace[0].half_exponent == 0);
    for (std::size_t k = 1; k < trace.size(); ++k) {
      CHECK(trace[k].half_exponent == 3 * static_cast<int>(k) - 2);
      CHECK(trace[k].degree <= 4 * static_cast<int>(k) - 1);
      CHECK(trace[k].degree <= trace[k - 1].degree + 4);
    }
  }
}

TEST_CASE("first-iterate lower bound certifies nonvanishing") {
  const SurfaceSpec helicoid = SurfaceSpec::helicoid(1.5);
  const auto inv = invariants_of(helicoid, 0.0, 5);
  const VanishingReport report = vanishing_analysis(*inv);
  CHECK_FALSE(report.can_vanish);
  CHECK(report.witness_value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(!report.witness.empty());

  std::mt19937 rng(44);
  for (int trial = 0; trial < 6; ++trial) {
    const SurfaceSpec spec = testing::random_ruled(rng);
    const VanishingReport r = vanishing_analysis(*invariants_of(spec, 0.1, 5));
    CHECK_FALSE(r.can_vanish);
    CHECK(r.witness_value > 0.0);
  }
}

TEST_CASE("cylindrical and non-normalized inputs are rejected") {
  // cone through the origin: gamma = 0.5 * rho, so the patch is not skew
  const std::vector<CurveTerm> circle = {{CurveTermType::Cos, 0, 1.0, 1.0},
                                         {CurveTermType::Sin, 1, 1.0, 1.0}};
  std::vector<CurveTerm> half = circle;
  for (CurveTerm& term : half) term.coeff = 0.5;
  CHECK_THROWS_AS(
      (void)ruled_invariants(CurveEvaluator(half), CurveEvaluator(circle), 0.3, 5),
      ParabolicPointError);

  std::vector<CurveTerm> fat = circle;
  for (CurveTerm& term : fat) term.coeff = 2.0;
  CHECK_THROWS_AS(
      (void)ruled_invariants(CurveEvaluator(half), CurveEvaluator(fat), 0.3, 5),
      NormalizationError);
}

TEST_CASE("half-power fields evaluate as numerator over sqrt-power") {
  const auto inv = invariants_of(SurfaceSpec::helicoid(1.0), 0.0, 4);
  const HalfPowerField f(
      inv, {UniJet::constant(4, 3.0), UniJet::constant(4, 2.0)}, 1);
  CHECK(f.degree() == 1);
  // (3 + 2t) / sqrt(t^2 + 1) at t = 0.5
  CHECK(f.eval(0.5) == doctest::Approx(4.0 / std::sqrt(1.25)).epsilon(1e-14));

  CHECK_THROWS_AS(
      HalfPowerField(inv, {UniJet::constant(2, 1.0), UniJet::constant(3, 1.0)}, 1),
      ContractError);

  // trailing exact zeros are trimmed away
  const HalfPowerField trimmed(inv, {UniJet::constant(4, 1.0), UniJet(4)}, 0);
  CHECK(trimmed.degree() == 0);
  const HalfPowerField zero(inv, {UniJet(4), UniJet(4)}, 2);
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
}
