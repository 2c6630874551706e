#include <doctest.h>

#include <cmath>

#include "beltrami/errors.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/surface.hpp"
#include "support/finite_difference.hpp"

using namespace beltrami;

TEST_CASE("round sphere: b = -g / r, e = g / r^2, K = 1/r^2, H = -1/r") {
  for (double r : {0.5, 1.0, 2.0}) {
    const JetVec3 x = evaluate_chart(SurfaceSpec::sphere(r), 0.3, -0.2, 4);
    const FormBundle fb = fundamental_forms(x);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(fb.b(i, j).value() ==
              doctest::Approx(-fb.g(i, j).value() / r).epsilon(1e-12));
        CHECK(fb.e(i, j).value() ==
              doctest::Approx(fb.g(i, j).value() / (r * r)).epsilon(1e-12));
      }
    }
    CHECK(fb.gauss.value() == doctest::Approx(1.0 / (r * r)).epsilon(1e-12));
    CHECK(fb.mean.value() == doctest::Approx(-1.0 / r).epsilon(1e-12));
    CHECK_FALSE(fb.parabolic());

    // outward normal: n = x / r
    CHECK(fb.normal.x.value() == doctest::Approx(x.x.value() / r).epsilon(1e-12));
    CHECK(fb.normal.z.value() == doctest::Approx(x.z.value() / r).epsilon(1e-12));
  }
}

TEST_CASE("helicoid is minimal with K = -c^2 / (c^2 + t^2)^2") {
  const double c = 1.0, t = 1.0;
  const JetVec3 x = evaluate_chart(SurfaceSpec::helicoid(c), 0.0, t, 4);
  const FormBundle fb = fundamental_forms(x);
  CHECK(std::abs(fb.mean.value()) < 1e-13);
  CHECK(fb.gauss.value() == doctest::Approx(-0.25).epsilon(1e-12));
  // g = diag(t^2 + c^2, 1) in this chart
  CHECK(fb.g(0, 0).value() == doctest::Approx(t * t + c * c).epsilon(1e-12));
  CHECK(fb.g(1, 1).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fb.g(0, 1).value()) < 1e-13);
}

TEST_CASE("torus curvature and the parabolic ring") {
  SurfaceSpec spec = SurfaceSpec::torus(2.0, 0.5);

  // K = cos t / (r (R + r cos t)) away from the ring
  const double t = 0.4;
  const FormBundle fb = fundamental_forms(evaluate_chart(spec, 0.2, t, 4));
  const double expect_k = std::cos(t) / (0.5 * (2.0 + 0.5 * std::cos(t)));
  CHECK(fb.gauss.value() == doctest::Approx(expect_k).epsilon(1e-11));
  CHECK_NOTHROW((void)fb.inverse_form(Form::II));

  // at t = pi/2 the tube flattens: det b = 0
  spec.domain.t = Interval{-2.0, 2.0};
  const FormBundle flat = fundamental_forms(evaluate_chart(spec, 0.2, std::acos(-1.0) / 2.0, 4));
  CHECK(flat.parabolic());
  CHECK_THROWS_AS((void)flat.inverse_form(Form::II), ParabolicPointError);
  CHECK_THROWS_AS((void)flat.inverse_form(Form::III), ParabolicPointError);
  CHECK_NOTHROW((void)flat.inverse_form(Form::I));
}

TEST_CASE("metric and shape entries match finite differences on a graph patch") {
  const SurfaceSpec spec = SurfaceSpec::graph({{1.0, 2, 0}, {-0.7, 0, 2}, {0.4, 1, 1}});
  const double s0 = 0.15, t0 = -0.1;
  const FormBundle fb = fundamental_forms(evaluate_chart(spec, s0, t0, 3));

  // g_ij as a plain function of (s, t), built from first-order chart jets only
  const auto entry = [&](int i, int j) {
    return [&spec, i, j](double sv, double tv) {
      const JetVec3 x = evaluate_chart(spec, sv, tv, 1);
      const double di[3] = {x.x.coeff(1 - i, i), x.y.coeff(1 - i, i), x.z.coeff(1 - i, i)};
      const double dj[3] = {x.x.coeff(1 - j, j), x.y.coeff(1 - j, j), x.z.coeff(1 - j, j)};
      return di[0] * dj[0] + di[1] * dj[1] + di[2] * dj[2];
    };
  };
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(fb.g(i, j).value() == doctest::Approx(entry(i, j)(s0, t0)).epsilon(1e-12));
    }
  }

  // d/ds of g_00 from the jet vs. a finite difference of the function above
  const double fd = testing::central_partial(entry(0, 0), s0, t0, 1, 0, 0.02);
  CHECK(fb.g(0, 0).coeff(1, 0) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("sphere chart connections match the closed-form symbols") {
  const double t = 0.25;
  const FormBundle fb = fundamental_forms(evaluate_chart(SurfaceSpec::sphere(1.0), 0.3, t, 4));
  const ConnectionBundle gamma = connections(fb, Form::I);
  CHECK(gamma(0, 0, 1).value() == doctest::Approx(-std::tan(t)).epsilon(1e-11));
  CHECK(gamma(0, 1, 0).value() == doctest::Approx(-std::tan(t)).epsilon(1e-11));
  CHECK(gamma(1, 0, 0).value() == doctest::Approx(std::sin(t) * std::cos(t)).epsilon(1e-11));
  CHECK(std::abs(gamma(1, 1, 1).value()) < 1e-12);
  CHECK(std::abs(gamma(0, 0, 0).value()) < 1e-12);
}

TEST_CASE("codazzi residual vanishes on honest patches") {
  for (const SurfaceSpec& spec :
       {SurfaceSpec::sphere(1.3), SurfaceSpec::helicoid(0.7), SurfaceSpec::torus(2.0, 0.8),
        SurfaceSpec::graph({{1.0, 2, 0}, {1.0, 0, 2}, {0.3, 3, 0}})}) {
    const FormBundle fb = fundamental_forms(evaluate_chart(spec, 0.21, 0.33, 5));
    const ConnectionBundle gamma = connections(fb, Form::I);
    CHECK(codazzi_residual(fb, gamma) <= 1e-10);
  }
}

TEST_CASE("degenerate charts are rejected") {
  // x(s, t) = (s + t, s + t, 1): both tangents coincide
  const Jet st = Jet::variable_s(3, 0.1) + Jet::variable_t(3, 0.2);
  const JetVec3 bad{st, st, Jet::constant(3, 1.0)};
  CHECK_THROWS_AS((void)fundamental_forms(bad), RegularityError);

  CHECK_THROWS_AS(
      (void)fundamental_forms(evaluate_chart(SurfaceSpec::sphere(1.0), 0.0, 0.0, 1)),
      InsufficientOrderError);
}
