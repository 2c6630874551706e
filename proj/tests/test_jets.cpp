#include <doctest.h>

#include <cmath>
#include <random>

#include "beltrami/jet.hpp"
#include "support/finite_difference.hpp"

using namespace beltrami;

namespace {

Jet random_jet(int order, std::mt19937& rng, double scale = 1.0) {
  Jet j(order);
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; a + b <= order; ++b) {
      const double u = static_cast<double>(rng()) * (1.0 / 4294967296.0);
      j.set_coeff(a, b, scale * (2.0 * u - 1.0));
    }
  }
  return j;
}

double coeff_gap(const Jet& p, const Jet& q) {
  double worst = 0.0;
  const int m = std::min(p.order(), q.order());
  for (int a = 0; a <= m; ++a)
    for (int b = 0; a + b <= m; ++b)
      worst = std::max(worst, std::abs(p.coeff(a, b) - q.coeff(a, b)));
  return worst;
}

} // namespace

TEST_CASE("variable seeds carry base value and unit first derivative") {
  const Jet s = Jet::variable_s(3, 2.0);
  CHECK(s.value() == doctest::Approx(2.0));
  CHECK(s.coeff(1, 0) == doctest::Approx(1.0));
  CHECK(s.coeff(0, 1) == 0.0);
  CHECK(s.coeff(2, 0) == 0.0);

  const Jet t = Jet::variable_t(3, -0.5);
  CHECK(t.value() == doctest::Approx(-0.5));
  CHECK(t.coeff(0, 1) == doctest::Approx(1.0));
  CHECK(t.coeff(1, 0) == 0.0);
}

TEST_CASE("product (1+s)(1+t) has the four expected coefficients") {
  const Jet s = Jet::variable_s(2, 0.0);
  const Jet t = Jet::variable_t(2, 0.0);
  const Jet f = (s + 1.0) * (t + 1.0);
  CHECK(f.coeff(0, 0) == doctest::Approx(1.0));
  CHECK(f.coeff(1, 0) == doctest::Approx(1.0));
  CHECK(f.coeff(0, 1) == doctest::Approx(1.0));
  CHECK(f.coeff(1, 1) == doctest::Approx(1.0));
  CHECK(f.coeff(2, 0) == 0.0);
  CHECK(f.coeff(0, 2) == 0.0);
}

TEST_CASE("(s t)^2 is the single monomial s^2 t^2") {
  const Jet s = Jet::variable_s(4, 0.0);
  const Jet t = Jet::variable_t(4, 0.0);
  const Jet f = ipow(s * t, 2);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      const double expect = (a == 2 && b == 2) ? 1.0 : 0.0;
      CHECK(f.coeff(a, b) == doctest::Approx(expect));
    }
  }
}

TEST_CASE("reciprocal of 1+s reproduces the alternating geometric series") {
  const Jet s = Jet::variable_s(6, 0.0);
  const Jet f = reciprocal(s + 1.0);
  for (int k = 0; k <= 6; ++k) {
    const double expect = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(f.coeff(k, 0) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("sqrt of 4+s matches the binomial series") {
  const Jet f = sqrt(Jet::variable_s(3, 0.0) + 4.0);
  CHECK(f.value() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.coeff(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(f.coeff(2, 0) == doctest::Approx(-1.0 / 64.0).epsilon(1e-14));
  CHECK(f.coeff(3, 0) == doctest::Approx(1.0 / 512.0).epsilon(1e-13));
}

TEST_CASE("sine jet at the origin has the Maclaurin coefficients") {
  const Jet f = sin(Jet::variable_s(3, 0.0));
  CHECK(std::abs(f.coeff(0, 0)) < 1e-16);
  CHECK(f.coeff(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(f.coeff(2, 0)) < 1e-16);
  CHECK(f.coeff(3, 0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("composite jet matches the finite-difference oracle") {
  const double s0 = 0.1, t0 = -0.2;
  const Jet s = Jet::variable_s(4, s0);
  const Jet t = Jet::variable_t(4, t0);
  const Jet f = sin(2.0 * s + 0.3) * (t * t + 1.0) + sqrt(s * t + 4.0);
  const auto fd = [](double sv, double tv) {
    return std::sin(2.0 * sv + 0.3) * (1.0 + tv * tv) + std::sqrt(4.0 + sv * tv);
  };
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      const double oracle = testing::taylor_coefficient(fd, s0, t0, a, b, 0.03);
      CHECK(std::abs(f.coeff(a, b) - oracle) <= 5e-6 * (1.0 + std::abs(oracle)));
    }
  }
}

TEST_CASE("partial derivative of s^2 t in t recovers the jet of s^2") {
  const Jet s = Jet::variable_s(4, 2.0);
  const Jet t = Jet::variable_t(4, 3.0);
  const Jet g = partial(s * s * t, Var::t);
  CHECK(g.order() == 3);
  CHECK(g.value() == doctest::Approx(4.0));
  CHECK(g.coeff(1, 0) == doctest::Approx(4.0));
  CHECK(g.coeff(2, 0) == doctest::Approx(1.0));
  CHECK(std::abs(g.coeff(0, 1)) < 1e-16);
}

TEST_CASE("mixed partials commute") {
  std::mt19937 rng(7);
  const Jet f = random_jet(7, rng);
  const Jet st = partial(partial(f, Var::s), Var::t);
  const Jet ts = partial(partial(f, Var::t), Var::s);
  CHECK(coeff_gap(st, ts) <= 1e-13);
}

TEST_CASE("Leibniz rule holds on random jets") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    const Jet f = random_jet(6, rng);
    const Jet g = random_jet(6, rng);
    for (Var v : {Var::s, Var::t}) {
      const Jet lhs = partial(f * g, v);
      const Jet rhs = partial(f, v) * g.truncated(5) + f.truncated(5) * partial(g, v);
      CHECK(coeff_gap(lhs, rhs) <= 1e-13);
    }
  }
}

TEST_CASE("reciprocal and division invert multiplication") {
  std::mt19937 rng(13);
  Jet a = random_jet(6, rng);
  a.set_coeff(0, 0, 1.7); // keep the base value away from the pole
  const Jet unit = reciprocal(a) * a;
  CHECK(std::abs(unit.value() - 1.0) <= 1e-14);
  Jet residual = unit;
  residual.set_coeff(0, 0, unit.value() - 1.0);
  CHECK(max_abs(residual) <= 1e-12);

  const Jet b = random_jet(6, rng);
  CHECK(coeff_gap((b / a) * a, b) <= 1e-12);
}

TEST_CASE("pow agrees with ipow and composes to the identity") {
  std::mt19937 rng(17);
  Jet g = random_jet(5, rng, 0.3);
  g.set_coeff(0, 0, 2.1);
  CHECK(coeff_gap(pow(g, 3.0), ipow(g, 3)) <= 1e-11);
  const Jet unit = pow(g, 2.5) * pow(g, -2.5);
  CHECK(std::abs(unit.value() - 1.0) <= 1e-13);
}

TEST_CASE("singular compositions and order mismatches are rejected") {
  CHECK_THROWS_AS((void)reciprocal(Jet::variable_s(3, 0.0)), DegenerateJetError);
  CHECK_THROWS_AS((void)sqrt(Jet::constant(3, -1.0)), DegenerateJetError);
  CHECK_THROWS_AS((void)pow(Jet::constant(3, 0.0), -0.5), DegenerateJetError);
  CHECK_THROWS_AS((void)partial(Jet::constant(0, 1.0), Var::s), InsufficientOrderError);
  CHECK_THROWS_AS((void)(Jet::constant(2, 1.0) + Jet::constant(3, 1.0)), InsufficientOrderError);
}

TEST_CASE("vector jets: cross, triple and normalization behave") {
  std::mt19937 rng(19);
  const JetVec3 a{random_jet(5, rng), random_jet(5, rng), random_jet(5, rng)};
  const JetVec3 b{random_jet(5, rng), random_jet(5, rng), random_jet(5, rng)};
  const JetVec3 c{random_jet(5, rng), random_jet(5, rng), random_jet(5, rng)};

  CHECK(coeff_gap(triple(a, b, c), dot(cross(a, b), c)) <= 1e-12);
  const JetVec3 anti = cross(a, b) + cross(b, a);
  CHECK(max_abs(anti) <= 1e-13);

  JetVec3 v{random_jet(5, rng) + 2.0, random_jet(5, rng), random_jet(5, rng)};
  const Jet n = norm(normalized(v));
  CHECK(n.value() == doctest::Approx(1.0).epsilon(1e-13));
  Jet flat = n;
  flat.set_coeff(0, 0, n.value() - 1.0);
  CHECK(max_abs(flat) <= 1e-11);

  const JetVec3 dv = partial(v, Var::t);
  CHECK(coeff_gap(dv.x, partial(v.x, Var::t)) == 0.0);
}
