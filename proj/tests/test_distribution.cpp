#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slimcalc/distribution.hpp"
#include "slimcalc/rng.hpp"

using namespace slimcalc;
using dist::GeneralizedFunction;
using dist::TestFunction;

namespace {
// <exp(-x^2), unit-peak bump r=1>, frozen from the Simpson oracle
constexpr double kGaussAgainstBump = 1.0439291716994530947;
// integral of the unit-peak bump
constexpr double kBumpMass = 1.2069003224378761753;
// <1/x, unit-peak bump c=1 r=0.8>
constexpr double kInvXAgainstShiftedBump = 1.092960409658940862;
}  // namespace

TEST_CASE("bump support is bit-exact zero outside |x-c| >= r") {
  auto phi = TestFunction::bump_unit_peak({0.5}, 2.0);
  CHECK(phi(2.5) == 0.0);
  CHECK(phi(-1.5) == 0.0);
  CHECK(phi(7.0) == 0.0);
  CHECK(phi(0.5) == doctest::Approx(1.0));
  CHECK(phi(2.45) > 0.0);

  auto phi2 = TestFunction::bump_unit_peak({0.0, 0.0}, 1.0);
  CHECK(phi2({1.0, 0.0}) == 0.0);
  CHECK(phi2({0.7071067811865476, 0.7071067811865477}) == 0.0);
}

TEST_CASE("bump stays smooth across the support boundary") {
  auto phi = TestFunction::bump_unit_peak({0.0}, 1.0);
  auto f = [&](double x) { return phi(x); };
  for (int order = 1; order <= 4; ++order) {
    for (double x : {0.9, 0.99, 1.0, 1.01, 1.2}) {
      const double d = quad::derivative(f, x, order, 0.02);
      CHECK(std::isfinite(d));
      CHECK(std::abs(d) < 1e6);
    }
  }
}

TEST_CASE("scaling acts on parameters exactly") {
  auto phi = TestFunction::bump({0.0}, 1.0, 2.5, {1.0, 0.3});
  auto same = phi.scaled(1.0);
  CHECK(same.center()[0] == phi.center()[0]);
  CHECK(same.radius() == phi.radius());

  auto half = phi.scaled(0.5);
  CHECK(half.radius() == 0.5);
  CHECK(half.peak() == phi.peak());

  // scale(scale(phi, l), mu) == scale(phi, l mu) exactly in parameters
  auto a = phi.scaled(0.3).scaled(0.7);
  auto b = phi.scaled(0.3 * 0.7);
  CHECK(a.radius() == b.radius());
  CHECK(a.center()[0] == b.center()[0]);

  CHECK_THROWS_AS(phi.scaled(0.0), InputError);
  CHECK_THROWS_AS(phi.scaled(-1.0), InputError);
}

TEST_CASE("sifting: delta against scaled bumps") {
  auto phi = TestFunction::bump_unit_peak({0.0}, 1.0);
  auto u = GeneralizedFunction::delta({0.0});
  CHECK(dist::pair(u, phi).real() == doctest::Approx(1.0).epsilon(1e-14));
  // support of phi_lambda is the lambda-dilate: a distant delta sees zero
  auto far = GeneralizedFunction::delta({3.0});
  CHECK(dist::pair(far, phi).real() == 0.0);
  CHECK(dist::pair(far, phi.scaled(2.9)).real() == 0.0);
  CHECK(dist::pair(far, phi.scaled(3.5)).real() > 0.0);
}

TEST_CASE("principal value: odd kernel kills even functions") {
  auto u = GeneralizedFunction::pv_inverse();
  auto even = TestFunction::bump_unit_peak({0.0}, 1.0);
  CHECK(std::abs(dist::pair(u, even)) < 1e-10);

  // odd modulation y * bump pairs to the plain bump mass:
  // \int (y phi(y)) / y dy = \int phi
  auto odd = TestFunction::bump({0.0}, 1.0, std::exp(1.0), {0.0, 1.0});
  CHECK(dist::pair(u, odd).real() ==
        doctest::Approx(kBumpMass).epsilon(1e-10));
}

TEST_CASE("smooth density against bump: frozen golden value") {
  auto u = GeneralizedFunction::smooth(1, [](const std::vector<double>& x) {
    return Complex(std::exp(-x[0] * x[0]), 0.0);
  });
  auto phi = TestFunction::bump_unit_peak({0.0}, 1.0);
  CHECK(dist::pair(u, phi).real() ==
        doctest::Approx(kGaussAgainstBump).epsilon(1e-11));
  // the golden value reproduces under the independent oracle
  CHECK(oracles::simpson(
            [](double x) {
              return std::exp(-x * x) * oracles::unit_bump(x);
            },
            -1.0, 1.0) == doctest::Approx(kGaussAgainstBump).epsilon(1e-12));
}

TEST_CASE("pairing is linear in coefficients and test function") {
  auto u = GeneralizedFunction::smooth(1, [](const std::vector<double>& x) {
    return Complex(1.0 / (1.0 + x[0] * x[0]), 0.0);
  });
  auto v = GeneralizedFunction::pv_inverse();
  auto phi = TestFunction::bump({0.2}, 0.9, 1.7, {1.0, 0.5});
  const Complex pu = dist::pair(u, phi);
  const Complex pv = dist::pair(v, phi);
  for (std::uint64_t i = 0; i < 24; ++i) {
    const Complex a(rng::uniform(7, i, 0) * 4.0 - 2.0,
                    rng::uniform(7, i, 1) * 2.0 - 1.0);
    const Complex b(rng::uniform(7, i, 2) * 4.0 - 2.0,
                    rng::uniform(7, i, 3) * 2.0 - 1.0);
    const Complex combined = dist::pair(u * a + v * b, phi);
    CHECK(std::abs(combined - (a * pu + b * pv)) < 1e-10);
  }
}

TEST_CASE("Jacobian law for homogeneous power singularities") {
  // n = 1, |x|^{-1/2}: field degree a = -1/2, pairing scales as l^{n+a}
  auto u1 = GeneralizedFunction::power(1, 0.5);
  auto phi1 = TestFunction::bump_unit_peak({0.3}, 0.9);
  const Complex base1 = dist::pair(u1, phi1);
  for (double l : {0.5, 0.25, 0.125}) {
    const Complex scaled = dist::pair(u1, phi1.scaled(l));
    CHECK(std::abs(scaled - std::pow(l, 0.5) * base1) /
              std::abs(base1) < 1e-8);
  }
  // n = 2, |x|^{-1}: a = -1, pairing scales as l^{2-1}
  auto u2 = GeneralizedFunction::power(2, 1.0);
  auto phi2 = TestFunction::bump_unit_peak({0.1, -0.2}, 1.0);
  const Complex base2 = dist::pair(u2, phi2, {1e-9});
  for (double l : {0.5, 0.25}) {
    const Complex scaled = dist::pair(u2, phi2.scaled(l), {1e-9});
    CHECK(std::abs(scaled - l * base2) / std::abs(base2) < 1e-7);
  }
}

TEST_CASE("constant density shows the Jacobian factor lambda^n") {
  auto one = GeneralizedFunction::smooth(
      1, [](const std::vector<double>&) { return Complex(1.0, 0.0); });
  auto phi = TestFunction::bump_unit_peak({0.0}, 1.0);
  const Complex base = dist::pair(one, phi);
  for (double l : {0.5, 0.1})
    CHECK(std::abs(dist::pair(one, phi.scaled(l)) - l * base) < 1e-10);
}

TEST_CASE("shifted singular support: 1/x against a bump in (0.2, 1.8)") {
  auto u = GeneralizedFunction::power(1, 1.0, {0.0});
  auto phi = TestFunction::bump_unit_peak({1.0}, 0.8);
  CHECK(dist::pair(u, phi).real() ==
        doctest::Approx(kInvXAgainstShiftedBump).epsilon(1e-10));
}

TEST_CASE("derivative-of-delta pairing") {
  auto phi = TestFunction::bump({0.1}, 1.0, 1.3, {1.0, -0.4, 0.2});
  auto f = [&](double x) { return phi(x); };
  GeneralizedFunction u(
      1, {dist::Term{1.0, dist::DeltaDerivative{1, 0.3}}});
  CHECK(dist::pair(u, phi).real() ==
        doctest::Approx(-quad::derivative(f, 0.3, 1)).epsilon(1e-9));
  GeneralizedFunction u2(
      1, {dist::Term{1.0, dist::DeltaDerivative{2, 0.3}}});
  CHECK(dist::pair(u2, phi).real() ==
        doctest::Approx(quad::derivative(f, 0.3, 2)).epsilon(1e-7));
}

TEST_CASE("tensor products") {
  auto f = TestFunction::bump_unit_peak({0.5}, 1.0);
  auto g = TestFunction::bump_unit_peak({-0.25}, 0.5);
  auto t = dist::tensor(f, g);
  CHECK(t.dimension() == 2);
  CHECK(t({0.5, -0.25}) == doctest::Approx(1.0));
  // support boundary spot checks
  CHECK(t({1.5, -0.25}) == 0.0);
  CHECK(t({0.5, 0.25}) == 0.0);
  CHECK(t({1.45, -0.25}) > 0.0);

  // Fubini against the constant density
  auto one2 = GeneralizedFunction::smooth(
      2, [](const std::vector<double>&) { return Complex(1.0, 0.0); });
  auto one1 = GeneralizedFunction::smooth(
      1, [](const std::vector<double>&) { return Complex(1.0, 0.0); });
  const Complex lhs = dist::pair(one2, t, {1e-9});
  const Complex rhs = dist::pair(one1, f) * dist::pair(one1, g);
  CHECK(std::abs(lhs - rhs) < 1e-8);

  // scaling a tensor scales the factors
  auto ts = t.scaled(0.5);
  CHECK(ts({0.25, -0.125}) == doctest::Approx(1.0));
}

TEST_CASE("input errors") {
  auto phi1 = TestFunction::bump_unit_peak({0.0}, 1.0);
  auto u2 = GeneralizedFunction::delta({0.0, 0.0});
  CHECK_THROWS_AS(dist::pair(u2, phi1), InputError);
  CHECK_THROWS_AS(TestFunction::bump({0.0}, -1.0), InputError);
  // a < n required at pairing time for integrability
  auto too_singular = GeneralizedFunction::power(1, 1.5);
  CHECK_THROWS_AS(dist::pair(too_singular, phi1), InputError);
}

TEST_CASE("quadrature failure propagates with its estimate") {
  auto nasty = GeneralizedFunction::smooth(1, [](const std::vector<double>& x) {
    return Complex(std::cos(2000.0 * x[0] * x[0]), 0.0);
  });
  auto phi = TestFunction::bump_unit_peak({0.0}, 1.0);
  quad::Options o;
  o.abs_tol = 1e-14;
  o.max_intervals = 25;
  CHECK_THROWS_AS(dist::pair(nasty, phi, o), QuadratureError);
}
