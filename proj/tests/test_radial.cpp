#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/radial.hpp"
#include "khessian/symfunc.hpp"

#include <cmath>
#include <numbers>

using namespace khessian;
using namespace khessian::radial;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("radial jets") {
  const RadialSolution h(3, 1, 1.0);
  const auto j = radial_eval(h, 2.0);
  CHECK(j.u == doctest::Approx(-0.5));
  CHECK(j.g.norm() == doctest::Approx(0.25));
  CHECK(std::abs(j.H.matrix().trace()) <= 1e-15);

  const RadialSolution s(5, 2, 1.0);
  const auto e = symfunc::eigenvalues(radial_eval(s, 1.0).H);
  CHECK(e(0) == doctest::Approx(-0.75));
  for (int i = 1; i < 5; ++i) CHECK(e(i) == doctest::Approx(0.5));
  for (double r : {1.0, 1.5, 4.0, 30.0}) {
    const auto jr = radial_eval(s, r);
    const double scale = std::pow(jr.H.matrix().cwiseAbs().maxCoeff(), 2);
    CHECK(std::abs(symfunc::sigma_matrix(jr.H, 2)) <= 1e-12 * scale);
  }
  const RadialSolution q(4, 1, 1.0);
  CHECK(q.u(1e3) * 1e6 == doctest::Approx(-1.0));
  CHECK_THROWS_AS(radial_eval(s, 0.5), Error);
  CHECK_THROWS_AS(RadialSolution(4, 2, 1.0), Error);
}

TEST_CASE("radial F worked examples") {
  const RadialSolution b2(3, 1, 2.0);
  CHECK(radial_F(b2, -0.3, ProblemSpec::make(3, 1, 1.0)) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(radial_F(b2, -0.3, ProblemSpec::make(3, 1, 2.0)) == doctest::Approx(kPi).epsilon(1e-12));
  const RadialSolution b1(5, 2, 1.0);
  const double expect = 0.5 * unit_sphere_area(4);
  CHECK(expect == doctest::Approx(13.1595).epsilon(1e-5));
  CHECK(radial_F(b1, -0.8, ProblemSpec::make(5, 2, 2.0)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("radial F is constant and attains the limit") {
  struct Case { int n, k; double R, a, C3, C4; };
  const Case cases[] = {{3, 1, 1.0, 1.0, 1, 0}, {3, 1, 2.0, 2.0, 1, 0}, {5, 2, 1.0, 2.0, 1, 0},
                        {5, 2, 2.0, 2.0, 1, 0}, {7, 2, 1.0, 4.0, 1, 0}, {7, 3, 1.0, 3.0, 1, 0},
                        {7, 2, 1.7, 3.0, 1, 0}};
  for (const auto& c : cases) {
    const RadialSolution sol(c.n, c.k, c.R);
    const auto spec = ProblemSpec::make(c.n, c.k, c.a, c.C3, c.C4);
    const double lim = limit_bound(spec, sol.rho());
    for (int i = 0; i < 100; ++i) {
      const double t = -1.0 + 0.99 * i / 99.0;
      CHECK(std::abs(radial_F(sol, t, spec) - lim) <= 1e-10 * std::abs(lim));
    }
  }
  const RadialSolution s(5, 2, 1.3);
  const auto c4 = ProblemSpec::make(5, 2, 2.0, 0.0, 1.0);
  for (double t : {-1.0, -0.5, -0.1}) CHECK(std::abs(radial_F(s, t, c4)) <= 1e-12);
}

TEST_CASE("asymptotic prediction is exact on balls") {
  const auto spec = ProblemSpec::make(3, 1, 2.0);
  const auto p = asymptotic_predict(2.0, -0.5, spec);
  CHECK(p.radius == doctest::Approx(4.0));
  CHECK(p.area == doctest::Approx(64 * kPi));
  CHECK(p.intHk1 == doctest::Approx(kPi / 8));
  const auto q = asymptotic_predict(1.0, -1.0, ProblemSpec::make(5, 2, 2.0));
  CHECK(q.radius == doctest::Approx(1.0));
  CHECK(q.area == doctest::Approx(unit_sphere_area(4)));
  for (int n : {5, 7}) {
    for (double R : {1.0, 2.0}) {
      const RadialSolution sol(n, 2, R);
      const auto sp = ProblemSpec::make(n, 2, 3.0);
      for (double t : {-0.9, -0.5, -0.05}) {
        const auto exact = level_integrals(sol, t, sp.a);
        const auto pred = asymptotic_predict(sol.rho(), t, sp);
        CHECK(std::abs(pred.area / exact.area - 1) <= 1e-10);
        CHECK(std::abs(pred.intHk / exact.intHk - 1) <= 1e-10);
        CHECK(std::abs(pred.intHk1 / exact.intHk1 - 1) <= 1e-10);
        CHECK(std::abs(pred.radius / exact.radius - 1) <= 1e-10);
      }
    }
  }
}

TEST_CASE("exterior energy") {
  const RadialSolution s(5, 2, 1.0);
  CHECK(exterior_energy(s) == doctest::Approx(0.625 * unit_sphere_area(4)).epsilon(1e-10));
  // Capacity of the unit ball in R^3: int |grad u|^2 = 4 pi.
  CHECK(exterior_energy(RadialSolution(3, 1, 1.0)) == doctest::Approx(4 * kPi).epsilon(1e-10));
  for (int n : {5, 7}) {
    for (double R : {1.0, 2.0}) {
      const RadialSolution sol(n, 2, R);
      CHECK(exterior_energy(sol) ==
            doctest::Approx(exterior_energy_tail(n, 2, sol.rho(), R)).epsilon(1e-10));
    }
  }
}
