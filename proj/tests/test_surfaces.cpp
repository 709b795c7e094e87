#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/surfaces.hpp"
#include "khessian/symfunc.hpp"

#include <cmath>
#include <numbers>

using namespace khessian;
using namespace khessian::surfaces;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere curvatures") {
  const auto s2 = curvature_samples(RevolutionBody::sphere(3, 2.0, 64));
  for (const auto& s : s2) {
    CHECK(std::abs(s.kappa_m - 0.5) <= 1e-10);
    CHECK(std::abs(s.kappa_r - 0.5) <= 1e-10);
    CHECK(std::hypot(s.nu_z, s.nu_rho) == doctest::Approx(1.0));
  }
  for (const auto& s : curvature_samples(RevolutionBody::sphere(5, 1.0, 64)))
    CHECK(curvature_sigma(s, 5, 2) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("spheroid pole curvature") {
  const auto s = curvature_samples(RevolutionBody::spheroid(3, 1.5, 1.0, 256));
  CHECK(s.front().kappa_m == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(s.front().kappa_r == doctest::Approx(1.5).epsilon(1e-9));
  // Equator: meridian curvature b/a^2, rotational 1/b.
  const auto& eq = s[s.size() / 2];
  CHECK(eq.kappa_m == doctest::Approx(1.0 / 2.25).epsilon(1e-9));
  CHECK(eq.kappa_r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quermassintegrals of spheres") {
  const auto b = RevolutionBody::sphere(3, 1.7, 128);
  CHECK(quermass(b, 0) == doctest::Approx(4 * kPi * 1.7 * 1.7).epsilon(1e-10));
  CHECK(quermass(b, 1) == doctest::Approx(8 * kPi * 1.7).epsilon(1e-10));
  const double s4 = 8 * kPi * kPi / 3;
  CHECK(quermass(RevolutionBody::sphere(5, 1.0, 128), 1) == doctest::Approx(4 * s4).epsilon(1e-10));
  for (int n : {3, 4, 5, 7}) {
    const double R = 1.3;
    const auto body = RevolutionBody::sphere(n, R, 256);
    for (int k = 0; k <= n - 1; ++k) {
      const double exact = symfunc::binomial(n - 1, k) * std::pow(R, -k) * unit_sphere_area(n - 1) *
                           std::pow(R, n - 1);
      CHECK(std::abs(quermass(body, k) - exact) <= 1e-9 * exact);
    }
  }
}

TEST_CASE("Minkowski residual") {
  CHECK(std::abs(minkowski_residual(RevolutionBody::sphere(3, 1.0), 1)) <= 1e-10);
  CHECK(std::abs(minkowski_residual(RevolutionBody::sphere(5, 1.0), 2)) <= 1e-9);
  CHECK(std::abs(minkowski_residual(RevolutionBody::spheroid(3, 1.5, 1.0, 2048), 1)) <= 1e-8);
  const auto cosb = RevolutionBody::cos_perturbed(4, 0.2, 2, 1.0, 2048);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(minkowski_residual(cosb, k)) <= 1e-8);
}

TEST_CASE("volume") {
  CHECK(volume(RevolutionBody::sphere(3, 1.0)) == doctest::Approx(4 * kPi / 3).epsilon(1e-10));
  CHECK(volume(RevolutionBody::sphere(3, 2.0)) == doctest::Approx(32 * kPi / 3).epsilon(1e-10));
  CHECK(volume(RevolutionBody::spheroid(3, 1.5, 1.0, 512)) == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("Aleksandrov-Fenchel and Qiu-Xia gaps") {
  const double s4 = unit_sphere_area(4);
  CHECK(std::abs(af_gap(RevolutionBody::sphere(5, 1.0), 2)) <= 1e-9 * s4 * s4);
  CHECK(std::abs(qiu_xia_gap(RevolutionBody::sphere(3, 1.0))) <= 1e-9);
  CHECK(std::abs(qiu_xia_gap(RevolutionBody::sphere(3, 2.5))) <= 1e-8);
  CHECK(af_gap(RevolutionBody::spheroid(5, 1.5, 1.0, 512), 2) > 0.0);
  CHECK(qiu_xia_gap(RevolutionBody::spheroid(3, 1.5, 1.0, 512)) > 0.0);
  // A dented body: gamma = 1 + 0.2 cos 2 theta has kappa_m <= 0 near the equator.
  CHECK_THROWS_AS(qiu_xia_gap(RevolutionBody::cos_perturbed(3, 0.3)), Error);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(RevolutionBody(3, std::vector<double>{1, 1, -1, 1, 1}), Error);
  try {
    RevolutionBody::from_function(3, [](double t) { return 1.0 + 0.2 * t; }, 64);
    FAIL("expected a pole singularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleSingularity);
  }
  CHECK_THROWS_AS(RevolutionBody(2, std::vector<double>(9, 1.0)), Error);
}

TEST_CASE("interpolant reproduces the profile") {
  const auto b = RevolutionBody::spheroid(3, 1.5, 1.0, 512);
  for (double t : {0.1, 0.7, 1.3, 2.9}) {
    const double c = std::cos(t) / 1.5, s = std::sin(t);
    CHECK(b.eval(t).gamma == doctest::Approx(1.0 / std::sqrt(c * c + s * s)).epsilon(1e-12));
  }
  CHECK(b.radius_deviation() > 0.1);
  CHECK(RevolutionBody::sphere(3, 2.0).radius_deviation() <= 1e-15);
}
