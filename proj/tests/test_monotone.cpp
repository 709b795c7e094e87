#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/levelset.hpp"
#include "khessian/monotone.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/radial.hpp"

#include <cmath>
#include <memory>
#include <numbers>

using namespace khessian;
using namespace khessian::monotone;

namespace {

constexpr double kPi = std::numbers::pi;

solver::ExteriorField radial_field(int n, int k, double R, int Ns, double R_out_factor = 40.0) {
  const auto body = surfaces::RevolutionBody::sphere(n, R, Ns / 2);
  const auto g = std::make_shared<const solver::AxiGrid>(body, Ns, Ns / 2, R_out_factor * R);
  const radial::RadialSolution sol(n, k, R);
  return solver::sample_field(g, k, [sol](double z, double r) { return sol.u(std::hypot(z, r)); });
}

solver::SolveOptions grid_options(int Ns) {
  solver::SolveOptions o;
  o.Ns = Ns;
  o.Ntheta = Ns / 2;
  return o;
}

}  // namespace

TEST_CASE("level sets of radial fields are spheres") {
  const auto f = radial_field(3, 1, 2.0, 128);
  const auto c = levelset::extract_levelset(f, -0.5);
  CHECK(c.samples.size() == 65);
  for (const auto& p : c.samples) {
    CHECK(p.r == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(p.grad == doctest::Approx(0.125).epsilon(1e-5));
    CHECK(p.Hk == doctest::Approx(0.5).epsilon(1e-5));
  }
  CHECK(c.area() == doctest::Approx(64.0 * kPi).epsilon(1e-6));

  CHECK_THROWS_AS(levelset::extract_levelset(f, -1.0 + 1e-12), Error);
  CHECK_THROWS_AS(levelset::extract_levelset(f, -1e-3), Error);
  try {
    levelset::extract_levelset(f, -1.0 + 1e-12);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LevelOutOfRange);
  }
}

TEST_CASE("a level crossing a ray twice is rejected") {
  const auto body = surfaces::RevolutionBody::sphere(3, 1.0, 32);
  const auto g = std::make_shared<const solver::AxiGrid>(body, 64, 32, 40.0);
  // Bump on the outer part of the ray: u dips back below -0.3 near r = 8.
  const auto f = solver::sample_field(g, 1, [](double z, double rho) {
    const double r = std::hypot(z, rho);
    return -1.0 / r - 0.25 * std::exp(-(r - 8.0) * (r - 8.0));
  });
  try {
    levelset::extract_levelset(f, -0.3);
    FAIL("expected CriticalPointOnLevel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CriticalPointOnLevel);
  }
}

TEST_CASE("F on radial fields") {
  const auto f3 = radial_field(3, 1, 2.0, 256);
  for (double t : {-0.9, -0.5, -0.3})
    CHECK(F_eval(f3, t, ProblemSpec::make(3, 1, 2.0)).F == doctest::Approx(kPi).epsilon(1e-4));
  const auto f5 = radial_field(5, 2, 1.0, 256);
  const auto v = F_eval(f5, -0.5, ProblemSpec::make(5, 2, 2.0));
  CHECK(v.F == doctest::Approx(0.5 * unit_sphere_area(4)).epsilon(1e-4));
  CHECK(v.C1 == doctest::Approx(4.0));
  CHECK(v.C2 == doctest::Approx(-16.0));
  CHECK(F_eval(f5, -0.5, ProblemSpec::make(5, 2, 2.0, 0.0, 0.0)).F == 0.0);

  // Boundary value from the body geometry.
  const auto b = boundary_F(f5, ProblemSpec::make(5, 2, 2.0));
  CHECK(b.t == -1.0);
  CHECK(b.F == doctest::Approx(0.5 * unit_sphere_area(4)).epsilon(1e-8));
}

TEST_CASE("F converges under refinement") {
  const radial::RadialSolution sol(5, 2, 1.0);
  const auto spec = ProblemSpec::make(5, 2, 2.0);
  const double exact = radial::radial_F(sol, -0.6, spec);
  const double e1 = std::abs(F_eval(radial_field(5, 2, 1.0, 64), -0.6, spec).F - exact);
  const double e2 = std::abs(F_eval(radial_field(5, 2, 1.0, 128), -0.6, spec).F - exact);
  CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("audit of radial fields") {
  for (auto [C3, C4] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
    const auto spec = ProblemSpec::make(3, 1, 2.0, C3, C4);
    const auto f = radial_field(3, 1, 2.0, 256);
    const auto rep = monotonicity_audit(f, spec, 1e-5);
    CHECK(rep.rows.size() == 18);
    CHECK(rep.rows.front().value.t == -1.0);
    CHECK(rep.monotone);
    CHECK(rep.constant);
    CHECK(rep.above_limit);
    CHECK(std::abs(rep.min_limit_gap) <= 1e-5);
    CHECK_FALSE(rep.strict());
  }
}

TEST_CASE("default level grid") {
  const auto f = radial_field(3, 1, 1.0, 128);
  const auto t = levelset::default_t_grid(f);
  CHECK(t.size() == 17);
  CHECK(t.front() == doctest::Approx(-0.9));
  CHECK(t.back() == doctest::Approx(-0.1));
  const auto f2 = radial_field(5, 2, 1.0, 64);
  const auto t2 = levelset::default_t_grid(f2, 5);
  CHECK(t2.back() <= 2.0 * f2.value(64, 0) + 1e-12);
}

TEST_CASE("spheroid: monotone with a strict limit gap") {
  const auto body = surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, 128);
  const auto spec = ProblemSpec::make(3, 1, 2.0);
  const auto fine = solver::solve_exterior(body, spec, grid_options(128));
  const auto coarse = solver::solve_exterior(body, spec, grid_options(64));

  // The far level lies near the sphere of the asymptotic prediction.
  const auto c = levelset::extract_levelset(fine, -0.1);
  const double predicted = radial::asymptotic_predict(fine.rho_hat, -0.1, spec).radius;
  for (const auto& p : c.samples) CHECK(std::abs(p.r / predicted - 1.0) <= 0.1);

  const auto rep = monotonicity_audit(fine, coarse, spec);
  CHECK(rep.monotone);
  CHECK(rep.above_limit);
  CHECK(rep.strict());
  CHECK_FALSE(rep.constant);
  CHECK(rep.max_violation <= 5.0 * rep.tol);
  for (std::size_t m = 1; m < rep.rows.size(); ++m)
    CHECK(rep.rows[m].value.F <= rep.rows[m - 1].value.F + rep.tol);
}
