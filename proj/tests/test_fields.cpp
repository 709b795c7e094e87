#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/fields.hpp"
#include "khessian/surfaces.hpp"

#include <cmath>
#include <numbers>

using namespace khessian;
using namespace khessian::fields;

namespace {

// Jet of u = -(R/r)^p at r e_1.
Jet2 power_jet(int n, double p, double r) {
  Jet2 j;
  j.x = Eigen::VectorXd::Zero(n);
  j.x(0) = r;
  j.u = -std::pow(r, -p);
  j.g = Eigen::VectorXd::Zero(n);
  const double d1 = p * std::pow(r, -p - 1.0);
  j.g(0) = d1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * (d1 / r);
  h(0, 0) = -(p + 1.0) * d1 / r;
  j.H = symfunc::SymMat(h);
  return j;
}

// Jet of u = z^2/a^2 + |y|^2/b^2 in R^n at (z, rho e_2).
Jet2 spheroid_jet(int n, double a, double b, double z, double rho) {
  Jet2 j;
  j.x = Eigen::VectorXd::Zero(n);
  j.x(0) = z;
  j.x(1) = rho;
  j.u = z * z / (a * a) + rho * rho / (b * b);
  j.g = Eigen::VectorXd::Zero(n);
  j.g(0) = 2 * z / (a * a);
  j.g(1) = 2 * rho / (b * b);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * (2 / (b * b));
  h(0, 0) = 2 / (a * a);
  j.H = symfunc::SymMat(h);
  return j;
}

}  // namespace

TEST_CASE("level curvature of radial fields") {
  const auto c3 = levelset_curvature(power_jet(3, 1.0, 1.0), 1, 0.0);
  CHECK(c3.Hk == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c3.Hk_minus_1 == doctest::Approx(1.0).epsilon(1e-14));

  const auto c5 = levelset_curvature(power_jet(5, 0.5, 1.0), 2, 0.0);
  CHECK(c5.Hk == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(c5.Hk_minus_1 == doctest::Approx(4.0).epsilon(1e-12));

  for (double r : {1.0, 1.7, 3.0, 10.0}) {
    const auto c = levelset_curvature(power_jet(7, 1.5, r), 2, 0.0);
    CHECK(c.Hk == doctest::Approx(15.0 / (r * r)).epsilon(1e-12));
    CHECK(c.Hk_minus_1 == doctest::Approx(6.0 / r).epsilon(1e-12));
  }
}

TEST_CASE("level curvature is invariant under scaling the jet") {
  Jet2 j = spheroid_jet(4, 1.3, 0.8, 0.4, 0.5);
  Jet2 s = j;
  s.g *= 2.0;
  s.H = symfunc::SymMat(2.0 * j.H.matrix());
  for (int k = 1; k <= 3; ++k) {
    const auto a = levelset_curvature(j, k, symfunc::sigma_matrix(j.H, k));
    const auto b = levelset_curvature(s, k, symfunc::sigma_matrix(s.H, k));
    CHECK(a.Hk == doctest::Approx(b.Hk).epsilon(1e-12));
    CHECK(a.Hk_minus_1 == doctest::Approx(b.Hk_minus_1).epsilon(1e-12));
  }
}

TEST_CASE("level curvature matches the surface-of-revolution shape operator") {
  const int n = 5;
  const double a = 1.5, b = 1.0;
  const auto body = surfaces::RevolutionBody::spheroid(n, a, b, 64);
  const auto samples = surfaces::curvature_samples(body);
  for (const auto& s : samples) {
    const Jet2 j = spheroid_jet(n, a, b, s.z, s.rho);
    for (int k = 1; k <= n - 1; ++k) {
      const auto c = levelset_curvature(j, k, symfunc::sigma_matrix(j.H, k));
      CHECK(c.Hk == doctest::Approx(surfaces::curvature_sigma(s, n, k)).epsilon(1e-9));
      CHECK(c.Hk_minus_1 == doctest::Approx(surfaces::curvature_sigma(s, n, k - 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate gradient is rejected") {
  Jet2 j = power_jet(3, 1.0, 1.0);
  j.g.setZero();
  CHECK_THROWS_AS(levelset_curvature(j, 1, 0.0), Error);
  try {
    levelset_curvature(j, 1, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateGradient);
  }
}

TEST_CASE("regularizing right-hand side") {
  EpsilonRHS r{1.0, 1.0, 4};
  CHECK(approx_rhs(Eigen::VectorXd::Zero(4), r) == doctest::Approx(1.0));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(2) = 1.0;
  CHECK(approx_rhs(x, r) == doctest::Approx(0.125));
  double prev = approx_rhs_at_radius(0.0, r);
  for (double rad = 0.1; rad < 10.0; rad += 0.1) {
    const double f = approx_rhs_at_radius(rad, r);
    CHECK(f < prev);
    CHECK(f > 0.0);
    prev = f;
  }
  EpsilonRHS tiny{1e-6, 1.0, 4};
  CHECK(approx_rhs(x, tiny) <= 1e-12);
}

TEST_CASE("admissibility audit") {
  std::vector<Jet2> harmonic, hessian2, bad;
  for (double r = 1.0; r < 5.0; r += 0.25) {
    harmonic.push_back(power_jet(3, 1.0, r));
    hessian2.push_back(power_jet(5, 0.5, r));
    Jet2 j = power_jet(3, 1.0, r);
    j.H = symfunc::SymMat(-Eigen::MatrixXd::Identity(3, 3));
    bad.push_back(j);
  }
  CHECK(admissibility_audit(harmonic, 1).all_admissible);
  const auto r2 = admissibility_audit(hessian2, 2);
  CHECK(r2.all_admissible);
  CHECK(std::abs(r2.worst_margin) <= 1e-12);
  const auto rb = admissibility_audit(bad, 1);
  CHECK_FALSE(rb.all_admissible);
  CHECK(rb.failing.size() == bad.size());
}
