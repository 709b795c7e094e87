#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/oracles.hpp"
#include "khessian/radial.hpp"
#include "khessian/solver.hpp"
#include "khessian/symfunc.hpp"

#include <cmath>
#include <memory>

using namespace khessian;
using namespace khessian::solver;

namespace {

std::shared_ptr<const AxiGrid> grid_for(const surfaces::RevolutionBody& body, int Ns, int Nt,
                                        double R_out = 40.0) {
  return std::make_shared<const AxiGrid>(body, Ns, Nt, R_out);
}

template <class Fn>
double sup_error(const ExteriorField& f, Fn exact) {
  const AxiGrid& g = *f.grid;
  double err = 0.0;
  for (int i = 0; i <= g.Ns(); ++i)
    for (int j = 0; j <= g.Ntheta(); ++j)
      err = std::max(err, std::abs(f.value(i, j) - exact(g.z(i, j), g.rho(i, j))));
  return err;
}

SolveOptions grid_options(int Ns, int Nt) {
  SolveOptions o;
  o.Ns = Ns;
  o.Ntheta = Nt;
  return o;
}

}  // namespace

TEST_CASE("grid geometry") {
  const auto body = surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, 64);
  const auto g = grid_for(body, 32, 64);
  CHECK(g->radius(0, 0) == doctest::Approx(1.5));
  CHECK(g->radius(0, 32) == doctest::Approx(1.0));
  CHECK(g->radius(32, 17) == doctest::Approx(40.0));
  CHECK(g->rho(5, 0) == 0.0);
  CHECK(g->rho(5, 64) == 0.0);
  CHECK(g->z(5, 64) < 0.0);
  CHECK_THROWS_AS(AxiGrid(body, 32, 64, 10.0), Error);
  CHECK_THROWS_AS(AxiGrid(body, 31, 64, 40.0), Error);
}

TEST_CASE("jets of sampled quadratics") {
  // |x|^2 / 2 on a sphere grid: the Hessian is the identity.
  const auto g = grid_for(surfaces::RevolutionBody::sphere(5, 1.0, 32), 64, 32);
  const auto f = sample_field(g, 2, [](double z, double r) { return 0.5 * (z * z + r * r); });
  for (int i : {0, 1, 7, 40, 63, 64})
    for (int j : {0, 5, 16, 32}) {
      // Second-order stencils on and next to the edges, fourth order inside.
      const double tol = (i == 0 || i == 64) ? 5e-2 : (i == 1 || i == 63) ? 5e-3 : 1e-4;
      const auto e = axi_eigenvalues(axi_jet(f, i, j), 5);
      for (int m = 0; m < 5; ++m) CHECK(e(m) == doctest::Approx(1.0).epsilon(tol));
    }

  // z^2 + 2 rho^2 on a spheroid grid couples the two directions; the polar
  // error is second order.
  double err[2];
  for (int m = 0; m < 2; ++m) {
    const int N = 32 << m;
    const auto gq = grid_for(surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, N), N, N);
    const auto q = sample_field(gq, 1, [](double z, double r) { return z * z + 2.0 * r * r; });
    err[m] = 0.0;
    for (int i = 1; i < N; ++i)
      for (int j = 0; j <= N; ++j) {
        const AxiJet a = axi_jet(q, i, j);
        err[m] = std::max({err[m], std::abs(a.uzz - 2.0), std::abs(a.urhorho - 4.0),
                           std::abs(a.uzrho), std::abs(a.mu - 4.0)});
      }
  }
  CHECK(err[1] <= 0.05);
  CHECK(err[0] / err[1] >= 3.5);

  const auto gs = grid_for(surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, 64), 64, 64);
  const auto c = sample_field(gs, 1, [](double, double) { return 3.0; });
  const AxiJet a = axi_jet(c, 10, 10);
  CHECK(std::abs(a.uz) + std::abs(a.urho) + std::abs(a.uzz) + std::abs(a.uzrho) +
            std::abs(a.urhorho) + std::abs(a.mu) <= 1e-9);
}

TEST_CASE("block formula agrees with the full Hessian") {
  AxiJet a;
  a.z = 0.3;
  a.rho = 1.1;
  a.uzz = 0.7;
  a.uzrho = -0.4;
  a.urhorho = 1.3;
  a.mu = 0.25;
  for (int n : {3, 5, 7})
    for (int k = 0; k <= n; ++k)
      CHECK(axi_sigma(a, n, k) ==
            doctest::Approx(symfunc::sigma_matrix(to_jet2(a, n).H, k)).epsilon(1e-12));
}

TEST_CASE("far-field fit") {
  const auto g = grid_for(surfaces::RevolutionBody::sphere(3, 2.0, 32), 64, 32, 80.0);
  const radial::RadialSolution sol(3, 1, 2.0);
  const auto f = sample_field(g, 1, [&](double z, double r) { return sol.u(std::hypot(z, r)); });
  const RhoFit fit = estimate_rho(f);
  CHECK(fit.rho == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.rel_variance <= 1e-20);

  // Wrong decay: -u r is not constant on the shell.
  const auto bad = sample_field(g, 1, [](double z, double r) { return -4.0 / (z * z + r * r); });
  CHECK_THROWS_AS(estimate_rho(bad), Error);
  CHECK(fit_rho(bad).rel_variance > 1e-3);
}

TEST_CASE("k = 1 sphere recovers the radial solution") {
  const auto spec = ProblemSpec::make(3, 1, 1.0);
  const auto f = solve_exterior(surfaces::RevolutionBody::sphere(3, 1.0, 64), spec, grid_options(128, 64));
  const radial::RadialSolution sol(3, 1, 1.0);
  CHECK(sup_error(f, [&](double z, double r) { return sol.u(std::hypot(z, r)); }) <= 1e-6);
  CHECK(f.rho_hat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f.max_principle);
  CHECK(f.residual_norm <= 1e-10 * std::max(f.residual_scale, 1.0));
  for (double gb : boundary_gradient(f)) CHECK(gb == doctest::Approx(1.0).epsilon(1e-5));

  // Doubling the truncation radius leaves rho_hat in place.
  SolveOptions far = grid_options(128, 64);
  far.R_out = 80.0;
  const auto f2 = solve_exterior(surfaces::RevolutionBody::sphere(3, 1.0, 64), spec, far);
  CHECK(f2.rho_hat == doctest::Approx(f.rho_hat).epsilon(1e-5));
}

TEST_CASE("prolate spheroid against the closed form") {
  const oracles::ProlatePotential exact(1.5, 1.0);
  const auto body = surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, 128);
  const auto spec = ProblemSpec::make(3, 1, 1.0);
  double err[2];
  int m = 0;
  for (int Ns : {64, 128}) {
    const auto f = solve_exterior(body, spec, grid_options(Ns, Ns / 2));
    err[m++] = sup_error(f, [&](double z, double r) { return exact.u(z, r); });
    CHECK(f.rho_hat == doctest::Approx(exact.rho()).epsilon(1e-3));
    if (Ns == 128) {
      const auto gb = boundary_gradient(f);
      for (int j = 0; j <= f.grid->Ntheta(); j += 8)
        CHECK(gb[static_cast<std::size_t>(j)] ==
              doctest::Approx(exact.boundary_gradient(f.grid->theta(j))).epsilon(2e-3));
    }
  }
  CHECK(err[1] <= 1e-3);
  CHECK(std::log2(err[0] / err[1]) >= 1.8);
}

TEST_CASE("k = 2 sphere recovers the regularized radial solution") {
  const auto spec = ProblemSpec::make(5, 2, 2.0);
  const auto f = solve_exterior(surfaces::RevolutionBody::sphere(5, 1.0, 64), spec, grid_options(128, 64));
  CHECK(f.eps == doctest::Approx(0.02));
  CHECK(f.eps_history.size() == 3);
  const oracles::RegularizedRadial reg(5, 2, 1.0, 0.02);
  CHECK(sup_error(f, [&](double z, double r) { return reg.u(std::hypot(z, r)); }) <= 1e-6);
  CHECK(f.rho_hat == doctest::Approx(reg.rho()).epsilon(1e-6));
  const radial::RadialSolution hom(5, 2, 1.0);
  CHECK(sup_error(f, [&](double z, double r) { return hom.u(std::hypot(z, r)); }) <= 5e-5);
  CHECK(admissibility_margin(f) >= -1e-12);
  CHECK(f.admissible >= -1e-12);
  CHECK(f.max_principle);
}

TEST_CASE("regularized oracle reduces to the homogeneous solution") {
  const oracles::RegularizedRadial zero(5, 2, 2.0, 0.0);
  const radial::RadialSolution hom(5, 2, 2.0);
  CHECK(zero.rho() == doctest::Approx(hom.rho()).epsilon(1e-14));
  for (double r : {2.0, 3.0, 17.0}) {
    CHECK(zero.u(r) == doctest::Approx(hom.u(r)).epsilon(1e-10));
    CHECK(zero.du(r) == doctest::Approx(hom.du(r)).epsilon(1e-14));
  }
  const oracles::RegularizedRadial reg(5, 2, 1.0, 0.1);
  CHECK(reg.u(1.0) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(reg.rho() > 1.0);
}
