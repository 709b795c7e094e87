#include "khessian/radial.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <cmath>

namespace khessian::radial {

RadialSolution::RadialSolution(int n, int k, double R) : n_(n), k_(k), R_(R) {
  require(k >= 1 && 2 * k < n, "radial solutions need 1 <= k < n/2");
  require(R > 0.0 && std::isfinite(R), "ball radius must be positive");
}

double RadialSolution::rho() const { return std::pow(R_, decay()); }

double RadialSolution::u(double r) const { return -std::pow(R_ / r, decay()); }

double RadialSolution::du(double r) const { return decay() / r * std::pow(R_ / r, decay()); }

double RadialSolution::d2u(double r) const { return -(decay() + 1.0) * du(r) / r; }

double RadialSolution::level_radius(double t) const {
  require(t >= -1.0 && t < 0.0, "level must lie in [-1, 0)");
  return R_ * std::pow(-t, -1.0 / decay());
}

fields::Jet2 radial_eval(const RadialSolution& sol, double r) {
  if (!(r >= sol.R() * (1.0 - 1e-15)))
    throw Error(ErrorCode::OutOfDomain, "radius " + std::to_string(r) + " inside the ball");
  const int n = sol.n();
  fields::Jet2 j;
  j.x = Eigen::VectorXd::Zero(n);
  j.x(0) = r;
  j.u = sol.u(r);
  j.g = Eigen::VectorXd::Zero(n);
  j.g(0) = sol.du(r);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * (sol.du(r) / r);
  h(0, 0) = sol.d2u(r);
  j.H = symfunc::SymMat(h);
  return j;
}

LevelIntegrals level_integrals(const RadialSolution& sol, double t, double a) {
  const int n = sol.n();
  const int k = sol.k();
  const double r = sol.level_radius(t);
  const double grad = sol.du(r);
  LevelIntegrals out;
  out.radius = r;
  out.area = unit_sphere_area(n - 1) * std::pow(r, n - 1);
  out.intHk = out.area * symfunc::binomial(n - 1, k) * std::pow(r, -k) * std::pow(grad, a);
  out.intHk1 =
      out.area * symfunc::binomial(n - 1, k - 1) * std::pow(r, 1 - k) * std::pow(grad, a + 1.0);
  return out;
}

double radial_F(const RadialSolution& sol, double t, const ProblemSpec& spec) {
  require(spec.n == sol.n() && spec.k == sol.k(), "spec and radial solution disagree on (n, k)");
  const LevelIntegrals li = level_integrals(sol, t, spec.a);
  const Weights w = weights(t, spec);
  return w.C1 * li.intHk + w.C2 * li.intHk1;
}

LevelIntegrals asymptotic_predict(double rho, double t, const ProblemSpec& spec) {
  require(rho > 0.0, "asymptotic constant must be positive");
  require(t >= -1.0 && t < 0.0, "level must lie in [-1, 0)");
  const int n = spec.n;
  const int k = spec.k;
  const double m = n - 2.0 * k;
  const double a = spec.a;
  const double s = -t;
  const double sphere = unit_sphere_area(n - 1);
  const double p = spec.decay();
  LevelIntegrals out;
  out.radius = std::pow(s, k / (2.0 * k - n)) * std::pow(rho, k / m);
  out.area = sphere * std::pow(s / rho, k * (n - 1.0) / (2.0 * k - n));
  // On the level sphere |grad u| = p (-t) / |x|, H_j = C(n-1, j) |x|^{-j}.
  const double grad = p * s / out.radius;
  out.intHk = out.area * symfunc::binomial(n - 1, k) * std::pow(out.radius, -k) * std::pow(grad, a);
  out.intHk1 = out.area * symfunc::binomial(n - 1, k - 1) * std::pow(out.radius, 1.0 - k) *
               std::pow(grad, a + 1.0);
  return out;
}

double exterior_energy_tail(int n, int k, double rho, double r0) {
  require(k >= 1 && 2 * k < n, "need 1 <= k < n/2");
  const double p = static_cast<double>(n) / k - 2.0;
  // S_{k-1} of (-(p+1) mu, mu, ..., mu) with mu = p rho r^{-p-2}.
  const double shape = symfunc::binomial(n - 1, k - 1) - (p + 1.0) * symfunc::binomial(n - 1, k - 2);
  // Integrand |S^{n-1}| shape (p rho)^{k+1} r^{-p-1}.
  return unit_sphere_area(n - 1) * shape * std::pow(p * rho, k + 1.0) * std::pow(r0, -p) / p;
}

double exterior_energy(const RadialSolution& sol, double r_cut_factor, double tol) {
  const int n = sol.n();
  const int k = sol.k();
  const double sphere = unit_sphere_area(n - 1);
  const double r_cut = r_cut_factor * sol.R();
  const auto integrand = [&](double lr) {
    const double r = std::exp(lr);
    const fields::Jet2 j = radial_eval(sol, r);
    const double s = symfunc::sigma_matrix(j.H, k - 1);
    return sphere * std::pow(r, n) * s * j.g.squaredNorm();
  };
  const double scale = exterior_energy_tail(n, k, sol.rho(), sol.R());
  const double body = adaptive_simpson(integrand, std::log(sol.R()), std::log(r_cut),
                                       tol * std::max(std::abs(scale), 1e-300));
  return body + exterior_energy_tail(n, k, sol.rho(), r_cut);
}

}  // namespace khessian::radial
