#include "khessian/oracles.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <cmath>

namespace khessian::oracles {

RegularizedRadial::RegularizedRadial(int n, int k, double R, double eps, double cnk)
    : n_(n), k_(k), R_(R), eps_(eps), cnk_(cnk) {
  require(k >= 1 && 2 * k < n, "need 1 <= k < n/2");
  require(R > 0.0 && eps >= 0.0 && cnk > 0.0, "invalid regularized radial parameters");
  const double p = static_cast<double>(n) / k - 2.0;
  // Homogeneous flux (p R^p)^k bounds A from above; A = 0 gives too little decay.
  double lo = 0.0;
  double hi = std::pow(p * std::pow(R, p), k);
  A_ = hi;
  if (eps == 0.0) return;
  for (int it = 0; it < 80; ++it) {
    A_ = 0.5 * (lo + hi);
    if (integral_du(R_) > 1.0)
      hi = A_;
    else
      lo = A_;
    if (hi - lo <= 1e-15 * hi) break;
  }
  A_ = 0.5 * (lo + hi);
}

double RegularizedRadial::flux(double r) const {
  if (eps_ == 0.0) return A_;
  const double e2 = eps_ * eps_;
  const double K = k_ * cnk_ / (n_ * symfunc::binomial(n_ - 1, k_ - 1));
  const double h = 0.5 * n_;
  return A_ + K * (std::pow(r * r / (r * r + e2), h) - std::pow(R_ * R_ / (R_ * R_ + e2), h));
}

double RegularizedRadial::du(double r) const {
  return std::pow(flux(r) / std::pow(r, n_ - k_), 1.0 / k_);
}

double RegularizedRadial::integral_du(double r) const {
  const double p = static_cast<double>(n_) / k_ - 2.0;
  const double r_big = 1e6 * std::max(r, R_);
  const double body = adaptive_simpson(
      [this](double lr) {
        const double x = std::exp(lr);
        return du(x) * x;
      },
      std::log(r), std::log(r_big), 1e-15 * du(r) * r);
  return body + std::pow(flux(r_big), 1.0 / k_) * std::pow(r_big, -p) / p;
}

double RegularizedRadial::u(double r) const {
  require(r >= R_ * (1.0 - 1e-15), "radius inside the ball");
  return -integral_du(r);
}

double RegularizedRadial::rho() const {
  const double p = static_cast<double>(n_) / k_ - 2.0;
  double finf = A_;
  if (eps_ > 0.0) {
    const double e2 = eps_ * eps_;
    const double K = k_ * cnk_ / (n_ * symfunc::binomial(n_ - 1, k_ - 1));
    finf += K * (1.0 - std::pow(R_ * R_ / (R_ * R_ + e2), 0.5 * n_));
  }
  return std::pow(finf, 1.0 / k_) / p;
}

ProlatePotential::ProlatePotential(double a, double b) : a_(a), b_(b) {
  require(a > b && b > 0.0, "prolate spheroid needs a > b > 0");
  f_ = std::sqrt(a * a - b * b);
  q0_ = std::atanh(f_ / a_);
}

double ProlatePotential::xi(double z, double rho) const {
  const double r1 = std::hypot(z - f_, rho);
  const double r2 = std::hypot(z + f_, rho);
  return 0.5 * (r1 + r2) / f_;
}

double ProlatePotential::u(double z, double rho) const {
  return -std::atanh(1.0 / xi(z, rho)) / q0_;
}

double ProlatePotential::rho() const { return f_ / q0_; }

double ProlatePotential::boundary_gradient(double theta) const {
  const double c = std::cos(theta) / a_, s = std::sin(theta) / b_;
  const double g = 1.0 / std::sqrt(c * c + s * s);
  const double z = g * std::cos(theta), rho = g * std::sin(theta);
  const double r1 = std::hypot(z - f_, rho);
  const double r2 = std::hypot(z + f_, rho);
  const double x = 0.5 * (r1 + r2) / f_;
  const double e = 0.5 * (r2 - r1) / f_;
  // |grad xi| = sqrt((xi^2 - 1) / (xi^2 - eta^2)) / f, Q_0' = -1 / (xi^2 - 1).
  return std::sqrt((x * x - 1.0) / (x * x - e * e)) / f_ / ((x * x - 1.0) * q0_);
}

}  // namespace khessian::oracles
