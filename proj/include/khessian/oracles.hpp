#ifndef KHESSIAN_ORACLES_HPP
#define KHESSIAN_ORACLES_HPP

// Independent reference solutions for solver validation.

namespace khessian::oracles {

/// Radial solution of S_k(D^2 u) = c eps^2 (r^2 + eps^2)^{-n/2-1} outside the
/// ball of radius R, u(R) = -1, u -> 0 at infinity. Radially the equation is
/// (r^{n-k} u'^k)' = k r^{n-1} f / C(n-1, k-1), which integrates in closed form
/// once; u itself comes from quadrature.
class RegularizedRadial {
 public:
  RegularizedRadial(int n, int k, double R, double eps, double cnk = 1.0);

  double u(double r) const;
  double du(double r) const;
  /// Asymptotic constant: u ~ -rho r^{2-n/k}.
  double rho() const;

 private:
  double flux(double r) const;  // r^{n-k} u'^k
  double integral_du(double r) const;  // int_r^infinity u'

  int n_;
  int k_;
  double R_;
  double eps_;
  double cnk_;
  double A_ = 0.0;
};

/// Capacitary potential of the prolate spheroid with polar semi-axis a > b
/// (rotation axis z) in R^3, normalized to u = -1 on the surface.
class ProlatePotential {
 public:
  ProlatePotential(double a, double b);

  double u(double z, double rho) const;
  /// Asymptotic constant f / artanh(f / a), f = sqrt(a^2 - b^2).
  double rho() const;
  /// |grad u| on the surface at polar angle theta (of the surface point).
  double boundary_gradient(double theta) const;

 private:
  double xi(double z, double rho) const;

  double a_;
  double b_;
  double f_;
  double q0_;  // Q_0(xi_0)
};

}  // namespace khessian::oracles

#endif  // KHESSIAN_ORACLES_HPP
