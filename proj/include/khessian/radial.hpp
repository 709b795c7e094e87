#ifndef KHESSIAN_RADIAL_HPP
#define KHESSIAN_RADIAL_HPP

// Closed-form exterior solutions u = -(R/r)^{n/k-2} on the complement of a
// ball, and the quantities they induce.

#include "khessian/fields.hpp"
#include "khessian/problem.hpp"

namespace khessian::radial {

class RadialSolution {
 public:
  RadialSolution(int n, int k, double R);

  int n() const { return n_; }
  int k() const { return k_; }
  double R() const { return R_; }
  /// n/k - 2
  double decay() const { return static_cast<double>(n_) / k_ - 2.0; }
  /// Asymptotic constant rho = R^{n/k-2}.
  double rho() const;
  /// |grad u| on the boundary sphere, (n/k-2)/R.
  double c_bdry() const { return decay() / R_; }

  double u(double r) const;
  /// u'(r) = |grad u|
  double du(double r) const;
  double d2u(double r) const;
  /// Radius of the level sphere {u = t}.
  double level_radius(double t) const;

 private:
  int n_;
  int k_;
  double R_;
};

/// Jet at the point r e_1. Throws OutOfDomain for r < R.
fields::Jet2 radial_eval(const RadialSolution& sol, double r);

struct LevelIntegrals {
  double radius = 0.0;
  double area = 0.0;
  double intHk = 0.0;   // int H_k |grad u|^a
  double intHk1 = 0.0;  // int H_{k-1} |grad u|^{a+1}
};

/// Integrals over the level sphere {u = t}, evaluated from the jet.
LevelIntegrals level_integrals(const RadialSolution& sol, double t, double a);

/// C1(t) int H_k |grad u|^a + C2(t) int H_{k-1} |grad u|^{a+1} on the ball.
double radial_F(const RadialSolution& sol, double t, const ProblemSpec& spec);

/// Leading-order level-set asymptotics for asymptotic constant rho.
LevelIntegrals asymptotic_predict(double rho, double t, const ProblemSpec& spec);

/// int_{r > R} S_{k-1}(D^2 u) |grad u|^2 dx by adaptive quadrature in log r,
/// with the pure power tail beyond r_cut added in closed form.
double exterior_energy(const RadialSolution& sol, double r_cut_factor = 100.0, double tol = 1e-13);

/// Closed form of the same integral over r > r0 for u ~ -rho r^{2-n/k}.
double exterior_energy_tail(int n, int k, double rho, double r0);

}  // namespace khessian::radial

#endif  // KHESSIAN_RADIAL_HPP
