#ifndef KHESSIAN_PROBLEM_HPP
#define KHESSIAN_PROBLEM_HPP

// Global problem parameters and the level-dependent weights C1(t), C2(t) of
// the monotone functional F(t).

#include <string>
#include <vector>

namespace khessian {

struct Tolerances {
  double grad = 1e-8;        // smallest |grad u| accepted by curvature formulas
  double cone = 0.0;         // Gamma_k membership margin
  double overdetermined = 1e-3;  // relative spread of boundary |grad u| accepted as constant
  double squeeze = 1e-6;     // relative agreement of the two sides of the rigidity squeeze
  double newton = 1e-10;     // scaled residual sup-norm at convergence
};

struct ProblemSpec {
  int n = 0;
  int k = 0;
  double a = 0.0;
  double C3 = 1.0;
  double C4 = 0.0;
  double cnk = 1.0;  // constant of the regularizing right-hand side
  std::vector<double> t_grid;
  std::vector<double> eps_schedule;
  Tolerances tol;

  /// n/k - 2, the decay exponent of the exterior solution.
  double decay() const { return static_cast<double>(n) / k - 2.0; }

  /// Every violated constraint, empty when the spec is valid.
  std::vector<std::string> violations() const;
  /// Throws InvalidArgument listing all violations.
  void validate() const;

  /// Validated spec with the default epsilon schedule for (n, k).
  static ProblemSpec make(int n, int k, double a, double C3 = 1.0, double C4 = 0.0);
};

/// k(n-k-1)/(n-k), the smallest admissible exponent a.
double min_exponent(int n, int k);

/// Default continuation schedule: a single small eps for k = 1, (0.5, 0.1, 0.02) otherwise.
std::vector<double> default_eps_schedule(int k);

struct Weights {
  double C1 = 0.0;
  double C2 = 0.0;
};

/// Closed-form solution of the weight ODE system, t in [-1, 0).
Weights weights(double t, const ProblemSpec& spec);
/// Analytic t-derivatives of C1 and C2.
Weights weights_derivative(double t, const ProblemSpec& spec);

struct OdeResidual {
  double first = 0.0;   // C2' + (a - a_min) ((n-k)/((n-2k) t))^2 C1, relative
  double second = 0.0;  // C1' - (a+1-k) C2 + 2 (n-k)/((n-2k) t) (a - a_min) C1, relative
};

OdeResidual weights_ode_residual(double t, const ProblemSpec& spec);
/// Same residuals with C1', C2' taken from central differences of step h.
OdeResidual weights_ode_residual_fd(double t, const ProblemSpec& spec, double h = 1e-6);

/// Lower bound for F(t) approached as t -> 0, for asymptotic constant rho.
double limit_bound(const ProblemSpec& spec, double rho);

}  // namespace khessian

#endif  // KHESSIAN_PROBLEM_HPP
