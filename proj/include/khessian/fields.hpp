#ifndef KHESSIAN_FIELDS_HPP
#define KHESSIAN_FIELDS_HPP

// Pointwise level-set geometry of scalar fields.

#include "khessian/symfunc.hpp"

#include <Eigen/Dense>

#include <vector>

namespace khessian::fields {

/// Second-order jet of a scalar field at a point.
struct Jet2 {
  Eigen::VectorXd x;  // position
  double u = 0.0;
  Eigen::VectorXd g;  // gradient
  symfunc::SymMat H;  // Hessian

  int dim() const { return static_cast<int>(g.size()); }
};

/// Right-hand side f = c eps^2 (|x|^2 + eps^2)^{-n/2-1} of the regularized equation.
struct EpsilonRHS {
  double eps = 0.0;
  double cnk = 1.0;
  int n = 0;
};

struct LevelCurvature {
  double Hk = 0.0;
  double Hk_minus_1 = 0.0;
};

inline constexpr double kDefaultGradTol = 1e-8;

/// Curvatures H_k and H_{k-1} of the level set through the jet point.
/// `sk_value` is S_k(Hessian) at the point: 0 for the homogeneous equation,
/// f^eps for the regularized one. Throws DegenerateGradient when |g| < grad_tol.
LevelCurvature levelset_curvature(const Jet2& j, int k, double sk_value,
                                  double grad_tol = kDefaultGradTol);

double approx_rhs(const Eigen::VectorXd& x, const EpsilonRHS& r);
double approx_rhs_at_radius(double radius, const EpsilonRHS& r);

struct AdmissibilityReport {
  bool all_admissible = true;
  double worst_margin = 0.0;
  std::vector<int> failing;  // indices into the audited list
};

/// Scale-free cone margin min_{i<=k} S_i(lambda) / max|lambda|^i.
double admissibility_margin(const Eigen::VectorXd& eigenvalues, int k);

/// Tests every Hessian against the closure of Gamma_k (margin >= -tol).
AdmissibilityReport admissibility_audit(const std::vector<Jet2>& jets, int k, double tol = 1e-12);

}  // namespace khessian::fields

#endif  // KHESSIAN_FIELDS_HPP
