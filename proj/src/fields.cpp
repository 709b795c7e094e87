#include "khessian/fields.hpp"

#include "khessian/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace khessian::fields {

LevelCurvature levelset_curvature(const Jet2& j, int k, double sk_value, double grad_tol) {
  const int n = j.dim();
  require(k >= 1 && k <= n, "levelset_curvature needs 1 <= k <= n");
  require(j.H.size() == n, "jet Hessian and gradient dimensions differ");
  const double gnorm = j.g.norm();
  if (!(gnorm >= grad_tol)) {
    throw Error(ErrorCode::DegenerateGradient,
                "|grad u| = " + std::to_string(gnorm) + " below tolerance");
  }
  const Eigen::MatrixXd sij = symfunc::sigma_grad(j.H, k).matrix();
  const Eigen::VectorXd sg = sij * j.g;
  LevelCurvature out;
  out.Hk_minus_1 = j.g.dot(sg) / std::pow(gnorm, k + 1);
  const double along = sg.dot(j.H.matrix() * j.g) / (gnorm * gnorm);
  out.Hk = (sk_value - along) / std::pow(gnorm, k);
  return out;
}

double approx_rhs_at_radius(double radius, const EpsilonRHS& r) {
  require(r.eps > 0.0 && r.cnk > 0.0, "EpsilonRHS needs eps > 0 and c > 0");
  const double e2 = r.eps * r.eps;
  return r.cnk * e2 * std::pow(radius * radius + e2, -0.5 * r.n - 1.0);
}

double approx_rhs(const Eigen::VectorXd& x, const EpsilonRHS& r) {
  return approx_rhs_at_radius(x.norm(), r);
}

double admissibility_margin(const Eigen::VectorXd& eigenvalues, int k) {
  const double scale = eigenvalues.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const std::vector<double> e = symfunc::sigma_all(
      std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= k; ++i) {
    margin = std::min(margin, e[static_cast<std::size_t>(i)] / std::pow(scale, i));
  }
  return margin;
}

AdmissibilityReport admissibility_audit(const std::vector<Jet2>& jets, int k, double tol) {
  AdmissibilityReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const double m = admissibility_margin(symfunc::eigenvalues(jets[i].H), k);
    rep.worst_margin = std::min(rep.worst_margin, m);
    if (m < -tol) {
      rep.all_admissible = false;
      rep.failing.push_back(static_cast<int>(i));
    }
  }
  if (jets.empty()) rep.worst_margin = 0.0;
  return rep;
}

}  // namespace khessian::fields
