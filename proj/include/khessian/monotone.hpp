#ifndef KHESSIAN_MONOTONE_HPP
#define KHESSIAN_MONOTONE_HPP

// The functional F(t) = C1(t) int H_k |grad u|^a + C2(t) int H_{k-1} |grad u|^{a+1}
// over the level sets of a solved field, and its monotonicity audit.

#include "khessian/levelset.hpp"
#include "khessian/problem.hpp"
#include "khessian/solver.hpp"

#include <vector>

namespace khessian::monotone {

struct FValue {
  double t = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double intHk = 0.0;   // int H_k |grad u|^a
  double intHk1 = 0.0;  // int H_{k-1} |grad u|^{a+1}
  double F = 0.0;
};

FValue combine(double t, double intHk, double intHk1, const ProblemSpec& spec);

/// F on the level set {u = t}.
FValue F_eval(const solver::ExteriorField& field, double t, const ProblemSpec& spec);
FValue F_eval(const levelset::LevelSetCurve& curve, const ProblemSpec& spec);

/// F(-1) from the body geometry and the one-sided boundary gradient.
FValue boundary_F(const solver::ExteriorField& field, const ProblemSpec& spec);

struct AuditRow {
  FValue value;
  double violation = 0.0;  // max(F(t) - F(previous level), 0)
  double limit_gap = 0.0;  // F(t) - limit
  double error_estimate = 0.0;  // Richardson estimate, zero when no coarse field
};

struct MonotoneReport {
  std::vector<AuditRow> rows;  // first row is t = -1
  double limit = 0.0;          // limit_bound(spec, rho_hat)
  double limit_sensitivity = 0.0;  // |d limit / d rho| * |rho_hat - rho_hat coarse|
  double tol = 0.0;
  double max_violation = 0.0;
  double min_limit_gap = 0.0;
  double spread = 0.0;         // max F - min F
  double eps_min = 0.0;
  bool monotone = false;       // max_violation <= tol
  bool above_limit = false;    // min_limit_gap >= -tol
  bool constant = false;       // spread <= tol
  /// F(-1) - limit > 10 tol
  bool strict() const;
  bool passed() const { return monotone && above_limit; }
};

/// Levels come from spec.t_grid, or from levelset::default_t_grid on the
/// coarse field when the spec grid is empty. The tolerance is the largest
/// Richardson estimate |F_fine - F_coarse| / 3 over all levels, floored at
/// round-off of max |F|.
MonotoneReport monotonicity_audit(const solver::ExteriorField& fine,
                                  const solver::ExteriorField& coarse, const ProblemSpec& spec);

/// Single-field audit with a caller-supplied tolerance.
MonotoneReport monotonicity_audit(const solver::ExteriorField& field, const ProblemSpec& spec,
                                  double tol);

}  // namespace khessian::monotone

#endif  // KHESSIAN_MONOTONE_HPP
