#include "khessian/monotone.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace khessian::monotone {

FValue combine(double t, double intHk, double intHk1, const ProblemSpec& spec) {
  const Weights w = weights(t, spec);
  FValue v;
  v.t = t;
  v.C1 = w.C1;
  v.C2 = w.C2;
  v.intHk = intHk;
  v.intHk1 = intHk1;
  v.F = w.C1 * intHk + w.C2 * intHk1;
  return v;
}

FValue F_eval(const levelset::LevelSetCurve& curve, const ProblemSpec& spec) {
  require(curve.n == spec.n && curve.k == spec.k, "level set and spec disagree on (n, k)");
  return combine(curve.t, curve.integral_Hk(spec.a), curve.integral_Hk1(spec.a), spec);
}

FValue F_eval(const solver::ExteriorField& field, double t, const ProblemSpec& spec) {
  return F_eval(levelset::extract_levelset(field, t, spec.tol.grad), spec);
}

FValue boundary_F(const solver::ExteriorField& field, const ProblemSpec& spec) {
  require(field.dim() == spec.n && field.k == spec.k, "field and spec disagree on (n, k)");
  const std::vector<surfaces::SurfaceSample> samples =
      surfaces::curvature_samples(field.grid->body_on_grid());
  const std::vector<double> grad = solver::boundary_gradient(field);
  require(samples.size() == grad.size(), "boundary sample count mismatch");
  CompensatedSum hk, hk1;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const surfaces::SurfaceSample& s = samples[j];
    hk.add(s.area_weight * surfaces::curvature_sigma(s, spec.n, spec.k) * std::pow(grad[j], spec.a));
    hk1.add(s.area_weight * surfaces::curvature_sigma(s, spec.n, spec.k - 1) *
            std::pow(grad[j], spec.a + 1.0));
  }
  return combine(-1.0, hk.value(), hk1.value(), spec);
}

bool MonotoneReport::strict() const {
  return !rows.empty() && rows.front().value.F - limit > 10.0 * tol;
}

namespace {

std::vector<double> audit_levels(const solver::ExteriorField& field, const ProblemSpec& spec) {
  std::vector<double> levels = spec.t_grid.empty() ? levelset::default_t_grid(field) : spec.t_grid;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::remove(levels.begin(), levels.end(), -1.0), levels.end());
  return levels;
}

std::vector<FValue> evaluate(const solver::ExteriorField& field, const std::vector<double>& levels,
                             const ProblemSpec& spec) {
  std::vector<FValue> out;
  out.reserve(levels.size() + 1);
  out.push_back(boundary_F(field, spec));
  for (double t : levels) out.push_back(F_eval(field, t, spec));
  return out;
}

MonotoneReport assemble(std::vector<AuditRow> rows, double limit, double tol, double eps_min) {
  MonotoneReport rep;
  rep.limit = limit;
  rep.eps_min = eps_min;
  double fmax = -std::numeric_limits<double>::infinity();
  double fmin = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (const AuditRow& r : rows) {
    fmax = std::max(fmax, r.value.F);
    fmin = std::min(fmin, r.value.F);
    scale = std::max(scale, std::abs(r.value.F));
    tol = std::max(tol, r.error_estimate);
  }
  rep.tol = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * scale);
  rep.min_limit_gap = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (m > 0) rows[m].violation = std::max(rows[m].value.F - rows[m - 1].value.F, 0.0);
    rows[m].limit_gap = rows[m].value.F - limit;
    rep.max_violation = std::max(rep.max_violation, rows[m].violation);
    rep.min_limit_gap = std::min(rep.min_limit_gap, rows[m].limit_gap);
  }
  rep.spread = fmax - fmin;
  rep.monotone = rep.max_violation <= rep.tol;
  rep.above_limit = rep.min_limit_gap >= -rep.tol;
  rep.constant = rep.spread <= rep.tol;
  rep.rows = std::move(rows);
  return rep;
}

}  // namespace

MonotoneReport monotonicity_audit(const solver::ExteriorField& fine,
                                  const solver::ExteriorField& coarse, const ProblemSpec& spec) {
  spec.validate();
  const std::vector<double> levels = audit_levels(coarse, spec);
  const std::vector<FValue> vf = evaluate(fine, levels, spec);
  const std::vector<FValue> vc = evaluate(coarse, levels, spec);
  std::vector<AuditRow> rows(vf.size());
  for (std::size_t m = 0; m < vf.size(); ++m) {
    rows[m].value = vf[m];
    rows[m].error_estimate = std::abs(vf[m].F - vc[m].F) / 3.0;
  }
  MonotoneReport rep = assemble(std::move(rows), limit_bound(spec, fine.rho_hat), 0.0, fine.eps);
  rep.limit_sensitivity =
      std::abs(limit_bound(spec, fine.rho_hat) - limit_bound(spec, coarse.rho_hat));
  return rep;
}

MonotoneReport monotonicity_audit(const solver::ExteriorField& field, const ProblemSpec& spec,
                                  double tol) {
  spec.validate();
  require(tol >= 0.0, "tolerance must be non-negative");
  const std::vector<FValue> v = evaluate(field, audit_levels(field, spec), spec);
  std::vector<AuditRow> rows(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) rows[m].value = v[m];
  return assemble(std::move(rows), limit_bound(spec, field.rho_hat), tol, field.eps);
}

}  // namespace khessian::monotone
