#include "khessian/identities.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace khessian::identities {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::IdentityOk: return "identity-ok";
    case Verdict::InequalityOk: return "inequality-ok";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

std::string_view to_string(Certification c) {
  switch (c) {
    case Certification::CertifiedBall: return "certified-ball";
    case Certification::CertifiedNotOverdetermined: return "certified-not-overdetermined";
    case Certification::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

double BoundaryData::mean_grad() const {
  CompensatedSum w, wg;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    w.add(samples[j].area_weight);
    wg.add(samples[j].area_weight * grad[j]);
  }
  return wg.value() / w.value();
}

double BoundaryData::spread() const {
  const auto [lo, hi] = std::minmax_element(grad.begin(), grad.end());
  return (*hi - *lo) / mean_grad();
}

double BoundaryData::integral(int j, double p) const {
  CompensatedSum acc;
  for (std::size_t m = 0; m < samples.size(); ++m)
    acc.add(samples[m].area_weight * surfaces::curvature_sigma(samples[m], n, j) *
            std::pow(grad[m], p));
  return acc.value();
}

void widen_tolerance(std::vector<LedgerEntry>& entries, const std::vector<LedgerEntry>& reference,
                     double factor, double safety) {
  for (LedgerEntry& e : entries) {
    const auto ref = std::find_if(reference.begin(), reference.end(),
                                  [&](const LedgerEntry& r) { return r.name == e.name; });
    if (ref == reference.end()) continue;
    e.tolerance = std::max(e.tolerance, safety * factor * std::abs(e.gap - ref->gap));
    if (e.verdict == Verdict::NotApplicable) continue;
    if (e.identity)
      e.verdict = std::abs(e.gap) <= e.tolerance ? Verdict::IdentityOk : Verdict::Violated;
    else
      e.verdict = e.gap >= -e.tolerance ? Verdict::InequalityOk : Verdict::Violated;
  }
}

BoundaryData boundary_data(const solver::ExteriorField& field) {
  BoundaryData d{field.dim(), field.k, field.grid->body_on_grid(), {}, {}};
  d.samples = surfaces::curvature_samples(d.body);
  d.grad = solver::boundary_gradient(field);
  require(d.samples.size() == d.grad.size(), "boundary sample count mismatch");
  return d;
}

BoundaryData boundary_data(const radial::RadialSolution& sol, int intervals) {
  BoundaryData d{sol.n(), sol.k(), surfaces::RevolutionBody::sphere(sol.n(), sol.R(), intervals),
                 {}, {}};
  d.samples = surfaces::curvature_samples(d.body);
  d.grad.assign(d.samples.size(), sol.c_bdry());
  return d;
}

double exterior_energy(const solver::ExteriorField& field) {
  const solver::AxiGrid& g = *field.grid;
  const int n = g.dim();
  const std::vector<double> ws = simpson_weights(g.Ns(), 1.0 / g.Ns());
  const std::vector<double> wt = polar_weights(g.Ntheta(), n - 2);
  CompensatedSum acc;
  for (int i = 0; i <= g.Ns(); ++i) {
    for (int j = 0; j <= g.Ntheta(); ++j) {
      const solver::AxiJet a = solver::axi_jet(field, i, j);
      const double q = solver::axi_sigma(a, n, field.k - 1) * (a.uz * a.uz + a.urho * a.urho);
      acc.add(ws[static_cast<std::size_t>(i)] * wt[static_cast<std::size_t>(j)] *
              std::pow(g.radius(i, j), n - 2) * g.jacobian(i, j) * q);
    }
  }
  return unit_sphere_area(n - 2) * acc.value() +
         radial::exterior_energy_tail(n, field.k, field.rho_hat, g.R_out());
}

namespace {

constexpr double kOverdeterminedSpread = 0.01;

LedgerEntry identity_entry(std::string name, double lhs, double rhs, double scale, double tol) {
  LedgerEntry e;
  e.name = std::move(name);
  e.lhs = lhs;
  e.rhs = rhs;
  e.gap = lhs - rhs;
  e.tolerance = tol * scale;
  e.identity = true;
  e.verdict = std::abs(e.gap) <= e.tolerance ? Verdict::IdentityOk : Verdict::Violated;
  return e;
}

void require_overdetermined(const BoundaryData& d) {
  require(d.k >= 2, "the identity needs k >= 2");
  const double s = d.spread();
  if (s > kOverdeterminedSpread)
    throw Error(ErrorCode::NotOverdetermined,
                "boundary |grad u| spread " + std::to_string(s) + " exceeds 1%");
}

LedgerEntry energy_identity(const BoundaryData& d, double energy, double tol) {
  require_overdetermined(d);
  const int k = d.k;
  const double c = d.mean_grad();
  const double t1 = (k + 1) * energy;
  const double t2 = d.integral(k - 2, k + 1.0);
  const double t3 = 2.0 * std::pow(c, k) * d.integral(k - 1, 0.0);
  return identity_entry("energy-identity", t1 + t2, t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)}),
                        tol);
}

LedgerEntry pohozaev_identity(const BoundaryData& d, double energy, double tol) {
  require_overdetermined(d);
  const int n = d.n, k = d.k;
  const double c = d.mean_grad();
  const double t1 = (n - k + 1) * energy;
  const double t2 = (n - k + 1) * std::pow(c, k + 1) / (k - 1) * d.integral(k - 2, 0.0);
  const double t3 = 2.0 * (n - k) * std::pow(c, k) / k * d.integral(k - 1, 0.0);
  return identity_entry("pohozaev-identity", t1 + t2, t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)}),
                        tol);
}

}  // namespace

LedgerEntry identity_lemma33(const solver::ExteriorField& field, double tol) {
  const BoundaryData d = boundary_data(field);
  require_overdetermined(d);
  return energy_identity(d, exterior_energy(field), tol);
}

LedgerEntry identity_lemma33(const radial::RadialSolution& sol, double tol) {
  require(sol.k() >= 2, "the identity needs k >= 2");
  return energy_identity(boundary_data(sol), radial::exterior_energy(sol), tol);
}

LedgerEntry pohozaev_lemma34(const solver::ExteriorField& field, double tol) {
  const BoundaryData d = boundary_data(field);
  require_overdetermined(d);
  return pohozaev_identity(d, exterior_energy(field), tol);
}

LedgerEntry pohozaev_lemma34(const radial::RadialSolution& sol, double tol) {
  require(sol.k() >= 2, "the identity needs k >= 2");
  return pohozaev_identity(boundary_data(sol), radial::exterior_energy(sol), tol);
}

double c_formula(const surfaces::RevolutionBody& body, int k) {
  const int n = body.dim();
  require(k >= 1 && 2 * k < n, "need 1 <= k < n/2");
  if (k == 1) return (n - 2.0) / n * surfaces::area(body) / surfaces::volume(body);
  return (n - 2.0 * k) / k * (k - 1.0) / (n - k + 1.0) * surfaces::quermass(body, k - 1) /
         surfaces::quermass(body, k - 2);
}

namespace {

LedgerEntry inequality_entry(std::string name, double lhs, double rhs, double tol, bool applicable) {
  LedgerEntry e;
  e.name = std::move(name);
  e.lhs = lhs;
  e.rhs = rhs;
  e.gap = lhs - rhs;
  e.tolerance = tol * std::max(std::abs(lhs), std::abs(rhs));
  if (!applicable)
    e.verdict = Verdict::NotApplicable;
  else
    e.verdict = e.gap >= -e.tolerance ? Verdict::InequalityOk : Verdict::Violated;
  return e;
}

}  // namespace

std::vector<LedgerEntry> inequality_ledger(const BoundaryData& d, const ProblemSpec& spec,
                                           double tol) {
  require(d.n == spec.n && d.k == spec.k, "boundary data and spec disagree on (n, k)");
  const int n = d.n, k = d.k;
  const double ratio = (n - k) / static_cast<double>(n - 2 * k);
  const bool od = d.spread() <= spec.tol.overdetermined;
  const bool convex = surfaces::is_convex(d.body);

  std::vector<LedgerEntry> out;
  out.push_back(inequality_entry("weighted-curvature", d.integral(k, spec.a),
                                 ratio * d.integral(k - 1, spec.a + 1.0), tol, true));
  out.push_back(inequality_entry(
      "gradient-quermass", d.integral(k - 1, n - k),
      symfunc::binomial(n - 1, k - 1) * std::pow(spec.decay(), n - k) * unit_sphere_area(n - 1),
      tol, true));
  const double a_r = n - k - 1.0;
  out.push_back(inequality_entry("weighted-curvature a=n-k-1", d.integral(k, a_r),
                                 ratio * d.integral(k - 1, a_r + 1.0), tol, true));

  const double qk = d.integral(k, 0.0), qk1 = d.integral(k - 1, 0.0);
  out.push_back(inequality_entry("quermass-ratio", qk / qk1, ratio * d.mean_grad(), tol, od));
  if (k == 1) {
    const double vol = surfaces::volume(d.body);
    const double area = d.integral(0, 0.0);
    out.push_back(inequality_entry("volume-quermass", vol * qk, (n - 1.0) / n * area * area, tol, od));
    out.push_back(inequality_entry("qiu-xia", (n - 1.0) / n * area * area, vol * qk, tol, convex));
  } else {
    const double qk2 = d.integral(k - 2, 0.0);
    out.push_back(inequality_entry("alexandrov-fenchel", (n - k) * (k - 1.0) * qk1 * qk1,
                                   (n - k + 1.0) * k * qk * qk2, tol, convex));
  }
  return out;
}

CertifyReport certify_ball(const BoundaryData& d, const ProblemSpec& spec) {
  require(d.n == spec.n && d.k == spec.k, "boundary data and spec disagree on (n, k)");
  const int n = d.n, k = d.k;
  CertifyReport rep;
  rep.spread = d.spread();
  rep.c_measured = d.mean_grad();
  rep.c_predicted = c_formula(d.body, k);
  rep.radius_deviation = d.body.radius_deviation();
  rep.convex = surfaces::is_convex(d.body);

  const double qk = d.integral(k, 0.0), qk1 = d.integral(k - 1, 0.0);
  if (k == 1) {
    const double area = d.integral(0, 0.0);
    rep.squeeze_lhs = surfaces::volume(d.body) * qk;
    rep.squeeze_rhs = (n - 1.0) / n * area * area;
  } else {
    rep.squeeze_lhs = (n - k + 1.0) * k * qk * d.integral(k - 2, 0.0);
    rep.squeeze_rhs = (n - k) * (k - 1.0) * qk1 * qk1;
  }
  rep.squeeze_rel = std::abs(rep.squeeze_lhs - rep.squeeze_rhs) /
                    std::max(std::abs(rep.squeeze_lhs), std::abs(rep.squeeze_rhs));

  if (rep.spread > spec.tol.overdetermined) {
    rep.verdict = Certification::CertifiedNotOverdetermined;
    rep.reason = "boundary |grad u| spread " + std::to_string(rep.spread) + " exceeds " +
                 std::to_string(spec.tol.overdetermined);
    return rep;
  }
  const double ratio = (n - k) / static_cast<double>(n - 2 * k);
  if (std::abs(rep.c_measured - rep.c_predicted) > spec.tol.overdetermined * rep.c_measured) {
    rep.verdict = Certification::Inconclusive;
    rep.reason = "measured c disagrees with the quermassintegral formula";
    return rep;
  }
  if (ratio * rep.c_measured > (1.0 + spec.tol.overdetermined) * qk / qk1) {
    rep.verdict = Certification::Inconclusive;
    rep.reason = "boundary data violate the overdetermined bound";
    return rep;
  }
  if (!rep.convex) {
    rep.verdict = Certification::Inconclusive;
    rep.reason = "body not convex; the geometric inequality does not apply";
    return rep;
  }
  if (rep.squeeze_rel <= spec.tol.squeeze) {
    rep.verdict = Certification::CertifiedBall;
    rep.reason = "squeeze closed";
  } else {
    rep.verdict = Certification::Inconclusive;
    rep.reason = "squeeze open by " + std::to_string(rep.squeeze_rel);
  }
  return rep;
}

CertifyReport certify_ball(const solver::ExteriorField& field, const ProblemSpec& spec) {
  return certify_ball(boundary_data(field), spec);
}

}  // namespace khessian::identities
