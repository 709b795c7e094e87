#include "khessian/levelset.hpp"

#include "khessian/error.hpp"
#include "khessian/fields.hpp"
#include "khessian/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace khessian::levelset {

namespace {

// Lagrange weights on the nodes -1, 0, 1, 2 at local coordinate x.
std::array<double, 4> cubic_weights(double x) {
  return {-x * (x - 1.0) * (x - 2.0) / 6.0, (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0,
          -(x + 1.0) * x * (x - 2.0) / 2.0, (x + 1.0) * x * (x - 1.0) / 6.0};
}

std::array<double, 4> cubic_weights_dx(double x) {
  return {-(3.0 * x * x - 6.0 * x + 2.0) / 6.0, (3.0 * x * x - 4.0 * x - 1.0) / 2.0,
          -(3.0 * x * x - 2.0 * x - 2.0) / 2.0, (3.0 * x * x - 1.0) / 6.0};
}

}  // namespace

double LevelSetCurve::area() const {
  CompensatedSum acc;
  for (const LevelSample& p : samples) acc.add(p.weight);
  return acc.value();
}

double LevelSetCurve::integral_Hk(double a) const {
  CompensatedSum acc;
  for (const LevelSample& p : samples) acc.add(p.weight * p.Hk * std::pow(p.grad, a));
  return acc.value();
}

double LevelSetCurve::integral_Hk1(double a) const {
  CompensatedSum acc;
  for (const LevelSample& p : samples) acc.add(p.weight * p.Hk1 * std::pow(p.grad, a + 1.0));
  return acc.value();
}

LevelRange level_range(const solver::ExteriorField& field) {
  const solver::AxiGrid& g = *field.grid;
  LevelRange r{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (int j = 0; j <= g.Ntheta(); ++j) {
    r.lo = std::max(r.lo, field.value(2, j));
    r.hi = std::min(r.hi, field.value(g.Ns() - 2, j));
  }
  return r;
}

LevelSetCurve extract_levelset(const solver::ExteriorField& field, double t, double grad_tol) {
  const solver::AxiGrid& g = *field.grid;
  const LevelRange range = level_range(field);
  if (!(t > range.lo && t < range.hi))
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(t) + " outside (" + std::to_string(range.lo) + ", " +
                    std::to_string(range.hi) + ")");

  const int n = g.dim();
  const int Ns = g.Ns();
  const double hs = 1.0 / Ns;
  const double lnR = std::log(g.R_out());
  const std::vector<double> wt = polar_weights(g.Ntheta(), n - 2);
  const double orbit = unit_sphere_area(n - 2);
  const fields::EpsilonRHS rhs{field.eps, field.cnk, n};

  LevelSetCurve curve;
  curve.t = t;
  curve.n = n;
  curve.k = field.k;
  curve.samples.reserve(static_cast<std::size_t>(g.Ntheta()) + 1);

  for (int j = 0; j <= g.Ntheta(); ++j) {
    int cell = -1;
    int crossings = 0;
    for (int i = 0; i < Ns; ++i) {
      const bool below = field.value(i, j) <= t;
      const bool above = field.value(i + 1, j) > t;
      if (below && above) {
        cell = i;
        ++crossings;
      } else if (!below && !above) {
        ++crossings;
      }
    }
    if (crossings != 1)
      throw Error(ErrorCode::CriticalPointOnLevel,
                  "level " + std::to_string(t) + " crosses ray " + std::to_string(j) + " " +
                      std::to_string(crossings) + " times");

    const int base = std::clamp(cell - 1, 0, Ns - 3);
    const double x0 = static_cast<double>(cell - base) - 1.0;  // cell start in local coords
    std::array<double, 4> v{};
    for (int m = 0; m < 4; ++m) v[static_cast<std::size_t>(m)] = field.value(base + m, j);
    const auto poly = [&](double x) {
      const auto w = cubic_weights(x);
      return w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3];
    };
    const auto dpoly = [&](double x) {
      const auto w = cubic_weights_dx(x);
      return w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3];
    };
    // Safeguarded Newton on [x0, x0 + 1].
    double lo = x0, hi = x0 + 1.0;
    double x = x0 + (t - v[static_cast<std::size_t>(cell - base)]) /
                        (v[static_cast<std::size_t>(cell - base + 1)] -
                         v[static_cast<std::size_t>(cell - base)]);
    for (int it = 0; it < 60; ++it) {
      const double f = poly(x) - t;
      if (f > 0.0)
        hi = x;
      else
        lo = x;
      const double d = dpoly(x);
      double xn = (d > 0.0) ? x - f / d : 0.5 * (lo + hi);
      if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
      if (std::abs(xn - x) <= 1e-15) {
        x = xn;
        break;
      }
      x = xn;
    }

    const auto w = cubic_weights(x);
    solver::AxiJet jet;
    for (int m = 0; m < 4; ++m) {
      const solver::AxiJet a = solver::axi_jet(field, base + m, j);
      const double c = w[static_cast<std::size_t>(m)];
      jet.uz += c * a.uz;
      jet.urho += c * a.urho;
      jet.uzz += c * a.uzz;
      jet.uzrho += c * a.uzrho;
      jet.urhorho += c * a.urhorho;
      jet.mu += c * a.mu;
    }

    LevelSample p;
    p.theta = g.theta(j);
    p.s = (base + x + 1.0) * hs;
    const bool axis = (j == 0 || j == g.Ntheta());
    const double c = std::cos(p.theta);
    const double sn = axis ? 0.0 : std::sin(p.theta);
    p.r = std::exp((1.0 - p.s) * std::log(g.gamma(j)) + p.s * lnR);
    p.z = p.r * c;
    p.rho = p.r * sn;
    jet.z = p.z;
    jet.rho = p.rho;
    jet.u = t;
    if (axis) jet.urho = 0.0;
    p.jet = jet;
    p.grad = std::hypot(jet.uz, jet.urho);
    if (!(p.grad >= grad_tol))
      throw Error(ErrorCode::CriticalPointOnLevel,
                  "|grad u| = " + std::to_string(p.grad) + " on level " + std::to_string(t));

    const double ur = jet.uz * c + jet.urho * sn;
    const double ut = p.r * (-jet.uz * sn + jet.urho * c);
    const double r_theta = -ut / ur;
    p.weight = wt[static_cast<std::size_t>(j)] * orbit * std::pow(p.r, n - 2) *
               std::hypot(p.r, r_theta);

    const fields::Jet2 j2 = solver::to_jet2(jet, n);
    const double sk = field.eps > 0.0 ? fields::approx_rhs(j2.x, rhs) : 0.0;
    const fields::LevelCurvature lc = fields::levelset_curvature(j2, field.k, sk, grad_tol);
    p.Hk = lc.Hk;
    p.Hk1 = lc.Hk_minus_1;
    curve.samples.push_back(p);
  }
  return curve;
}

std::vector<double> default_t_grid(const solver::ExteriorField& field, int count) {
  require(count >= 2, "need at least two levels");
  const solver::AxiGrid& g = *field.grid;
  const LevelRange range = level_range(field);
  double u_outer = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= g.Ntheta(); ++j) u_outer = std::max(u_outer, field.value(g.Ns(), j));
  const double lo = std::max(-0.9, range.lo + 0.02);
  const double hi = std::min({-0.1, 2.0 * u_outer, range.hi});
  if (!(lo < hi))
    throw Error(ErrorCode::LevelOutOfRange, "grid too coarse for a default level grid");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) out[static_cast<std::size_t>(m)] = lo + (hi - lo) * m / (count - 1);
  return out;
}

}  // namespace khessian::levelset
