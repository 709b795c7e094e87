#ifndef KHESSIAN_LEVELSET_HPP
#define KHESSIAN_LEVELSET_HPP

// Level sets {u = t} of an axisymmetric exterior field, located on each polar
// ray of the solver grid and carrying interpolated jets for surface quadrature.

#include "khessian/solver.hpp"

#include <vector>

namespace khessian::levelset {

struct LevelSample {
  double theta = 0.0;
  double s = 0.0;        // grid coordinate of the crossing
  double r = 0.0;
  double z = 0.0;
  double rho = 0.0;
  double grad = 0.0;     // |grad u|
  double Hk = 0.0;
  double Hk1 = 0.0;      // H_{k-1}
  double weight = 0.0;   // area quadrature weight, rotation factor included
  solver::AxiJet jet;
};

/// One sample per polar node, ordered from theta = 0 to theta = pi. The
/// samples are the vertices of the meridian polyline.
struct LevelSetCurve {
  double t = 0.0;
  int n = 0;
  int k = 0;
  std::vector<LevelSample> samples;

  double area() const;
  /// sum of weight * H_k * |grad u|^a
  double integral_Hk(double a) const;
  /// sum of weight * H_{k-1} * |grad u|^{a+1}
  double integral_Hk1(double a) const;
};

struct LevelRange {
  double lo = 0.0;  // levels must exceed this
  double hi = 0.0;  // and stay below this
};

/// Open interval of extractable levels: above u on the third ray node, below u
/// two nodes short of the outer boundary.
LevelRange level_range(const solver::ExteriorField& field);

/// Throws LevelOutOfRange outside level_range and CriticalPointOnLevel when a
/// ray crosses the level more than once or |grad u| < grad_tol at a sample.
LevelSetCurve extract_levelset(const solver::ExteriorField& field, double t,
                               double grad_tol = 1e-8);

/// `count` equispaced levels in [max(-0.9, lo + 0.02), min(-0.1, 2 u_outer)], where
/// lo comes from level_range() and u_outer is the outer boundary value nearest zero.
std::vector<double> default_t_grid(const solver::ExteriorField& field, int count = 17);

}  // namespace khessian::levelset

#endif  // KHESSIAN_LEVELSET_HPP
