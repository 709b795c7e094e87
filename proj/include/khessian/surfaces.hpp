#ifndef KHESSIAN_SURFACES_HPP
#define KHESSIAN_SURFACES_HPP

// Closed axisymmetric star-shaped hypersurfaces in R^n, generated by rotating
// a polar profile r = gamma(theta), theta in [0, pi], about the z axis.

#include <functional>
#include <vector>

namespace khessian::surfaces {

/// gamma and its first two derivatives at one polar angle.
struct ProfilePoint {
  double gamma = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Axisymmetric body described by profile samples on a uniform polar grid
/// theta_j = j pi / N, j = 0..N. Derivatives come from the cosine-series
/// interpolant of the even 2 pi-periodic extension, so gamma'(0) = gamma'(pi) = 0.
class RevolutionBody {
 public:
  /// `gamma` holds N + 1 samples (N even, N >= 4).
  RevolutionBody(int n, std::vector<double> gamma);

  static RevolutionBody from_function(int n, const std::function<double(double)>& profile,
                                      int intervals);
  static RevolutionBody sphere(int n, double radius, int intervals = 256);
  /// Semi-axis `polar` along z, `equatorial` in the rotated directions.
  static RevolutionBody spheroid(int n, double polar, double equatorial, int intervals = 256);
  /// gamma = radius (1 + amplitude cos(mode theta)).
  static RevolutionBody cos_perturbed(int n, double amplitude, int mode = 2, double radius = 1.0,
                                      int intervals = 256);

  int dim() const { return n_; }
  int intervals() const { return static_cast<int>(gamma_.size()) - 1; }
  double step() const;
  double theta(int j) const;
  const std::vector<double>& samples() const { return gamma_; }

  ProfilePoint eval(double theta) const;
  /// Same as eval(theta(j)) without the trigonometric sums.
  ProfilePoint nodal(int j) const;

  double max_radius() const;
  double min_radius() const;
  /// max |gamma - mean| / mean over the samples.
  double radius_deviation() const;

  /// Same body, resampled on a grid with `intervals` subintervals.
  RevolutionBody resampled(int intervals) const;

 private:
  int n_;
  std::vector<double> gamma_;
  std::vector<double> coeff_;  // cosine coefficients, gamma(theta) = sum coeff_m cos(m theta)
  std::vector<double> d1_;
  std::vector<double> d2_;
};

struct SurfaceSample {
  double theta = 0.0;
  double z = 0.0;
  double rho = 0.0;        // distance to the rotation axis
  double nu_z = 0.0;       // outward unit normal, meridian components
  double nu_rho = 0.0;
  double kappa_m = 0.0;    // meridian curvature
  double kappa_r = 0.0;    // rotational curvature, multiplicity n - 2
  double support = 0.0;    // <x, nu>
  double area_weight = 0.0;  // quadrature weight of the area element |S^{n-2}| rho^{n-2} |dx/dtheta|
};

/// H_j = S_j(kappa_m, kappa_r, ..., kappa_r).
double curvature_sigma(const SurfaceSample& s, int n, int j);

std::vector<SurfaceSample> curvature_samples(const RevolutionBody& body);

/// Integral of H_k over the surface (H_0 = 1 gives the area).
double quermass(const RevolutionBody& body, int k);

/// int <x,nu> H_k - ((n-k)/k) int H_{k-1}.
double minkowski_residual(const RevolutionBody& body, int k);

double volume(const RevolutionBody& body);
double area(const RevolutionBody& body);

/// (n-k)(k-1)(int H_{k-1})^2 - (n-k+1) k int H_k int H_{k-2}; needs k >= 2 and convexity.
double af_gap(const RevolutionBody& body, int k);

/// (n-1)/n |boundary|^2 - |volume| int H_1; needs convexity.
double qiu_xia_gap(const RevolutionBody& body);

/// Strict convexity test with margin: every kappa_m, kappa_r > margin.
bool is_convex(const RevolutionBody& body, double margin = 1e-12);

}  // namespace khessian::surfaces

#endif  // KHESSIAN_SURFACES_HPP
