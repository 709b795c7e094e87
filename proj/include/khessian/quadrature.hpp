#ifndef KHESSIAN_QUADRATURE_HPP
#define KHESSIAN_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace khessian {

/// |S^m|, the (m)-dimensional area of the unit sphere in R^{m+1}.
inline double unit_sphere_area(int m) {
  const double d = m + 1.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

/// Neumaier-compensated running sum; order of additions is the caller's.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Composite Simpson weights on `intervals + 1` equispaced nodes; `intervals` must be even.
std::vector<double> simpson_weights(int intervals, double h);

/// Weights W_j on theta_j = j pi / N with sum_j W_j q(theta_j) ~ int_0^pi sin^m(theta) q(theta),
/// spectrally accurate for smooth q that are even and 2 pi-periodic. Trapezoid weights when m
/// is even, Clenshaw-Curtis weights (in x = cos theta) when m is odd.
std::vector<double> polar_weights(int intervals, int m);

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

}  // namespace khessian

#endif  // KHESSIAN_QUADRATURE_HPP
