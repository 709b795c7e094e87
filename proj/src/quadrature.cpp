#include "khessian/quadrature.hpp"

#include "khessian/error.hpp"

#include <numbers>

namespace khessian {

std::vector<double> simpson_weights(int intervals, double h) {
  require(intervals >= 2 && intervals % 2 == 0, "Simpson needs an even number of intervals");
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  return w;
}

std::vector<double> polar_weights(int intervals, int m) {
  require(intervals >= 2 && intervals % 2 == 0, "polar weights need an even number of intervals");
  require(m >= 0, "sine power must be nonnegative");
  const int N = intervals;
  const double pi = std::numbers::pi;
  std::vector<double> w(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    const double th = pi * j / N;
    const double s = (j == 0 || j == N) ? 0.0 : std::sin(th);
    double base;
    if (m % 2 == 0) {
      base = ((j == 0 || j == N) ? 0.5 : 1.0) * pi / N;
      w[static_cast<std::size_t>(j)] = base * (m == 0 ? 1.0 : std::pow(s, m));
    } else {
      double acc = 1.0;
      for (int k = 1; k <= N / 2; ++k) {
        const double b = (2 * k == N) ? 1.0 : 2.0;
        acc -= b / (4.0 * k * k - 1.0) * std::cos(2.0 * k * j * pi / N);
      }
      base = ((j == 0 || j == N) ? 1.0 : 2.0) / N * acc;
      w[static_cast<std::size_t>(j)] = base * (m == 1 ? 1.0 : std::pow(s, m - 1));
    }
  }
  return w;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace khessian
