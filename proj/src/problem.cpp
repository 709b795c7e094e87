#include "khessian/problem.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace khessian {

namespace {

struct Exponents {
  double e1;  // ((a-k)(n-k)+k)/(n-2k)
  double e2;  // (a-k+1)(n-k)/(n-2k)
};

Exponents exponents(const ProblemSpec& s) {
  const double nk = s.n - s.k;
  const double m = s.n - 2.0 * s.k;
  return {((s.a - s.k) * nk + s.k) / m, (s.a - s.k + 1.0) * nk / m};
}

}  // namespace

double min_exponent(int n, int k) { return static_cast<double>(k) * (n - k - 1) / (n - k); }

std::vector<double> default_eps_schedule(int k) {
  if (k == 1) return {1e-3};
  return {0.5, 0.1, 0.02};
}

std::vector<std::string> ProblemSpec::violations() const {
  std::vector<std::string> out;
  if (k < 1) out.push_back("k must be >= 1");
  if (!(2 * k < n)) out.push_back("need 1 <= k < n/2");
  if (n < 3) out.push_back("n must be >= 3");
  if (!out.empty()) return out;
  if (!(a >= min_exponent(n, k) - 1e-15)) {
    std::ostringstream os;
    os << "exponent a = " << a << " below k(n-k-1)/(n-k) = " << min_exponent(n, k);
    out.push_back(os.str());
  }
  if (!(cnk > 0.0)) out.push_back("c_nk must be positive");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) out.push_back("eps schedule entries must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      out.push_back("eps schedule must be strictly decreasing");
  }
  std::vector<double> levels = t_grid;
  levels.push_back(-1.0);
  for (double t : levels) {
    if (!(t >= -1.0 && t < 0.0)) {
      out.push_back("level t = " + std::to_string(t) + " outside [-1, 0)");
      continue;
    }
    if (out.empty() && weights(t, *this).C1 < 0.0)
      out.push_back("C1(t) < 0 at t = " + std::to_string(t));
  }
  return out;
}

void ProblemSpec::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg;
  for (const auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
  throw Error(ErrorCode::InvalidArgument, msg);
}

ProblemSpec ProblemSpec::make(int n, int k, double a, double C3, double C4) {
  ProblemSpec s;
  s.n = n;
  s.k = k;
  s.a = a;
  s.C3 = C3;
  s.C4 = C4;
  s.eps_schedule = default_eps_schedule(k);
  s.validate();
  return s;
}

Weights weights(double t, const ProblemSpec& spec) {
  require(t >= -1.0 && t < 0.0, "weights need t in [-1, 0)");
  const Exponents e = exponents(spec);
  const double s = -t;
  const double nk = spec.n - spec.k;
  const double m = spec.n - 2.0 * spec.k;
  Weights w;
  w.C1 = std::pow(s, -e.e1) * spec.C3 + std::pow(s, 1.0 - e.e1) * spec.C4;
  w.C2 = -((spec.a - spec.k) * nk + spec.k) / (m * (spec.a + 1.0 - spec.k)) * spec.C3 *
             std::pow(s, -e.e2) -
         nk / m * spec.C4 * std::pow(s, 1.0 - e.e2);
  return w;
}

Weights weights_derivative(double t, const ProblemSpec& spec) {
  require(t >= -1.0 && t < 0.0, "weights need t in [-1, 0)");
  const Exponents e = exponents(spec);
  const double s = -t;
  const double nk = spec.n - spec.k;
  const double m = spec.n - 2.0 * spec.k;
  const double b3 = -((spec.a - spec.k) * nk + spec.k) / (m * (spec.a + 1.0 - spec.k));
  const double b4 = -nk / m;
  // d/dt = -d/ds
  Weights d;
  d.C1 = -(-e.e1 * std::pow(s, -e.e1 - 1.0) * spec.C3 +
           (1.0 - e.e1) * std::pow(s, -e.e1) * spec.C4);
  d.C2 = -(b3 * spec.C3 * (-e.e2) * std::pow(s, -e.e2 - 1.0) +
           b4 * spec.C4 * (1.0 - e.e2) * std::pow(s, -e.e2));
  return d;
}

namespace {

OdeResidual residual_from(double t, const ProblemSpec& spec, const Weights& w, const Weights& d) {
  const double beta = spec.a - min_exponent(spec.n, spec.k);
  const double q = static_cast<double>(spec.n - spec.k) / ((spec.n - 2.0 * spec.k) * t);
  const double t1a = d.C2;
  const double t1b = beta * q * q * w.C1;
  const double t2a = d.C1;
  const double t2b = -(spec.a + 1.0 - spec.k) * w.C2;
  const double t2c = 2.0 * q * beta * w.C1;
  const double scale1 = std::max({std::abs(t1a), std::abs(t1b), 1e-300});
  const double scale2 = std::max({std::abs(t2a), std::abs(t2b), std::abs(t2c), 1e-300});
  return {std::abs(t1a + t1b) / scale1, std::abs(t2a + t2b + t2c) / scale2};
}

}  // namespace

OdeResidual weights_ode_residual(double t, const ProblemSpec& spec) {
  return residual_from(t, spec, weights(t, spec), weights_derivative(t, spec));
}

OdeResidual weights_ode_residual_fd(double t, const ProblemSpec& spec, double h) {
  const Weights p = weights(t + h, spec);
  const Weights m = weights(t - h, spec);
  const Weights d{(p.C1 - m.C1) / (2.0 * h), (p.C2 - m.C2) / (2.0 * h)};
  return residual_from(t, spec, weights(t, spec), d);
}

double limit_bound(const ProblemSpec& spec, double rho) {
  const int n = spec.n;
  const int k = spec.k;
  const double m = n - 2.0 * k;
  // rho enters with exponent k(n-k-a-1)/(n-2k), as dictated by the level-set asymptotics.
  return m / (k * (spec.a + 1.0 - k)) * symfunc::binomial(n - 1, k - 1) *
         std::pow(spec.decay(), spec.a) * std::pow(rho, k * (n - k - spec.a - 1.0) / m) *
         unit_sphere_area(n - 1) * spec.C3;
}

}  // namespace khessian
