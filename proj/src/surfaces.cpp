#include "khessian/surfaces.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace khessian::surfaces {

namespace {

constexpr double kPi = std::numbers::pi;

// Nodal values of gamma' and gamma'' from the cosine coefficients.
void nodal_derivatives(const std::vector<double>& coeff, int intervals, std::vector<double>& d1,
                       std::vector<double>& d2) {
  const int N = intervals;
  std::vector<double> ctab(2 * static_cast<std::size_t>(N));
  std::vector<double> stab(2 * static_cast<std::size_t>(N));
  for (int i = 0; i < 2 * N; ++i) {
    ctab[static_cast<std::size_t>(i)] = std::cos(kPi * i / N);
    stab[static_cast<std::size_t>(i)] = std::sin(kPi * i / N);
  }
  d1.assign(static_cast<std::size_t>(N) + 1, 0.0);
  d2.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 0; j <= N; ++j) {
    CompensatedSum s1, s2;
    for (int m = 1; m <= N; ++m) {
      const double c = coeff[static_cast<std::size_t>(m)];
      if (c == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>((static_cast<long>(m) * j) % (2 * N));
      s1.add(-m * c * stab[idx]);
      s2.add(-static_cast<double>(m) * m * c * ctab[idx]);
    }
    d1[static_cast<std::size_t>(j)] = (j == 0 || j == N) ? 0.0 : s1.value();
    d2[static_cast<std::size_t>(j)] = s2.value();
  }
}

}  // namespace

RevolutionBody::RevolutionBody(int n, std::vector<double> gamma) : n_(n), gamma_(std::move(gamma)) {
  require(n_ >= 3, "revolution bodies need ambient dimension n >= 3");
  const int N = intervals();
  require(N >= 4 && N % 2 == 0, "profile needs an even number (>= 4) of polar intervals");
  double gmax = 0.0;
  for (double g : gamma_) {
    if (!(g > 0.0) || !std::isfinite(g))
      throw Error(ErrorCode::StarShapeViolation, "profile radius must be positive and finite");
    gmax = std::max(gmax, g);
  }
  const double h = step();
  // One-sided slope against a floor that grows with the resolved curvature, so
  // coarse samples of smooth even profiles pass and cusps do not.
  const auto slope_ok = [&](double g0, double g1, double g2) {
    return std::abs(-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * h) <=
           1e-3 * g0 + std::abs(g2 - 2.0 * g1 + g0) / h;
  };
  if (!slope_ok(gamma_[0], gamma_[1], gamma_[2]) ||
      !slope_ok(gamma_[static_cast<std::size_t>(N)], gamma_[static_cast<std::size_t>(N - 1)],
                gamma_[static_cast<std::size_t>(N - 2)])) {
    throw Error(ErrorCode::PoleSingularity, "profile is not flat at a pole");
  }

  // DCT-I of the samples: gamma(theta) = sum_m coeff_m cos(m theta).
  coeff_.assign(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> ctab(2 * static_cast<std::size_t>(N));
  for (int i = 0; i < 2 * N; ++i) ctab[static_cast<std::size_t>(i)] = std::cos(kPi * i / N);
  for (int m = 0; m <= N; ++m) {
    CompensatedSum s;
    for (int j = 0; j <= N; ++j) {
      const double w = (j == 0 || j == N) ? 0.5 : 1.0;
      s.add(w * gamma_[static_cast<std::size_t>(j)] *
            ctab[static_cast<std::size_t>((static_cast<long>(m) * j) % (2 * N))]);
    }
    double a = 2.0 / N * s.value();
    if (m == 0 || m == N) a *= 0.5;
    // Drop round-off level modes; they only feed noise into gamma''.
    if (std::abs(a) <= 8.0 * std::numeric_limits<double>::epsilon() * gmax) a = 0.0;
    coeff_[static_cast<std::size_t>(m)] = a;
  }
  nodal_derivatives(coeff_, N, d1_, d2_);
}

RevolutionBody RevolutionBody::from_function(int n, const std::function<double(double)>& profile,
                                             int intervals) {
  require(intervals >= 4 && intervals % 2 == 0, "need an even number of intervals");
  std::vector<double> g(static_cast<std::size_t>(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) g[static_cast<std::size_t>(j)] = profile(kPi * j / intervals);
  return RevolutionBody(n, std::move(g));
}

RevolutionBody RevolutionBody::sphere(int n, double radius, int intervals) {
  require(radius > 0.0, "sphere radius must be positive");
  return from_function(n, [radius](double) { return radius; }, intervals);
}

RevolutionBody RevolutionBody::spheroid(int n, double polar, double equatorial, int intervals) {
  require(polar > 0.0 && equatorial > 0.0, "spheroid semi-axes must be positive");
  return from_function(
      n,
      [=](double t) {
        const double c = std::cos(t) / polar;
        const double s = std::sin(t) / equatorial;
        return 1.0 / std::sqrt(c * c + s * s);
      },
      intervals);
}

RevolutionBody RevolutionBody::cos_perturbed(int n, double amplitude, int mode, double radius,
                                             int intervals) {
  require(std::abs(amplitude) < 1.0, "perturbation amplitude must be below 1");
  return from_function(
      n, [=](double t) { return radius * (1.0 + amplitude * std::cos(mode * t)); }, intervals);
}

double RevolutionBody::step() const { return kPi / intervals(); }

double RevolutionBody::theta(int j) const { return j == intervals() ? kPi : step() * j; }

ProfilePoint RevolutionBody::eval(double theta) const {
  CompensatedSum g, d1, d2;
  const int N = intervals();
  for (int m = 0; m <= N; ++m) {
    const double c = coeff_[static_cast<std::size_t>(m)];
    if (c == 0.0) continue;
    const double cm = std::cos(m * theta);
    const double sm = std::sin(m * theta);
    g.add(c * cm);
    d1.add(-m * c * sm);
    d2.add(-static_cast<double>(m) * m * c * cm);
  }
  return {g.value(), d1.value(), d2.value()};
}

ProfilePoint RevolutionBody::nodal(int j) const {
  const auto u = static_cast<std::size_t>(j);
  return {gamma_[u], d1_[u], d2_[u]};
}

double RevolutionBody::max_radius() const { return *std::max_element(gamma_.begin(), gamma_.end()); }

double RevolutionBody::min_radius() const { return *std::min_element(gamma_.begin(), gamma_.end()); }

double RevolutionBody::radius_deviation() const {
  // Mean with respect to the polar-angle measure (Simpson).
  const std::vector<double> w = simpson_weights(intervals(), step());
  double mean = 0.0;
  for (std::size_t j = 0; j < gamma_.size(); ++j) mean += w[j] * gamma_[j];
  mean /= kPi;
  double dev = 0.0;
  for (double g : gamma_) dev = std::max(dev, std::abs(g - mean));
  return dev / mean;
}

RevolutionBody RevolutionBody::resampled(int intervals) const {
  return from_function(n_, [this](double t) { return eval(t).gamma; }, intervals);
}

double curvature_sigma(const SurfaceSample& s, int n, int j) {
  if (j == 0) return 1.0;
  if (j < 0 || j > n - 1) return 0.0;
  return symfunc::binomial(n - 2, j) * std::pow(s.kappa_r, j) +
         symfunc::binomial(n - 2, j - 1) * s.kappa_m * std::pow(s.kappa_r, j - 1);
}

std::vector<SurfaceSample> curvature_samples(const RevolutionBody& body) {
  const int N = body.intervals();
  const int n = body.dim();
  // Area element |S^{n-2}| (gamma sin theta)^{n-2} |T| d theta; the sine power goes into the weights.
  const std::vector<double> w = polar_weights(N, n - 2);
  const double orbit = unit_sphere_area(n - 2);
  std::vector<SurfaceSample> out(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const double th = body.theta(j);
    const ProfilePoint p = body.nodal(j);
    const double g = p.gamma;
    const double g1 = p.d1;
    const double g2 = p.d2;
    const double ct = std::cos(th);
    const double st = (j == 0 || j == N) ? 0.0 : std::sin(th);
    const double speed = std::sqrt(g * g + g1 * g1);
    const double dz = g1 * ct - g * st;
    const double drho = g1 * st + g * ct;

    SurfaceSample s;
    s.theta = th;
    s.z = g * ct;
    s.rho = g * st;
    s.nu_z = drho / speed;
    s.nu_rho = -dz / speed;
    s.kappa_m = (g * g + 2.0 * g1 * g1 - g * g2) / (speed * speed * speed);
    s.kappa_r = (j == 0 || j == N) ? s.kappa_m : s.nu_rho / s.rho;
    s.support = g * g / speed;
    s.area_weight = w[uj] * orbit * std::pow(g, n - 2) * speed;
    if (!(s.support > 0.0))
      throw Error(ErrorCode::StarShapeViolation, "<x,nu> <= 0 at theta = " + std::to_string(th));
    out[uj] = s;
  }
  return out;
}

double quermass(const RevolutionBody& body, int k) {
  const int n = body.dim();
  require(k >= 0 && k <= n - 1, "quermass needs 0 <= k <= n-1");
  CompensatedSum acc;
  for (const SurfaceSample& s : curvature_samples(body))
    acc.add(s.area_weight * curvature_sigma(s, n, k));
  return acc.value();
}

double area(const RevolutionBody& body) { return quermass(body, 0); }

double minkowski_residual(const RevolutionBody& body, int k) {
  const int n = body.dim();
  require(k >= 1 && k <= n - 1, "Minkowski formula needs 1 <= k <= n-1");
  CompensatedSum lhs, rhs;
  for (const SurfaceSample& s : curvature_samples(body)) {
    lhs.add(s.area_weight * s.support * curvature_sigma(s, n, k));
    rhs.add(s.area_weight * curvature_sigma(s, n, k - 1));
  }
  return lhs.value() - static_cast<double>(n - k) / k * rhs.value();
}

double volume(const RevolutionBody& body) {
  CompensatedSum acc;
  for (const SurfaceSample& s : curvature_samples(body)) acc.add(s.area_weight * s.support);
  return acc.value() / body.dim();
}

bool is_convex(const RevolutionBody& body, double margin) {
  for (const SurfaceSample& s : curvature_samples(body))
    if (!(s.kappa_m > margin && s.kappa_r > margin)) return false;
  return true;
}

double af_gap(const RevolutionBody& body, int k) {
  const int n = body.dim();
  require(k >= 2 && k <= n - 1, "Aleksandrov-Fenchel gap needs 2 <= k <= n-1");
  if (!is_convex(body)) throw Error(ErrorCode::NotConvex, "body is not strictly convex");
  const double qk = quermass(body, k);
  const double qk1 = quermass(body, k - 1);
  const double qk2 = quermass(body, k - 2);
  return static_cast<double>(n - k) * (k - 1) * qk1 * qk1 -
         static_cast<double>(n - k + 1) * k * qk * qk2;
}

double qiu_xia_gap(const RevolutionBody& body) {
  if (!is_convex(body)) throw Error(ErrorCode::NotConvex, "body is not strictly convex");
  const int n = body.dim();
  const double a = area(body);
  return static_cast<double>(n - 1) / n * a * a - volume(body) * quermass(body, 1);
}

}  // namespace khessian::surfaces
