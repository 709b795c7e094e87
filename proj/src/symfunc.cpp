#include "khessian/symfunc.hpp"

#include "khessian/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace khessian::symfunc {

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

SymVec::SymVec(std::vector<double> entries) : entries_(std::move(entries)) {
  require(!entries_.empty(), "SymVec needs at least one entry");
  for (double x : entries_) require(std::isfinite(x), "SymVec entries must be finite");
}

SymVec::SymVec(std::initializer_list<double> entries) : SymVec(std::vector<double>(entries)) {}

SymVec::SymVec(const Eigen::VectorXd& entries)
    : SymVec(std::vector<double>(entries.data(), entries.data() + entries.size())) {}

SymMat::SymMat(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols() && a.rows() >= 1, "SymMat must be square and non-empty");
  m_ = 0.5 * (a + a.transpose());
}

SymMat SymMat::identity(int n) { return SymMat(Eigen::MatrixXd::Identity(n, n)); }

SymMat SymMat::zero(int n) { return SymMat(Eigen::MatrixXd::Zero(n, n)); }

SymMat SymMat::diagonal(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return SymMat(Eigen::MatrixXd(v.asDiagonal()));
}

std::vector<double> sigma_all(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += v[i] * e[j - 1];
  }
  return e;
}

double sigma(std::span<const double> v, int k) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  if (static_cast<std::size_t>(k) > v.size()) return 0.0;
  // Only the first k+1 running sums are needed.
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t top = std::min<std::size_t>(i + 1, static_cast<std::size_t>(k));
    for (std::size_t j = top; j >= 1; --j) e[j] += v[i] * e[j - 1];
  }
  return e[static_cast<std::size_t>(k)];
}

double sigma(const SymVec& v, int k) { return sigma(v.entries(), k); }

Eigen::VectorXd eigenvalues(const SymMat& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace detail {

double sigma_matrix_minors(const Eigen::MatrixXd& a, int k) {
  const int n = static_cast<int>(a.rows());
  if (k < 0 || k > n) return 0.0;
  if (k == 0) return 1.0;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  Eigen::MatrixXd minor(k, k);
  double total = 0.0;
  while (true) {
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) minor(r, c) = a(idx[r], idx[c]);
    total += minor.determinant();
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int r = pos + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  return total;
}

double sigma_matrix_spectral(const Eigen::MatrixXd& a, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lam = es.eigenvalues();
  return sigma(std::span<const double>(lam.data(), static_cast<std::size_t>(lam.size())), k);
}

Eigen::MatrixXd sigma_grad_spectral(const Eigen::MatrixXd& a, int k) {
  const int n = static_cast<int>(a.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXd d(n);
  std::vector<double> rest(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) rest[static_cast<std::size_t>(w++)] = lam(j);
    d(i) = sigma(rest, k - 1);
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

double sigma_matrix(const SymMat& a, int k) {
  if (a.size() <= 6) return detail::sigma_matrix_minors(a.matrix(), k);
  return detail::sigma_matrix_spectral(a.matrix(), k);
}

SymMat sigma_grad(const SymMat& a, int k) {
  const int n = a.size();
  require(k >= 1 && k <= n, "sigma_grad needs 1 <= k <= n");
  const Eigen::MatrixXd& m = a.matrix();
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int j = 2; j <= k; ++j) {
    g = sigma_matrix(a, j - 1) * Eigen::MatrixXd::Identity(n, n) - g * m.transpose();
  }
  return SymMat(g);
}

ConeMembership gamma_cone_contains(const SymVec& v, ConeSpec spec, double tau) {
  require(spec.k >= 1 && spec.k <= spec.n, "cone order must satisfy 1 <= k <= n");
  require(v.size() == spec.n, "vector length must equal cone dimension");
  const std::vector<double> e = sigma_all(v.entries());
  double margin = e[1];
  for (int i = 2; i <= spec.k; ++i) margin = std::min(margin, e[static_cast<std::size_t>(i)]);
  ConeMembership out;
  out.margin = margin;
  if (margin > tau) {
    out.inside = true;
    out.status = ConeStatus::Inside;
  } else if (margin >= -tau) {
    out.status = ConeStatus::Boundary;
  }
  return out;
}

double newton_maclaurin_gap(const SymVec& v, int m, int l) {
  const int n = v.size();
  require(1 <= m && m <= l && l <= n, "Newton-MacLaurin needs 1 <= m <= l <= n");
  const ConeMembership cm = gamma_cone_contains(v, {n, l});
  if (!cm.inside) throw Error(ErrorCode::InvalidArgument, "vector is not in Gamma_l");
  const std::vector<double> e = sigma_all(v.entries());
  const double lhs = std::pow(e[static_cast<std::size_t>(m)] / binomial(n, m), 1.0 / m);
  const double rhs = std::pow(e[static_cast<std::size_t>(l)] / binomial(n, l), 1.0 / l);
  return lhs - rhs;
}

IdentityResiduals verify_matrix_identities(const SymMat& a, int k) {
  const int n = a.size();
  require(k >= 1 && k <= n, "identities need 1 <= k <= n");
  const Eigen::MatrixXd& m = a.matrix();
  const Eigen::MatrixXd g = sigma_grad(a, k).matrix();

  IdentityResiduals r;
  r.recursion = (g - detail::sigma_grad_spectral(m, k)).cwiseAbs().maxCoeff();

  const double contracted = (g * m * m).trace();
  const double s1 = sigma_matrix(a, 1);
  const double sk = sigma_matrix(a, k);
  const double sk1 = sigma_matrix(a, k + 1);
  r.reilly = std::abs(contracted - (s1 * sk - (k + 1) * sk1));

  r.trace = std::abs(g.trace() - (n - k + 1) * sigma_matrix(a, k - 1));
  return r;
}

SuiteReport property_suite(std::uint64_t seed, int samples) {
  require(samples >= 1, "need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(0.0, 2.0);
  SuiteReport rep;
  rep.samples = samples;
  rep.min_nm_gap = std::numeric_limits<double>::infinity();
  const double h = 1e-6;
  for (int s = 0; s < samples; ++s) {
    const int n = 3 + s % 4;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    const SymMat a(m);
    for (int k = 1; k <= n; ++k) {
      const IdentityResiduals r = verify_matrix_identities(a, k);
      rep.max_recursion = std::max(rep.max_recursion, r.recursion);
      rep.max_reilly = std::max(rep.max_reilly, r.reilly);
      rep.max_trace = std::max(rep.max_trace, r.trace);
    }

    // One order per sample keeps the finite-difference sweep cheap.
    const int k = 1 + s % n;
    const Eigen::MatrixXd g = sigma_grad(a, k).matrix();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd p = a.matrix(), q = a.matrix();
        p(i, j) += h;
        q(i, j) -= h;
        const double fd =
            (detail::sigma_matrix_minors(p, k) - detail::sigma_matrix_minors(q, k)) / (2.0 * h);
        rep.max_grad_error = std::max(rep.max_grad_error, std::abs(fd - g(i, j)));
      }

    Eigen::VectorXd ev = eigenvalues(a);
    ev.array() += shift(rng);
    const SymVec v(ev);
    for (int l = 2; l <= n; ++l) {
      if (!gamma_cone_contains(v, {n, l}).inside) break;
      for (int mm = 1; mm < l; ++mm) {
        rep.min_nm_gap = std::min(rep.min_nm_gap, newton_maclaurin_gap(v, mm, l));
        ++rep.nm_checks;
      }
    }
  }
  if (rep.nm_checks == 0) rep.min_nm_gap = 0.0;
  return rep;
}

}  // namespace khessian::symfunc
