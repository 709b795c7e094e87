#ifndef KHESSIAN_SYMFUNC_HPP
#define KHESSIAN_SYMFUNC_HPP

// Elementary symmetric functions of vectors and symmetric matrices, their
// derivative tensors, Garding cones and the Newton-MacLaurin inequalities.

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace khessian::symfunc {

/// Binomial coefficient as a double; zero outside 0 <= k <= n.
double binomial(int n, int k);

/// An ordered list of eigenvalue-like scalars.
class SymVec {
 public:
  SymVec() = default;
  explicit SymVec(std::vector<double> entries);
  SymVec(std::initializer_list<double> entries);
  explicit SymVec(const Eigen::VectorXd& entries);

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  std::span<const double> entries() const { return entries_; }

 private:
  std::vector<double> entries_;
};

/// Symmetric matrix; the input is symmetrized as (A + A^T) / 2 on construction.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(const Eigen::MatrixXd& a);

  static SymMat identity(int n);
  static SymMat zero(int n);
  static SymMat diagonal(std::initializer_list<double> d);

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

struct ConeSpec {
  int n = 0;
  int k = 0;
};

enum class ConeStatus { Inside, Boundary, Outside };

struct ConeMembership {
  bool inside = false;
  ConeStatus status = ConeStatus::Outside;
  double margin = 0.0;  // min_{1<=i<=k} S_i(v)
};

/// S_k(v) by the one-pass recurrence e_j <- e_j + v_i e_{j-1}.
/// S_0 = 1, S_k = 0 for k > n.
double sigma(std::span<const double> v, int k);
double sigma(const SymVec& v, int k);

/// All of S_0..S_n at once.
std::vector<double> sigma_all(std::span<const double> v);

/// S_k of the eigenvalues of A. Principal minors for n <= 6, eigenvalues beyond.
double sigma_matrix(const SymMat& a, int k);

/// S_k^{ij}(A) = dS_k / da_ij, built with the recursion
/// S_k^{ij} = S_{k-1} delta_ij - S_{k-1}^{il} a_jl from S_1^{ij} = delta_ij.
SymMat sigma_grad(const SymMat& a, int k);

/// Eigenvalues in ascending order.
Eigen::VectorXd eigenvalues(const SymMat& a);

/// Membership in the open cone Gamma_k: S_i > tau for 1 <= i <= k.
/// When not inside but every S_i >= -tau, the status is Boundary.
ConeMembership gamma_cone_contains(const SymVec& v, ConeSpec spec, double tau = 0.0);

/// (S_m / C(n,m))^{1/m} - (S_l / C(n,l))^{1/l}; rejects v outside Gamma_l.
double newton_maclaurin_gap(const SymVec& v, int m, int l);

struct IdentityResiduals {
  double recursion = 0.0;  // recursion vs. spectral S_k^{ij}
  double reilly = 0.0;     // S_k^{ij} a_il a_lj - (S_1 S_k - (k+1) S_{k+1})
  double trace = 0.0;      // tr S_k^{ij} - (n-k+1) S_{k-1}
};

IdentityResiduals verify_matrix_identities(const SymMat& a, int k);

/// Randomized property battery over symmetric matrices with entries uniform in
/// [-1, 1] and n cycling through 3..6.
struct SuiteReport {
  int samples = 0;
  double max_recursion = 0.0;
  double max_reilly = 0.0;
  double max_trace = 0.0;
  double max_grad_error = 0.0;  // sigma_grad against central differences, h = 1e-6
  double min_nm_gap = 0.0;      // Newton-MacLaurin gap over cone samples
  int nm_checks = 0;

  bool identities_ok(double tol = 1e-10) const {
    return max_recursion <= tol && max_reilly <= tol && max_trace <= tol;
  }
  bool gradient_ok(double tol = 1e-5) const { return max_grad_error <= tol; }
  bool newton_maclaurin_ok(double tol = 1e-12) const { return min_nm_gap >= -tol; }
};

SuiteReport property_suite(std::uint64_t seed, int samples);

namespace detail {
double sigma_matrix_minors(const Eigen::MatrixXd& a, int k);
double sigma_matrix_spectral(const Eigen::MatrixXd& a, int k);
/// Q diag(S_{k-1}(lambda | i)) Q^T.
Eigen::MatrixXd sigma_grad_spectral(const Eigen::MatrixXd& a, int k);
}  // namespace detail

}  // namespace khessian::symfunc

#endif  // KHESSIAN_SYMFUNC_HPP
