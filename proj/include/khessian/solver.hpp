#ifndef KHESSIAN_SOLVER_HPP
#define KHESSIAN_SOLVER_HPP

// Regularized exterior problem S_k(D^2 u) = f^eps outside an axisymmetric
// star-shaped body, u = -1 on the body and u ~ -rho r^{2-n/k} far away.
//
// The grid uses (s, theta) in [0,1] x [0,pi] with r = gamma(theta)^{1-s} R_out^s.
// A function of (z, rho) = r (cos theta, sin theta) is rotation invariant in the
// last n-1 coordinates; its Hessian has the meridian block in (z, rho) and the
// eigenvalue u_rho / rho with multiplicity n-2 (u_rho_rho on the axis).

#include "khessian/fields.hpp"
#include "khessian/problem.hpp"
#include "khessian/surfaces.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace khessian::solver {

/// Derivatives of u at a node in meridian coordinates. `mu` is the rotational
/// eigenvalue u_rho / rho, replaced by u_rho_rho on the axis.
struct AxiJet {
  double z = 0.0;
  double rho = 0.0;
  double u = 0.0;
  double uz = 0.0;
  double urho = 0.0;
  double uzz = 0.0;
  double uzrho = 0.0;
  double urhorho = 0.0;
  double mu = 0.0;
};

inline constexpr int kJetComponents = 6;  // uz, urho, uzz, uzrho, urhorho, mu

/// Stencil entry: node index and the weights of the six jet components.
struct StencilEntry {
  int node = 0;
  std::array<double, kJetComponents> w{};
};

class AxiGrid {
 public:
  AxiGrid(const surfaces::RevolutionBody& body, int Ns, int Ntheta, double R_out);

  int Ns() const { return Ns_; }
  int Ntheta() const { return Nt_; }
  double R_out() const { return R_out_; }
  int dim() const { return body_.dim(); }
  const surfaces::RevolutionBody& body() const { return body_; }

  int nodes() const { return (Ns_ + 1) * (Nt_ + 1); }
  int index(int i, int j) const { return i * (Nt_ + 1) + j; }
  double s(int i) const { return static_cast<double>(i) / Ns_; }
  double theta(int j) const;
  double radius(int i, int j) const { return r_[static_cast<std::size_t>(index(i, j))]; }
  double z(int i, int j) const;
  double rho(int i, int j) const;
  /// |det d(z,rho)/d(s,theta)|
  double jacobian(int i, int j) const { return detJ_[static_cast<std::size_t>(index(i, j))]; }
  /// Profile radius at theta_j (on the grid's own polar nodes).
  double gamma(int j) const { return gamma_[static_cast<std::size_t>(j)]; }
  /// |grad u| per unit |u_s| on the inner boundary (u_theta vanishes there).
  double boundary_metric(int j) const { return bmetric_[static_cast<std::size_t>(j)]; }

  const std::vector<StencilEntry>& stencil(int i, int j) const {
    return stencils_[static_cast<std::size_t>(index(i, j))];
  }

  /// Body with profile sampled on the grid's polar nodes.
  const surfaces::RevolutionBody& body_on_grid() const { return grid_body_; }

 private:
  surfaces::RevolutionBody body_;
  surfaces::RevolutionBody grid_body_;
  int Ns_;
  int Nt_;
  double R_out_;
  std::vector<double> gamma_;
  std::vector<double> r_;
  std::vector<double> detJ_;
  std::vector<double> bmetric_;
  std::vector<std::vector<StencilEntry>> stencils_;
};

struct SolveOptions {
  int Ns = 256;
  int Ntheta = 128;
  double R_out = 40.0;
  int max_newton = 60;
  int max_halvings = 40;
  int max_rho_updates = 30;
  double rho_tol = 1e-8;
  /// Overrides the initial rho_hat when positive.
  double rho_initial = 0.0;
};

struct ExteriorField {
  std::shared_ptr<const AxiGrid> grid;
  int k = 0;
  double cnk = 1.0;
  Eigen::VectorXd u;  // node values, index(i, j)
  double eps = 0.0;
  double rho_hat = 0.0;
  double rho_variance = 0.0;   // relative variance of the far-field fit
  double residual_norm = 0.0;  // sup-norm of r^n (S_k - f^eps) over interior nodes
  double residual_scale = 0.0;
  double admissible = 0.0;     // worst scale-free Gamma_k margin over interior nodes
  bool max_principle = false;  // -1 <= u < 0 at every interior node
  int newton_iterations = 0;
  int rho_updates = 0;
  std::vector<double> eps_history;

  int dim() const { return grid->dim(); }
  double value(int i, int j) const { return u(grid->index(i, j)); }
};

/// Field built from node values of a function of (z, rho); rho_hat is fitted.
ExteriorField sample_field(std::shared_ptr<const AxiGrid> grid, int k,
                           const std::function<double(double, double)>& fn, double eps = 0.0);

/// Meridian jet at node (i, j). One-sided stencils are used on the two s edges.
AxiJet axi_jet(const ExteriorField& field, int i, int j);

/// Full n-dimensional jet at node (i, j), at the point (z, rho, 0, ..., 0).
fields::Jet2 hessian_axisym(const ExteriorField& field, int i, int j);
fields::Jet2 to_jet2(const AxiJet& a, int n);

/// Eigenvalues of the Hessian encoded by an AxiJet (2 meridian + mu with multiplicity n-2).
Eigen::VectorXd axi_eigenvalues(const AxiJet& a, int n);

/// S_k of the full Hessian from the meridian block and mu.
double axi_sigma(const AxiJet& a, int n, int k);

struct RhoFit {
  double rho = 0.0;
  double rel_variance = 0.0;
};

/// Weighted least-squares fit of -u r^{n/k-2} over the shell [0.6, 0.8] R_out.
/// Throws PoorFit when the relative variance exceeds `max_variance`.
RhoFit estimate_rho(const ExteriorField& field, double max_variance = 1e-3);
/// Same fit without the quality gate.
RhoFit fit_rho(const ExteriorField& field);

/// |grad u| at the inner boundary nodes from a five-point one-sided derivative.
std::vector<double> boundary_gradient(const ExteriorField& field);

/// Damped Newton with eps continuation and a self-consistent outer boundary value.
ExteriorField solve_exterior(const surfaces::RevolutionBody& body, const ProblemSpec& spec,
                             const std::vector<double>& schedule, const SolveOptions& opts = {});

/// Uses spec.eps_schedule.
ExteriorField solve_exterior(const surfaces::RevolutionBody& body, const ProblemSpec& spec,
                             const SolveOptions& opts = {});

/// Worst scale-free Gamma_k margin over interior nodes.
double admissibility_margin(const ExteriorField& field);

}  // namespace khessian::solver

#endif  // KHESSIAN_SOLVER_HPP
