#include "khessian/solver.hpp"

#include "khessian/error.hpp"
#include "khessian/quadrature.hpp"
#include "khessian/symfunc.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace khessian::solver {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec5 = std::array<double, 5>;  // u_s, u_theta, u_ss, u_stheta, u_thetatheta
using Vec6 = std::array<double, kJetComponents>;

struct MapDerivs {
  double zs, zt, ps, pt;                // first derivatives of (z, rho)
  double zss, zst, ztt, pss, pst, ptt;  // second derivatives
  double rho;
  bool axis;
};

// Cartesian jet components from computational derivatives; linear in d.
Vec6 to_cartesian(const MapDerivs& m, const Vec5& d) {
  const double det = m.zs * m.pt - m.zt * m.ps;
  // J = [[zs, zt], [ps, pt]], Jinv = [[pt, -zt], [-ps, zs]] / det
  const double i00 = m.pt / det, i01 = -m.zt / det, i10 = -m.ps / det, i11 = m.zs / det;
  // g = J^{-T} (d0, d1)
  const double gz = i00 * d[0] + i10 * d[1];
  const double gp = i01 * d[0] + i11 * d[1];
  const double h00 = d[2] - gz * m.zss - gp * m.pss;
  const double h01 = d[3] - gz * m.zst - gp * m.pst;
  const double h11 = d[4] - gz * m.ztt - gp * m.ptt;
  // H = Jinv^T Hxi Jinv
  const auto hc = [&](double a0, double a1, double b0, double b1) {
    return a0 * (h00 * b0 + h01 * b1) + a1 * (h01 * b0 + h11 * b1);
  };
  Vec6 q{};
  q[0] = gz;
  q[1] = gp;
  q[2] = hc(i00, i10, i00, i10);
  q[3] = hc(i00, i10, i01, i11);
  q[4] = hc(i01, i11, i01, i11);
  q[5] = m.axis ? q[4] : gp / m.rho;
  return q;
}

struct BlockSigma {
  double value = 0.0;
  double d_uzz = 0.0;
  double d_uzrho = 0.0;
  double d_urhorho = 0.0;
  double d_mu = 0.0;
};

// S_k of the Hessian with meridian block [[a, b], [b, c]] and mu of multiplicity n-2.
BlockSigma block_sigma(double a, double b, double c, double mu, int n, int k) {
  const double s[3] = {1.0, a + c, a * c - b * b};
  BlockSigma out;
  for (int j = std::max(0, k - 2); j <= std::min(k, n - 2); ++j) {
    const double cb = symfunc::binomial(n - 2, j);
    const double mj = j == 0 ? 1.0 : std::pow(mu, j);
    const int m = k - j;
    out.value += cb * mj * s[m];
    if (j > 0) out.d_mu += cb * j * (j == 1 ? 1.0 : std::pow(mu, j - 1)) * s[m];
    if (m == 1) {
      out.d_uzz += cb * mj;
      out.d_urhorho += cb * mj;
    } else if (m == 2) {
      out.d_uzz += cb * mj * c;
      out.d_urhorho += cb * mj * a;
      out.d_uzrho += cb * mj * (-2.0 * b);
    }
  }
  return out;
}

void add_weight(std::vector<StencilEntry>& st, int node, const Vec6& col, double c) {
  auto it = std::find_if(st.begin(), st.end(), [node](const StencilEntry& e) { return e.node == node; });
  if (it == st.end()) {
    st.push_back({node, {}});
    it = st.end() - 1;
  }
  for (int l = 0; l < kJetComponents; ++l) it->w[static_cast<std::size_t>(l)] += c * col[static_cast<std::size_t>(l)];
}

}  // namespace

AxiGrid::AxiGrid(const surfaces::RevolutionBody& body, int Ns, int Ntheta, double R_out)
    : body_(body),
      grid_body_(body.intervals() == Ntheta ? body : body.resampled(Ntheta)),
      Ns_(Ns),
      Nt_(Ntheta),
      R_out_(R_out) {
  require(Ns >= 8 && Ns % 2 == 0, "N_s must be even and >= 8");
  require(Ntheta >= 4 && Ntheta % 2 == 0, "N_theta must be even and >= 4");
  require(R_out >= 10.0 * body.max_radius(), "R_out must be at least 10 max gamma");

  const int n_nodes = nodes();
  r_.assign(static_cast<std::size_t>(n_nodes), 0.0);
  detJ_.assign(static_cast<std::size_t>(n_nodes), 0.0);
  stencils_.assign(static_cast<std::size_t>(n_nodes), {});
  gamma_.assign(static_cast<std::size_t>(Nt_) + 1, 0.0);
  bmetric_.assign(static_cast<std::size_t>(Nt_) + 1, 0.0);

  const double hs = 1.0 / Ns_;
  const double ht = kPi / Nt_;
  const double lnR = std::log(R_out_);

  for (int j = 0; j <= Nt_; ++j) {
    const surfaces::ProfilePoint p = grid_body_.nodal(j);
    gamma_[static_cast<std::size_t>(j)] = p.gamma;
    const double th = theta(j);
    const bool axis = (j == 0 || j == Nt_);
    const double c = std::cos(th);
    const double sn = axis ? 0.0 : std::sin(th);
    const double D = lnR - std::log(p.gamma);
    const double L1 = p.d1 / p.gamma;
    const double L2 = p.d2 / p.gamma - L1 * L1;

    for (int i = 0; i <= Ns_; ++i) {
      const double sv = s(i);
      const double r = std::exp((1.0 - sv) * std::log(p.gamma) + sv * lnR);
      const double rs = r * D;
      const double rt = r * (1.0 - sv) * L1;
      const double rss = r * D * D;
      const double rst = rt * D - r * L1;
      const double rtt = rt * rt / r + r * (1.0 - sv) * L2;

      MapDerivs m{};
      // e_r = (c, sn), e_theta = (-sn, c)
      m.zs = rs * c;
      m.ps = rs * sn;
      m.zt = rt * c - r * sn;
      m.pt = rt * sn + r * c;
      m.zss = rss * c;
      m.pss = rss * sn;
      m.zst = rst * c - rs * sn;
      m.pst = rst * sn + rs * c;
      m.ztt = rtt * c - 2.0 * rt * sn - r * c;
      m.ptt = rtt * sn + 2.0 * rt * c - r * sn;
      m.rho = r * sn;
      m.axis = axis;

      const int node = index(i, j);
      r_[static_cast<std::size_t>(node)] = r;
      detJ_[static_cast<std::size_t>(node)] = r * rs;

      // Columns of the linear map d -> q.
      std::array<Vec6, 5> col;
      for (int e = 0; e < 5; ++e) {
        Vec5 d{};
        d[static_cast<std::size_t>(e)] = 1.0;
        col[static_cast<std::size_t>(e)] = to_cartesian(m, d);
      }
      if (i == 0) {
        const double det = m.zs * m.pt - m.zt * m.ps;
        bmetric_[static_cast<std::size_t>(j)] = std::hypot(m.pt / det, -m.zt / det);
      }

      // s stencils: fourth-order centered inside, second order next to the edges,
      // one-sided on the edges themselves.
      std::vector<int> so;
      std::vector<double> sa, sb;
      if (i == 0) {
        so = {0, 1, 2, 3};
        sa = {-1.5 / hs, 2.0 / hs, -0.5 / hs, 0.0};
        sb = {2.0 / (hs * hs), -5.0 / (hs * hs), 4.0 / (hs * hs), -1.0 / (hs * hs)};
      } else if (i == Ns_) {
        so = {0, -1, -2, -3};
        sa = {1.5 / hs, -2.0 / hs, 0.5 / hs, 0.0};
        sb = {2.0 / (hs * hs), -5.0 / (hs * hs), 4.0 / (hs * hs), -1.0 / (hs * hs)};
      } else if (i >= 2 && i <= Ns_ - 2) {
        so = {-2, -1, 0, 1, 2};
        sa = {1.0 / (12.0 * hs), -2.0 / (3.0 * hs), 0.0, 2.0 / (3.0 * hs), -1.0 / (12.0 * hs)};
        sb = {-1.0 / (12.0 * hs * hs), 4.0 / (3.0 * hs * hs), -2.5 / (hs * hs),
              4.0 / (3.0 * hs * hs), -1.0 / (12.0 * hs * hs)};
      } else {
        so = {-1, 0, 1};
        sa = {-0.5 / hs, 0.0, 0.5 / hs};
        sb = {1.0 / (hs * hs), -2.0 / (hs * hs), 1.0 / (hs * hs)};
      }
      const int to[3] = {-1, 0, 1};
      const double ta[3] = {-0.5 / ht, 0.0, 0.5 / ht};
      const double tb[3] = {1.0 / (ht * ht), -2.0 / (ht * ht), 1.0 / (ht * ht)};
      const auto reflect = [this](int jj) {
        if (jj < 0) return -jj;
        if (jj > Nt_) return 2 * Nt_ - jj;
        return jj;
      };

      auto& st = stencils_[static_cast<std::size_t>(node)];
      for (std::size_t a = 0; a < so.size(); ++a) {
        const int nb = index(i + so[a], j);
        if (sa[a] != 0.0) add_weight(st, nb, col[0], sa[a]);
        add_weight(st, nb, col[2], sb[a]);
      }
      for (int b = 0; b < 3; ++b) {
        const int nb = index(i, reflect(j + to[b]));
        if (ta[b] != 0.0) add_weight(st, nb, col[1], ta[b]);
        add_weight(st, nb, col[4], tb[b]);
      }
      for (std::size_t a = 0; a < so.size(); ++a) {
        if (sa[a] == 0.0) continue;
        for (int b = 0; b < 3; ++b) {
          if (ta[b] == 0.0) continue;
          add_weight(st, index(i + so[a], reflect(j + to[b])), col[3], sa[a] * ta[b]);
        }
      }
      // Drop exact cancellations (reflected first derivatives on the axis).
      st.erase(std::remove_if(st.begin(), st.end(),
                              [](const StencilEntry& e) {
                                return std::all_of(e.w.begin(), e.w.end(),
                                                   [](double x) { return x == 0.0; });
                              }),
               st.end());
    }
  }
}

double AxiGrid::theta(int j) const { return j == Nt_ ? kPi : kPi * j / Nt_; }

double AxiGrid::z(int i, int j) const { return radius(i, j) * std::cos(theta(j)); }

double AxiGrid::rho(int i, int j) const {
  if (j == 0 || j == Nt_) return 0.0;
  return radius(i, j) * std::sin(theta(j));
}

namespace {

Vec6 node_components(const AxiGrid& g, const Eigen::VectorXd& u, int i, int j) {
  Vec6 q{};
  for (const StencilEntry& e : g.stencil(i, j)) {
    const double v = u(e.node);
    for (int l = 0; l < kJetComponents; ++l) q[static_cast<std::size_t>(l)] += e.w[static_cast<std::size_t>(l)] * v;
  }
  return q;
}

AxiJet make_jet(const AxiGrid& g, const Eigen::VectorXd& u, int i, int j) {
  const Vec6 q = node_components(g, u, i, j);
  AxiJet a;
  a.z = g.z(i, j);
  a.rho = g.rho(i, j);
  a.u = u(g.index(i, j));
  a.uz = q[0];
  a.urho = q[1];
  a.uzz = q[2];
  a.uzrho = q[3];
  a.urhorho = q[4];
  a.mu = q[5];
  return a;
}

}  // namespace

AxiJet axi_jet(const ExteriorField& field, int i, int j) {
  require(i >= 0 && i <= field.grid->Ns() && j >= 0 && j <= field.grid->Ntheta(),
          "node outside the grid");
  return make_jet(*field.grid, field.u, i, j);
}

fields::Jet2 to_jet2(const AxiJet& a, int n) {
  fields::Jet2 j;
  j.x = Eigen::VectorXd::Zero(n);
  j.x(0) = a.z;
  j.x(1) = a.rho;
  j.u = a.u;
  j.g = Eigen::VectorXd::Zero(n);
  j.g(0) = a.uz;
  j.g(1) = a.urho;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * a.mu;
  h(0, 0) = a.uzz;
  h(0, 1) = h(1, 0) = a.uzrho;
  h(1, 1) = a.urhorho;
  j.H = symfunc::SymMat(h);
  return j;
}

fields::Jet2 hessian_axisym(const ExteriorField& field, int i, int j) {
  return to_jet2(axi_jet(field, i, j), field.dim());
}

Eigen::VectorXd axi_eigenvalues(const AxiJet& a, int n) {
  Eigen::VectorXd e(n);
  const double m = 0.5 * (a.uzz + a.urhorho);
  const double d = std::hypot(0.5 * (a.uzz - a.urhorho), a.uzrho);
  e(0) = m - d;
  e(1) = m + d;
  for (int i = 2; i < n; ++i) e(i) = a.mu;
  return e;
}

double axi_sigma(const AxiJet& a, int n, int k) {
  if (k == 0) return 1.0;
  return block_sigma(a.uzz, a.uzrho, a.urhorho, a.mu, n, k).value;
}

namespace {

double fit_exponent(const ExteriorField& f) { return static_cast<double>(f.dim()) / f.k - 2.0; }

}  // namespace

RhoFit fit_rho(const ExteriorField& field) {
  const AxiGrid& g = *field.grid;
  const int n = g.dim();
  const double p = fit_exponent(field);
  const std::vector<double> wt = polar_weights(g.Ntheta(), n - 2);
  const double lo = 0.6 * g.R_out(), hi = 0.8 * g.R_out();
  double sw = 0.0, swv = 0.0, swv2 = 0.0;
  for (int j = 0; j <= g.Ntheta(); ++j) {
    const double D = std::log(g.R_out() / g.gamma(j));
    for (int i = 0; i <= g.Ns(); ++i) {
      const double r = g.radius(i, j);
      if (r < lo || r > hi) continue;
      // Volume measure r^{n-1} dr = r^n D ds, up to the constant ds.
      const double w = wt[static_cast<std::size_t>(j)] * std::pow(r, n) * D;
      const double v = -field.u(g.index(i, j)) * std::pow(r, p);
      sw += w;
      swv += w * v;
      swv2 += w * v * v;
    }
  }
  require(sw > 0.0, "fitting shell contains no nodes");
  RhoFit out;
  out.rho = swv / sw;
  const double var = std::max(0.0, swv2 / sw - out.rho * out.rho);
  out.rel_variance = var / (out.rho * out.rho);
  return out;
}

RhoFit estimate_rho(const ExteriorField& field, double max_variance) {
  const RhoFit f = fit_rho(field);
  if (!(f.rel_variance <= max_variance))
    throw Error(ErrorCode::PoorFit,
                "far-field relative variance " + std::to_string(f.rel_variance) + " too large");
  return f;
}

std::vector<double> boundary_gradient(const ExteriorField& field) {
  const AxiGrid& g = *field.grid;
  const double hs = 1.0 / g.Ns();
  std::vector<double> out(static_cast<std::size_t>(g.Ntheta()) + 1);
  for (int j = 0; j <= g.Ntheta(); ++j) {
    const auto v = [&](int i) { return field.u(g.index(i, j)); };
    const double us = (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) / (12.0 * hs);
    out[static_cast<std::size_t>(j)] = std::abs(us) * g.boundary_metric(j);
  }
  return out;
}

ExteriorField sample_field(std::shared_ptr<const AxiGrid> grid, int k,
                           const std::function<double(double, double)>& fn, double eps) {
  ExteriorField f;
  f.grid = std::move(grid);
  f.k = k;
  f.eps = eps;
  f.u.resize(f.grid->nodes());
  for (int i = 0; i <= f.grid->Ns(); ++i)
    for (int j = 0; j <= f.grid->Ntheta(); ++j)
      f.u(f.grid->index(i, j)) = fn(f.grid->z(i, j), f.grid->rho(i, j));
  f.rho_hat = fit_rho(f).rho;
  return f;
}

double admissibility_margin(const ExteriorField& field) {
  const AxiGrid& g = *field.grid;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i < g.Ns(); ++i)
    for (int j = 0; j <= g.Ntheta(); ++j)
      worst = std::min(worst, fields::admissibility_margin(
                                  axi_eigenvalues(axi_jet(field, i, j), g.dim()), field.k));
  return worst;
}

namespace {

struct System {
  const AxiGrid& g;
  int n;
  int k;
  double eps;
  double cnk;
  double u_outer = 0.0;

  double rhs(double r) const {
    if (eps <= 0.0) return 0.0;
    return fields::approx_rhs_at_radius(r, {eps, cnk, n});
  }

  struct Eval {
    Eigen::VectorXd res;
    double sup_interior = 0.0;
    double sup = 0.0;
    double scale = 0.0;
    bool admissible = true;
  };

  Eval evaluate(const Eigen::VectorXd& u) const {
    Eval e;
    e.res.resize(g.nodes());
    for (int j = 0; j <= g.Ntheta(); ++j) {
      e.res(g.index(0, j)) = u(g.index(0, j)) + 1.0;
      e.res(g.index(g.Ns(), j)) = u(g.index(g.Ns(), j)) - u_outer;
    }
    for (int i = 1; i < g.Ns(); ++i) {
      for (int j = 0; j <= g.Ntheta(); ++j) {
        const Vec6 q = node_components(g, u, i, j);
        const double r = g.radius(i, j);
        const double rn = std::pow(r, n);
        for (int l = 1; l < k; ++l) {
          if (!(block_sigma(q[2], q[3], q[4], q[5], n, l).value > 0.0)) e.admissible = false;
        }
        const double sk = block_sigma(q[2], q[3], q[4], q[5], n, k).value;
        e.res(g.index(i, j)) = rn * (sk - rhs(r));
        const double mag = std::max({std::abs(q[2]), std::abs(q[3]), std::abs(q[4]), std::abs(q[5])});
        e.scale = std::max(e.scale, rn * std::pow(mag, k) * symfunc::binomial(n, k));
        e.sup_interior = std::max(e.sup_interior, std::abs(e.res(g.index(i, j))));
      }
    }
    e.sup = e.res.cwiseAbs().maxCoeff();
    return e;
  }

  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& u) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(g.nodes()) * 19);
    for (int j = 0; j <= g.Ntheta(); ++j) {
      trip.emplace_back(g.index(0, j), g.index(0, j), 1.0);
      trip.emplace_back(g.index(g.Ns(), j), g.index(g.Ns(), j), 1.0);
    }
    for (int i = 1; i < g.Ns(); ++i) {
      for (int j = 0; j <= g.Ntheta(); ++j) {
        const int row = g.index(i, j);
        const Vec6 q = node_components(g, u, i, j);
        const BlockSigma b = block_sigma(q[2], q[3], q[4], q[5], n, k);
        const double rn = std::pow(g.radius(i, j), n);
        for (const StencilEntry& e : g.stencil(i, j)) {
          const double v = rn * (b.d_uzz * e.w[2] + b.d_uzrho * e.w[3] + b.d_urhorho * e.w[4] +
                                 b.d_mu * e.w[5]);
          trip.emplace_back(row, e.node, v);
        }
      }
    }
    Eigen::SparseMatrix<double> J(g.nodes(), g.nodes());
    J.setFromTriplets(trip.begin(), trip.end());
    J.makeCompressed();
    return J;
  }
};

struct NewtonResult {
  int iterations = 0;
  double sup = 0.0;
  double sup_interior = 0.0;
  double scale = 0.0;
};

NewtonResult newton(const System& sys, Eigen::VectorXd& u, const SolveOptions& opts, double tol_rel) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool analyzed = false;
  System::Eval cur = sys.evaluate(u);
  if (!cur.admissible)
    throw Error(ErrorCode::NewtonStall, "starting iterate is not admissible");
  NewtonResult out;
  for (int it = 0; it <= opts.max_newton; ++it) {
    const double tol = tol_rel * std::max(cur.scale, 1.0);
    if (cur.sup <= tol) {
      out.iterations = it;
      out.sup = cur.sup;
      out.sup_interior = cur.sup_interior;
      out.scale = cur.scale;
      return out;
    }
    if (it == opts.max_newton) break;
    const Eigen::SparseMatrix<double> J = sys.jacobian(u);
    if (!analyzed) {
      lu.analyzePattern(J);
      analyzed = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success)
      throw Error(ErrorCode::NewtonStall, "singular Newton matrix");
    const Eigen::VectorXd step = lu.solve(-cur.res);
    const double norm0 = cur.res.norm();
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      const Eigen::VectorXd trial = u + lambda * step;
      System::Eval ev = sys.evaluate(trial);
      if (ev.admissible && (ev.res.norm() < norm0 || ev.sup <= tol)) {
        u = trial;
        cur = std::move(ev);
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw Error(ErrorCode::NewtonStall,
                  "no admissible decreasing step after " + std::to_string(opts.max_halvings) +
                      " halvings (eps = " + std::to_string(sys.eps) + ")");
  }
  throw Error(ErrorCode::NewtonStall,
              "Newton did not converge in " + std::to_string(opts.max_newton) + " iterations");
}

}  // namespace

ExteriorField solve_exterior(const surfaces::RevolutionBody& body, const ProblemSpec& spec,
                             const std::vector<double>& schedule, const SolveOptions& opts) {
  require(spec.k >= 1 && 2 * spec.k < spec.n, "solver needs 1 <= k < n/2");
  require(body.dim() == spec.n, "body dimension differs from spec.n");
  require(!schedule.empty(), "eps schedule must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    require(schedule[i] > 0.0, "eps must be positive");
    if (i > 0) require(schedule[i] < schedule[i - 1], "eps schedule must be strictly decreasing");
  }
  try {
    (void)surfaces::curvature_samples(body);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StarShapeViolation) throw Error(ErrorCode::NonStarShaped, e.what());
    throw;
  }

  auto grid = std::make_shared<const AxiGrid>(body, opts.Ns, opts.Ntheta, opts.R_out);
  const AxiGrid& g = *grid;
  const int n = spec.n;
  const int k = spec.k;
  const double p = spec.decay();

  ExteriorField field;
  field.grid = grid;
  field.k = k;
  field.cnk = spec.cnk;
  field.u.resize(g.nodes());

  // Initial rho_hat: polar mean of gamma^p.
  double rho0 = opts.rho_initial;
  if (!(rho0 > 0.0)) {
    const std::vector<double> w = polar_weights(g.Ntheta(), n - 2);
    double sw = 0.0, sv = 0.0;
    for (int j = 0; j <= g.Ntheta(); ++j) {
      sw += w[static_cast<std::size_t>(j)];
      sv += w[static_cast<std::size_t>(j)] * std::pow(g.gamma(j), p);
    }
    rho0 = sv / sw;
  }
  for (int i = 0; i <= g.Ns(); ++i)
    for (int j = 0; j <= g.Ntheta(); ++j)
      field.u(g.index(i, j)) = -std::pow(g.gamma(j) / g.radius(i, j), p);

  {
    System probe{g, n, k, schedule.front(), spec.cnk, -rho0 * std::pow(g.R_out(), -p)};
    if (!probe.evaluate(field.u).admissible) {
      // Fall back to the inscribed ball, scaled to -1 on the boundary in the mean.
      const double rin = body.min_radius();
      double mean = 0.0;
      for (int j = 0; j <= g.Ntheta(); ++j) mean += std::pow(rin / g.gamma(j), p);
      mean /= (g.Ntheta() + 1);
      for (int i = 0; i <= g.Ns(); ++i)
        for (int j = 0; j <= g.Ntheta(); ++j)
          field.u(g.index(i, j)) = -std::pow(rin / g.radius(i, j), p) / mean;
    }
  }

  const double tol_rel = spec.tol.newton;
  double rho_hat = rho0;
  int total_newton = 0;
  int total_updates = 0;
  NewtonResult last;
  for (double eps : schedule) {
    System sys{g, n, k, eps, spec.cnk, 0.0};
    const auto solve_with = [&](double rho) {
      sys.u_outer = -rho * std::pow(g.R_out(), -p);
      last = newton(sys, field.u, opts, tol_rel);
      total_newton += last.iterations;
      return fit_rho(field).rho - rho;
    };
    double x0 = rho_hat;
    double f0 = solve_with(x0);
    double x1 = x0 + f0;
    bool converged = std::abs(f0) <= opts.rho_tol * std::abs(x0);
    if (converged) x1 = x0;
    int it = 0;
    double last_change = std::abs(f0) / std::abs(x0);
    while (!converged) {
      if (++it > opts.max_rho_updates)
        throw Error(ErrorCode::TruncationTooClose,
                    "rho_hat did not settle; last relative change " + std::to_string(last_change));
      const double f1 = solve_with(x1);
      ++total_updates;
      if (std::abs(f1) <= opts.rho_tol * std::abs(x1)) {
        converged = true;
        break;
      }
      const double x2 = (f1 != f0) ? x1 - f1 * (x1 - x0) / (f1 - f0) : x1 + f1;
      last_change = std::abs(x2 - x1) / std::abs(x1);
      if (it > 10 && last_change > 1e-4)
        throw Error(ErrorCode::TruncationTooClose,
                    "rho_hat oscillates by " + std::to_string(last_change) + "; enlarge R_out");
      x0 = x1;
      f0 = f1;
      x1 = x2;
    }
    rho_hat = x1;
    field.eps = eps;
    field.eps_history.push_back(eps);
  }

  field.rho_hat = rho_hat;
  field.newton_iterations = total_newton;
  field.rho_updates = total_updates;
  field.residual_norm = last.sup_interior;
  field.residual_scale = last.scale;
  field.rho_variance = estimate_rho(field).rel_variance;
  field.admissible = admissibility_margin(field);
  bool mp = true;
  for (int i = 1; i < g.Ns(); ++i)
    for (int j = 0; j <= g.Ntheta(); ++j) {
      const double v = field.u(g.index(i, j));
      if (!(v >= -1.0 - 1e-12 && v < 0.0)) mp = false;
    }
  field.max_principle = mp;
  return field;
}

ExteriorField solve_exterior(const surfaces::RevolutionBody& body, const ProblemSpec& spec,
                             const SolveOptions& opts) {
  return solve_exterior(body, spec, spec.eps_schedule.empty() ? default_eps_schedule(spec.k)
                                                              : spec.eps_schedule,
                        opts);
}

}  // namespace khessian::solver
