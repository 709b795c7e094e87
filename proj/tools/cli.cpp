#include "cli.hpp"

#include "khessian/error.hpp"
#include "khessian/identities.hpp"
#include "khessian/io.hpp"
#include "khessian/monotone.hpp"
#include "khessian/problem.hpp"
#include "khessian/radial.hpp"
#include "khessian/solver.hpp"
#include "khessian/surfaces.hpp"
#include "khessian/symfunc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <thread>

namespace khessian::cli {

namespace {

using nlohmann::ordered_json;

const std::vector<std::pair<std::string, std::string>>& key_help() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"n", "ambient dimension (required)"},
      {"k", "Hessian order, 1 <= k < n/2 (required)"},
      {"a", "gradient exponent of F (default n-k-1)"},
      {"C3", "weight constant C3 (default 1)"},
      {"C4", "weight constant C4 (default 0)"},
      {"cnk", "constant of the regularizing right-hand side (default 1)"},
      {"body", "sphere | spheroid:<polar>,<equatorial> | cos:<amplitude>[,<mode>] | file:<path>"},
      {"R", "radius of sphere and cos bodies, length units (default 1)"},
      {"body_samples", "polar intervals of built-in profiles (default Ntheta)"},
      {"Ns", "radial grid intervals (default 256)"},
      {"Ntheta", "polar grid intervals (default 128)"},
      {"R_out", "truncation radius, length units (default 40 max gamma)"},
      {"eps", "comma-separated decreasing eps schedule (default by k)"},
      {"t_grid", "comma-separated levels in (-1, 0) (default from the field)"},
      {"bodies", "semicolon-separated body list for report"},
      {"tol_od", "relative spread accepted as constant boundary gradient (default 1e-3)"},
      {"tol_squeeze", "relative agreement of the squeeze sides (default 1e-6)"},
      {"seed", "seed of the matrix suite (default 1)"},
      {"samples", "matrix suite size (default 10000)"},
      {"workers", "report concurrency (default: hardware threads)"},
      {"out", "output directory; stdout when absent"},
  };
  return keys;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  return out;
}

// Settings resolved from a RunConfig; every problem lands in `errors`.
struct Setup {
  RunConfig cfg;
  std::vector<std::string> errors;
  ProblemSpec spec;
  std::vector<double> eps;
  solver::SolveOptions opts;
  std::optional<surfaces::RevolutionBody> body;
  std::vector<std::string> body_specs;
  std::string out_dir;

  bool has(const std::string& key) const { return cfg.values.count(key) > 0; }

  std::optional<double> real(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const std::string& s = cfg.values.at(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    errors.push_back(key + ": not a finite number: '" + s + "'");
    return std::nullopt;
  }

  std::optional<int> integer(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const std::string& s = cfg.values.at(key);
    try {
      std::size_t pos = 0;
      const long v = std::stol(s, &pos);
      if (pos == s.size() && v >= -1000000000L && v <= 1000000000L) return static_cast<int>(v);
    } catch (const std::exception&) {
    }
    errors.push_back(key + ": not an integer: '" + s + "'");
    return std::nullopt;
  }

  std::optional<std::vector<double>> list(const std::string& key) {
    if (!has(key)) return std::nullopt;
    std::vector<double> out;
    for (const std::string& item : split(cfg.values.at(key), ',')) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        errors.push_back(key + ": not a number list: '" + cfg.values.at(key) + "'");
        return std::nullopt;
      }
    }
    return out;
  }

  double eps_min() const { return eps.empty() ? 0.0 : eps.back(); }
};

surfaces::RevolutionBody make_body(const std::string& text, int n, double R, int samples) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<double> p;
  if (!args.empty() && kind != "file")
    for (const std::string& s : split(args, ',')) p.push_back(std::stod(s));
  if (kind == "sphere" && p.empty()) return surfaces::RevolutionBody::sphere(n, R, samples);
  if (kind == "spheroid" && p.size() == 2)
    return surfaces::RevolutionBody::spheroid(n, p[0], p[1], samples);
  if (kind == "cos" && (p.size() == 1 || p.size() == 2))
    return surfaces::RevolutionBody::cos_perturbed(
        n, p[0], p.size() == 2 ? static_cast<int>(p[1]) : 2, R, samples);
  if (kind == "file" && !args.empty()) {
    auto b = io::load_profile(args);
    require(b.dim() == n, "profile dimension " + std::to_string(b.dim()) + " differs from n");
    return b;
  }
  throw Error(ErrorCode::InvalidArgument, "unrecognized body '" + text + "'");
}

bool needs_problem(const std::string& cmd) { return cmd != "matrix-suite"; }
bool needs_body(const std::string& cmd) {
  return cmd == "solve" || cmd == "monotone" || cmd == "identities" || cmd == "certify";
}
bool needs_coarse(const std::string& cmd) {
  return cmd == "monotone" || cmd == "identities" || cmd == "report";
}

Setup resolve(const RunConfig& cfg) {
  Setup s;
  s.cfg = cfg;
  const std::string& cmd = cfg.command;
  if (s.has("out")) s.out_dir = cfg.values.at("out");
  if (!needs_problem(cmd)) {
    const auto seed = s.integer("seed");
    const auto samples = s.integer("samples");
    if (seed && *seed < 0) s.errors.push_back("seed: must be non-negative");
    if (samples && *samples < 1) s.errors.push_back("samples: must be positive");
    return s;
  }

  const auto n = s.integer("n");
  const auto k = s.integer("k");
  if (!s.has("n")) s.errors.push_back("n: required");
  if (!s.has("k")) s.errors.push_back("k: required");
  if (!n || !k) return s;

  s.spec.n = *n;
  s.spec.k = *k;
  s.spec.a = s.real("a").value_or(*n - *k - 1.0);
  s.spec.C3 = s.real("C3").value_or(1.0);
  s.spec.C4 = s.real("C4").value_or(0.0);
  s.spec.cnk = s.real("cnk").value_or(1.0);
  if (const auto t = s.list("t_grid")) s.spec.t_grid = *t;
  if (const auto o = s.real("tol_od")) s.spec.tol.overdetermined = *o;
  if (const auto q = s.real("tol_squeeze")) s.spec.tol.squeeze = *q;
  if (*k >= 1) s.spec.eps_schedule = default_eps_schedule(*k);
  if (const auto e = s.list("eps")) s.spec.eps_schedule = *e;
  for (const std::string& v : s.spec.violations()) s.errors.push_back(v);
  if (cmd != "radial") s.eps = s.spec.eps_schedule;

  const double R = s.real("R").value_or(1.0);
  if (!(R > 0.0)) s.errors.push_back("R: must be positive");
  s.opts.Ns = s.integer("Ns").value_or(256);
  s.opts.Ntheta = s.integer("Ntheta").value_or(128);
  const int min_ns = needs_coarse(cmd) ? 16 : 8;
  const int min_nt = needs_coarse(cmd) ? 8 : 4;
  if (s.opts.Ns < min_ns || s.opts.Ns % (needs_coarse(cmd) ? 4 : 2) != 0)
    s.errors.push_back("Ns: must be >= " + std::to_string(min_ns) + " and divisible by " +
                       (needs_coarse(cmd) ? "4" : "2"));
  if (s.opts.Ntheta < min_nt || s.opts.Ntheta % (needs_coarse(cmd) ? 4 : 2) != 0)
    s.errors.push_back("Ntheta: must be >= " + std::to_string(min_nt) + " and divisible by " +
                       (needs_coarse(cmd) ? "4" : "2"));
  const int samples = s.integer("body_samples").value_or(std::max(s.opts.Ntheta, 4));

  if (cmd == "report") {
    const std::string list = s.has("bodies") ? cfg.values.at("bodies") : "sphere;spheroid:1.5,1;cos:0.05";
    s.body_specs = split(list, ';');
  } else if (needs_body(cmd)) {
    if (!s.has("body")) s.errors.push_back("body: required for " + cmd);
    else s.body_specs = {cfg.values.at("body")};
  }

  double gmax = 0.0;
  if (s.spec.violations().empty() && R > 0.0) {
    for (const std::string& b : s.body_specs) {
      try {
        const auto body = make_body(b, *n, R, samples);
        gmax = std::max(gmax, body.max_radius());
        if (s.body_specs.size() == 1) s.body = body;
      } catch (const std::exception& e) {
        s.errors.push_back("body: " + std::string(e.what()));
      }
    }
  }
  s.opts.R_out = s.real("R_out").value_or(40.0 * gmax);
  if (gmax > 0.0 && s.opts.R_out < 10.0 * gmax)
    s.errors.push_back("R_out: must be at least 10 times the largest body radius");
  return s;
}

// Output sink: a file in the output directory, or the shared stream.
class Sink {
 public:
  Sink(const Setup& s, std::ostream& out) : dir_(s.out_dir), out_(out) {
    std::ostringstream h;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(s.cfg.hash()));
    h << "# khessian " << s.cfg.command << " config_hash=" << hex << " eps_min=" << num(s.eps_min());
    header_ = h.str();
  }

  const std::string& header() const { return header_; }

  void emit(const std::string& name, const std::string& body) {
    if (dir_.empty()) {
      out_ << body;
      return;
    }
    std::filesystem::create_directories(dir_);
    const std::string path = (std::filesystem::path(dir_) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::FormatError, "cannot write " + path);
    f << body;
    out_ << "wrote " << path << '\n';
  }

 private:
  std::string dir_;
  std::ostream& out_;
  std::string header_;
};

solver::SolveOptions coarse_of(solver::SolveOptions o) {
  o.Ns /= 2;
  o.Ntheta /= 2;
  return o;
}

std::string audit_csv(const std::string& header, const monotone::MonotoneReport& rep) {
  std::ostringstream os;
  os << header << '\n';
  os << "# limit=" << num(rep.limit) << " tol=" << num(rep.tol)
     << " limit_sensitivity=" << num(rep.limit_sensitivity) << " monotone=" << rep.monotone
     << " above_limit=" << rep.above_limit << " strict=" << rep.strict()
     << " constant=" << rep.constant << '\n';
  os << "t,C1,C2,intHk,intHk1,F,violation,limit_gap\n";
  for (const auto& r : rep.rows)
    os << num(r.value.t) << ',' << num(r.value.C1) << ',' << num(r.value.C2) << ','
       << num(r.value.intHk) << ',' << num(r.value.intHk1) << ',' << num(r.value.F) << ','
       << num(r.violation) << ',' << num(r.limit_gap) << '\n';
  return os.str();
}

ordered_json entry_json(const identities::LedgerEntry& e) {
  return {{"name", e.name},         {"lhs", e.lhs},
          {"rhs", e.rhs},           {"gap", e.gap},
          {"verdict", std::string(identities::to_string(e.verdict))},
          {"tolerance", e.tolerance}};
}

// Ledger on the fine field with tolerances widened by the coarse grid and, for
// eps > 0, by a solve at eps / 2.
std::vector<identities::LedgerEntry> numerical_ledger(const solver::ExteriorField& fine,
                                                      const solver::ExteriorField& coarse,
                                                      const solver::ExteriorField* half_eps,
                                                      const ProblemSpec& spec) {
  auto led = identities::inequality_ledger(identities::boundary_data(fine), spec);
  std::vector<identities::LedgerEntry> ref_c, ref_e;
  ref_c = identities::inequality_ledger(identities::boundary_data(coarse), spec);
  if (half_eps) ref_e = identities::inequality_ledger(identities::boundary_data(*half_eps), spec);
  if (spec.k >= 2) {
    const auto add = [&](std::vector<identities::LedgerEntry>& v, const solver::ExteriorField& f) {
      for (int which = 0; which < 2; ++which) {
        try {
          v.push_back(which == 0 ? identities::identity_lemma33(f) : identities::pohozaev_lemma34(f));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotOverdetermined) throw;
          identities::LedgerEntry na;
          na.name = which == 0 ? "energy-identity" : "pohozaev-identity";
          na.identity = true;
          v.push_back(na);
        }
      }
    };
    add(led, fine);
    add(ref_c, coarse);
    if (half_eps) add(ref_e, *half_eps);
  }
  identities::widen_tolerance(led, ref_c, 1.0 / 3.0);
  if (half_eps) identities::widen_tolerance(led, ref_e, 4.0 / 3.0);
  return led;
}

bool any_violated(const std::vector<identities::LedgerEntry>& led) {
  return std::any_of(led.begin(), led.end(), [](const identities::LedgerEntry& e) {
    return e.verdict == identities::Verdict::Violated;
  });
}

int cmd_matrix_suite(Setup& s, Sink& sink) {
  const int seed = s.integer("seed").value_or(1);
  const int samples = s.integer("samples").value_or(10000);
  const auto rep = symfunc::property_suite(static_cast<std::uint64_t>(seed), samples);
  std::ostringstream os;
  os << sink.header() << '\n' << "# samples=" << rep.samples << " nm_checks=" << rep.nm_checks << '\n';
  os << "check,value,tolerance,pass\n";
  os << "recursion," << num(rep.max_recursion) << ",1e-10," << (rep.max_recursion <= 1e-10) << '\n';
  os << "reilly," << num(rep.max_reilly) << ",1e-10," << (rep.max_reilly <= 1e-10) << '\n';
  os << "trace," << num(rep.max_trace) << ",1e-10," << (rep.max_trace <= 1e-10) << '\n';
  os << "gradient," << num(rep.max_grad_error) << ",1e-05," << rep.gradient_ok() << '\n';
  os << "newton_maclaurin," << num(rep.min_nm_gap) << ",-1e-12," << rep.newton_maclaurin_ok() << '\n';
  sink.emit("matrix-suite.csv", os.str());
  const bool ok = rep.identities_ok() && rep.gradient_ok() && rep.newton_maclaurin_ok();
  return ok ? kSuccess : kAuditViolation;
}

int cmd_radial(Setup& s, Sink& sink) {
  const radial::RadialSolution sol(s.spec.n, s.spec.k, s.real("R").value_or(1.0));
  std::vector<double> levels = s.spec.t_grid;
  if (levels.empty())
    for (int m = 0; m < 10; ++m) levels.push_back(-1.0 + 0.1 * m);
  const double limit = limit_bound(s.spec, sol.rho());
  std::ostringstream os;
  os << sink.header() << '\n';
  os << "# rho=" << num(sol.rho()) << " c=" << num(sol.c_bdry()) << " limit=" << num(limit) << '\n';
  os << "t,radius,C1,C2,intHk,intHk1,F,limit\n";
  for (double t : levels) {
    const auto li = radial::level_integrals(sol, t, s.spec.a);
    const Weights w = weights(t, s.spec);
    os << num(t) << ',' << num(li.radius) << ',' << num(w.C1) << ',' << num(w.C2) << ','
       << num(li.intHk) << ',' << num(li.intHk1) << ',' << num(radial::radial_F(sol, t, s.spec))
       << ',' << num(limit) << '\n';
  }
  sink.emit("radial.csv", os.str());
  return kSuccess;
}

int cmd_solve(Setup& s, Sink& sink) {
  const auto f = solver::solve_exterior(*s.body, s.spec, s.eps, s.opts);
  std::ostringstream field;
  io::write_field(field, f);
  std::ostringstream summary;
  summary << sink.header() << '\n'
          << "rho_hat=" << num(f.rho_hat) << "\nrho_variance=" << num(f.rho_variance)
          << "\nresidual_norm=" << num(f.residual_norm) << "\nadmissible=" << num(f.admissible)
          << "\nmax_principle=" << f.max_principle << "\nnewton_iterations=" << f.newton_iterations
          << "\nrho_updates=" << f.rho_updates << '\n';
  if (s.out_dir.empty()) {
    sink.emit("field.txt", field.str());
  } else {
    sink.emit("field.txt", field.str());
    std::ostringstream prof;
    io::write_profile(prof, *s.body);
    sink.emit("profile.txt", prof.str());
    sink.emit("solve.txt", summary.str());
  }
  return kSuccess;
}

int cmd_monotone(Setup& s, Sink& sink) {
  const auto fine = solver::solve_exterior(*s.body, s.spec, s.eps, s.opts);
  const auto coarse = solver::solve_exterior(*s.body, s.spec, s.eps, coarse_of(s.opts));
  const auto rep = monotone::monotonicity_audit(fine, coarse, s.spec);
  sink.emit("monotone.csv", audit_csv(sink.header(), rep));
  if (!s.out_dir.empty()) {
    std::ostringstream plot;
    for (const auto& r : rep.rows) plot << num(r.value.t) << ' ' << num(r.value.F) << '\n';
    sink.emit("F.dat", plot.str());
  }
  return rep.passed() ? kSuccess : kAuditViolation;
}

int cmd_identities(Setup& s, Sink& sink) {
  const auto fine = solver::solve_exterior(*s.body, s.spec, s.eps, s.opts);
  const auto coarse = solver::solve_exterior(*s.body, s.spec, s.eps, coarse_of(s.opts));
  std::optional<solver::ExteriorField> half;
  if (s.eps_min() > 0.0) {
    std::vector<double> sched = s.eps;
    sched.push_back(0.5 * s.eps_min());
    half = solver::solve_exterior(*s.body, s.spec, sched, s.opts);
  }
  const auto led = numerical_ledger(fine, coarse, half ? &*half : nullptr, s.spec);
  std::ostringstream csv;
  csv << sink.header() << '\n' << "name,lhs,rhs,gap,verdict,tolerance\n";
  ordered_json entries = ordered_json::array();
  for (const auto& e : led) {
    csv << e.name << ',' << num(e.lhs) << ',' << num(e.rhs) << ',' << num(e.gap) << ','
        << identities::to_string(e.verdict) << ',' << num(e.tolerance) << '\n';
    entries.push_back(entry_json(e));
  }
  sink.emit("identities.csv", csv.str());
  if (!s.out_dir.empty()) {
    ordered_json j = {{"config_hash", sink.header().substr(sink.header().find("config_hash=") + 12, 16)},
                      {"eps_min", s.eps_min()},
                      {"c_formula", identities::c_formula(fine.grid->body_on_grid(), s.spec.k)},
                      {"entries", entries}};
    sink.emit("identities.json", j.dump(2) + "\n");
  }
  return any_violated(led) ? kAuditViolation : kSuccess;
}

std::string certify_text(const identities::CertifyReport& r) {
  std::ostringstream os;
  os << "verdict=" << identities::to_string(r.verdict) << "\nspread=" << num(r.spread)
     << "\nc_measured=" << num(r.c_measured) << "\nc_predicted=" << num(r.c_predicted)
     << "\nsqueeze_lhs=" << num(r.squeeze_lhs) << "\nsqueeze_rhs=" << num(r.squeeze_rhs)
     << "\nsqueeze_rel=" << num(r.squeeze_rel) << "\nradius_deviation=" << num(r.radius_deviation)
     << "\nconvex=" << r.convex << "\nreason=" << r.reason << '\n';
  return os.str();
}

int cmd_certify(Setup& s, Sink& sink) {
  const auto f = solver::solve_exterior(*s.body, s.spec, s.eps, s.opts);
  sink.emit("certify.txt", sink.header() + "\n" + certify_text(identities::certify_ball(f, s.spec)));
  return kSuccess;
}

struct BodyResult {
  std::string row;
  bool violation = false;
  std::string error;
};

BodyResult report_body(const std::string& spec_text, const Setup& s) {
  BodyResult out;
  try {
    const int samples = s.cfg.values.count("body_samples")
                            ? std::stoi(s.cfg.values.at("body_samples"))
                            : std::max(s.opts.Ntheta, 4);
    const auto body = make_body(spec_text, s.spec.n,
                                s.cfg.values.count("R") ? std::stod(s.cfg.values.at("R")) : 1.0,
                                samples);
    const auto fine = solver::solve_exterior(body, s.spec, s.eps, s.opts);
    const auto coarse = solver::solve_exterior(body, s.spec, s.eps, coarse_of(s.opts));
    const auto audit = monotone::monotonicity_audit(fine, coarse, s.spec);
    const auto led = numerical_ledger(fine, coarse, nullptr, s.spec);
    const auto cert = identities::certify_ball(fine, s.spec);
    const auto gap = [&](const char* name) {
      for (const auto& e : led)
        if (e.name == name) return e.gap;
      return 0.0;
    };
    std::ostringstream os;
    os << csv_field(spec_text) << ',' << identities::to_string(cert.verdict) << ',' << num(cert.spread) << ','
       << num(fine.rho_hat) << ',' << num(audit.rows.front().value.F) << ',' << num(audit.limit)
       << ',' << num(audit.tol) << ',' << num(audit.max_violation) << ',' << audit.monotone << ','
       << audit.strict() << ',' << num(gap("weighted-curvature")) << ',' << num(gap("gradient-quermass")) << ','
       << any_violated(led) << '\n';
    out.row = os.str();
    out.violation = !audit.passed() || any_violated(led);
  } catch (const std::exception& e) {
    out.error = spec_text + ": " + e.what();
  }
  return out;
}

int cmd_report(Setup& s, Sink& sink, std::ostream& err) {
  const int workers = std::max(1, s.integer("workers").value_or(
                                      static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))));
  std::vector<BodyResult> results(s.body_specs.size());
  // Fan out in batches of `workers`; rows are written in input order.
  for (std::size_t start = 0; start < s.body_specs.size(); start += static_cast<std::size_t>(workers)) {
    std::vector<std::future<BodyResult>> jobs;
    const std::size_t stop = std::min(s.body_specs.size(), start + static_cast<std::size_t>(workers));
    for (std::size_t m = start; m < stop; ++m)
      jobs.push_back(std::async(std::launch::async, report_body, s.body_specs[m], std::cref(s)));
    for (std::size_t m = start; m < stop; ++m) results[m] = jobs[m - start].get();
  }
  std::ostringstream os;
  os << sink.header() << '\n'
     << "body,verdict,spread,rho_hat,F_boundary,limit,tol,max_violation,monotone,strict,gap_weighted_curvature,"
        "gap_gradient_quermass,ledger_violation\n";
  bool failed = false, violation = false;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      err << "solver failure: " << r.error << '\n';
      failed = true;
      continue;
    }
    os << r.row;
    violation = violation || r.violation;
  }
  sink.emit("report.csv", os.str());
  if (failed) return kSolverFailure;
  return violation ? kAuditViolation : kSuccess;
}

int config_invalid(const Setup& s, std::ostream& err) {
  ordered_json j = {{"status", "config-invalid"}, {"command", s.cfg.command}, {"violations", s.errors}};
  err << j.dump() << '\n';
  return kConfigInvalid;
}

}  // namespace

std::string RunConfig::canonical() const {
  std::string s = "command=" + command + "\n";
  for (const auto& [k, v] : values) s += k + "=" + v + "\n";
  return s;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& p : key_help()) k.push_back(p.first);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("config line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      errors.push_back("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    out[key] = value;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments for k-Hessian exterior problems"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::string config_path;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"matrix-suite", "randomized symmetric-function property battery"},
      {"radial", "closed-form radial tables"},
      {"solve", "solve the exterior problem and write a field checkpoint"},
      {"monotone", "F(t) over the level sets with the monotonicity audit"},
      {"identities", "integral identity and inequality ledger"},
      {"certify", "overdetermined-problem verdict"},
      {"report", "audit summary over a battery of bodies"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", config_path, "flat key = value configuration file");
    for (const auto& [key, help] : key_help()) sc->add_option("--" + key, flags[key], help);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    Setup s;
    s.cfg.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    s.errors.push_back(e.what());
    return config_invalid(s, err);
  }

  CLI::App* sc = app.get_subcommands().front();
  RunConfig cfg;
  cfg.command = sc->get_name();
  std::vector<std::string> errors;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      errors.push_back("config: cannot read " + config_path);
    } else {
      std::stringstream ss;
      ss << f.rdbuf();
      cfg.values = parse_config_text(ss.str(), errors);
    }
  }
  for (const auto& key : config_keys())
    if (sc->count("--" + key) > 0) cfg.values[key] = flags[key];

  Setup s = resolve(cfg);
  s.errors.insert(s.errors.begin(), errors.begin(), errors.end());
  if (!s.errors.empty()) return config_invalid(s, err);

  Sink sink(s, out);
  try {
    const std::string& c = cfg.command;
    if (c == "matrix-suite") return cmd_matrix_suite(s, sink);
    if (c == "radial") return cmd_radial(s, sink);
    if (c == "solve") return cmd_solve(s, sink);
    if (c == "monotone") return cmd_monotone(s, sink);
    if (c == "identities") return cmd_identities(s, sink);
    if (c == "certify") return cmd_certify(s, sink);
    return cmd_report(s, sink, err);
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgument ? kConfigInvalid : kSolverFailure;
  }
}

}  // namespace khessian::cli
