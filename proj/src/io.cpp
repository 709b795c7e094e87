#include "khessian/io.hpp"

#include "khessian/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace khessian::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::FormatError, what); }

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail("not a number: '" + s + "'");
  }
  if (pos != s.size()) fail("trailing characters in '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    fail("not an integer: '" + s + "'");
  }
  if (pos != s.size()) fail("trailing characters in '" + s + "'");
  return v;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

void put(std::ostream& os, double v) { os << std::setprecision(17) << v; }

}  // namespace

void write_profile(std::ostream& os, const surfaces::RevolutionBody& body) {
  os << "# revolution-profile v1 n=" << body.dim() << '\n';
  for (int j = 0; j <= body.intervals(); ++j) {
    put(os, body.theta(j));
    os << ' ';
    put(os, body.samples()[static_cast<std::size_t>(j)]);
    os << '\n';
  }
}

surfaces::RevolutionBody read_profile(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail("empty profile");
  const std::string magic = "# revolution-profile v1 n=";
  if (line.rfind(magic, 0) != 0) fail("missing '# revolution-profile v1 n=<dim>' header");
  std::string dim = line.substr(magic.size());
  while (!dim.empty() && (dim.back() == '\r' || dim.back() == ' ')) dim.pop_back();
  const int n = parse_int(dim);

  std::vector<double> theta, gamma;
  while (next_data_line(is, line)) {
    const auto w = split(line);
    if (w.size() != 2) fail("expected 'theta gamma' on each line, got '" + line + "'");
    theta.push_back(parse_double(w[0]));
    gamma.push_back(parse_double(w[1]));
  }
  const int N = static_cast<int>(gamma.size()) - 1;
  if (N < 4 || N % 2 != 0) fail("need an odd number (>= 5) of profile samples");
  for (int j = 0; j <= N; ++j) {
    const double expect = std::numbers::pi * j / N;
    if (std::abs(theta[static_cast<std::size_t>(j)] - expect) > 1e-9)
      fail("theta samples must be j pi / N; line " + std::to_string(j + 2));
  }
  try {
    return surfaces::RevolutionBody(n, std::move(gamma));
  } catch (const Error& e) {
    fail(e.what());
  }
}

void save_profile(const std::string& path, const surfaces::RevolutionBody& body) {
  std::ofstream os(path);
  if (!os) fail("cannot write " + path);
  write_profile(os, body);
}

surfaces::RevolutionBody load_profile(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot read " + path);
  return read_profile(is);
}

void write_field(std::ostream& os, const solver::ExteriorField& f) {
  const solver::AxiGrid& g = *f.grid;
  os << "# exterior-field v1\n";
  os << "n " << g.dim() << '\n';
  os << "k " << f.k << '\n';
  const auto kv = [&](const char* key, double v) {
    os << key << ' ';
    put(os, v);
    os << '\n';
  };
  kv("cnk", f.cnk);
  kv("eps", f.eps);
  kv("rho_hat", f.rho_hat);
  kv("rho_variance", f.rho_variance);
  kv("residual_norm", f.residual_norm);
  kv("residual_scale", f.residual_scale);
  kv("admissible", f.admissible);
  os << "max_principle " << (f.max_principle ? 1 : 0) << '\n';
  os << "newton_iterations " << f.newton_iterations << '\n';
  os << "rho_updates " << f.rho_updates << '\n';
  os << "eps_history";
  for (double e : f.eps_history) {
    os << ' ';
    put(os, e);
  }
  os << '\n';
  os << "Ns " << g.Ns() << '\n';
  os << "Ntheta " << g.Ntheta() << '\n';
  kv("R_out", g.R_out());
  const auto& gamma = g.body().samples();
  os << "profile " << gamma.size() - 1 << '\n';
  for (double v : gamma) {
    put(os, v);
    os << '\n';
  }
  os << "u " << f.u.size() << '\n';
  for (Eigen::Index m = 0; m < f.u.size(); ++m) {
    put(os, f.u(m));
    os << '\n';
  }
}

solver::ExteriorField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# exterior-field v1", 0) != 0)
    fail("missing '# exterior-field v1' header");

  std::map<std::string, std::vector<std::string>> head;
  std::vector<double> gamma;
  std::vector<double> values;
  while (next_data_line(is, line)) {
    auto w = split(line);
    const std::string key = w.front();
    w.erase(w.begin());
    if (key == "profile" || key == "u") {
      if (w.size() != 1) fail("'" + key + "' needs a count");
      const int count = parse_int(w[0]) + (key == "profile" ? 1 : 0);
      if (count < 1) fail("bad count for '" + key + "'");
      auto& dst = key == "profile" ? gamma : values;
      for (int m = 0; m < count; ++m) {
        if (!next_data_line(is, line)) fail("truncated '" + key + "' block");
        dst.push_back(parse_double(split(line).at(0)));
      }
    } else {
      head[key] = std::move(w);
    }
  }
  const auto one = [&](const char* key) -> const std::string& {
    const auto it = head.find(key);
    if (it == head.end() || it->second.size() != 1) fail(std::string("missing header key ") + key);
    return it->second.front();
  };
  if (gamma.empty() || values.empty()) fail("missing profile or u block");

  const int n = parse_int(one("n"));
  solver::ExteriorField f;
  try {
    surfaces::RevolutionBody body(n, gamma);
    f.grid = std::make_shared<const solver::AxiGrid>(body, parse_int(one("Ns")),
                                                     parse_int(one("Ntheta")),
                                                     parse_double(one("R_out")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FormatError) throw;
    fail(e.what());
  }
  if (static_cast<int>(values.size()) != f.grid->nodes()) fail("u block size does not match grid");
  f.k = parse_int(one("k"));
  f.cnk = parse_double(one("cnk"));
  f.eps = parse_double(one("eps"));
  f.rho_hat = parse_double(one("rho_hat"));
  f.rho_variance = parse_double(one("rho_variance"));
  f.residual_norm = parse_double(one("residual_norm"));
  f.residual_scale = parse_double(one("residual_scale"));
  f.admissible = parse_double(one("admissible"));
  f.max_principle = parse_int(one("max_principle")) != 0;
  f.newton_iterations = parse_int(one("newton_iterations"));
  f.rho_updates = parse_int(one("rho_updates"));
  if (const auto it = head.find("eps_history"); it != head.end())
    for (const auto& s : it->second) f.eps_history.push_back(parse_double(s));
  f.u = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return f;
}

void save_field(const std::string& path, const solver::ExteriorField& field) {
  std::ofstream os(path);
  if (!os) fail("cannot write " + path);
  write_field(os, field);
}

solver::ExteriorField load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot read " + path);
  return read_field(is);
}

}  // namespace khessian::io
