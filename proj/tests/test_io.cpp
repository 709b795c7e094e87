#include <doctest.h>

#include "khessian/error.hpp"
#include "khessian/io.hpp"

#include <sstream>

using namespace khessian;

namespace {

ErrorCode code_of(const std::string& text, bool field) {
  std::istringstream is(text);
  try {
    if (field)
      io::read_field(is);
    else
      io::read_profile(is);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("profile round trip") {
  const auto body = surfaces::RevolutionBody::spheroid(5, 1.5, 1.0, 16);
  std::stringstream ss;
  io::write_profile(ss, body);
  CHECK(ss.str().rfind("# revolution-profile v1 n=5\n", 0) == 0);
  const auto back = io::read_profile(ss);
  CHECK(back.dim() == 5);
  CHECK(back.samples() == body.samples());
}

TEST_CASE("malformed profiles") {
  CHECK(code_of("", false) == ErrorCode::FormatError);
  CHECK(code_of("# something else\n0 1\n", false) == ErrorCode::FormatError);
  CHECK(code_of("# revolution-profile v1 n=3\n0 1\n1 1\n", false) == ErrorCode::FormatError);
  // Five samples, but theta is not j pi / 4.
  CHECK(code_of("# revolution-profile v1 n=3\n0 1\n0.7 1\n1.5707963267948966 1\n"
                "2.356194490192345 1\n3.141592653589793 1\n",
                false) == ErrorCode::FormatError);
  CHECK(code_of("# revolution-profile v1 n=3\n0 1\n0.7853981633974483 x\n", false) ==
        ErrorCode::FormatError);
  // Comments and blank lines are skipped.
  std::istringstream ok("# revolution-profile v1 n=3\n# comment\n0 1\n0.7853981633974483 1\n\n"
                        "1.5707963267948966 1\n2.356194490192345 1\n3.141592653589793 1\n");
  CHECK(io::read_profile(ok).intervals() == 4);
}

TEST_CASE("field round trip") {
  const auto spec = ProblemSpec::make(3, 1, 1.0);
  solver::SolveOptions o;
  o.Ns = 16;
  o.Ntheta = 8;
  const auto f = solver::solve_exterior(surfaces::RevolutionBody::spheroid(3, 1.5, 1.0, 16), spec, o);
  std::stringstream ss;
  io::write_field(ss, f);
  const std::string text = ss.str();
  const auto g = io::read_field(ss);
  CHECK(g.k == f.k);
  CHECK(g.eps == f.eps);
  CHECK(g.rho_hat == f.rho_hat);
  CHECK(g.eps_history == f.eps_history);
  CHECK(g.newton_iterations == f.newton_iterations);
  CHECK(g.grid->Ns() == 16);
  CHECK(g.grid->Ntheta() == 8);
  CHECK(g.grid->R_out() == f.grid->R_out());
  CHECK((g.u - f.u).norm() == 0.0);
  std::stringstream again;
  io::write_field(again, g);
  CHECK(again.str() == text);

  CHECK(code_of("# exterior-field v1\nn 3\n", true) == ErrorCode::FormatError);
  const auto cut = text.substr(0, text.size() - 40);
  CHECK(code_of(cut, true) == ErrorCode::FormatError);
}
