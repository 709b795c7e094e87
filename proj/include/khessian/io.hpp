#ifndef KHESSIAN_IO_HPP
#define KHESSIAN_IO_HPP

// Text formats for body profiles and solved fields.
//
// Profile:   "# revolution-profile v1 n=<dim>", then one "theta gamma" pair per
//            line on the uniform grid theta_j = j pi / N.
// Field:     "# exterior-field v1", "key value" header lines, a "profile <N>"
//            block of N + 1 radii and a "u <count>" block of node values.

#include "khessian/solver.hpp"
#include "khessian/surfaces.hpp"

#include <iosfwd>
#include <string>

namespace khessian::io {

void write_profile(std::ostream& os, const surfaces::RevolutionBody& body);
/// Throws FormatError on a malformed header, non-uniform theta or bad values.
surfaces::RevolutionBody read_profile(std::istream& is);

void save_profile(const std::string& path, const surfaces::RevolutionBody& body);
surfaces::RevolutionBody load_profile(const std::string& path);

void write_field(std::ostream& os, const solver::ExteriorField& field);
solver::ExteriorField read_field(std::istream& is);

void save_field(const std::string& path, const solver::ExteriorField& field);
solver::ExteriorField load_field(const std::string& path);

}  // namespace khessian::io

#endif  // KHESSIAN_IO_HPP
