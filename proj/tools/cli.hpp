#ifndef KHESSIAN_TOOLS_CLI_HPP
#define KHESSIAN_TOOLS_CLI_HPP

// Command-line front end: configuration, orchestration and report emission.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace khessian::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigInvalid = 2,
  kSolverFailure = 3,
  kAuditViolation = 4,
};

/// One run: the subcommand plus flat key/value settings.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;

  /// "command=<c>" followed by sorted "key=value" lines.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical().
  std::uint64_t hash() const;
};

/// Keys accepted in config files and as --<key> options.
const std::vector<std::string>& config_keys();

/// Parses "key = value" lines; '#' starts a comment. Problems are appended to
/// `errors` and the offending lines skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors);

/// Runs one command line (without the program name). Artifacts go to `out`
/// unless the config names an output directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace khessian::cli

#endif  // KHESSIAN_TOOLS_CLI_HPP
