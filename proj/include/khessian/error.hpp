#ifndef KHESSIAN_ERROR_HPP
#define KHESSIAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace khessian {

enum class ErrorCode {
  InvalidArgument,
  DegenerateGradient,
  StarShapeViolation,
  PoleSingularity,
  NotConvex,
  OutOfDomain,
  AxisDivision,
  NewtonStall,
  NonStarShaped,
  TruncationTooClose,
  PoorFit,
  LevelOutOfRange,
  CriticalPointOnLevel,
  NotOverdetermined,
  FormatError,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported with one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace khessian

#endif  // KHESSIAN_ERROR_HPP
