#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace umbilic {

enum class ErrorCode {
  NonPositiveRadius,
  DegenerateZero,
  DimensionTooSmall,
  InvalidFibre,
  InvalidProfile,
  NonspacelikeSlice,
  OutOfChart,
  SingularMetric,
  InsideHorizon,
  NoHorizon,
  OutsideDomain,
  HorizonChart,
  HorizonInInterval,
  DomainTooSmall,
  WrongPatch,
  OutOfRange,
  TimeSymmetricGraph,
  NotTimelike,
  ZeroC0,
  InvalidConfig,
  QuadratureFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace umbilic
