#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psig {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  IsolatedVertex,
  NotSymmetric,
  SolverFailure,
  SingleEigenvalue,
  MassMismatch,
  NegativeMass,
  OutOfDomain,
  NotProbability,
  LengthMismatch,
  ZeroFunction,
  DimensionMismatch,
  MissingPair,
  SameVertex,
  DegenerateWeight,
  BadRadii,
  InvalidPermutation,
  ZeroVariance,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace psig
