#include <algorithm>
#include <cstdlib>
#include <string>

#include "psig/error.hpp"
#include "psig/parallel.hpp"

namespace psig {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::SingleEigenvalue: return "SingleEigenvalue";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotProbability: return "NotProbability";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::BadRadii: return "BadRadii";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SPECTRA_SIG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // malformed value: fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace psig
