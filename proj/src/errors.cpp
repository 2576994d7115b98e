#include "quasiorth/errors.hpp"

namespace quasiorth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::insufficient_coefficients: return "InsufficientCoefficients";
    case ErrorCode::backend_unsupported: return "BackendUnsupported";
    case ErrorCode::positivity_violation: return "PositivityViolation";
    case ErrorCode::invalid_family: return "InvalidFamily";
    case ErrorCode::no_closed_form: return "NoClosedForm";
    case ErrorCode::eigen_failure: return "EigenFailure";
    case ErrorCode::integrand_singular: return "IntegrandSingular";
    case ErrorCode::quadrature_divergent: return "QuadratureDivergent";
    case ErrorCode::invalid_divisor: return "InvalidDivisor";
    case ErrorCode::regularity_breakdown: return "RegularityBreakdown";
    case ErrorCode::precision_exhausted: return "PrecisionExhausted";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::factorization_unavailable: return "FactorizationUnavailable";
    case ErrorCode::oracle_singular: return "OracleSingular";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& what,
                     std::optional<std::size_t> index) {
  std::string out(to_string(code));
  if (index) out += " at index " + std::to_string(*index);
  out += ": ";
  out += what;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> index)
    : std::runtime_error(decorate(code, what, index)), code_(code), index_(index) {}

}  // namespace quasiorth
