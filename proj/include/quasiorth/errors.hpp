#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quasiorth {

enum class ErrorCode {
  insufficient_coefficients,
  backend_unsupported,
  positivity_violation,
  invalid_family,
  no_closed_form,
  eigen_failure,
  integrand_singular,
  quadrature_divergent,
  invalid_divisor,
  regularity_breakdown,
  precision_exhausted,
  not_symmetric,
  factorization_unavailable,
  oracle_singular,
  division_by_zero,
  invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. The optional index names the
/// recurrence or quadrature index at which the failure was detected.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace quasiorth
