#pragma once

// End-to-end transform of a problem instance: resolve C, pick the linear,
// symmetric quadratic or general quadratic path, and return both the
// connection and the new recurrence.

#include <cstddef>
#include <string>
#include <vector>

#include "quasiorth/divisor.hpp"
#include "quasiorth/problem.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

enum class TransformPath { linear, symmetric_quadratic, general_quadratic };

std::string_view to_string(TransformPath path) noexcept;

struct TransformOutcome {
  TransformPath path = TransformPath::linear;
  DivisorSpec divisor;  // C resolved
  ConnectionCoefficients connection;
  RecurrenceCoefficients recurrence;
  std::vector<std::string> warnings;
};

/// Quadrature tolerance used for a float context: 2^(16 - precision).
Scalar default_quadrature_tolerance(const NumericContext& ctx);

/// Connection coefficients for indices 1..N+1 and recurrence entries for
/// 0..N-1 at least. Rational runs need an explicit C and skip the
/// normalization check.
TransformOutcome run_transform(const ProblemInstance& instance, std::size_t N);

}  // namespace quasiorth
