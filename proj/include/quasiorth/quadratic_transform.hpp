#pragma once

// dA = C/(x^2 + D x + E) dB with a_n = b_n + kappa_n b_{n-1} + lambda_n b_{n-2}.
// Matching coefficients in the recurrence of the a_n gives, for every n,
//   (s1) alpha_n = beta_n + kappa_n - kappa_{n+1}
//   (s2) lambda_{n+1} = beta_hat_{n-1} + kappa_n beta_{n-1} + lambda_n
//                       - alpha_n kappa_n - alpha_hat_{n-1}
//   (s3) alpha_n lambda_n = kappa_n beta_hat_{n-2} + lambda_n beta_{n-2}
//                           - alpha_hat_{n-1} kappa_{n-1}
//   (s4) alpha_hat_{n-1} lambda_{n-1} = lambda_n beta_hat_{n-3}
// with kappa_0 = lambda_0 = lambda_1 = 0.

#include <cstddef>
#include <vector>

#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

struct QuadraticResult {
  ConnectionCoefficients connection;
  RecurrenceCoefficients recurrence;
};

/// Symmetric case (beta = 0, D = 0): lambda_1 .. lambda_N with
///   lambda_2 = beta_hat_0 + E - C,
///   lambda_3 = beta_hat_1 + E - E/(C - E) beta_hat_0,
///   lambda_{n+1} = lambda_n + beta_hat_{n-1} - (lambda_n/lambda_{n-1}) beta_hat_{n-3}.
/// kappa is identically zero.
ConnectionCoefficients symmetric_lambda_sequence(const RecurrenceCoefficients& rc,
                                                 const Scalar& C, const Scalar& E, std::size_t N);

/// alpha_n = 0 (n < N) and alpha_hat_{n-1} = beta_hat_{n-1} + lambda_n - lambda_{n+1}
/// (1 <= n < N). Throws PositivityViolation on alpha_hat <= 0.
RecurrenceCoefficients symmetric_transformed_recurrence(const RecurrenceCoefficients& rc,
                                                        const ConnectionCoefficients& cc);

/// General quadratic divisor. kappa_1..3 and lambda_2..3 come from the Gram
/// oracle; afterwards (s4), (s3), (s1), (s2) run forward. Connection through
/// index N (N >= 3), alpha_0 .. alpha_{N-1}, alpha_hat_0 .. alpha_hat_{N-2}.
/// A perturbed shadow run estimates the propagated error; PrecisionExhausted
/// is thrown once it exceeds 2^(-p/4) of the coefficient scale.
QuadraticResult general_quadratic_sequence(const RecurrenceCoefficients& rc,
                                           const MeasureSpec& dB, const DivisorSpec& div,
                                           std::size_t N, const Scalar& tol);

/// Two linear stages x + r_1 then x + r_2 (r_1 <= r_2), each normalized by
/// quadrature against its own input measure. Complex roots, or a root inside
/// the support, throw FactorizationUnavailable.
QuadraticResult compose_linear_factors(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                                       const DivisorSpec& div, std::size_t N, const Scalar& tol);

/// Relative residuals of (s1)-(s4): entry n holds |lhs - rhs| divided by the
/// largest term magnitude, for every n at which the equation involves only
/// available coefficients (zero elsewhere).
struct QuadraticResiduals {
  std::vector<Scalar> s1, s2, s3, s4;
  Scalar max() const;
};

QuadraticResiduals quadratic_residuals(const RecurrenceCoefficients& rc,
                                       const ConnectionCoefficients& cc,
                                       const RecurrenceCoefficients& transformed);

}  // namespace quasiorth
