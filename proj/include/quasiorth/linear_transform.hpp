#pragma once

// dA = C/(x + D) dB. The monic families are linked by
//   a_n = b_n + kappa_n b_{n-1},
//   kappa_1 = beta_0 + D - C,
//   kappa_n = beta_{n-1} + D - beta_hat_{n-2} / kappa_{n-1}.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

/// C = 1 / integral of 1/p(x) dB, for a divisor of any degree (its C is
/// ignored). Throws InvalidDivisor when p changes sign or vanishes on the
/// support, QuadratureDivergent when the integral does not converge.
Scalar normalization_constant(const MeasureSpec& measure, const DivisorSpec& div,
                              const Scalar& tol);

struct ResolvedDivisor {
  DivisorSpec divisor;           // with C filled in
  Scalar quadrature_C;           // C from the normalization integral
  bool C_from_quadrature = false;
  std::vector<std::string> warnings;
};

/// Fills in an "auto" C by quadrature, or checks a given C against it
/// (warning when the relative mismatch exceeds 1e-8). A C whose sign makes
/// C/p(x) negative on the support throws InvalidDivisor.
ResolvedDivisor resolve_divisor(const MeasureSpec& measure, const DivisorSpec& div,
                                const Scalar& tol);

struct KappaOptions {
  /// Relative error already present in C (e.g. from quadrature); seeds the
  /// error bound of kappa_1.
  Scalar c_relative_error = Scalar(0);
};

/// kappa_1 .. kappa_N. Float runs carry a first-order bound on the
/// propagated rounding error and throw PrecisionExhausted once it exceeds
/// 2^(-p/4) |kappa_n|. A vanishing kappa_{n-1} (exactly, or below
/// 2^(-p/2) max(1, |beta_hat_{n-2}|) in floating point) throws
/// RegularityBreakdown at index n.
ConnectionCoefficients kappa_sequence(const RecurrenceCoefficients& rc, const DivisorSpec& div,
                                      std::size_t N, const KappaOptions& options = {});

/// Recurrence of the a_n from kappa_1 .. kappa_N:
///   alpha_0 = beta_0 - kappa_1,
///   alpha_n = beta_n + kappa_n - kappa_{n+1}                 (1 <= n < N),
///   alpha_hat_0 = beta_hat_0 + kappa_1 (beta_0 + kappa_2 - beta_1 - kappa_1),
///   alpha_hat_{n-1} = kappa_n beta_hat_{n-2} / kappa_{n-1}   (2 <= n <= N).
/// Emits N entries of each sequence (alpha_hat needs N >= 2). Throws
/// PositivityViolation on alpha_hat <= 0.
RecurrenceCoefficients transformed_recurrence(const RecurrenceCoefficients& rc,
                                              const ConnectionCoefficients& cc);

/// a_n(x) = b_n(x) + kappa_n b_{n-1}(x) (+ lambda_n b_{n-2}(x) for order 2).
Scalar apply_connection(const RecurrenceCoefficients& rc, const ConnectionCoefficients& cc,
                        std::size_t n, const Scalar& x);

/// All of a_0(x) .. a_n(x).
std::vector<Scalar> apply_connection_sequence(const RecurrenceCoefficients& rc,
                                              const ConnectionCoefficients& cc, std::size_t n,
                                              const Scalar& x);

/// Monomial coefficients (constant first) of a_n.
std::vector<Scalar> connection_monomials(const RecurrenceCoefficients& rc,
                                         const ConnectionCoefficients& cc, std::size_t n);

/// kappa_n + beta_hat_{n-2}/kappa_{n-1} - beta_{n-1} - D for n = 2..N
/// (entry n of the result; entries 0 and 1 are zero).
std::vector<Scalar> conserved_residuals(const RecurrenceCoefficients& rc,
                                        const ConnectionCoefficients& cc, const Scalar& D);

/// First n violating either the common strict sign of all kappa or
/// beta_{n-1}+D <= kappa_n <= 0 / 0 <= kappa_n <= beta_{n-1}+D; `slack` is
/// an absolute allowance for rounding.
std::optional<std::size_t> kappa_invariant_violation(const RecurrenceCoefficients& rc,
                                                     const ConnectionCoefficients& cc,
                                                     const Scalar& D, const Scalar& slack);

}  // namespace quasiorth
