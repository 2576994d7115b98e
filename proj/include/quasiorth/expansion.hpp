#pragma once

// Expansion of the density C/(x + D) in the b-basis:
//   C/(x + D) = 1 + sum_{n>=1} f_n b_n(x),  f_n = (-1)^n prod_{k<=n} kappa_k / beta_hat_{k-1}.
// Since the b_n are monic, ||b_n||^2 = beta_hat_0 ... beta_hat_{n-1} and
// Parseval reads
//   1 + sum_{n>=1} prod_{k<=n} kappa_k^2 / beta_hat_{k-1} = C^2 integral dB/(x + D)^2.

#include <cstddef>
#include <vector>

#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

/// c_j = (-1)^j prod_{k=n-j+1}^{n} kappa_k, j = 0..n, so that
/// b_n = sum_j c_j a_{n-j}.
std::vector<Scalar> inversion_coefficients(const ConnectionCoefficients& cc, std::size_t n);

/// f_0 .. f_N by running products.
std::vector<Scalar> fourier_coefficients(const ConnectionCoefficients& cc,
                                         const RecurrenceCoefficients& rc, std::size_t N);

/// sum_{n<=N} f_n b_n(x).
Scalar evaluate_partial_sum(const RecurrenceCoefficients& rc, const std::vector<Scalar>& f,
                            std::size_t N, const Scalar& x);

struct ParsevalReport {
  std::vector<Scalar> partial_sums;  // entry N: 1 + sum_{n=1}^{N} f_n^2 ||b_n||^2
  Scalar rhs;                        // C^2 integral dB/(x + D)^2
  Scalar residual;                   // |partial_sums[N] - rhs|
  /// Partial sums of f_n^2 ||b_n||^2 log^2(n) and whether their increments
  /// appear to decay faster than 1/n (estimated log-log slope < -1).
  std::vector<Scalar> log_weighted_sums;
  double tail_slope = 0;
  bool log_weighted_summable = false;
};

/// Throws QuadratureDivergent when the right-hand integral diverges.
ParsevalReport parseval_residual(const RecurrenceCoefficients& rc,
                                 const ConnectionCoefficients& cc, const DivisorSpec& div,
                                 const MeasureSpec& dB, std::size_t N, const Scalar& tol);

}  // namespace quasiorth
