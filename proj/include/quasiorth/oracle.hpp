#pragma once

// Recursion-free ground truth. Two independent routes:
//  - Gram systems of the b-basis under dA, solved per degree for the
//    coefficients of a_n = b_n + sum_j c_n^(j) b_{n-j};
//  - moments of dA and a Hankel solve for the monic orthogonal polynomial
//    (shares nothing with the b-basis).

#include <cstddef>
#include <vector>

#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

using Matrix = std::vector<std::vector<Scalar>>;

/// Solves A x = b by Gaussian elimination with partial pivoting. A pivot
/// below 2^(-p/2) times the largest entry (or an exact zero for rationals)
/// throws OracleSingular.
std::vector<Scalar> solve_linear(Matrix A, std::vector<Scalar> b);

/// G_ij = integral of b_i b_j dA for i, j < m, dA = C/p(x) dB. An "auto" C is
/// resolved first. The integrand is evaluated with b_i / sqrt(h_i) to keep
/// the components comparable, then rescaled.
Matrix gram_matrix(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                   const DivisorSpec& div, std::size_t m, const Scalar& tol);

/// c_n^(1..r') from <a_n, b_{n-i}>_dA = 0 (i = 1..r'), r' = min(r, n), using
/// a Gram matrix of size > n.
std::vector<Scalar> direct_connection(const Matrix& gram, std::size_t r, std::size_t n);

/// Convenience form computing its own Gram matrix.
std::vector<Scalar> direct_connection(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                                      const DivisorSpec& div, std::size_t r, std::size_t n,
                                      const Scalar& tol);

/// mu_k = integral of x^k dA for k < count.
std::vector<Scalar> moments(const MeasureSpec& dB, const DivisorSpec& div, std::size_t count,
                            const Scalar& tol);

/// Monic degree-n polynomial orthogonal to lower degrees, from moments
/// mu_0 .. mu_{2n}; monomial coefficients, constant first. n <= 12; the
/// Hankel system is solved at max(256, moment precision) bits.
std::vector<Scalar> gram_schmidt_moments(const std::vector<Scalar>& mu, std::size_t n);

struct OrthogonalityDefect {
  Scalar max_off_diagonal;  // max |<a_m, a_n>| / sqrt(h_m h_n), m != n
  Scalar max_norm_error;    // max relative error of <a_n, a_n> against h_n
};

/// Checks a recurrence against a measure through degree n_max, with
/// h_n = alpha_hat_0 ... alpha_hat_{n-1}.
OrthogonalityDefect orthogonality_defect(const RecurrenceCoefficients& a_rc,
                                         const MeasureSpec& dA, std::size_t n_max,
                                         const Scalar& tol);

}  // namespace quasiorth
