#pragma once

// Monic three-term recurrences
//
//   b_{n+1}(x) = (x - beta_n) b_n(x) - beta_hat_{n-1} b_{n-1}(x),
//   b_{-1} = 0, b_0 = 1.
//
// beta_hat(k) stores beta_hat_k, so the step producing b_{n+1} reads
// beta_hat(n-1).

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "quasiorth/scalar.hpp"

namespace quasiorth {

class RecurrenceCoefficients {
 public:
  using Generator = std::function<Scalar(std::size_t)>;

  /// Stored coefficients. The usable depth is limited by the array lengths.
  RecurrenceCoefficients(std::vector<Scalar> beta, std::vector<Scalar> beta_hat);
  /// Lazy closed-form coefficients, unbounded unless `limit` is given.
  RecurrenceCoefficients(Generator beta, Generator beta_hat,
                         std::optional<std::size_t> limit = std::nullopt);

  Scalar beta(std::size_t n) const;
  Scalar beta_hat(std::size_t k) const;

  /// Number of available beta (resp. beta_hat) entries; nullopt if unbounded.
  std::optional<std::size_t> beta_count() const;
  std::optional<std::size_t> beta_hat_count() const;

  /// Lazily converts every coefficient to a float at `precision` bits.
  RecurrenceCoefficients as_floating(mpfr_prec_t precision) const;
  /// Stored copy of the first `count` coefficients of each sequence.
  RecurrenceCoefficients materialize(std::size_t count) const;

 private:
  struct Source;
  std::shared_ptr<const Source> source_;
};

struct JacobiMatrix {
  std::vector<Scalar> diag;
  std::vector<Scalar> offdiag;
  std::size_t dimension() const { return diag.size(); }
};

/// Values b_0(x), ..., b_n(x).
std::vector<Scalar> eval_monic_sequence(const RecurrenceCoefficients& rc, std::size_t n,
                                        const Scalar& x);

/// Integral of b_n^2 against the (normalized) orthogonality measure:
/// beta_hat_0 * ... * beta_hat_{n-1}.
Scalar squared_norm(const RecurrenceCoefficients& rc, std::size_t n);

/// m x m symmetric tridiagonal matrix with off-diagonal sqrt(beta_hat_k).
/// Needs float coefficients and beta_hat_k > 0 for k < m-1.
JacobiMatrix jacobi_matrix(const RecurrenceCoefficients& rc, std::size_t m);

/// Monomial coefficients (constant term first) of b_0, ..., b_n.
std::vector<std::vector<Scalar>> monic_polynomials(const RecurrenceCoefficients& rc,
                                                   std::size_t n);

}  // namespace quasiorth
