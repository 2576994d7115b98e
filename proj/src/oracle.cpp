#include "quasiorth/oracle.hpp"

#include <algorithm>
#include <utility>

#include "quasiorth/errors.hpp"
#include "quasiorth/linear_transform.hpp"
#include "quasiorth/quadrature.hpp"

namespace quasiorth {

namespace {

Scalar power_of_two(long exponent, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_ui_2exp(f.get(), 1, exponent, MPFR_RNDN);
  return Scalar(std::move(f));
}

// Integrals of b_i b_j against `measure` for i <= j < m.
Matrix product_integrals(const RecurrenceCoefficients& rc, const MeasureSpec& measure,
                         std::size_t m, const Scalar& tol) {
  const mpfr_prec_t p = tol.precision();
  auto frc = rc.as_floating(p);
  std::vector<Scalar> scale(m);
  for (std::size_t i = 0; i < m; ++i) scale[i] = sqrt(squared_norm(frc, i).to_floating(p));
  const std::size_t dim = m * (m + 1) / 2;
  auto f = [&](const Abscissa& a, std::vector<Scalar>& out) {
    auto b = eval_monic_sequence(frc, m - 1, a.x);
    for (std::size_t i = 0; i < m; ++i) b[i] /= scale[i];
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) out[k++] = b[i] * b[j];
    }
  };
  auto flat = integrate_adaptive(measure, f, dim, tol);
  Matrix G(m, std::vector<Scalar>(m));
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      G[i][j] = flat[k++] * scale[i] * scale[j];
      G[j][i] = G[i][j];
    }
  }
  return G;
}

}  // namespace

std::vector<Scalar> solve_linear(Matrix A, std::vector<Scalar> b) {
  const std::size_t n = b.size();
  if (A.size() != n) throw Error(ErrorCode::invalid_argument, "matrix/vector size mismatch");
  mpfr_prec_t p = 0;
  Scalar largest(0);
  for (const auto& row : A) {
    for (const auto& v : row) {
      p = std::max(p, v.precision());
      if (largest < abs(v)) largest = abs(v);
    }
  }
  const Scalar floor = p == 0 ? Scalar(0) : largest * power_of_two(-static_cast<long>(p / 2), p);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(A[r][col]) > abs(A[pivot][col])) pivot = r;
    }
    if (abs(A[pivot][col]) <= floor) {
      throw Error(ErrorCode::oracle_singular, "singular Gram or Hankel block", col);
    }
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Scalar factor = A[r][col] / A[col][col];
      if (factor.is_zero()) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Scalar> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Scalar s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

Matrix gram_matrix(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                   const DivisorSpec& div, std::size_t m, const Scalar& tol) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "Gram matrix size must be >= 1");
  DivisorSpec resolved = div.has_C() ? div : resolve_divisor(dB, div, tol).divisor;
  return product_integrals(rc, modified_measure(dB, resolved), m, tol);
}

std::vector<Scalar> direct_connection(const Matrix& gram, std::size_t r, std::size_t n) {
  if (r == 0) throw Error(ErrorCode::invalid_argument, "divisor degree r must be >= 1");
  if (gram.size() <= n) {
    throw Error(ErrorCode::insufficient_coefficients, "Gram matrix too small for degree", n);
  }
  const std::size_t k = std::min(r, n);
  if (k == 0) return {};
  Matrix A(k, std::vector<Scalar>(k));
  std::vector<Scalar> rhs(k);
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) A[i - 1][j - 1] = gram[n - i][n - j];
    rhs[i - 1] = -gram[n - i][n];
  }
  try {
    return solve_linear(std::move(A), std::move(rhs));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::oracle_singular) {
      throw Error(ErrorCode::oracle_singular, "Gram block singular at degree " + std::to_string(n), n);
    }
    throw;
  }
}

std::vector<Scalar> direct_connection(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                                      const DivisorSpec& div, std::size_t r, std::size_t n,
                                      const Scalar& tol) {
  return direct_connection(gram_matrix(rc, dB, div, n + 1, tol), r, n);
}

std::vector<Scalar> moments(const MeasureSpec& dB, const DivisorSpec& div, std::size_t count,
                            const Scalar& tol) {
  if (count == 0) return {};
  DivisorSpec resolved = div.has_C() ? div : resolve_divisor(dB, div, tol).divisor;
  auto f = [count](const Abscissa& a, std::vector<Scalar>& out) {
    Scalar power(1);
    for (std::size_t k = 0; k < count; ++k) {
      out[k] = power;
      power *= a.x;
    }
  };
  return integrate_adaptive(modified_measure(dB, resolved), f, count, tol);
}

std::vector<Scalar> gram_schmidt_moments(const std::vector<Scalar>& mu, std::size_t n) {
  if (n > 12) throw Error(ErrorCode::invalid_argument, "Hankel oracle is limited to n <= 12");
  if (mu.size() < 2 * n + 1) {
    throw Error(ErrorCode::insufficient_coefficients, "need moments mu_0 .. mu_2n", mu.size());
  }
  if (n == 0) return {Scalar(1)};
  mpfr_prec_t p = 0;
  for (const auto& m : mu) p = std::max(p, m.precision());
  auto lift = [p](const Scalar& v) { return p == 0 ? v : v.to_floating(std::max<mpfr_prec_t>(p, 256)); };
  Matrix H(n, std::vector<Scalar>(n));
  std::vector<Scalar> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) H[i][j] = lift(mu[i + j]);
    rhs[i] = -lift(mu[i + n]);
  }
  auto c = solve_linear(std::move(H), std::move(rhs));
  c.emplace_back(1);
  return c;
}

OrthogonalityDefect orthogonality_defect(const RecurrenceCoefficients& a_rc,
                                         const MeasureSpec& dA, std::size_t n_max,
                                         const Scalar& tol) {
  auto G = product_integrals(a_rc, dA, n_max + 1, tol);
  auto frc = a_rc.as_floating(tol.precision());
  OrthogonalityDefect out{Scalar(0), Scalar(0)};
  std::vector<Scalar> h(n_max + 1);
  for (std::size_t i = 0; i <= n_max; ++i) h[i] = squared_norm(frc, i).to_floating(tol.precision());
  for (std::size_t i = 0; i <= n_max; ++i) {
    out.max_norm_error = max(out.max_norm_error, relative_difference(G[i][i], h[i]));
    for (std::size_t j = i + 1; j <= n_max; ++j) {
      out.max_off_diagonal = max(out.max_off_diagonal, abs(G[i][j]) / sqrt(h[i] * h[j]));
    }
  }
  return out;
}

}  // namespace quasiorth
