#include "quasiorth/expansion.hpp"

#include <cmath>
#include <utility>

#include "quasiorth/errors.hpp"
#include "quasiorth/quadrature.hpp"

namespace quasiorth {

namespace {

void require_kappa(const ConnectionCoefficients& cc, std::size_t n) {
  if (cc.order != 1) throw Error(ErrorCode::invalid_argument, "expected order-1 connection");
  if (n > cc.size()) throw Error(ErrorCode::insufficient_coefficients, "kappa sequence exhausted", n);
}

double log_magnitude(const Scalar& v) {
  Scalar f = abs(v).to_floating(64);
  return log(f).to_double();
}

}  // namespace

std::vector<Scalar> inversion_coefficients(const ConnectionCoefficients& cc, std::size_t n) {
  require_kappa(cc, n);
  std::vector<Scalar> c;
  c.reserve(n + 1);
  c.emplace_back(1);
  Scalar product(1);
  for (std::size_t j = 1; j <= n; ++j) {
    product = -product * cc.kappa[n - j + 1];
    c.push_back(product);
  }
  return c;
}

std::vector<Scalar> fourier_coefficients(const ConnectionCoefficients& cc,
                                         const RecurrenceCoefficients& rc, std::size_t N) {
  require_kappa(cc, N);
  std::vector<Scalar> f;
  f.reserve(N + 1);
  f.emplace_back(1);
  for (std::size_t n = 1; n <= N; ++n) f.push_back(-f.back() * cc.kappa[n] / rc.beta_hat(n - 1));
  return f;
}

Scalar evaluate_partial_sum(const RecurrenceCoefficients& rc, const std::vector<Scalar>& f,
                            std::size_t N, const Scalar& x) {
  if (f.size() <= N) {
    throw Error(ErrorCode::insufficient_coefficients, "Fourier coefficients exhausted", N);
  }
  auto b = eval_monic_sequence(rc, N, x);
  Scalar sum(0);
  for (std::size_t n = 0; n <= N; ++n) sum += f[n] * b[n];
  return sum;
}

ParsevalReport parseval_residual(const RecurrenceCoefficients& rc,
                                 const ConnectionCoefficients& cc, const DivisorSpec& div,
                                 const MeasureSpec& dB, std::size_t N, const Scalar& tol) {
  require_kappa(cc, N);
  if (div.kind() != DivisorKind::linear) {
    throw Error(ErrorCode::invalid_divisor, "Parseval identity needs a linear divisor");
  }
  ParsevalReport out;
  const Scalar& C = div.C();
  Scalar integral = integrate_adaptive(
      dB,
      [&div](const Abscissa& a) {
        Scalar p = div.evaluate(a);
        return 1 / (p * p);
      },
      tol);
  out.rhs = C * C * integral;

  out.partial_sums.reserve(N + 1);
  out.partial_sums.emplace_back(1);
  out.log_weighted_sums.reserve(N + 1);
  out.log_weighted_sums.emplace_back(0);
  Scalar term(1);
  std::vector<Scalar> weighted_terms(N + 1, Scalar(0));
  for (std::size_t n = 1; n <= N; ++n) {
    term = term * cc.kappa[n] * cc.kappa[n] / rc.beta_hat(n - 1);
    out.partial_sums.push_back(out.partial_sums.back() + term);
    double ln = std::log(static_cast<double>(n));
    weighted_terms[n] = term * Scalar::floating(ln * ln, 64);
    out.log_weighted_sums.push_back(out.log_weighted_sums.back() + weighted_terms[n]);
  }
  out.residual = abs(out.partial_sums[N] - out.rhs);

  if (N >= 8) {
    std::size_t lo = N / 2;
    if (weighted_terms[N].is_zero() || weighted_terms[lo].is_zero()) {
      out.tail_slope = -INFINITY;
      out.log_weighted_summable = true;
    } else {
      out.tail_slope = (log_magnitude(weighted_terms[N]) - log_magnitude(weighted_terms[lo])) /
                       (std::log(static_cast<double>(N)) - std::log(static_cast<double>(lo)));
      out.log_weighted_summable = out.tail_slope < -1.0;
    }
  }
  return out;
}

}  // namespace quasiorth
