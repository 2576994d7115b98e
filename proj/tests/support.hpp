#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "quasiorth/catalog.hpp"
#include "quasiorth/errors.hpp"
#include "quasiorth/pipeline.hpp"
#include "quasiorth/scalar.hpp"

namespace qt {

using namespace quasiorth;

inline Scalar q(long num, long den = 1) { return Scalar::rational(num, den); }

inline NumericContext fp(mpfr_prec_t bits = 128) { return NumericContext::floating(bits); }

inline Scalar tol_for(const NumericContext& ctx) { return default_quadrature_tolerance(ctx); }

inline bool near(const Scalar& a, const Scalar& b, double rel) {
  return relative_difference(a, b) <= Scalar::floating(rel, 64);
}

inline bool tiny(const Scalar& a, double bound) { return abs(a) <= Scalar::floating(bound, 64); }

// Code of the quasiorth::Error thrown by f, or nullopt if none.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Poisson partial tails sum_{j >= n} lambda^j / j!, summed term by term in
// the test (no library helpers).
inline Scalar poisson_tail_direct(const Scalar& lambda, std::size_t n, const NumericContext& ctx) {
  Scalar term = ctx.integer(1);
  for (std::size_t j = 1; j <= n; ++j) term = term * lambda / ctx.integer(static_cast<long>(j));
  Scalar sum = term;
  Scalar eps = ctx.epsilon();
  for (std::size_t j = n + 1;; ++j) {
    term = term * lambda / ctx.integer(static_cast<long>(j));
    sum += term;
    if (j > n + 4 && abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

}  // namespace qt
