#include "quasiorth/linear_transform.hpp"

#include <algorithm>
#include <utility>

#include "quasiorth/errors.hpp"
#include "quasiorth/quadrature.hpp"

namespace quasiorth {

namespace {

Scalar power_of_two(long exponent, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_ui_2exp(f.get(), 1, exponent, MPFR_RNDN);
  return Scalar(std::move(f));
}

mpfr_prec_t working_precision(std::initializer_list<const Scalar*> values) {
  mpfr_prec_t p = 0;
  for (auto* v : values) p = std::max(p, v->precision());
  return p;
}

}  // namespace

Scalar normalization_constant(const MeasureSpec& measure, const DivisorSpec& div,
                              const Scalar& tol) {
  if (auto* c = std::get_if<ContinuousMeasure>(&measure.kind);
      c && div.kind() == DivisorKind::linear) {
    Scalar root = Scalar(0) - div.D();
    if (c->lo < root && root < c->hi) {
      throw Error(ErrorCode::invalid_divisor,
                  "x + D changes sign inside the support at x = " + root.display());
    }
  }
  int seen_sign = 0;
  auto f = [&](const Abscissa& a) {
    Scalar p = div.evaluate(a);
    int s = p.sign();
    if (s == 0) {
      throw Error(ErrorCode::invalid_divisor,
                  "divisor vanishes at support point x = " + a.x.display());
    }
    if (seen_sign == 0) seen_sign = s;
    if (s != seen_sign) {
      throw Error(ErrorCode::invalid_divisor,
                  "divisor changes sign on the support near x = " + a.x.display());
    }
    return 1 / p;
  };
  Scalar integral = integrate_adaptive(measure, f, tol);
  if (integral.is_zero()) throw Error(ErrorCode::invalid_divisor, "zero normalization integral");
  return 1 / integral;
}

ResolvedDivisor resolve_divisor(const MeasureSpec& measure, const DivisorSpec& div,
                                const Scalar& tol) {
  ResolvedDivisor out{div, normalization_constant(measure, div, tol), false, {}};
  if (!div.has_C()) {
    out.divisor = div.with_C(out.quadrature_C);
    out.C_from_quadrature = true;
    return out;
  }
  if (div.C().sign() != out.quadrature_C.sign()) {
    throw Error(ErrorCode::invalid_divisor,
                "C = " + div.C().display() + " makes C/p(x) negative on the support");
  }
  Scalar mismatch = relative_difference(div.C(), out.quadrature_C);
  if (mismatch > Scalar::rational(1, 100000000)) {
    out.warnings.push_back("given C = " + div.C().display() +
                           " differs from the normalization integral's " +
                           out.quadrature_C.display() + " (relative " + mismatch.display(3) +
                           ")");
  }
  return out;
}

ConnectionCoefficients kappa_sequence(const RecurrenceCoefficients& rc, const DivisorSpec& div,
                                      std::size_t N, const KappaOptions& options) {
  if (div.kind() != DivisorKind::linear) {
    throw Error(ErrorCode::invalid_divisor, "kappa_sequence needs a linear divisor");
  }
  if (N == 0) throw Error(ErrorCode::invalid_argument, "kappa_sequence needs N >= 1");
  const Scalar& C = div.C();
  const Scalar& D = div.D();
  const Scalar beta0 = rc.beta(0);
  const mpfr_prec_t p = working_precision({&C, &D, &beta0});
  const bool exact = p == 0;

  ConnectionCoefficients cc;
  cc.order = 1;
  cc.kappa.reserve(N + 1);
  cc.kappa.emplace_back(0);
  cc.kappa.push_back(beta0 + D - C);

  // Error bound kept at low precision: only its magnitude matters.
  constexpr mpfr_prec_t bound_bits = 53;
  Scalar eps, threshold, breakdown, err;
  if (!exact) {
    eps = power_of_two(-static_cast<long>(p), bound_bits);
    threshold = power_of_two(-static_cast<long>(p / 4), bound_bits);
    breakdown = power_of_two(-static_cast<long>(p / 2), p);
    err = (eps * (abs(beta0) + abs(D) + abs(C)) + abs(options.c_relative_error * C))
              .to_floating(bound_bits);
  }

  for (std::size_t n = 2; n <= N; ++n) {
    const Scalar& prev = cc.kappa[n - 1];
    Scalar bh = rc.beta_hat(n - 2);
    if (exact ? prev.is_zero() : abs(prev) < breakdown * max(Scalar(1), abs(bh))) {
      throw Error(ErrorCode::regularity_breakdown,
                  "kappa_" + std::to_string(n - 1) + " vanishes", n);
    }
    Scalar q = bh / prev;
    Scalar b = rc.beta(n - 1);
    cc.kappa.push_back(b + D - q);
    if (!exact) {
      Scalar local = (eps * (abs(b) + abs(D) + abs(q))).to_floating(bound_bits);
      Scalar gain = abs(q / prev).to_floating(bound_bits);
      err = local + gain * err;
      if (err > threshold * abs(cc.kappa[n])) {
        throw Error(ErrorCode::precision_exhausted,
                    "propagated error bound of kappa_" + std::to_string(n) + " exceeds 2^-" +
                        std::to_string(p / 4) + " relative; increase the precision",
                    n);
      }
    }
  }
  return cc;
}

RecurrenceCoefficients transformed_recurrence(const RecurrenceCoefficients& rc,
                                              const ConnectionCoefficients& cc) {
  if (cc.order != 1) throw Error(ErrorCode::invalid_argument, "expected order-1 connection");
  const std::size_t N = cc.size();
  if (N == 0) throw Error(ErrorCode::insufficient_coefficients, "no kappa available", 1);
  const auto& k = cc.kappa;
  std::vector<Scalar> alpha, alpha_hat;
  alpha.reserve(N);
  alpha_hat.reserve(N);
  alpha.push_back(rc.beta(0) - k[1]);
  for (std::size_t n = 1; n < N; ++n) alpha.push_back(rc.beta(n) + k[n] - k[n + 1]);
  if (N >= 2) {
    alpha_hat.push_back(rc.beta_hat(0) + k[1] * (rc.beta(0) + k[2] - rc.beta(1) - k[1]));
    for (std::size_t n = 2; n <= N; ++n) {
      alpha_hat.push_back(k[n] * rc.beta_hat(n - 2) / k[n - 1]);
    }
  }
  for (std::size_t i = 0; i < alpha_hat.size(); ++i) {
    if (alpha_hat[i].sign() <= 0) {
      throw Error(ErrorCode::positivity_violation,
                  "alpha_hat_" + std::to_string(i) + " = " + alpha_hat[i].display() +
                      " is not positive",
                  i);
    }
  }
  return {std::move(alpha), std::move(alpha_hat)};
}

std::vector<Scalar> apply_connection_sequence(const RecurrenceCoefficients& rc,
                                              const ConnectionCoefficients& cc, std::size_t n,
                                              const Scalar& x) {
  auto b = eval_monic_sequence(rc, n, x);
  std::vector<Scalar> a;
  a.reserve(n + 1);
  a.push_back(b[0]);
  for (std::size_t m = 1; m <= n; ++m) {
    if (m >= cc.kappa.size()) {
      throw Error(ErrorCode::insufficient_coefficients, "kappa sequence exhausted", m);
    }
    Scalar v = b[m] + cc.kappa[m] * b[m - 1];
    if (cc.order == 2 && m >= 2) {
      if (m >= cc.lambda.size()) {
        throw Error(ErrorCode::insufficient_coefficients, "lambda sequence exhausted", m);
      }
      v += cc.lambda[m] * b[m - 2];
    }
    a.push_back(std::move(v));
  }
  return a;
}

Scalar apply_connection(const RecurrenceCoefficients& rc, const ConnectionCoefficients& cc,
                        std::size_t n, const Scalar& x) {
  return apply_connection_sequence(rc, cc, n, x).back();
}

std::vector<Scalar> connection_monomials(const RecurrenceCoefficients& rc,
                                         const ConnectionCoefficients& cc, std::size_t n) {
  auto polys = monic_polynomials(rc, n);
  std::vector<Scalar> out = polys[n];
  if (n == 0) return out;
  if (n >= cc.kappa.size()) {
    throw Error(ErrorCode::insufficient_coefficients, "kappa sequence exhausted", n);
  }
  for (std::size_t i = 0; i < polys[n - 1].size(); ++i) out[i] += cc.kappa[n] * polys[n - 1][i];
  if (cc.order == 2 && n >= 2) {
    for (std::size_t i = 0; i < polys[n - 2].size(); ++i) {
      out[i] += cc.lambda[n] * polys[n - 2][i];
    }
  }
  return out;
}

std::vector<Scalar> conserved_residuals(const RecurrenceCoefficients& rc,
                                        const ConnectionCoefficients& cc, const Scalar& D) {
  const std::size_t N = cc.size();
  std::vector<Scalar> r(N + 1, Scalar(0));
  for (std::size_t n = 2; n <= N; ++n) {
    r[n] = cc.kappa[n] + rc.beta_hat(n - 2) / cc.kappa[n - 1] - rc.beta(n - 1) - D;
  }
  return r;
}

std::optional<std::size_t> kappa_invariant_violation(const RecurrenceCoefficients& rc,
                                                     const ConnectionCoefficients& cc,
                                                     const Scalar& D, const Scalar& slack) {
  const std::size_t N = cc.size();
  if (N == 0) return std::nullopt;
  const int sign = cc.kappa[1].sign();
  for (std::size_t n = 1; n <= N; ++n) {
    const Scalar& k = cc.kappa[n];
    if (k.sign() != sign || sign == 0) return n;
    Scalar edge = rc.beta(n - 1) + D;
    Scalar lo = min(edge, Scalar(0)) - slack;
    Scalar hi = max(edge, Scalar(0)) + slack;
    if (k < lo || k > hi) return n;
  }
  return std::nullopt;
}

}  // namespace quasiorth
