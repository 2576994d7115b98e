#include "quasiorth/quadratic_transform.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>

#include "quasiorth/errors.hpp"
#include "quasiorth/linear_transform.hpp"
#include "quasiorth/oracle.hpp"

namespace quasiorth {

namespace {

Scalar power_of_two(long exponent, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_ui_2exp(f.get(), 1, exponent, MPFR_RNDN);
  return Scalar(std::move(f));
}

// True when `value` should be treated as zero for a division.
bool vanishes(const Scalar& value, const Scalar& scale) {
  if (value.is_rational()) return value.is_zero();
  return abs(value) < power_of_two(-static_cast<long>(value.precision() / 2), 53) *
                          max(Scalar(1), abs(scale));
}

void require_positive(const std::vector<Scalar>& alpha_hat) {
  for (std::size_t i = 0; i < alpha_hat.size(); ++i) {
    if (alpha_hat[i].sign() <= 0) {
      throw Error(ErrorCode::positivity_violation,
                  "alpha_hat_" + std::to_string(i) + " = " + alpha_hat[i].display() +
                      " is not positive",
                  i);
    }
  }
}

Scalar relative(const Scalar& residual, std::initializer_list<Scalar> terms) {
  Scalar scale(0);
  for (const auto& t : terms) scale = max(scale, abs(t));
  if (scale.is_zero()) return abs(residual);
  return abs(residual) / scale;
}

}  // namespace

ConnectionCoefficients symmetric_lambda_sequence(const RecurrenceCoefficients& rc,
                                                 const Scalar& C, const Scalar& E,
                                                 std::size_t N) {
  if (N == 0) throw Error(ErrorCode::invalid_argument, "need N >= 1");
  for (std::size_t n = 0; n < N; ++n) {
    if (!rc.beta(n).is_zero()) {
      throw Error(ErrorCode::not_symmetric, "beta_" + std::to_string(n) + " is not zero", n);
    }
  }
  if (C == E) throw Error(ErrorCode::invalid_divisor, "C = E makes the initial lambda_3 undefined");
  ConnectionCoefficients cc;
  cc.order = 2;
  cc.kappa.assign(N + 1, Scalar(0));
  cc.lambda.reserve(N + 1);
  cc.lambda.emplace_back(0);
  cc.lambda.emplace_back(0);
  if (N >= 2) cc.lambda.push_back(rc.beta_hat(0) + E - C);
  if (N >= 3) cc.lambda.push_back(rc.beta_hat(1) + E - E / (C - E) * rc.beta_hat(0));
  for (std::size_t n = 3; n < N; ++n) {
    const Scalar& prev = cc.lambda[n - 1];
    if (vanishes(prev, rc.beta_hat(n - 3))) {
      throw Error(ErrorCode::regularity_breakdown,
                  "lambda_" + std::to_string(n - 1) + " vanishes", n);
    }
    cc.lambda.push_back(cc.lambda[n] + rc.beta_hat(n - 1) -
                        cc.lambda[n] / prev * rc.beta_hat(n - 3));
  }
  return cc;
}

RecurrenceCoefficients symmetric_transformed_recurrence(const RecurrenceCoefficients& rc,
                                                        const ConnectionCoefficients& cc) {
  if (cc.order != 2) throw Error(ErrorCode::invalid_argument, "expected order-2 connection");
  const std::size_t N = cc.size();
  std::vector<Scalar> alpha(N, Scalar(0));
  std::vector<Scalar> alpha_hat;
  for (std::size_t n = 1; n < N; ++n) {
    alpha_hat.push_back(rc.beta_hat(n - 1) + cc.lambda[n] - cc.lambda[n + 1]);
  }
  if (!alpha_hat.empty() && !alpha_hat[0].is_rational()) {
    for (auto& a : alpha) a = a.to_floating(alpha_hat[0].precision());
  }
  require_positive(alpha_hat);
  return {std::move(alpha), std::move(alpha_hat)};
}

namespace {

struct ForwardState {
  std::vector<Scalar> k, l, al, ah;
};

ForwardState bootstrap_state(const RecurrenceCoefficients& rc, std::vector<Scalar> k,
                             std::vector<Scalar> l) {
  ForwardState s{std::move(k), std::move(l), {}, {}};
  const auto& kk = s.k;
  const auto& ll = s.l;
  s.al.push_back(rc.beta(0) - kk[1]);
  s.al.push_back(rc.beta(1) + kk[1] - kk[2]);
  s.al.push_back(rc.beta(2) + kk[2] - kk[3]);
  s.ah.push_back(rc.beta_hat(0) + kk[1] * rc.beta(0) + ll[1] - ll[2] - s.al[1] * kk[1]);
  s.ah.push_back(rc.beta_hat(1) + kk[2] * rc.beta(1) + ll[2] - ll[3] - s.al[2] * kk[2]);
  return s;
}

// Appends kappa_{n+1}, lambda_{n+1}, alpha_n and alpha_hat_{n-1}.
void forward_step(const RecurrenceCoefficients& rc, ForwardState& s, std::size_t n) {
  auto& k = s.k;
  auto& l = s.l;
  if (vanishes(l[n - 1], rc.beta_hat(n - 3))) {
    throw Error(ErrorCode::regularity_breakdown, "lambda_" + std::to_string(n - 1) + " vanishes",
                n);
  }
  if (vanishes(l[n], rc.beta_hat(n - 2))) {
    throw Error(ErrorCode::regularity_breakdown, "lambda_" + std::to_string(n) + " vanishes", n);
  }
  Scalar hat = l[n] * rc.beta_hat(n - 3) / l[n - 1];                                  // (s4)
  Scalar a = (k[n] * rc.beta_hat(n - 2) + l[n] * rc.beta(n - 2) - hat * k[n - 1]) / l[n];  // (s3)
  k.push_back(rc.beta(n) + k[n] - a);                                                    // (s1)
  l.push_back(rc.beta_hat(n - 1) + k[n] * rc.beta(n - 1) + l[n] - a * k[n] - hat);       // (s2)
  s.ah.push_back(std::move(hat));
  s.al.push_back(std::move(a));
}

}  // namespace

QuadraticResult general_quadratic_sequence(const RecurrenceCoefficients& rc,
                                           const MeasureSpec& dB, const DivisorSpec& div,
                                           std::size_t N, const Scalar& tol) {
  if (div.kind() != DivisorKind::quadratic) {
    throw Error(ErrorCode::invalid_divisor, "expected a quadratic divisor");
  }
  if (N < 3) throw Error(ErrorCode::invalid_argument, "the forward scheme needs N >= 3");
  if (tol.is_rational()) throw Error(ErrorCode::backend_unsupported, "tolerance must be a float");
  const mpfr_prec_t p = tol.precision();
  auto G = gram_matrix(rc, dB, div, 4, tol);
  auto c1 = direct_connection(G, 2, 1);
  auto c2 = direct_connection(G, 2, 2);
  auto c3 = direct_connection(G, 2, 3);
  std::vector<Scalar> k0{Scalar(0), c1[0], c2[0], c3[0]};
  std::vector<Scalar> l0{Scalar(0), Scalar(0), c2[1], c3[1]};

  // The forward scheme can amplify the bootstrap error geometrically. A
  // shadow run at 32 extra bits starts from the bootstrap values nudged by
  // the quadrature tolerance (alternating signs); its distance from the main
  // run estimates the propagated error.
  const mpfr_prec_t shadow_bits = p + 32;
  auto shadow_rc = rc.as_floating(shadow_bits);
  const Scalar nudge = max(tol, power_of_two(16 - static_cast<long>(p), 53));
  std::vector<Scalar> ks, ls;
  int sign = 1;
  for (std::size_t i = 0; i < 4; ++i, sign = -sign) {
    ks.push_back(k0[i].to_floating(shadow_bits) * (1 + sign * nudge));
    ls.push_back(l0[i].to_floating(shadow_bits) * (1 - sign * nudge));
  }
  ForwardState main = bootstrap_state(rc, std::move(k0), std::move(l0));
  ForwardState shadow = bootstrap_state(shadow_rc, std::move(ks), std::move(ls));
  const Scalar threshold = power_of_two(-static_cast<long>(p / 4), 53);

  for (std::size_t n = 3; n < N; ++n) {
    forward_step(rc, main, n);
    try {
      forward_step(shadow_rc, shadow, n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::regularity_breakdown) throw;
      throw Error(ErrorCode::precision_exhausted,
                  "perturbed forward run breaks down at index " + std::to_string(n) +
                      "; increase the precision",
                  n);
    }
    Scalar scale = max(max(abs(main.k[n + 1]), abs(main.l[n + 1])),
                       max(abs(main.al[n]), abs(main.ah[n - 1])));
    Scalar drift = max(max(abs(main.k[n + 1] - shadow.k[n + 1]), abs(main.l[n + 1] - shadow.l[n + 1])),
                       max(abs(main.al[n] - shadow.al[n]), abs(main.ah[n - 1] - shadow.ah[n - 1])));
    if (drift > threshold * scale) {
      throw Error(ErrorCode::precision_exhausted,
                  "forward (s1)-(s4) error estimate at index " + std::to_string(n) +
                      " exceeds 2^-" + std::to_string(p / 4) + " relative; increase the precision",
                  n);
    }
  }
  require_positive(main.ah);

  QuadraticResult out{ConnectionCoefficients{}, RecurrenceCoefficients(std::move(main.al), std::move(main.ah))};
  out.connection.order = 2;
  out.connection.kappa = std::move(main.k);
  out.connection.lambda = std::move(main.l);
  return out;
}

QuadraticResult compose_linear_factors(const RecurrenceCoefficients& rc, const MeasureSpec& dB,
                                       const DivisorSpec& div, std::size_t N, const Scalar& tol) {
  if (div.kind() != DivisorKind::quadratic) {
    throw Error(ErrorCode::invalid_divisor, "expected a quadratic divisor");
  }
  if (N == 0) throw Error(ErrorCode::invalid_argument, "need N >= 1");
  const mpfr_prec_t p = tol.precision();
  Scalar D = div.D().to_floating(p);
  Scalar E = div.E().to_floating(p);
  Scalar disc = D * D - 4 * E;
  if (disc.sign() < 0) {
    throw Error(ErrorCode::factorization_unavailable,
                "x^2 + D x + E has complex roots (discriminant " + disc.display() + ")");
  }
  Scalar root = sqrt(disc);
  Scalar r1 = (D - root) / 2;
  Scalar r2 = (D + root) / 2;

  auto stage = [&](const RecurrenceCoefficients& base, const MeasureSpec& measure,
                   const Scalar& r, std::size_t count) {
    ResolvedDivisor resolved = [&] {
      try {
        return resolve_divisor(measure, DivisorSpec::linear(std::nullopt, r), tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::invalid_divisor) throw;
        throw Error(ErrorCode::factorization_unavailable,
                    "factor x + " + r.display() + " is not sign-constant on the support: " +
                        e.what());
      }
    }();
    KappaOptions options;
    options.c_relative_error = power_of_two(16 - static_cast<long>(p), 53);
    auto cc = kappa_sequence(base, resolved.divisor, count, options);
    return std::make_pair(std::move(cc), std::move(resolved.divisor));
  };

  auto [first, div1] = stage(rc, dB, r1, N);
  auto rc1 = transformed_recurrence(rc, first);
  MeasureSpec dB1 = modified_measure(dB, div1);
  auto [second, div2] = stage(rc1, dB1, r2, N);
  auto rc2 = transformed_recurrence(rc1, second);

  QuadraticResult out{ConnectionCoefficients{}, std::move(rc2)};
  auto& cc = out.connection;
  cc.order = 2;
  cc.kappa.assign(N + 1, Scalar(0));
  cc.lambda.assign(N + 1, Scalar(0));
  for (std::size_t n = 1; n <= N; ++n) {
    cc.kappa[n] = first.kappa[n] + second.kappa[n];
    cc.lambda[n] = second.kappa[n] * first.kappa[n - 1];
  }
  return out;
}

Scalar QuadraticResiduals::max() const {
  Scalar m(0);
  for (const auto* v : {&s1, &s2, &s3, &s4}) {
    for (const auto& x : *v) m = quasiorth::max(m, x);
  }
  return m;
}

QuadraticResiduals quadratic_residuals(const RecurrenceCoefficients& rc,
                                       const ConnectionCoefficients& cc,
                                       const RecurrenceCoefficients& transformed) {
  const std::size_t N = cc.size();
  const std::size_t A = transformed.beta_count().value_or(N);
  const std::size_t H = transformed.beta_hat_count().value_or(N);
  auto k = [&](std::size_t n) { return n < cc.kappa.size() ? cc.kappa[n] : Scalar(0); };
  auto l = [&](std::size_t n) {
    return cc.order == 2 && n < cc.lambda.size() ? cc.lambda[n] : Scalar(0);
  };
  auto al = [&](std::size_t n) { return transformed.beta(n); };
  auto ah = [&](std::size_t n) { return transformed.beta_hat(n); };

  QuadraticResiduals r;
  r.s1.assign(N + 1, Scalar(0));
  r.s2.assign(N + 1, Scalar(0));
  r.s3.assign(N + 1, Scalar(0));
  r.s4.assign(N + 1, Scalar(0));
  for (std::size_t n = 0; n + 1 <= N && n < A; ++n) {
    Scalar b = rc.beta(n);
    r.s1[n] = relative(al(n) - b - k(n) + k(n + 1), {al(n), b, k(n), k(n + 1)});
  }
  for (std::size_t n = 1; n + 1 <= N && n < A && n <= H; ++n) {
    Scalar t1 = rc.beta_hat(n - 1), t2 = k(n) * rc.beta(n - 1), t3 = al(n) * k(n);
    r.s2[n] = relative(l(n + 1) - t1 - t2 - l(n) + t3 + ah(n - 1),
                       {l(n + 1), t1, t2, l(n), t3, ah(n - 1)});
  }
  for (std::size_t n = 2; n <= N && n < A && n <= H; ++n) {
    Scalar t1 = al(n) * l(n), t2 = k(n) * rc.beta_hat(n - 2), t3 = l(n) * rc.beta(n - 2),
           t4 = ah(n - 1) * k(n - 1);
    r.s3[n] = relative(t1 - t2 - t3 + t4, {t1, t2, t3, t4});
  }
  for (std::size_t n = 3; n <= N && n <= H; ++n) {
    Scalar t1 = ah(n - 1) * l(n - 1), t2 = l(n) * rc.beta_hat(n - 3);
    r.s4[n] = relative(t1 - t2, {t1, t2});
  }
  return r;
}

}  // namespace quasiorth
