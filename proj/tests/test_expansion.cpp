#include <doctest.h>

#include "quasiorth/expansion.hpp"
#include "quasiorth/linear_transform.hpp"
#include "support.hpp"

using namespace qt;

namespace {

Scalar pochhammer(const Scalar& a, long n) {
  Scalar r(1);
  for (long i = 0; i < n; ++i) r *= a + i;
  return r;
}

}  // namespace

TEST_CASE("inversion_coefficients") {
  ConnectionCoefficients cc;
  cc.kappa = {q(0), q(-1, 3), q(-2, 5)};
  auto c2 = inversion_coefficients(cc, 2);
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == q(1));
  CHECK(c2[1] == q(2, 5));
  CHECK(c2[2] == q(2, 15));  // kappa_1 kappa_2
  auto c1 = inversion_coefficients(cc, 1);
  CHECK(c1[1] == q(1, 3));
  CHECK(inversion_coefficients(cc, 0).size() == 1);
}

TEST_CASE("inversion round trip: b_n = sum_j c_j a_{n-j}") {
  auto rc = family_recurrence(FamilySpec::jacobi(q(5, 2), q(1, 2)), NumericContext::rational());
  auto fam = FamilySpec::jacobi(q(5, 2), q(1, 2));
  auto C = reference_normalization(fam, DivisorSpec::linear(std::nullopt, q(-1)), NumericContext::rational());
  auto cc = kappa_sequence(rc, DivisorSpec::linear(C, q(-1)), 9);
  for (long xn : {-4, 1, 7}) {
    Scalar x = q(xn, 5);
    auto a = apply_connection_sequence(rc, cc, 9, x);
    auto b = eval_monic_sequence(rc, 9, x);
    for (std::size_t n = 0; n <= 9; ++n) {
      auto c = inversion_coefficients(cc, n);
      Scalar sum(0);
      for (std::size_t j = 0; j <= n; ++j) sum += c[j] * a[n - j];
      CHECK(sum == b[n]);
    }
  }
}

TEST_CASE("jacobi fourier coefficients in Pochhammer form") {
  // f_n = (s+2)_{2n} / (2^n (alpha+1)_n (s+1)_n), s = alpha + gamma
  auto rat = NumericContext::rational();
  for (auto [a, g] : {std::pair{q(1), q(0)}, {q(3), q(0)}, {q(5, 2), q(1, 2)}}) {
    auto fam = FamilySpec::jacobi(a, g);
    auto rc = family_recurrence(fam, rat);
    auto C = reference_normalization(fam, DivisorSpec::linear(std::nullopt, q(-1)), rat);
    auto cc = kappa_sequence(rc, DivisorSpec::linear(C, q(-1)), 12);
    auto f = fourier_coefficients(cc, rc, 12);
    Scalar s = a + g;
    CHECK(f[0] == q(1));
    for (long n = 1; n <= 12; ++n) {
      Scalar expect = pochhammer(s + 2, 2 * n) /
                      (pow(q(2), n) * pochhammer(a + 1, n) * pochhammer(s + 1, n));
      CHECK(f[n] == expect);
    }
  }
}

TEST_CASE("charlier fourier products") {
  // prod kappa_k / beta_hat_{k-1} = sum_{k>=n+1} lambda^{k-n}/k! / (e^lambda - 1)
  auto ctx = fp(256);
  for (long lam : {1, 2}) {
    Scalar L = ctx.integer(lam);
    auto rc = family_recurrence(FamilySpec::charlier(q(lam)), ctx);
    Scalar eL = exp(L);
    auto cc = kappa_sequence(rc, DivisorSpec::linear(L * eL / (eL - 1), ctx.integer(1)), 20);
    auto f = fourier_coefficients(cc, rc, 20);
    for (long n = 1; n <= 20; ++n) {
      Scalar expect = poisson_tail_direct(L, n + 1, ctx) / pow(L, n) / (eL - 1);
      if (n % 2) expect = -expect;
      CHECK(near(f[n], expect, 1e-50));
    }
  }
}

TEST_CASE("evaluate_partial_sum") {
  auto ctx = fp();
  auto fam = FamilySpec::jacobi(q(3), q(0));
  auto rc = family_recurrence(fam, ctx);
  auto cc = kappa_sequence(rc, DivisorSpec::linear(ctx.fraction(-3, 2), ctx.integer(-1)), 200);
  auto f = fourier_coefficients(cc, rc, 200);
  CHECK(evaluate_partial_sum(rc, f, 0, ctx.fraction(3, 10)) == ctx.integer(1));
  Scalar target = ctx.fraction(15, 7);
  Scalar prev = abs(evaluate_partial_sum(rc, f, 10, ctx.fraction(3, 10)) - target);
  for (std::size_t N : {50u, 200u}) {
    Scalar r = abs(evaluate_partial_sum(rc, f, N, ctx.fraction(3, 10)) - target);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("parseval") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto fam = FamilySpec::jacobi(q(3), q(0));
  auto rc = family_recurrence(fam, ctx);
  auto div = DivisorSpec::linear(ctx.fraction(-3, 2), ctx.integer(-1));
  auto cc = kappa_sequence(rc, div, 120);
  auto rep = parseval_residual(rc, cc, div, family_measure(fam, ctx), 120, tol);
  // C^2 integral (1-x)^(3-2) dB(3,0) = 9/8
  CHECK(near(rep.rhs, ctx.fraction(9, 8), 1e-25));
  for (std::size_t n = 1; n <= 120; ++n) {
    CHECK(rep.partial_sums[n] >= rep.partial_sums[n - 1]);
    CHECK(rep.partial_sums[n] <= rep.rhs);
  }
  CHECK(rep.log_weighted_summable);

  // linear divisor away from the semicircle support: finite right side
  auto semi = FamilySpec::semicircle();
  auto srec = family_recurrence(semi, ctx);
  auto sm = family_measure(semi, ctx);
  auto sres = resolve_divisor(sm, DivisorSpec::linear(std::nullopt, ctx.integer(3)), tol);
  auto scc = kappa_sequence(srec, sres.divisor, 24, KappaOptions{tol});
  auto srep = parseval_residual(srec, scc, sres.divisor, sm, 24, tol);
  CHECK(srep.rhs.is_finite());
  CHECK(tiny(srep.residual, 1e-12));

  auto half = FamilySpec::jacobi(q(1, 2), q(0));
  auto hrc = family_recurrence(half, ctx);
  auto hdiv = DivisorSpec::linear(ctx.fraction(-2, 3), ctx.integer(-1));
  auto hcc = kappa_sequence(hrc, hdiv, 20);
  CHECK(code_of([&] { parseval_residual(hrc, hcc, hdiv, family_measure(half, ctx), 20, tol); }) ==
        ErrorCode::quadrature_divergent);
}
