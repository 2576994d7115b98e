#include <doctest.h>

#include <random>

#include "quasiorth/linear_transform.hpp"
#include "quasiorth/quadratic_transform.hpp"
#include "support.hpp"

using namespace qt;

TEST_CASE("normalization_constant") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  Scalar ln2 = log(ctx.integer(2));
  auto leg = family_measure(FamilySpec::legendre(), ctx);
  CHECK(near(normalization_constant(leg, DivisorSpec::linear(std::nullopt, ctx.integer(-3)), tol),
             -2 / ln2, 1e-30));

  Scalar e = exp(ctx.integer(1));
  auto ch = family_measure(FamilySpec::charlier(q(1)), ctx);
  CHECK(near(normalization_constant(ch, DivisorSpec::linear(std::nullopt, ctx.integer(1)), tol),
             e / (e - 1), 1e-30));

  for (auto [a, g] : {std::pair{q(1), q(0)}, {q(5, 2), q(1, 2)}, {q(3), q(2)}}) {
    auto m = family_measure(FamilySpec::jacobi(a, g), ctx);
    CHECK(near(normalization_constant(m, DivisorSpec::linear(std::nullopt, ctx.integer(-1)), tol),
               -2 * a / (a + g + 1), 1e-28));
  }

  CHECK(code_of([&] {
          normalization_constant(leg, DivisorSpec::linear(std::nullopt, ctx.fraction(1, 2)), tol);
        }) == ErrorCode::invalid_divisor);
}

TEST_CASE("kappa_sequence") {
  auto rc = family_recurrence(FamilySpec::jacobi(q(1), q(0)), NumericContext::rational());
  auto cc = kappa_sequence(rc, DivisorSpec::linear(q(-1), q(-1)), 3);
  REQUIRE(cc.size() == 3);
  CHECK(cc.kappa[1] == q(-1, 3));
  CHECK(cc.kappa[2] == q(-2, 5));
  CHECK(cc.kappa[3] == q(-3, 7));

  auto ctx = fp();
  Scalar ln2 = log(ctx.integer(2));
  auto leg = family_recurrence(FamilySpec::legendre(), ctx);
  auto lc = kappa_sequence(leg, DivisorSpec::linear(-2 / ln2, ctx.integer(-3)), 2);
  CHECK(near(lc.kappa[2], -(26 * ln2 - 18) / (9 * ln2 - 6), 1e-30));

  Scalar e = exp(ctx.integer(1));
  auto ch = family_recurrence(FamilySpec::charlier(q(1)), ctx);
  auto cc1 = kappa_sequence(ch, DivisorSpec::linear(e / (e - 1), ctx.integer(1)), 1);
  CHECK(near(cc1.kappa[1], (e - 2) / (e - 1), 1e-30));
}

TEST_CASE("kappa_sequence breakdown") {
  // kappa_1 = beta_0 + D - C = 0
  auto rc = family_recurrence(FamilySpec::legendre(), NumericContext::rational());
  auto err = code_of([&] { kappa_sequence(rc, DivisorSpec::linear(q(2), q(2)), 4); });
  CHECK(err == ErrorCode::regularity_breakdown);
  try {
    kappa_sequence(rc, DivisorSpec::linear(q(2), q(2)), 4);
  } catch (const Error& e) {
    CHECK(e.index() == std::optional<std::size_t>(2));
  }
}

TEST_CASE("kappa_sequence flags exhausted precision") {
  // Legendre with D = -3 loses about 3.5 bits per step.
  auto ctx = fp(64);
  auto leg = family_recurrence(FamilySpec::legendre(), ctx);
  Scalar C = -2 / log(ctx.integer(2));
  CHECK(code_of([&] { kappa_sequence(leg, DivisorSpec::linear(C, ctx.integer(-3)), 40); }) ==
        ErrorCode::precision_exhausted);
}

TEST_CASE("transformed_recurrence") {
  auto rc = family_recurrence(FamilySpec::jacobi(q(1), q(0)), NumericContext::rational());
  auto cc = kappa_sequence(rc, DivisorSpec::linear(q(-1), q(-1)), 12);
  auto t = transformed_recurrence(rc, cc);
  CHECK(t.beta_hat(0) == q(1, 3));
  for (long n = 1; n < 12; ++n) {
    CHECK(t.beta(n - 1) == q(0));
    CHECK(t.beta_hat(n - 1) == q(n * n, (2 * n - 1) * (2 * n + 1)));
  }

  // constant kappa and beta telescope to alpha_n = beta
  RecurrenceCoefficients flat([](std::size_t) { return q(2); }, [](std::size_t) { return q(1); });
  ConnectionCoefficients k;
  k.kappa = {q(0), q(-1, 2), q(-1, 2), q(-1, 2), q(-1, 2)};
  auto tf = transformed_recurrence(flat, k);
  for (std::size_t n = 1; n < 4; ++n) CHECK(tf.beta(n) == q(2));

  ConnectionCoefficients neg;
  neg.kappa = {q(0), q(1), q(-1)};
  CHECK(code_of([&] { transformed_recurrence(flat, neg); }) == ErrorCode::positivity_violation);
}

TEST_CASE("charlier transformed coefficients") {
  auto ctx = fp(256);
  for (long lam : {1, 3}) {
    Scalar L = ctx.integer(lam);
    auto rc = family_recurrence(FamilySpec::charlier(q(lam)), ctx);
    Scalar eL = exp(L);
    auto cc = kappa_sequence(rc, DivisorSpec::linear(L * eL / (eL - 1), ctx.integer(1)), 15);
    auto t = transformed_recurrence(rc, cc);
    for (std::size_t n = 2; n <= 15; ++n) {
      Scalar expect = L * ctx.integer(static_cast<long>(n)) * poisson_tail_direct(L, n + 1, ctx) *
                      poisson_tail_direct(L, n - 1, ctx) /
                      pow(poisson_tail_direct(L, n, ctx), 2);
      CHECK(near(t.beta_hat(n - 1), expect, 1e-50));
    }
  }
}

TEST_CASE("apply_connection") {
  auto rc = family_recurrence(FamilySpec::jacobi(q(1), q(0)), NumericContext::rational());
  auto cc = kappa_sequence(rc, DivisorSpec::linear(q(-1), q(-1)), 3);
  CHECK(apply_connection(rc, cc, 1, q(2)) == q(2) - rc.beta(0) + cc.kappa[1]);
  CHECK(apply_connection(rc, cc, 2, q(1)) == q(2, 3));
  auto mono = connection_monomials(rc, cc, 2);
  CHECK(mono[0] == q(-1, 3));
  CHECK(mono[1] == q(0));
  CHECK(mono[2] == q(1));

  auto ctx = fp();
  auto semi = family_recurrence(FamilySpec::semicircle(), ctx);
  ConnectionCoefficients km;
  km.order = 2;
  km.kappa = {q(0), q(-1, 2), q(-1, 2)};
  km.lambda = {q(0), q(0), q(1, 4)};
  CHECK(near(apply_connection(semi, km, 2, ctx.integer(0)), q(-3, 4), 1e-35));
}

TEST_CASE("kappa invariants on random linear divisors") {
  // Divisors with the root outside [-1, 1] on random Jacobi measures: all
  // kappa share a sign, lie between 0 and beta_{n-1} + D, and the conserved
  // quantity holds.
  auto ctx = fp(192);
  auto tol = tol_for(ctx);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> param(0, 10);
  std::uniform_int_distribution<int> shift(1, 40);
  std::bernoulli_distribution side;
  for (int trial = 0; trial < 8; ++trial) {
    auto fam = FamilySpec::jacobi(q(param(rng) - 1, 2) + q(1, 4), q(param(rng), 3));
    Scalar D = (ctx.integer(1) + ctx.fraction(shift(rng), 10));
    if (side(rng)) D = -D;
    CAPTURE(fam.name());
    CAPTURE(D.display());
    auto rc = family_recurrence(fam, ctx);
    auto res = resolve_divisor(family_measure(fam, ctx), DivisorSpec::linear(std::nullopt, D), tol);
    KappaOptions opt{tol};
    ConnectionCoefficients cc;
    try {
      cc = kappa_sequence(rc, res.divisor, 30, opt);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::precision_exhausted);
      REQUIRE(e.index().has_value());
      cc = kappa_sequence(rc, res.divisor, *e.index() - 1, opt);
    }
    CHECK_FALSE(kappa_invariant_violation(rc, cc, D, ctx.epsilon() * 1024).has_value());
    auto r = conserved_residuals(rc, cc, D);
    for (std::size_t n = 2; n <= cc.size(); ++n) CHECK(tiny(r[n], 1e-45));
  }
}
