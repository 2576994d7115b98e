#include <doctest.h>

#include <random>

#include "quasiorth/oracle.hpp"
#include "quasiorth/quadratic_transform.hpp"
#include "support.hpp"

using namespace qt;

TEST_CASE("symmetric_lambda_sequence, jacobi(1, 1) over 1 - x^2") {
  auto rc = family_recurrence(FamilySpec::jacobi(q(1), q(1)), NumericContext::rational());
  auto cc = symmetric_lambda_sequence(rc, q(-2, 3), q(-1), 6);
  CHECK(cc.order == 2);
  CHECK(cc.lambda[1] == q(0));
  CHECK(cc.lambda[2] == q(-2, 15));
  CHECK(cc.lambda[3] == q(-6, 35));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(cc.kappa[n] == q(0));

  // target is jacobi(0, 0)
  auto t = symmetric_transformed_recurrence(rc, cc);
  auto leg = family_recurrence(FamilySpec::legendre(), NumericContext::rational());
  for (std::size_t n = 0; n + 1 < 6; ++n) {
    CHECK(t.beta(n) == q(0));
    CHECK(t.beta_hat(n) == leg.beta_hat(n));
  }
}

TEST_CASE("symmetric path on chebyshev_u gives the monic T recurrence") {
  auto rc = family_recurrence(FamilySpec::chebyshev_u(), NumericContext::rational());
  auto cc = symmetric_lambda_sequence(rc, q(-1, 2), q(-1), 10);
  for (std::size_t n = 2; n <= 10; ++n) CHECK(cc.lambda[n] == q(-1, 4));
  auto t = symmetric_transformed_recurrence(rc, cc);
  CHECK(t.beta_hat(0) == q(1, 2));
  for (std::size_t n = 2; n < 10; ++n) CHECK(t.beta_hat(n - 1) == q(1, 4));
}

TEST_CASE("symmetric_lambda_sequence errors") {
  auto rat = NumericContext::rational();
  auto j10 = family_recurrence(FamilySpec::jacobi(q(1), q(0)), rat);
  CHECK(code_of([&] { symmetric_lambda_sequence(j10, q(-1), q(-1), 5); }) ==
        ErrorCode::not_symmetric);
  auto u = family_recurrence(FamilySpec::chebyshev_u(), rat);
  CHECK(code_of([&] { symmetric_lambda_sequence(u, q(2), q(2), 5); }) ==
        ErrorCode::invalid_divisor);
  // lambda_2 = 1/4 + E - C vanishes
  CHECK(code_of([&] { symmetric_lambda_sequence(u, q(5, 4), q(1), 6); }) ==
        ErrorCode::regularity_breakdown);
}

TEST_CASE("general quadratic on Kesten-McKay") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto semi = FamilySpec::semicircle();
  auto rc = family_recurrence(semi, ctx);
  auto dB = family_measure(semi, ctx);
  auto div = kesten_mckay_divisor(q(1, 2), q(1), ctx);
  auto res = general_quadratic_sequence(rc, dB, div, 20, tol);
  const auto& cc = res.connection;
  for (std::size_t n = 1; n <= 20; ++n) CHECK(near(cc.kappa[n], q(-1, 2), 1e-25));
  for (std::size_t n = 2; n <= 20; ++n) CHECK(near(cc.lambda[n], q(1, 4), 1e-25));
  for (std::size_t n = 1; n < 19; ++n) {
    CHECK(tiny(res.recurrence.beta(n), 1e-25));
    CHECK(near(res.recurrence.beta_hat(n), q(1), 1e-25));
  }
  // first entries carry the divisor: alpha_0 = rho y, alpha_hat_0 = 1 - rho^2
  CHECK(near(res.recurrence.beta(0), q(1, 2), 1e-25));
  CHECK(near(res.recurrence.beta_hat(0), q(3, 4), 1e-25));
  CHECK(quadratic_residuals(rc, cc, res.recurrence).max() < Scalar::floating(1e-25, 64));
}

TEST_CASE("general quadratic reduces to the symmetric scheme") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto fam = FamilySpec::jacobi(q(2), q(2));
  auto rc = family_recurrence(fam, ctx);
  auto div = DivisorSpec::quadratic(std::nullopt, ctx.integer(0), ctx.integer(-1));
  auto res = general_quadratic_sequence(rc, family_measure(fam, ctx), div, 12, tol);
  Scalar C = reference_normalization(fam, div, ctx);
  auto sym = symmetric_lambda_sequence(rc, C, ctx.integer(-1), 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(tiny(res.connection.kappa[n], 1e-25));
    if (n >= 2) {
      CHECK(near(res.connection.lambda[n], sym.lambda[n], 1e-20));
      CHECK(near(res.connection.lambda[n], reference_lambda(fam, div, n, ctx), 1e-20));
    }
  }
}

TEST_CASE("compose_linear_factors") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto fam = FamilySpec::jacobi(q(1), q(1));
  auto rc = family_recurrence(fam, ctx);
  auto dB = family_measure(fam, ctx);
  auto div = DivisorSpec::quadratic(std::nullopt, ctx.integer(0), ctx.integer(-1));
  auto comp = compose_linear_factors(rc, dB, div, 10, tol);
  auto sym = symmetric_lambda_sequence(rc, ctx.fraction(-2, 3), ctx.integer(-1), 10);
  for (std::size_t n = 2; n <= 10; ++n) CHECK(near(comp.connection.lambda[n], sym.lambda[n], 1e-20));

  // repeated root outside the support: (x - 2)^2
  auto leg = FamilySpec::legendre();
  auto twice = DivisorSpec::quadratic(std::nullopt, ctx.integer(-4), ctx.integer(4));
  auto rep = compose_linear_factors(family_recurrence(leg, ctx), family_measure(leg, ctx), twice, 8, tol);
  auto gram = gram_matrix(family_recurrence(leg, ctx), family_measure(leg, ctx), twice, 9, tol);
  for (std::size_t n = 2; n <= 8; ++n) {
    auto c = direct_connection(gram, 2, n);
    CHECK(near(rep.connection.kappa[n], c[0], 1e-20));
    CHECK(near(rep.connection.lambda[n], c[1], 1e-20));
  }

  auto semi = FamilySpec::semicircle();
  auto complex_roots = kesten_mckay_divisor(q(1, 2), q(1, 10), ctx);
  CHECK(code_of([&] {
          compose_linear_factors(family_recurrence(semi, ctx), family_measure(semi, ctx),
                                 complex_roots, 6, tol);
        }) == ErrorCode::factorization_unavailable);
}

TEST_CASE("kesten-mckay constants for random parameters") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> rho_pick(2, 8);
  std::uniform_int_distribution<int> y_pick(-15, 15);
  for (int trial = 0; trial < 5; ++trial) {
    Scalar rho = q(rho_pick(rng), 10);
    Scalar y = q(y_pick(rng), 10);
    if (y.is_zero()) y = q(1, 10);
    CAPTURE(rho.display());
    CAPTURE(y.display());
    for (mpfr_prec_t bits = 128;; bits *= 2) {
      auto ctx = fp(bits);
      auto semi = FamilySpec::semicircle();
      try {
        auto res = general_quadratic_sequence(family_recurrence(semi, ctx), family_measure(semi, ctx),
                                              kesten_mckay_divisor(rho, y, ctx), 16, tol_for(ctx));
        for (std::size_t n = 1; n <= 16; ++n) CHECK(near(res.connection.kappa[n], -rho * y, 1e-20));
        for (std::size_t n = 2; n <= 16; ++n) CHECK(near(res.connection.lambda[n], rho * rho, 1e-20));
        break;
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::precision_exhausted);
        REQUIRE(bits < 2048);
      }
    }
  }
}
