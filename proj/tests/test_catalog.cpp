#include <doctest.h>

#include "support.hpp"

using namespace qt;

TEST_CASE("family recurrences") {
  auto ctx = NumericContext::rational();
  auto j = family_recurrence(FamilySpec::jacobi(q(1), q(0)), ctx);
  CHECK(j.beta(0) == q(-1, 3));
  CHECK(j.beta_hat(0) == q(2, 9));

  auto c = family_recurrence(FamilySpec::charlier(q(1)), ctx);
  for (long n = 0; n < 10; ++n) {
    CHECK(c.beta(n) == q(n + 1));
    CHECK(c.beta_hat(n) == q(n + 1));
  }
  auto s = family_recurrence(FamilySpec::semicircle(), ctx);
  CHECK(s.beta(4) == q(0));
  CHECK(s.beta_hat(4) == q(1));

  // legendre is jacobi(0, 0): beta_hat_{n-1} = n^2 / (4n^2 - 1)
  auto leg = family_recurrence(FamilySpec::legendre(), ctx);
  for (long n = 1; n < 12; ++n) CHECK(leg.beta_hat(n - 1) == q(n * n, 4 * n * n - 1));
}

TEST_CASE("invalid families") {
  CHECK(code_of([] { FamilySpec::jacobi(q(-1), q(0)).validate(); }) == ErrorCode::invalid_family);
  CHECK(code_of([] { FamilySpec::jacobi(q(0), q(-3, 2)).validate(); }) ==
        ErrorCode::invalid_family);
  CHECK(code_of([] { FamilySpec::charlier(q(0)).validate(); }) == ErrorCode::invalid_family);
}

TEST_CASE("family measures") {
  auto ctx = fp();
  auto leg = family_measure(FamilySpec::legendre(), ctx);
  auto* c = std::get_if<ContinuousMeasure>(&leg.kind);
  REQUIRE(c);
  CHECK(c->lo == q(-1));
  CHECK(c->hi == q(1));
  Abscissa mid{ctx.fraction(1, 5), c->lo, c->hi, ctx.fraction(6, 5), ctx.fraction(4, 5)};
  CHECK(near(c->density(mid), q(1, 2), 1e-35));

  auto ch = family_measure(FamilySpec::charlier(q(3)), ctx);
  auto* d = std::get_if<DiscreteMeasure>(&ch.kind);
  REQUIRE(d);
  // e^-3 3^4 / 4!
  CHECK(d->location(4) == q(4));
  CHECK(near(d->weight(4), exp(ctx.integer(-3)) * ctx.fraction(81, 24), 1e-35));

  auto semi = family_measure(FamilySpec::semicircle(), ctx);
  auto* s = std::get_if<ContinuousMeasure>(&semi.kind);
  REQUIRE(s);
  Abscissa zero{ctx.integer(0), s->lo, s->hi, ctx.integer(2), ctx.integer(2)};
  CHECK(near(s->density(zero), 1 / Scalar::pi(128), 1e-35));
}

TEST_CASE("reference constants") {
  auto ctx = fp();
  auto jac = FamilySpec::jacobi(q(1), q(0));
  auto div = DivisorSpec::linear(q(-1), q(-1));
  CHECK(near(reference_kappa(jac, div, 2, ctx), q(-2, 5), 1e-35));
  CHECK(reference_kappa(jac, div, 2, NumericContext::rational()) == q(-2, 5));
  CHECK(near(reference_normalization(jac, div, ctx), q(-1), 1e-35));

  auto ch = FamilySpec::charlier(q(1));
  auto cdiv = DivisorSpec::linear(std::nullopt, q(1));
  Scalar e = exp(ctx.integer(1));
  CHECK(near(reference_kappa(ch, cdiv, 1, ctx), (e - 2) / (e - 1), 1e-35));
  CHECK(near(reference_normalization(ch, cdiv, ctx), e / (e - 1), 1e-35));

  auto km = kesten_mckay_divisor(q(1, 2), q(1), ctx);
  for (std::size_t n : {1u, 2u, 9u}) CHECK(near(reference_kappa(FamilySpec::semicircle(), km, n, ctx), q(-1, 2), 1e-35));
  CHECK(near(reference_lambda(FamilySpec::semicircle(), km, 2, ctx), q(1, 4), 1e-35));

  auto sym = DivisorSpec::quadratic(std::nullopt, q(0), q(-1));
  auto cheb = FamilySpec::chebyshev_u();
  for (std::size_t n : {2u, 3u, 10u}) CHECK(near(reference_lambda(cheb, sym, n, ctx), q(-1, 4), 1e-35));
  auto j11 = FamilySpec::jacobi(q(1), q(1));
  CHECK(near(reference_lambda(j11, sym, 2, ctx), q(-2, 15), 1e-35));
  CHECK(near(reference_lambda(j11, sym, 3, ctx), q(-6, 35), 1e-35));
  CHECK(reference_lambda(j11, sym, 1, ctx).is_zero());

  CHECK(code_of([&] { reference_kappa(FamilySpec::legendre(), DivisorSpec::linear(q(1), q(5)), 1, ctx); }) ==
        ErrorCode::no_closed_form);
}

TEST_CASE("poisson_tail") {
  auto ctx = fp();
  for (long lam : {1, 4}) {
    for (std::size_t n : {0u, 3u, 20u}) {
      CHECK(near(poisson_tail(q(lam), n, ctx), poisson_tail_direct(ctx.integer(lam), n, ctx), 1e-35));
    }
  }
  CHECK(near(poisson_tail(q(1), 0, ctx), exp(ctx.integer(1)), 1e-35));
}
