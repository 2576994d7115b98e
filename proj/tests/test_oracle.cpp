#include <doctest.h>

#include "quasiorth/linear_transform.hpp"
#include "quasiorth/oracle.hpp"
#include "quasiorth/quadrature.hpp"
#include "support.hpp"

using namespace qt;

TEST_CASE("solve_linear") {
  Matrix A{{q(2), q(1)}, {q(1), q(3)}};
  auto x = solve_linear(A, {q(3), q(5)});
  CHECK(x[0] == q(4, 5));
  CHECK(x[1] == q(7, 5));
  Matrix S{{q(1), q(2)}, {q(2), q(4)}};
  CHECK(code_of([&] { solve_linear(S, {q(1), q(1)}); }) == ErrorCode::oracle_singular);
}

TEST_CASE("gram_matrix") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto leg = FamilySpec::legendre();
  auto rc = family_recurrence(leg, ctx);
  auto G = gram_matrix(rc, family_measure(leg, ctx),
                       DivisorSpec::linear(std::nullopt, ctx.integer(-3)), 4, tol);
  CHECK(near(G[0][0], q(1), 1e-30));
  CHECK(near(G[0][1], 3 - 2 / log(ctx.integer(2)), 1e-30));
  CHECK(near(G[1][0], G[0][1], 1e-30));

  auto sym = gram_matrix(rc, family_measure(leg, ctx),
                         DivisorSpec::quadratic(std::nullopt, ctx.integer(0), ctx.integer(4)), 6,
                         tol);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if ((i + j) % 2) CHECK(tiny(sym[i][j], 1e-35));
    }
  }
}

TEST_CASE("direct_connection") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto jac = FamilySpec::jacobi(q(1), q(0));
  auto c = direct_connection(family_recurrence(jac, ctx), family_measure(jac, ctx),
                             DivisorSpec::linear(std::nullopt, ctx.integer(-1)), 1, 2, tol);
  REQUIRE(c.size() == 1);
  CHECK(near(c[0], q(-2, 5), 1e-28));

  auto semi = FamilySpec::semicircle();
  auto km = kesten_mckay_divisor(q(1, 2), q(1), ctx);
  auto c3 = direct_connection(family_recurrence(semi, ctx), family_measure(semi, ctx), km, 2, 3, tol);
  REQUIRE(c3.size() == 2);
  CHECK(near(c3[0], q(-1, 2), 1e-28));
  CHECK(near(c3[1], q(1, 4), 1e-28));

  // symmetric: even degrees have no b_{n-1} component
  auto u = FamilySpec::chebyshev_u();
  auto G = gram_matrix(family_recurrence(u, ctx), family_measure(u, ctx),
                       DivisorSpec::quadratic(std::nullopt, ctx.integer(0), ctx.integer(-1)), 9,
                       tol);
  for (std::size_t n : {2u, 4u, 8u}) {
    auto cn = direct_connection(G, 2, n);
    CHECK(tiny(cn[0], 1e-30));
    CHECK(near(cn[1], q(-1, 4), 1e-25));
  }
  // reduced system when n < r
  CHECK(direct_connection(G, 3, 1).size() == 1);
}

TEST_CASE("moments and the Hankel oracle") {
  auto ctx = fp(256);
  auto tol = tol_for(ctx);
  auto leg = family_measure(FamilySpec::legendre(), ctx);
  std::vector<Scalar> mu;
  for (long k = 0; k < 5; ++k) {
    mu.push_back(integrate_adaptive(leg, [k](const Abscissa& a) { return pow(a.x, k); }, tol));
  }
  auto p2 = gram_schmidt_moments(mu, 2);
  CHECK(near(p2[0], q(-1, 3), 1e-60));
  CHECK(tiny(p2[1], 1e-60));
  CHECK(p2[2] == q(1));
  auto p1 = gram_schmidt_moments(mu, 1);
  CHECK(tiny(p1[0] + mu[1] / mu[0], 1e-60));

  // jacobi(1, 0) / (1 - x): a_2 from moments against the connection form
  auto jac = FamilySpec::jacobi(q(1), q(0));
  auto div = DivisorSpec::linear(ctx.integer(-1), ctx.integer(-1));
  auto m = moments(family_measure(jac, ctx), div, 5, tol);
  auto h2 = gram_schmidt_moments(m, 2);
  auto rc = family_recurrence(jac, ctx);
  auto mono = connection_monomials(rc, kappa_sequence(rc, div, 2), 2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(tiny(h2[i] - mono[i], 1e-50));
}

TEST_CASE("orthogonality_defect flags a wrong recurrence") {
  auto ctx = fp();
  auto tol = tol_for(ctx);
  auto leg = FamilySpec::legendre();
  auto dA = family_measure(leg, ctx);
  auto good = orthogonality_defect(family_recurrence(leg, ctx), dA, 10, tol);
  CHECK(tiny(good.max_off_diagonal, 1e-30));
  CHECK(tiny(good.max_norm_error, 1e-30));
  auto bad = orthogonality_defect(family_recurrence(FamilySpec::chebyshev_u(), ctx), dA, 10, tol);
  CHECK(bad.max_off_diagonal > Scalar::floating(1e-3, 64));
}
