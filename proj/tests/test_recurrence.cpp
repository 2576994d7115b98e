#include <doctest.h>

#include "quasiorth/recurrence.hpp"
#include "support.hpp"

using namespace qt;

namespace {

RecurrenceCoefficients cheb_u_exact() {
  return family_recurrence(FamilySpec::chebyshev_u(), NumericContext::rational());
}

RecurrenceCoefficients jacobi_exact(long a, long g) {
  return family_recurrence(FamilySpec::jacobi(q(a), q(g)), NumericContext::rational());
}

}  // namespace

TEST_CASE("eval_monic_sequence") {
  auto v = eval_monic_sequence(cheb_u_exact(), 2, q(1));
  REQUIRE(v.size() == 3);
  CHECK(v[0] == q(1));
  CHECK(v[1] == q(1));
  CHECK(v[2] == q(3, 4));

  CHECK(eval_monic_sequence(cheb_u_exact(), 0, q(7)).size() == 1);

  auto j = eval_monic_sequence(jacobi_exact(1, 0), 1, q(0));
  CHECK(j[1] == q(1, 3));
}

TEST_CASE("eval_monic_sequence runs out of stored coefficients") {
  RecurrenceCoefficients rc(std::vector<Scalar>{q(0), q(0)}, std::vector<Scalar>{q(1)});
  CHECK(code_of([&] { eval_monic_sequence(rc, 4, q(1)); }) ==
        ErrorCode::insufficient_coefficients);
}

TEST_CASE("squared_norm") {
  CHECK(squared_norm(cheb_u_exact(), 3) == q(1, 64));
  CHECK(squared_norm(cheb_u_exact(), 0) == q(1));
  CHECK(squared_norm(jacobi_exact(1, 0), 1) == q(2, 9));
}

TEST_CASE("jacobi_matrix") {
  auto ctx = fp();
  auto u = family_recurrence(FamilySpec::chebyshev_u(), ctx);
  auto m2 = jacobi_matrix(u, 2);
  CHECK(tiny(m2.diag[0], 0));
  CHECK(near(m2.offdiag[0], q(1, 2), 1e-35));

  auto leg = family_recurrence(FamilySpec::legendre(), ctx);
  auto m3 = jacobi_matrix(leg, 3);
  REQUIRE(m3.offdiag.size() == 2);
  CHECK(near(m3.offdiag[0], 1 / sqrt(ctx.integer(3)), 1e-35));
  CHECK(near(m3.offdiag[1], 2 / sqrt(ctx.integer(15)), 1e-35));

  auto m1 = jacobi_matrix(family_recurrence(FamilySpec::jacobi(q(1), q(0)), ctx), 1);
  CHECK(m1.offdiag.empty());
  CHECK(near(m1.diag[0], q(-1, 3), 1e-35));

  CHECK(code_of([&] { jacobi_matrix(cheb_u_exact(), 2); }) == ErrorCode::backend_unsupported);
  RecurrenceCoefficients bad(std::vector<Scalar>{ctx.integer(0), ctx.integer(0)},
                             std::vector<Scalar>{ctx.integer(-1)});
  CHECK(code_of([&] { jacobi_matrix(bad, 2); }) == ErrorCode::positivity_violation);
}

TEST_CASE("monic polynomials satisfy the recurrence at sample points") {
  auto rc = jacobi_exact(2, 1);
  auto polys = monic_polynomials(rc, 8);
  for (long xn : {-3, -1, 0, 2, 5}) {
    Scalar x = q(xn, 3);
    auto vals = eval_monic_sequence(rc, 8, x);
    for (std::size_t n = 0; n <= 8; ++n) {
      CHECK(polys[n].size() == n + 1);
      CHECK(polys[n].back() == q(1));
      Scalar horner(0);
      for (std::size_t i = polys[n].size(); i-- > 0;) horner = horner * x + polys[n][i];
      CHECK(horner == vals[n]);
    }
  }
}

TEST_CASE("as_floating and materialize keep values") {
  auto rc = jacobi_exact(5, 2);
  auto f = rc.as_floating(200);
  auto m = rc.materialize(6);
  CHECK(m.beta_count() == std::optional<std::size_t>(6));
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(m.beta(n) == rc.beta(n));
    CHECK(near(f.beta_hat(n), rc.beta_hat(n), 1e-55));
  }
}
