#include "quasiorth/catalog.hpp"

#include <utility>

#include "quasiorth/errors.hpp"

namespace quasiorth {

namespace {

Scalar infinity(mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_inf(f.get(), 1);
  return Scalar(std::move(f));
}

[[noreturn]] void no_closed_form(const FamilySpec& f, const DivisorSpec& div) {
  throw Error(ErrorCode::no_closed_form,
              "no closed form for " + f.name() + " with " + div.describe());
}

bool is_linear(const DivisorSpec& div, long D) {
  return div.kind() == DivisorKind::linear && div.D() == Scalar(D);
}

bool is_symmetric_square(const FamilySpec& f, const DivisorSpec& div) {
  return f.is_jacobi_type() && f.alpha() == f.gamma() && div.kind() == DivisorKind::quadratic &&
         div.D().is_zero() && div.E() == Scalar(-1);
}

// Does (C, D, E) come from some Kesten-McKay pair (rho, y)?
bool is_kesten_mckay(const DivisorSpec& div, const NumericContext& ctx) {
  if (div.kind() != DivisorKind::quadratic || !div.has_C()) return false;
  Scalar C = ctx.convert(div.C());
  Scalar D = ctx.convert(div.D());
  Scalar E = ctx.convert(div.E());
  if (C.sign() <= 0) return false;
  Scalar expected = C * C / (C + 1) + D * D * (C + 1) / ((C + 2) * (C + 2));
  if (ctx.backend == Backend::rational) return expected == E;
  return relative_difference(expected, E) <= ctx.epsilon() * 1024;
}

}  // namespace

// --------------------------------------------------------------- FamilySpec

FamilySpec FamilySpec::jacobi(Scalar alpha, Scalar gamma) {
  return {Family::jacobi, std::move(alpha), std::move(gamma)};
}
FamilySpec FamilySpec::legendre() { return {Family::legendre, Scalar(0), Scalar(0)}; }
FamilySpec FamilySpec::chebyshev_u() {
  return {Family::chebyshev_u, Scalar::rational(1, 2), Scalar::rational(1, 2)};
}
FamilySpec FamilySpec::charlier(Scalar lambda) {
  return {Family::charlier, std::move(lambda), Scalar(0)};
}
FamilySpec FamilySpec::semicircle() { return {Family::semicircle, Scalar(0), Scalar(0)}; }

bool FamilySpec::is_jacobi_type() const {
  return family == Family::jacobi || family == Family::legendre || family == Family::chebyshev_u;
}

Scalar FamilySpec::alpha() const {
  if (!is_jacobi_type()) throw Error(ErrorCode::invalid_family, name() + " has no Jacobi exponents");
  return a;
}

Scalar FamilySpec::gamma() const {
  if (!is_jacobi_type()) throw Error(ErrorCode::invalid_family, name() + " has no Jacobi exponents");
  return b;
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::jacobi:
      return "jacobi(" + a.str() + ", " + b.str() + ")";
    case Family::legendre:
      return "legendre";
    case Family::chebyshev_u:
      return "chebyshev_u";
    case Family::charlier:
      return "charlier(" + a.str() + ")";
    case Family::semicircle:
      return "semicircle";
  }
  return "unknown";
}

void FamilySpec::validate() const {
  if (family == Family::jacobi && !(a > Scalar(-1) && b > Scalar(-1))) {
    throw Error(ErrorCode::invalid_family, "jacobi requires alpha, gamma > -1");
  }
  if (family == Family::charlier && !(a > Scalar(0))) {
    throw Error(ErrorCode::invalid_family, "charlier requires lambda > 0");
  }
}

// --------------------------------------------------------------- recurrences

RecurrenceCoefficients family_recurrence(const FamilySpec& f, const NumericContext& ctx) {
  f.validate();
  switch (f.family) {
    case Family::jacobi:
    case Family::legendre:
    case Family::chebyshev_u: {
      if (f.family == Family::chebyshev_u) {
        Scalar q = ctx.fraction(1, 4);
        return {[ctx](std::size_t) { return ctx.integer(0); }, [q](std::size_t) { return q; }};
      }
      Scalar al = ctx.convert(f.a);
      Scalar ga = ctx.convert(f.b);
      Scalar s = al + ga;
      auto beta = [al, ga, s](std::size_t n) {
        if (n == 0) return (ga - al) / (s + 2);
        Scalar m(static_cast<long>(n));
        return (ga * ga - al * al) / ((2 * m + s + 2) * (2 * m + s));
      };
      // beta_hat_{n-1} with the (s+1) factor cancelled at n = 1.
      auto beta_hat = [al, ga, s](std::size_t k) {
        if (k == 0) return 4 * (al + 1) * (ga + 1) / ((s + 2) * (s + 2) * (s + 3));
        Scalar n(static_cast<long>(k + 1));
        Scalar t = 2 * n + s;
        return 4 * n * (n + al) * (n + ga) * (n + s) / (t * t * (t + 1) * (t - 1));
      };
      return {beta, beta_hat};
    }
    case Family::charlier: {
      Scalar lam = ctx.convert(f.a);
      return {[lam](std::size_t n) { return Scalar(static_cast<long>(n)) + lam; },
              [lam](std::size_t k) { return Scalar(static_cast<long>(k + 1)) * lam; }};
    }
    case Family::semicircle:
      return {[ctx](std::size_t) { return ctx.integer(0); },
              [ctx](std::size_t) { return ctx.integer(1); }};
  }
  throw Error(ErrorCode::invalid_family, "unknown family");
}

// ------------------------------------------------------------------ measures

MeasureSpec family_measure(const FamilySpec& f, const NumericContext& ctx) {
  f.validate();
  if (ctx.backend == Backend::rational) {
    throw Error(ErrorCode::backend_unsupported, "measures need the float backend");
  }
  const mpfr_prec_t p = ctx.precision;
  MeasureSpec m;
  m.label = f.name();
  switch (f.family) {
    case Family::jacobi:
    case Family::legendre:
    case Family::chebyshev_u: {
      Scalar al = f.a;
      Scalar ga = f.b;
      Scalar alf = al.to_floating(p);
      Scalar gaf = ga.to_floating(p);
      Scalar s = alf + gaf;
      Scalar norm = exp(lgamma(s + 2) - lgamma(alf + 1) - lgamma(gaf + 1) -
                        (s + 1) * log(Scalar(2).to_floating(p)));
      Scalar one = ctx.integer(1);
      m.kind = ContinuousMeasure{-one, one, [norm, al, ga](const Abscissa& a) {
                                   Scalar right = a.above ? *a.above : 1 - a.x;
                                   Scalar left = a.below ? *a.below : 1 + a.x;
                                   if (right.sign() < 0 || left.sign() < 0) return Scalar(0);
                                   return norm * pow(right, al) * pow(left, ga);
                                 }};
      return m;
    }
    case Family::semicircle: {
      Scalar two_pi = 2 * Scalar::pi(p);
      Scalar two = ctx.integer(2);
      m.kind = ContinuousMeasure{-two, two, [two_pi](const Abscissa& a) {
                                   Scalar right = a.above ? *a.above : 2 - a.x;
                                   Scalar left = a.below ? *a.below : 2 + a.x;
                                   if (right.sign() < 0 || left.sign() < 0) return Scalar(0);
                                   return sqrt(right * left) / two_pi;
                                 }};
      return m;
    }
    case Family::charlier: {
      Scalar lam = f.a.to_floating(p);
      Scalar log_lam = log(lam);
      auto weight = [lam, log_lam, p](std::size_t k) {
        Scalar kk = Scalar(static_cast<long>(k)).to_floating(p);
        return exp(kk * log_lam - lam - lgamma(kk + 1));
      };
      DiscreteMeasure d;
      d.location = [ctx](std::size_t k) { return ctx.integer(static_cast<long>(k)); };
      d.weight = weight;
      // sum_{k > K} w_k <= w_{K+1} / (1 - lambda/(K+2)) once K + 2 > lambda.
      d.tail_bound = [lam, weight, p](std::size_t K) {
        Scalar ratio = lam / Scalar(static_cast<long>(K + 2));
        if (ratio >= Scalar(1)) return infinity(p);
        return weight(K + 1) / (1 - ratio);
      };
      m.kind = std::move(d);
      return m;
    }
  }
  throw Error(ErrorCode::invalid_family, "unknown family");
}

DivisorSpec kesten_mckay_divisor(const Scalar& rho, const Scalar& y, const NumericContext& ctx) {
  Scalar r = ctx.convert(rho);
  Scalar yy = ctx.convert(y);
  if (!(r > Scalar(0) && r < Scalar(1))) {
    throw Error(ErrorCode::invalid_divisor, "Kesten-McKay needs 0 < rho < 1");
  }
  Scalar r2 = r * r;
  Scalar C = (1 - r2) / r2;
  Scalar D = -(1 + r2) * yy / r;
  Scalar q = (1 - r2) / r;
  Scalar E = q * q + yy * yy;
  return DivisorSpec::quadratic(C, D, E);
}

// ---------------------------------------------------------- reference values

Scalar poisson_tail(const Scalar& lambda, std::size_t n, const NumericContext& ctx) {
  if (ctx.backend == Backend::rational) {
    throw Error(ErrorCode::backend_unsupported, "Poisson tails are transcendental");
  }
  Scalar lam = lambda.to_floating(ctx.precision);
  Scalar nn = ctx.integer(static_cast<long>(n));
  Scalar term = exp(nn * log(lam) - lgamma(nn + 1));
  Scalar sum = term;
  const Scalar eps = ctx.epsilon();
  for (std::size_t j = n + 1;; ++j) {
    term = term * lam / Scalar(static_cast<long>(j));
    sum += term;
    if (Scalar(static_cast<long>(j)) > lam && term <= eps * sum) return sum;
  }
}

Scalar reference_normalization(const FamilySpec& f, const DivisorSpec& div,
                               const NumericContext& ctx) {
  if (f.is_jacobi_type()) {
    Scalar al = ctx.convert(f.alpha());
    Scalar ga = ctx.convert(f.gamma());
    if (is_linear(div, -1) && al > Scalar(0)) return -2 * al / (al + ga + 1);
    if (is_linear(div, 1) && ga > Scalar(0)) return 2 * ga / (al + ga + 1);
    if (is_symmetric_square(f, div) && al > Scalar(0)) return -2 * al / (2 * al + 1);
    if (f.family == Family::legendre && div.kind() == DivisorKind::linear &&
        abs(div.D()) > Scalar(1) && ctx.backend == Backend::floating) {
      Scalar D = ctx.convert(div.D());
      return 2 / log((D + 1) / (D - 1));
    }
  }
  if (f.family == Family::charlier && is_linear(div, 1) && ctx.backend == Backend::floating) {
    Scalar lam = ctx.convert(f.a);
    Scalar e = exp(lam);
    return lam * e / (e - 1);
  }
  if (f.family == Family::semicircle && is_kesten_mckay(div, ctx)) return ctx.convert(div.C());
  no_closed_form(f, div);
}

Scalar reference_kappa(const FamilySpec& f, const DivisorSpec& div, std::size_t n,
                       const NumericContext& ctx) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "kappa is indexed from 1");
  Scalar m(static_cast<long>(n));
  if (f.is_jacobi_type()) {
    Scalar al = ctx.convert(f.alpha());
    Scalar ga = ctx.convert(f.gamma());
    Scalar t = al + ga + 2 * m;
    if (is_linear(div, -1) && al > Scalar(0)) return -2 * m * (m + ga) / (t * (t - 1));
    // Reflection x -> -x of the D = -1 case with the exponents swapped.
    if (is_linear(div, 1) && ga > Scalar(0)) return 2 * m * (m + al) / (t * (t - 1));
    if (is_symmetric_square(f, div)) return ctx.integer(0);
  }
  if (f.family == Family::charlier && is_linear(div, 1)) {
    return m * poisson_tail(f.a, n + 1, ctx) / poisson_tail(f.a, n, ctx);
  }
  if (f.family == Family::semicircle && is_kesten_mckay(div, ctx)) {
    Scalar C = ctx.convert(div.C());
    return ctx.convert(div.D()) / (C + 2);
  }
  no_closed_form(f, div);
}

Scalar reference_lambda(const FamilySpec& f, const DivisorSpec& div, std::size_t n,
                        const NumericContext& ctx) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "lambda is indexed from 1");
  if (n == 1 && div.kind() == DivisorKind::quadratic) return ctx.integer(0);
  if (is_symmetric_square(f, div)) {
    Scalar a = ctx.convert(f.alpha());
    Scalar m(static_cast<long>(n));
    return -m * (m - 1) / ((2 * a + 2 * m - 1) * (2 * a + 2 * m - 3));
  }
  if (f.family == Family::semicircle && is_kesten_mckay(div, ctx)) {
    return 1 / (ctx.convert(div.C()) + 1);
  }
  no_closed_form(f, div);
}

}  // namespace quasiorth
