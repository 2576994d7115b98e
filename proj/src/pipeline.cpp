#include "quasiorth/pipeline.hpp"

#include <utility>

#include "quasiorth/errors.hpp"
#include "quasiorth/linear_transform.hpp"
#include "quasiorth/quadratic_transform.hpp"

namespace quasiorth {

std::string_view to_string(TransformPath path) noexcept {
  switch (path) {
    case TransformPath::linear:
      return "linear";
    case TransformPath::symmetric_quadratic:
      return "symmetric-quadratic";
    case TransformPath::general_quadratic:
      return "general-quadratic";
  }
  return "unknown";
}

Scalar default_quadrature_tolerance(const NumericContext& ctx) {
  BigFloat f(ctx.precision);
  mpfr_set_ui_2exp(f.get(), 1, 16 - static_cast<long>(ctx.precision), MPFR_RNDN);
  return Scalar(std::move(f));
}

namespace {

struct Resolution {
  DivisorSpec divisor;
  bool from_quadrature = false;
  std::vector<std::string> warnings;
};

Resolution resolve(const ProblemInstance& in) {
  if (in.measure) {
    auto r = resolve_divisor(*in.measure, in.divisor, default_quadrature_tolerance(in.ctx));
    return {r.divisor, r.C_from_quadrature, r.warnings};
  }
  if (in.divisor.has_C()) return {in.divisor, false, {}};
  throw Error(ErrorCode::backend_unsupported,
              "C = \"auto\" needs the float backend (quadrature) for this problem");
}

}  // namespace

TransformOutcome run_transform(const ProblemInstance& in, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  if (in.divisor.kind() == DivisorKind::polynomial) {
    throw Error(ErrorCode::invalid_argument,
                "divisors of degree >= 3 are handled by the oracle command only");
  }
  const bool exact = in.ctx.backend == Backend::rational;
  Resolution res = exact ? Resolution{in.divisor, false, {}} : resolve(in);
  if (exact && !res.divisor.has_C()) {
    throw Error(ErrorCode::backend_unsupported,
                "C = \"auto\" needs the float backend; give C explicitly for rational runs");
  }

  TransformOutcome out{TransformPath::linear, res.divisor, {}, RecurrenceCoefficients(std::vector<Scalar>{}, std::vector<Scalar>{}),
                       res.warnings};
  if (in.divisor.kind() == DivisorKind::linear) {
    KappaOptions options;
    if (res.from_quadrature) options.c_relative_error = default_quadrature_tolerance(in.ctx);
    out.connection = kappa_sequence(in.rc, res.divisor, N + 1, options);
    out.recurrence = transformed_recurrence(in.rc, out.connection);
    return out;
  }

  bool symmetric = res.divisor.D().is_zero();
  for (std::size_t n = 0; symmetric && n < N + 2; ++n) symmetric = in.rc.beta(n).is_zero();
  if (symmetric) {
    out.path = TransformPath::symmetric_quadratic;
    out.connection = symmetric_lambda_sequence(in.rc, res.divisor.C(), res.divisor.E(), N + 2);
    out.recurrence = symmetric_transformed_recurrence(in.rc, out.connection);
    return out;
  }
  if (!in.measure) {
    throw Error(ErrorCode::backend_unsupported,
                "the general quadratic scheme bootstraps by quadrature; use the float backend");
  }
  out.path = TransformPath::general_quadratic;
  auto q = general_quadratic_sequence(in.rc, *in.measure, res.divisor, N + 2,
                                      default_quadrature_tolerance(in.ctx));
  out.connection = std::move(q.connection);
  out.recurrence = std::move(q.recurrence);
  return out;
}

}  // namespace quasiorth
