#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

struct QuadratureRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
  std::string measure_tag;
};

struct TridiagonalEigen {
  std::vector<Scalar> values;            // ascending
  std::vector<Scalar> first_components;  // first entry of each unit eigenvector
};

/// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating only the
/// first row of the eigenvector matrix. At most 30*m sweeps in total.
TridiagonalEigen tridiagonal_eigen(const JacobiMatrix& jm);

/// Golub-Welsch: nodes are the eigenvalues of the m x m Jacobi matrix,
/// weights the squared first eigenvector components.
QuadratureRule gauss_rule(const RecurrenceCoefficients& rc, std::size_t m);

Scalar integrate(const QuadratureRule& rule, const std::function<Scalar(const Scalar&)>& f);

using Integrand = std::function<Scalar(const Abscissa&)>;
/// Writes `dim` values for the sample point into `out` (pre-sized).
using VectorIntegrand = std::function<void(const Abscissa&, std::vector<Scalar>& out)>;

struct AdaptiveLimits {
  std::size_t max_gauss_nodes = 4096;
  std::size_t max_atoms = 1'000'000;
  int max_levels = 12;
  std::size_t max_evaluations = std::size_t{1} << 17;
};

/// Integrates f against a measure until successive refinements agree to
/// `tol` relative to the integral of |f| (so cancelling integrals converge). `tol` must be a float; its precision is the
/// working precision, and tolerances below 2^(16-precision) are raised to
/// that floor.
///
///  - continuous measures: tanh-sinh on the density, halving the step each
///    level;
///  - recurrence-only measures: Gauss rules with m = 16, 32, ..., 4096;
///  - discrete measures: atom summation until the tail bound times |f| at the
///    last atom is below tol * |partial sum|.
///
/// Throws QuadratureDivergent when no convergence is reached within limits
/// and IntegrandSingular on non-finite integrand values.
Scalar integrate_adaptive(const MeasureSpec& measure, const Integrand& f, const Scalar& tol,
                          const AdaptiveLimits& limits = {});

/// Vector form; convergence is judged in the max-norm over components.
std::vector<Scalar> integrate_adaptive(const MeasureSpec& measure, const VectorIntegrand& f,
                                       std::size_t dim, const Scalar& tol,
                                       const AdaptiveLimits& limits = {});

}  // namespace quasiorth
