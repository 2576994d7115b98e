#pragma once

// Closed-form families and the reference connection coefficients known for
// them. All constructors take a NumericContext; parameters are converted into
// it, so rational parameters stay exact under the rational backend.

#include <cstddef>
#include <string>

#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

enum class Family { jacobi, legendre, chebyshev_u, charlier, semicircle };

/// jacobi(alpha, gamma): weight (1-x)^alpha (1+x)^gamma on [-1, 1].
/// legendre = jacobi(0, 0); chebyshev_u = jacobi(1/2, 1/2) (monic U_n / 2^n).
/// charlier(lambda): Poisson atoms at 0, 1, 2, ...
/// semicircle: sqrt(4 - x^2) / (2 pi) on [-2, 2].
struct FamilySpec {
  Family family = Family::legendre;
  Scalar a;  // alpha or lambda
  Scalar b;  // gamma

  static FamilySpec jacobi(Scalar alpha, Scalar gamma);
  static FamilySpec legendre();
  static FamilySpec chebyshev_u();
  static FamilySpec charlier(Scalar lambda);
  static FamilySpec semicircle();

  /// Jacobi exponents for the three Jacobi-type families.
  Scalar alpha() const;
  Scalar gamma() const;
  bool is_jacobi_type() const;
  std::string name() const;
  /// Throws InvalidFamily on out-of-range parameters.
  void validate() const;
};

RecurrenceCoefficients family_recurrence(const FamilySpec& f, const NumericContext& ctx);

/// Float backend only (densities involve Gamma functions or exp).
MeasureSpec family_measure(const FamilySpec& f, const NumericContext& ctx);

/// Kesten-McKay as C / (x^2 + D x + E) times the semicircle law:
/// C = (1-rho^2)/rho^2, D = -(1+rho^2) y / rho, E = ((1-rho^2)/rho)^2 + y^2.
DivisorSpec kesten_mckay_divisor(const Scalar& rho, const Scalar& y, const NumericContext& ctx);

/// Closed-form C for the catalog pairs (see reference_kappa).
Scalar reference_normalization(const FamilySpec& f, const DivisorSpec& div,
                               const NumericContext& ctx);

/// Closed-form kappa_n for the pairs
///   jacobi(alpha, gamma), linear D = -1, alpha > 0;
///   charlier(lambda), linear D = 1;
///   semicircle with a Kesten-McKay quadratic divisor;
///   symmetric Jacobi type with x^2 - 1 (kappa = 0).
/// Other pairs throw NoClosedForm.
Scalar reference_kappa(const FamilySpec& f, const DivisorSpec& div, std::size_t n,
                       const NumericContext& ctx);

/// Closed-form lambda_n (n >= 1) for the quadratic pairs above.
Scalar reference_lambda(const FamilySpec& f, const DivisorSpec& div, std::size_t n,
                        const NumericContext& ctx);

/// sum_{j >= n} lambda^j / j!, summed directly from j = n (no cancellation).
Scalar poisson_tail(const Scalar& lambda, std::size_t n, const NumericContext& ctx);

}  // namespace quasiorth
