#pragma once

// Divisors p(x) for the modified measure dA = C / p(x) dB, with p monic:
//   linear     x + D
//   quadratic  x^2 + D x + E
//   polynomial any monic degree r >= 1 (used by the quadrature oracle).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasiorth/measure.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

enum class DivisorKind { linear, quadratic, polynomial };

class DivisorSpec {
 public:
  /// `C` empty means "auto": fixed later by normalizing dA.
  static DivisorSpec linear(std::optional<Scalar> C, Scalar D);
  static DivisorSpec quadratic(std::optional<Scalar> C, Scalar D, Scalar E);
  /// `lower` holds p_0, ..., p_{r-1} of x^r + p_{r-1} x^{r-1} + ... + p_0.
  static DivisorSpec polynomial(std::optional<Scalar> C, std::vector<Scalar> lower);

  DivisorKind kind() const { return kind_; }
  std::size_t degree() const { return lower_.size(); }
  bool has_C() const { return C_.has_value(); }
  const Scalar& C() const;
  const Scalar& D() const;  // coefficient of x^{r-1}
  const Scalar& E() const;  // constant term of a quadratic
  const std::vector<Scalar>& lower_coefficients() const { return lower_; }

  DivisorSpec with_C(Scalar C) const;

  /// p(x). Real roots of linear and quadratic divisors are factored out and
  /// evaluated through the abscissa's endpoint distances, so p vanishing at
  /// an interval endpoint keeps full relative accuracy nearby.
  Scalar evaluate(const Abscissa& a) const;
  Scalar evaluate(const Scalar& x) const { return evaluate(Abscissa::point(x)); }
  /// C / p(x); requires C.
  Scalar reciprocal(const Abscissa& a) const;

  std::string describe() const;

 private:
  DivisorKind kind_ = DivisorKind::linear;
  std::optional<Scalar> C_;
  std::vector<Scalar> lower_;
};

/// The measure C/p(x) dB; requires C.
MeasureSpec modified_measure(const MeasureSpec& base, const DivisorSpec& div);

/// Connection a_n = b_n + kappa_n b_{n-1} (+ lambda_n b_{n-2}).
/// Both vectors are indexed by n; entry 0 is an unused zero. For order 2,
/// lambda[1] = 0.
struct ConnectionCoefficients {
  int order = 1;
  std::vector<Scalar> kappa;
  std::vector<Scalar> lambda;

  /// Largest n with kappa_n available.
  std::size_t size() const { return kappa.empty() ? 0 : kappa.size() - 1; }
};

}  // namespace quasiorth
