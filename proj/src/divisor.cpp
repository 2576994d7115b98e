#include "quasiorth/divisor.hpp"

#include <utility>

#include "quasiorth/errors.hpp"

namespace quasiorth {

DivisorSpec DivisorSpec::linear(std::optional<Scalar> C, Scalar D) {
  DivisorSpec d;
  d.kind_ = DivisorKind::linear;
  d.C_ = std::move(C);
  d.lower_ = {std::move(D)};
  return d;
}

DivisorSpec DivisorSpec::quadratic(std::optional<Scalar> C, Scalar D, Scalar E) {
  DivisorSpec d;
  d.kind_ = DivisorKind::quadratic;
  d.C_ = std::move(C);
  d.lower_ = {std::move(E), std::move(D)};
  return d;
}

DivisorSpec DivisorSpec::polynomial(std::optional<Scalar> C, std::vector<Scalar> lower) {
  if (lower.empty()) throw Error(ErrorCode::invalid_divisor, "divisor degree must be >= 1");
  if (lower.size() == 1) return linear(std::move(C), std::move(lower[0]));
  if (lower.size() == 2) return quadratic(std::move(C), std::move(lower[1]), std::move(lower[0]));
  DivisorSpec d;
  d.kind_ = DivisorKind::polynomial;
  d.C_ = std::move(C);
  d.lower_ = std::move(lower);
  return d;
}

const Scalar& DivisorSpec::C() const {
  if (!C_) throw Error(ErrorCode::invalid_divisor, "normalization constant C is unresolved");
  return *C_;
}

const Scalar& DivisorSpec::D() const { return lower_.back(); }

const Scalar& DivisorSpec::E() const {
  if (kind_ != DivisorKind::quadratic) {
    throw Error(ErrorCode::invalid_divisor, "E is defined for quadratic divisors only");
  }
  return lower_[0];
}

DivisorSpec DivisorSpec::with_C(Scalar C) const {
  DivisorSpec d = *this;
  d.C_ = std::move(C);
  return d;
}

Scalar DivisorSpec::evaluate(const Abscissa& a) const {
  if (kind_ == DivisorKind::linear) return a.offset(lower_[0]);
  if (kind_ == DivisorKind::quadratic && !a.x.is_rational() && (a.lo || a.hi)) {
    const Scalar& D = lower_[1];
    const Scalar& E = lower_[0];
    Scalar disc = D * D - 4 * E;
    if (disc.sign() >= 0) {
      Scalar root = sqrt(disc.to_floating(a.x.precision()));
      Scalar r1 = (D - root) / 2;
      Scalar r2 = (D + root) / 2;
      return a.offset(r1) * a.offset(r2);
    }
  }
  Scalar p(1);
  for (auto it = lower_.rbegin(); it != lower_.rend(); ++it) p = p * a.x + *it;
  return p;
}

Scalar DivisorSpec::reciprocal(const Abscissa& a) const { return C() / evaluate(a); }

std::string DivisorSpec::describe() const {
  std::string c = C_ ? C_->display() : std::string("auto");
  switch (kind_) {
    case DivisorKind::linear:
      return "C/(x + D), C = " + c + ", D = " + lower_[0].display();
    case DivisorKind::quadratic:
      return "C/(x^2 + D x + E), C = " + c + ", D = " + lower_[1].display() +
             ", E = " + lower_[0].display();
    case DivisorKind::polynomial:
      break;
  }
  return "C/p(x), degree " + std::to_string(lower_.size()) + ", C = " + c;
}

MeasureSpec modified_measure(const MeasureSpec& base, const DivisorSpec& div) {
  (void)div.C();
  return reweighted_measure(
      base, [div](const Abscissa& a) { return div.reciprocal(a); },
      base.label + " / (" + div.describe() + ")");
}

}  // namespace quasiorth
