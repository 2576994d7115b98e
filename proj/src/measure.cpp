#include "quasiorth/measure.hpp"

#include <utility>

namespace quasiorth {

Scalar Abscissa::offset(const Scalar& shift) const {
  if (hi && above && (*hi + shift).is_zero()) return -*above;
  if (lo && below && (*lo + shift).is_zero()) return *below;
  return x + shift;
}

MeasureSpec reweighted_measure(const MeasureSpec& base,
                               std::function<Scalar(const Abscissa&)> factor,
                               std::string label) {
  MeasureSpec out;
  out.label = std::move(label);
  if (auto* c = std::get_if<ContinuousMeasure>(&base.kind)) {
    auto density = c->density;
    out.kind = ContinuousMeasure{c->lo, c->hi, [density, factor](const Abscissa& a) {
                                   return factor(a) * density(a);
                                 }};
  } else if (auto* d = std::get_if<DiscreteMeasure>(&base.kind)) {
    DiscreteMeasure m = *d;
    auto location = d->location;
    auto weight = d->weight;
    auto tail = d->tail_bound;
    auto count = d->atom_count;
    m.weight = [location, weight, factor](std::size_t k) {
      return weight(k) * factor(Abscissa::point(location(k)));
    };
    m.tail_bound = [location, tail, factor, count](std::size_t k) {
      if (count && k + 1 >= *count) return Scalar(0);
      return tail(k) * abs(factor(Abscissa::point(location(k + 1))));
    };
    out.kind = std::move(m);
  } else {
    auto r = std::get<RecurrenceMeasure>(base.kind);
    auto inner = r.factor;
    if (inner) {
      r.factor = [inner, factor](const Abscissa& a) { return inner(a) * factor(a); };
    } else {
      r.factor = factor;
    }
    out.kind = std::move(r);
  }
  return out;
}

}  // namespace quasiorth
