#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

/// A quadrature sample point. For points drawn from a bounded interval
/// [lo, hi] the distances to both endpoints are carried separately so that
/// integrands singular at an endpoint can be evaluated without cancellation.
struct Abscissa {
  Scalar x;
  std::optional<Scalar> lo, hi;
  std::optional<Scalar> below;  // x - lo
  std::optional<Scalar> above;  // hi - x

  static Abscissa point(Scalar x) { return {std::move(x), {}, {}, {}, {}}; }

  /// x + shift, taken from the endpoint distance when -shift is an endpoint.
  Scalar offset(const Scalar& shift) const;
};

struct ContinuousMeasure {
  Scalar lo, hi;
  std::function<Scalar(const Abscissa&)> density;
};

/// Atoms x_0, x_1, ... with weights w_k. `tail_bound(K)` bounds
/// sum_{k > K} w_k (may return +inf when no bound is known yet).
struct DiscreteMeasure {
  std::function<Scalar(std::size_t)> location;
  std::function<Scalar(std::size_t)> weight;
  std::function<Scalar(std::size_t)> tail_bound;
  std::optional<std::size_t> atom_count;
};

/// A measure known only through its recurrence, optionally reweighted by
/// `factor`; integrated with Gauss rules of the recurrence.
struct RecurrenceMeasure {
  RecurrenceCoefficients rc;
  std::function<Scalar(const Abscissa&)> factor;
};

struct MeasureSpec {
  std::variant<ContinuousMeasure, DiscreteMeasure, RecurrenceMeasure> kind;
  std::string label;

  bool is_continuous() const { return std::holds_alternative<ContinuousMeasure>(kind); }
  bool is_discrete() const { return std::holds_alternative<DiscreteMeasure>(kind); }
};

/// The measure factor(x) dB. For discrete measures the tail bound is scaled
/// by |factor| at the first omitted atom, which assumes |factor| does not
/// grow beyond the truncation point.
MeasureSpec reweighted_measure(const MeasureSpec& base,
                               std::function<Scalar(const Abscissa&)> factor,
                               std::string label);

}  // namespace quasiorth
