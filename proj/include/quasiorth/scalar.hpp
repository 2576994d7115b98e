#pragma once

// Real scalars with two interchangeable backends: exact rationals (GMP) and
// arbitrary-precision binary floating point (MPFR). Arithmetic between a
// rational and a float yields a float; float-float arithmetic runs at the
// larger of the two precisions.

#include <compare>
#include <cstdio>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>
#include <mpfr.h>

namespace quasiorth {

enum class Backend { rational, floating };

std::string_view to_string(Backend backend) noexcept;

/// Owning RAII handle for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  template <std::integral I>
  Scalar(I v) : value_(mpq_class(static_cast<long>(v))) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q);
  explicit Scalar(BigFloat f) : value_(std::move(f)) {}

  static Scalar rational(long num, long den = 1);
  static Scalar floating(double v, mpfr_prec_t precision);
  /// Parses "p/q", integers and decimal/scientific literals exactly into a
  /// rational.
  static Scalar parse_rational(std::string_view text);
  /// Parses into a float rounded to `precision` bits.
  static Scalar parse_floating(std::string_view text, mpfr_prec_t precision);
  static Scalar pi(mpfr_prec_t precision);

  Backend backend() const noexcept;
  bool is_rational() const noexcept { return backend() == Backend::rational; }
  /// Precision in bits; 0 for exact rationals.
  mpfr_prec_t precision() const noexcept;

  const mpq_class& as_rational() const;
  const BigFloat& as_float() const;

  /// Converts to a float at exactly `precision` bits (rounding if needed).
  Scalar to_floating(mpfr_prec_t precision) const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_finite() const;
  double to_double() const;
  long to_long() const;

  /// Full-precision decimal rendering. Rationals print as "p" or "p/q".
  std::string str() const;
  /// Rounded display value with `digits` significant digits.
  std::string display(int digits = 12) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<mpq_class, BigFloat> value_;
};

Scalar abs(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar exp(const Scalar& x);
Scalar log(const Scalar& x);
Scalar pow(const Scalar& base, long exponent);
/// Real power; float only.
Scalar pow(const Scalar& base, const Scalar& exponent);
Scalar lgamma(const Scalar& x);
Scalar tgamma(const Scalar& x);
Scalar max(const Scalar& a, const Scalar& b);
Scalar min(const Scalar& a, const Scalar& b);
/// Relative difference |a-b| / max(|a|,|b|), or |a-b| when both vanish.
Scalar relative_difference(const Scalar& a, const Scalar& b);

/// Backend plus working precision; the factory for constants in a
/// computation.
struct NumericContext {
  Backend backend = Backend::floating;
  mpfr_prec_t precision = 128;

  static NumericContext rational() { return {Backend::rational, 0}; }
  static NumericContext floating(mpfr_prec_t bits) { return {Backend::floating, bits}; }

  Scalar integer(long v) const;
  Scalar fraction(long num, long den) const;
  Scalar parse(std::string_view text) const;
  /// Brings `x` into this context. Floats handed to a rational context are
  /// rejected with BackendUnsupported.
  Scalar convert(const Scalar& x) const;
  /// 2^-precision for floats, 0 for rationals.
  Scalar epsilon() const;
};

}  // namespace quasiorth
