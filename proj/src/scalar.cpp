#include "quasiorth/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "quasiorth/errors.hpp"

namespace quasiorth {

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::rational ? "rational" : "float";
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(precision, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

// ------------------------------------------------------------------ Scalar

namespace {

BigFloat lift(const mpq_class& q, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDN);
  return f;
}

[[noreturn]] void rational_unsupported(const char* op) {
  throw Error(ErrorCode::backend_unsupported,
              std::string(op) + " requires the float backend");
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Exact decimal parse: [sign] digits [. digits] [e|E [sign] digits]
mpq_class parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits.push_back(s[i++]);
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i++]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::invalid_argument, "not a number: '" + std::string(s) + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_negative = s[i++] == '-';
    long exponent = 0;
    bool exp_digit = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      exponent = exponent * 10 + (s[i++] - '0');
      exp_digit = true;
      if (exponent > 100000) throw Error(ErrorCode::invalid_argument, "exponent out of range");
    }
    if (!exp_digit) throw Error(ErrorCode::invalid_argument, "malformed exponent in '" + std::string(s) + "'");
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != s.size()) throw Error(ErrorCode::invalid_argument, "not a number: '" + std::string(s) + "'");

  mpz_class numerator(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  mpq_class q;
  if (scale >= 0) {
    q = mpq_class(numerator * power);
  } else {
    q = mpq_class(numerator, power);
    q.canonicalize();
  }
  return negative ? mpq_class(-q) : q;
}

}  // namespace

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::floating(double v, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_d(f.get(), v, MPFR_RNDN);
  return Scalar(std::move(f));
}

Scalar Scalar::parse_rational(std::string_view text) {
  auto s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpq_class num = parse_decimal(trim(s.substr(0, slash)));
    mpq_class den = parse_decimal(trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + std::string(s) + "'");
    return Scalar(mpq_class(num / den));
  }
  return Scalar(parse_decimal(s));
}

Scalar Scalar::parse_floating(std::string_view text, mpfr_prec_t precision) {
  auto s = trim(text);
  if (s.find('/') != std::string_view::npos) return parse_rational(s).to_floating(precision);
  // Validate the grammar first; mpfr_set_str is more permissive.
  (void)parse_decimal(s);
  BigFloat f(precision);
  std::string buffer(s);
  mpfr_set_str(f.get(), buffer.c_str(), 10, MPFR_RNDN);
  return Scalar(std::move(f));
}

Scalar Scalar::pi(mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_const_pi(f.get(), MPFR_RNDN);
  return Scalar(std::move(f));
}

Backend Scalar::backend() const noexcept {
  return std::holds_alternative<mpq_class>(value_) ? Backend::rational : Backend::floating;
}

mpfr_prec_t Scalar::precision() const noexcept {
  if (auto* f = std::get_if<BigFloat>(&value_)) return f->precision();
  return 0;
}

const mpq_class& Scalar::as_rational() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw Error(ErrorCode::backend_unsupported, "value is not an exact rational");
}

const BigFloat& Scalar::as_float() const {
  if (auto* f = std::get_if<BigFloat>(&value_)) return *f;
  throw Error(ErrorCode::backend_unsupported, "value is not a float");
}

Scalar Scalar::to_floating(mpfr_prec_t precision) const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(lift(*q, precision));
  BigFloat f(precision);
  mpfr_set(f.get(), std::get<BigFloat>(value_).get(), MPFR_RNDN);
  return Scalar(std::move(f));
}

int Scalar::sign() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
  auto x = std::get<BigFloat>(value_).get();
  if (mpfr_nan_p(x)) throw Error(ErrorCode::invalid_argument, "sign of NaN");
  return mpfr_sgn(x);
}

bool Scalar::is_finite() const {
  if (std::holds_alternative<mpq_class>(value_)) return true;
  return mpfr_number_p(std::get<BigFloat>(value_).get()) != 0;
}

double Scalar::to_double() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    BigFloat f = lift(*q, 64);
    return mpfr_get_d(f.get(), MPFR_RNDN);
  }
  return mpfr_get_d(std::get<BigFloat>(value_).get(), MPFR_RNDN);
}

long Scalar::to_long() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    mpz_class z = q->get_num() / q->get_den();
    return z.get_si();
  }
  return mpfr_get_si(std::get<BigFloat>(value_).get(), MPFR_RNDZ);
}

std::string Scalar::str() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  auto x = std::get<BigFloat>(value_).get();
  if (!mpfr_number_p(x)) return mpfr_nan_p(x) ? "nan" : (mpfr_sgn(x) > 0 ? "inf" : "-inf");
  // Enough decimal digits to round-trip the binary value.
  int digits = static_cast<int>(std::ceil(static_cast<double>(mpfr_get_prec(x)) * 0.30102999566398120)) + 1;
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", digits - 1, x);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

std::string Scalar::display(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
  return buf;
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  BigFloat f(precision());
  mpfr_neg(f.get(), std::get<BigFloat>(value_).get(), MPFR_RNDN);
  return Scalar(std::move(f));
}

Scalar& Scalar::operator+=(const Scalar& rhs) { return *this = *this + rhs; }
Scalar& Scalar::operator-=(const Scalar& rhs) { return *this = *this - rhs; }
Scalar& Scalar::operator*=(const Scalar& rhs) { return *this = *this * rhs; }
Scalar& Scalar::operator/=(const Scalar& rhs) { return *this = *this / rhs; }

Scalar operator+(const Scalar& a, const Scalar& b) {
  auto* qa = std::get_if<mpq_class>(&a.value_);
  auto* qb = std::get_if<mpq_class>(&b.value_);
  if (qa && qb) return Scalar(mpq_class(*qa + *qb));
  BigFloat r(std::max(a.precision(), b.precision()));
  if (qa) mpfr_add_q(r.get(), b.as_float().get(), qa->get_mpq_t(), MPFR_RNDN);
  else if (qb) mpfr_add_q(r.get(), a.as_float().get(), qb->get_mpq_t(), MPFR_RNDN);
  else mpfr_add(r.get(), a.as_float().get(), b.as_float().get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  auto* qa = std::get_if<mpq_class>(&a.value_);
  auto* qb = std::get_if<mpq_class>(&b.value_);
  if (qa && qb) return Scalar(mpq_class(*qa - *qb));
  BigFloat r(std::max(a.precision(), b.precision()));
  if (qa) {
    mpfr_sub_q(r.get(), b.as_float().get(), qa->get_mpq_t(), MPFR_RNDN);
    mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  } else if (qb) {
    mpfr_sub_q(r.get(), a.as_float().get(), qb->get_mpq_t(), MPFR_RNDN);
  } else {
    mpfr_sub(r.get(), a.as_float().get(), b.as_float().get(), MPFR_RNDN);
  }
  return Scalar(std::move(r));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  auto* qa = std::get_if<mpq_class>(&a.value_);
  auto* qb = std::get_if<mpq_class>(&b.value_);
  if (qa && qb) return Scalar(mpq_class(*qa * *qb));
  BigFloat r(std::max(a.precision(), b.precision()));
  if (qa) mpfr_mul_q(r.get(), b.as_float().get(), qa->get_mpq_t(), MPFR_RNDN);
  else if (qb) mpfr_mul_q(r.get(), a.as_float().get(), qb->get_mpq_t(), MPFR_RNDN);
  else mpfr_mul(r.get(), a.as_float().get(), b.as_float().get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  auto* qa = std::get_if<mpq_class>(&a.value_);
  auto* qb = std::get_if<mpq_class>(&b.value_);
  if (qb && sgn(*qb) == 0 && qa) throw Error(ErrorCode::division_by_zero, "exact division by zero");
  if (qa && qb) return Scalar(mpq_class(*qa / *qb));
  mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigFloat r(prec);
  if (qa) {
    BigFloat num = lift(*qa, prec);
    mpfr_div(r.get(), num.get(), b.as_float().get(), MPFR_RNDN);
  } else if (qb) {
    mpfr_div_q(r.get(), a.as_float().get(), qb->get_mpq_t(), MPFR_RNDN);
  } else {
    mpfr_div(r.get(), a.as_float().get(), b.as_float().get(), MPFR_RNDN);
  }
  return Scalar(std::move(r));
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  auto* qa = std::get_if<mpq_class>(&a.value_);
  auto* qb = std::get_if<mpq_class>(&b.value_);
  int c = 0;
  if (qa && qb) {
    c = cmp(*qa, *qb);
  } else if (qa) {
    auto fb = b.as_float().get();
    if (mpfr_nan_p(fb)) return std::partial_ordering::unordered;
    c = -mpfr_cmp_q(fb, qa->get_mpq_t());
  } else if (qb) {
    auto fa = a.as_float().get();
    if (mpfr_nan_p(fa)) return std::partial_ordering::unordered;
    c = mpfr_cmp_q(fa, qb->get_mpq_t());
  } else {
    auto fa = a.as_float().get();
    auto fb = b.as_float().get();
    if (mpfr_nan_p(fa) || mpfr_nan_p(fb)) return std::partial_ordering::unordered;
    c = mpfr_cmp(fa, fb);
  }
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

// --------------------------------------------------------------- functions

namespace {

template <typename Fn>
Scalar unary_float(const Scalar& x, const char* name, Fn&& fn) {
  if (x.is_rational()) rational_unsupported(name);
  BigFloat r(x.precision());
  fn(r.get(), x.as_float().get());
  return Scalar(std::move(r));
}

}  // namespace

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar sqrt(const Scalar& x) {
  return unary_float(x, "sqrt", [](mpfr_ptr r, mpfr_srcptr v) { mpfr_sqrt(r, v, MPFR_RNDN); });
}

Scalar exp(const Scalar& x) {
  return unary_float(x, "exp", [](mpfr_ptr r, mpfr_srcptr v) { mpfr_exp(r, v, MPFR_RNDN); });
}

Scalar log(const Scalar& x) {
  return unary_float(x, "log", [](mpfr_ptr r, mpfr_srcptr v) { mpfr_log(r, v, MPFR_RNDN); });
}

Scalar lgamma(const Scalar& x) {
  return unary_float(x, "lgamma", [](mpfr_ptr r, mpfr_srcptr v) { mpfr_lngamma(r, v, MPFR_RNDN); });
}

Scalar tgamma(const Scalar& x) {
  return unary_float(x, "gamma", [](mpfr_ptr r, mpfr_srcptr v) { mpfr_gamma(r, v, MPFR_RNDN); });
}

Scalar pow(const Scalar& base, long exponent) {
  if (base.is_rational()) {
    const mpq_class& q = base.as_rational();
    if (exponent < 0 && sgn(q) == 0) throw Error(ErrorCode::division_by_zero, "0 to a negative power");
    unsigned long e = static_cast<unsigned long>(std::labs(exponent));
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    mpq_class r = exponent >= 0 ? mpq_class(num, den) : mpq_class(den, num);
    return Scalar(std::move(r));
  }
  BigFloat r(base.precision());
  mpfr_pow_si(r.get(), base.as_float().get(), exponent, MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar pow(const Scalar& base, const Scalar& exponent) {
  if (exponent.is_rational() && exponent.as_rational().get_den() == 1 &&
      mpz_fits_slong_p(exponent.as_rational().get_num_mpz_t())) {
    return pow(base, exponent.as_rational().get_num().get_si());
  }
  if (base.is_rational() && exponent.is_rational()) rational_unsupported("pow");
  mpfr_prec_t prec = std::max(base.precision(), exponent.precision());
  Scalar b = base.to_floating(prec);
  Scalar e = exponent.to_floating(prec);
  BigFloat r(prec);
  mpfr_pow(r.get(), b.as_float().get(), e.as_float().get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

Scalar relative_difference(const Scalar& a, const Scalar& b) {
  Scalar diff = abs(a - b);
  Scalar scale = max(abs(a), abs(b));
  if (scale.is_zero()) return diff;
  return diff / scale;
}

// ---------------------------------------------------------- NumericContext

Scalar NumericContext::integer(long v) const {
  if (backend == Backend::rational) return Scalar::rational(v);
  BigFloat f(precision);
  mpfr_set_si(f.get(), v, MPFR_RNDN);
  return Scalar(std::move(f));
}

Scalar NumericContext::fraction(long num, long den) const {
  return convert(Scalar::rational(num, den));
}

Scalar NumericContext::parse(std::string_view text) const {
  if (backend == Backend::rational) return Scalar::parse_rational(text);
  return Scalar::parse_floating(text, precision);
}

Scalar NumericContext::convert(const Scalar& x) const {
  if (backend == Backend::rational) {
    if (!x.is_rational()) {
      throw Error(ErrorCode::backend_unsupported, "float value cannot enter the rational backend");
    }
    return x;
  }
  return x.to_floating(precision);
}

Scalar NumericContext::epsilon() const {
  if (backend == Backend::rational) return Scalar{};
  BigFloat f(precision);
  mpfr_set_ui_2exp(f.get(), 1, -static_cast<mpfr_exp_t>(precision), MPFR_RNDN);
  return Scalar(std::move(f));
}

}  // namespace quasiorth
