#include "quasiorth/recurrence.hpp"

#include <string>
#include <utility>
#include <variant>

#include "quasiorth/errors.hpp"

namespace quasiorth {

struct RecurrenceCoefficients::Source {
  struct Stored {
    std::vector<Scalar> beta;
    std::vector<Scalar> beta_hat;
  };
  struct Lazy {
    Generator beta;
    Generator beta_hat;
    std::optional<std::size_t> limit;
  };
  std::variant<Stored, Lazy> data;
};

RecurrenceCoefficients::RecurrenceCoefficients(std::vector<Scalar> beta,
                                               std::vector<Scalar> beta_hat)
    : source_(std::make_shared<const Source>(
          Source{Source::Stored{std::move(beta), std::move(beta_hat)}})) {}

RecurrenceCoefficients::RecurrenceCoefficients(Generator beta, Generator beta_hat,
                                               std::optional<std::size_t> limit)
    : source_(std::make_shared<const Source>(
          Source{Source::Lazy{std::move(beta), std::move(beta_hat), limit}})) {}

namespace {

[[noreturn]] void exhausted(const char* which, std::size_t index) {
  throw Error(ErrorCode::insufficient_coefficients,
              std::string(which) + " sequence exhausted", index);
}

}  // namespace

Scalar RecurrenceCoefficients::beta(std::size_t n) const {
  if (auto* s = std::get_if<Source::Stored>(&source_->data)) {
    if (n >= s->beta.size()) exhausted("beta", n);
    return s->beta[n];
  }
  const auto& lazy = std::get<Source::Lazy>(source_->data);
  if (lazy.limit && n >= *lazy.limit) exhausted("beta", n);
  return lazy.beta(n);
}

Scalar RecurrenceCoefficients::beta_hat(std::size_t k) const {
  if (auto* s = std::get_if<Source::Stored>(&source_->data)) {
    if (k >= s->beta_hat.size()) exhausted("beta_hat", k);
    return s->beta_hat[k];
  }
  const auto& lazy = std::get<Source::Lazy>(source_->data);
  if (lazy.limit && k >= *lazy.limit) exhausted("beta_hat", k);
  return lazy.beta_hat(k);
}

std::optional<std::size_t> RecurrenceCoefficients::beta_count() const {
  if (auto* s = std::get_if<Source::Stored>(&source_->data)) return s->beta.size();
  return std::get<Source::Lazy>(source_->data).limit;
}

std::optional<std::size_t> RecurrenceCoefficients::beta_hat_count() const {
  if (auto* s = std::get_if<Source::Stored>(&source_->data)) return s->beta_hat.size();
  return std::get<Source::Lazy>(source_->data).limit;
}

RecurrenceCoefficients RecurrenceCoefficients::as_floating(mpfr_prec_t precision) const {
  if (auto* s = std::get_if<Source::Stored>(&source_->data)) {
    std::vector<Scalar> beta, beta_hat;
    beta.reserve(s->beta.size());
    beta_hat.reserve(s->beta_hat.size());
    for (const auto& b : s->beta) beta.push_back(b.to_floating(precision));
    for (const auto& b : s->beta_hat) beta_hat.push_back(b.to_floating(precision));
    return {std::move(beta), std::move(beta_hat)};
  }
  auto self = *this;
  const auto& lazy = std::get<Source::Lazy>(source_->data);
  return {[self, precision](std::size_t n) { return self.beta(n).to_floating(precision); },
          [self, precision](std::size_t k) { return self.beta_hat(k).to_floating(precision); },
          lazy.limit};
}

RecurrenceCoefficients RecurrenceCoefficients::materialize(std::size_t count) const {
  std::vector<Scalar> beta, beta_hat;
  beta.reserve(count);
  beta_hat.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    beta.push_back(this->beta(i));
    beta_hat.push_back(this->beta_hat(i));
  }
  return {std::move(beta), std::move(beta_hat)};
}

std::vector<Scalar> eval_monic_sequence(const RecurrenceCoefficients& rc, std::size_t n,
                                        const Scalar& x) {
  std::vector<Scalar> values;
  values.reserve(n + 1);
  values.emplace_back(1);
  if (n == 0) return values;
  values.push_back(x - rc.beta(0));
  for (std::size_t k = 1; k < n; ++k) {
    values.push_back((x - rc.beta(k)) * values[k] - rc.beta_hat(k - 1) * values[k - 1]);
  }
  return values;
}

Scalar squared_norm(const RecurrenceCoefficients& rc, std::size_t n) {
  Scalar norm(1);
  for (std::size_t k = 0; k < n; ++k) norm *= rc.beta_hat(k);
  return norm;
}

JacobiMatrix jacobi_matrix(const RecurrenceCoefficients& rc, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "Jacobi matrix dimension must be >= 1");
  JacobiMatrix jm;
  jm.diag.reserve(m);
  jm.offdiag.reserve(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    Scalar b = rc.beta(i);
    if (b.is_rational()) {
      throw Error(ErrorCode::backend_unsupported, "Jacobi matrix needs float coefficients", i);
    }
    jm.diag.push_back(std::move(b));
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    Scalar bh = rc.beta_hat(k);
    if (bh.is_rational()) {
      throw Error(ErrorCode::backend_unsupported, "Jacobi matrix needs float coefficients", k);
    }
    if (bh.sign() <= 0) {
      throw Error(ErrorCode::positivity_violation, "beta_hat must be positive", k);
    }
    jm.offdiag.push_back(sqrt(bh));
  }
  return jm;
}

std::vector<std::vector<Scalar>> monic_polynomials(const RecurrenceCoefficients& rc,
                                                   std::size_t n) {
  std::vector<std::vector<Scalar>> polys;
  polys.reserve(n + 1);
  polys.push_back({Scalar(1)});
  if (n == 0) return polys;
  polys.push_back({-rc.beta(0), Scalar(1)});
  for (std::size_t k = 1; k < n; ++k) {
    const auto& cur = polys[k];
    const auto& prev = polys[k - 1];
    Scalar shift = rc.beta(k);
    Scalar weight = rc.beta_hat(k - 1);
    std::vector<Scalar> next(k + 2, Scalar(0));
    for (std::size_t i = 0; i <= k; ++i) {
      next[i + 1] += cur[i];
      next[i] -= shift * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= weight * prev[i];
    polys.push_back(std::move(next));
  }
  return polys;
}

}  // namespace quasiorth
