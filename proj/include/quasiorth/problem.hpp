#pragma once

// JSON problem files:
// {
//   "family": {"name": "jacobi", "alpha": 1, "gamma": 0} | "jacobi(1, 0)" | "legendre" | ...,
//   "recurrence": {"beta": [...], "beta_hat": [...]},            (instead of "family")
//   "divisor": {"kind": "linear", "C": "auto" | number, "D": number}
//            | {"kind": "quadratic", "C": ..., "D": ..., "E": ...}
//            | {"kind": "polynomial", "C": ..., "coefficients": [p_0, ..., p_{r-1}]}
//            | {"kind": "kesten-mckay", "rho": ..., "y": ...},
//   "precision_bits": 128,
//   "backend": "float" | "rational",
//   "n": 10
// }
// Numbers may be JSON numbers or strings ("1/3", "2.5e-1"); both are read
// exactly as decimals/fractions before entering the working backend.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasiorth/catalog.hpp"
#include "quasiorth/divisor.hpp"
#include "quasiorth/measure.hpp"
#include "quasiorth/recurrence.hpp"
#include "quasiorth/scalar.hpp"

namespace quasiorth {

struct Problem {
  std::optional<FamilySpec> family;
  std::vector<std::string> raw_beta, raw_beta_hat;

  enum class DivisorForm { linear, quadratic, polynomial, kesten_mckay } form = DivisorForm::linear;
  std::optional<std::string> C;  // empty = auto
  std::vector<std::string> coefficients;  // p_0 .. p_{r-1}
  std::string rho, y;

  std::optional<long> precision_bits;
  std::optional<Backend> backend;
  std::optional<std::size_t> n;

  std::string label() const;
};

/// Throws Error(invalid_argument) with a readable message on schema errors.
Problem parse_problem(const std::string& json_text);

struct ProblemInstance {
  NumericContext ctx;
  RecurrenceCoefficients rc;
  std::optional<MeasureSpec> measure;  // float backend only
  DivisorSpec divisor;
};

ProblemInstance instantiate(const Problem& problem, const NumericContext& ctx);

}  // namespace quasiorth
