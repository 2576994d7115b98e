#include "quasiorth/problem.hpp"

#include <json.hpp>
#include <utility>

#include "quasiorth/errors.hpp"

namespace quasiorth {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "problem file: " + what);
}

std::string number_text(const json& v, const std::string& where) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    (void)Scalar::parse_rational(s);  // validate now
    return s;
  }
  if (v.is_number()) return v.dump();
  schema(where + " must be a number or numeric string");
}

std::string field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) schema(where + " is missing \"" + key + "\"");
  return number_text(obj.at(key), where + "." + key);
}

std::vector<std::string> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number_text(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

FamilySpec family_from(const std::string& name, const std::vector<std::string>& args) {
  auto want = [&](std::size_t count) {
    if (args.size() != count) {
      schema("family " + name + " takes " + std::to_string(count) + " parameter(s)");
    }
  };
  FamilySpec f;
  if (name == "jacobi") {
    want(2);
    f = FamilySpec::jacobi(Scalar::parse_rational(args[0]), Scalar::parse_rational(args[1]));
  } else if (name == "legendre") {
    want(0);
    f = FamilySpec::legendre();
  } else if (name == "chebyshev_u") {
    want(0);
    f = FamilySpec::chebyshev_u();
  } else if (name == "charlier") {
    want(1);
    f = FamilySpec::charlier(Scalar::parse_rational(args[0]));
  } else if (name == "semicircle") {
    want(0);
    f = FamilySpec::semicircle();
  } else {
    schema("unknown family \"" + name + "\"");
  }
  f.validate();
  return f;
}

// "jacobi(1, 0)", "legendre", ...
FamilySpec family_from_string(const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos) return family_from(text, {});
  auto close = text.rfind(')');
  if (close == std::string::npos || close < open) schema("malformed family \"" + text + "\"");
  std::vector<std::string> args;
  std::string inner = text.substr(open + 1, close - open - 1);
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    std::string part = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.find_first_not_of(" \t") != std::string::npos) args.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return family_from(text.substr(0, open), args);
}

FamilySpec family_from_json(const json& v) {
  if (v.is_string()) return family_from_string(v.get<std::string>());
  if (!v.is_object() || !v.contains("name") || !v.at("name").is_string()) {
    schema("\"family\" must be a string or an object with a \"name\"");
  }
  auto name = v.at("name").get<std::string>();
  std::vector<std::string> args;
  if (name == "jacobi") {
    args = {field(v, "alpha", "family"), field(v, "gamma", "family")};
  } else if (name == "charlier") {
    args = {field(v, "lambda", "family")};
  }
  return family_from(name, args);
}

}  // namespace

std::string Problem::label() const {
  std::string base = family ? family->name() : "recurrence[" + std::to_string(raw_beta.size()) + "]";
  return base;
}

Problem parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("top level must be an object");

  Problem p;
  if (doc.contains("family") == doc.contains("recurrence")) {
    schema("exactly one of \"family\" and \"recurrence\" is required");
  }
  if (doc.contains("family")) {
    p.family = family_from_json(doc.at("family"));
  } else {
    const auto& r = doc.at("recurrence");
    if (!r.is_object() || !r.contains("beta") || !r.contains("beta_hat")) {
      schema("\"recurrence\" needs \"beta\" and \"beta_hat\" arrays");
    }
    p.raw_beta = number_array(r.at("beta"), "recurrence.beta");
    p.raw_beta_hat = number_array(r.at("beta_hat"), "recurrence.beta_hat");
    if (p.raw_beta.empty()) schema("recurrence.beta is empty");
  }

  if (!doc.contains("divisor") || !doc.at("divisor").is_object()) {
    schema("\"divisor\" object is required");
  }
  const auto& d = doc.at("divisor");
  std::string kind = d.value("kind", std::string("linear"));
  if (d.contains("preset")) {
    if (!d.at("preset").is_string() || d.at("preset").get<std::string>() != "kesten-mckay") {
      schema("unknown divisor preset");
    }
    kind = "kesten-mckay";
  }
  if (kind == "kesten-mckay") {
    p.form = Problem::DivisorForm::kesten_mckay;
    p.rho = field(d, "rho", "divisor");
    p.y = field(d, "y", "divisor");
  } else {
    if (d.contains("C")) {
      const auto& c = d.at("C");
      if (!(c.is_string() && c.get<std::string>() == "auto")) p.C = number_text(c, "divisor.C");
    }
    if (kind == "linear") {
      p.form = Problem::DivisorForm::linear;
      p.coefficients = {field(d, "D", "divisor")};
    } else if (kind == "quadratic") {
      p.form = Problem::DivisorForm::quadratic;
      p.coefficients = {field(d, "E", "divisor"), field(d, "D", "divisor")};
    } else if (kind == "polynomial") {
      p.form = Problem::DivisorForm::polynomial;
      if (!d.contains("coefficients")) schema("polynomial divisor needs \"coefficients\"");
      p.coefficients = number_array(d.at("coefficients"), "divisor.coefficients");
      if (p.coefficients.empty()) schema("polynomial divisor needs degree >= 1");
    } else {
      schema("unknown divisor kind \"" + kind + "\"");
    }
  }

  if (doc.contains("precision_bits")) {
    const auto& v = doc.at("precision_bits");
    if (!v.is_number_integer() || v.get<long>() < 16 || v.get<long>() > 65536) {
      schema("precision_bits must be an integer in [16, 65536]");
    }
    p.precision_bits = v.get<long>();
  }
  if (doc.contains("backend")) {
    const auto& v = doc.at("backend");
    std::string b = v.is_string() ? v.get<std::string>() : "";
    if (b == "rational") p.backend = Backend::rational;
    else if (b == "float") p.backend = Backend::floating;
    else schema("backend must be \"rational\" or \"float\"");
  }
  if (doc.contains("n")) {
    const auto& v = doc.at("n");
    if (!v.is_number_integer() || v.get<long>() < 0) schema("n must be a nonnegative integer");
    p.n = v.get<std::size_t>();
  }
  return p;
}

ProblemInstance instantiate(const Problem& problem, const NumericContext& ctx) {
  auto parse = [&](const std::string& s) { return ctx.convert(Scalar::parse_rational(s)); };

  std::optional<RecurrenceCoefficients> rc;
  std::optional<MeasureSpec> measure;
  if (problem.family) {
    rc = family_recurrence(*problem.family, ctx);
    if (ctx.backend == Backend::floating) measure = family_measure(*problem.family, ctx);
  } else {
    std::vector<Scalar> beta, beta_hat;
    for (const auto& s : problem.raw_beta) beta.push_back(parse(s));
    for (const auto& s : problem.raw_beta_hat) beta_hat.push_back(parse(s));
    rc = RecurrenceCoefficients(std::move(beta), std::move(beta_hat));
    if (ctx.backend == Backend::floating) {
      measure = MeasureSpec{RecurrenceMeasure{*rc, {}}, problem.label()};
    }
  }

  std::optional<Scalar> C;
  if (problem.C) C = parse(*problem.C);
  DivisorSpec div = DivisorSpec::linear(std::nullopt, Scalar(0));
  switch (problem.form) {
    case Problem::DivisorForm::kesten_mckay:
      div = kesten_mckay_divisor(Scalar::parse_rational(problem.rho),
                                 Scalar::parse_rational(problem.y), ctx);
      break;
    default: {
      std::vector<Scalar> lower;
      for (const auto& s : problem.coefficients) lower.push_back(parse(s));
      div = DivisorSpec::polynomial(C, std::move(lower));
    }
  }
  return {ctx, std::move(*rc), std::move(measure), std::move(div)};
}

}  // namespace quasiorth
