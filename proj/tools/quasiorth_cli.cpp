// quasiorth: transform, verify, expand and oracle commands on JSON problem files.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 transform breakdown, 4 oracle failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quasiorth/catalog.hpp"
#include "quasiorth/errors.hpp"
#include "quasiorth/expansion.hpp"
#include "quasiorth/linear_transform.hpp"
#include "quasiorth/oracle.hpp"
#include "quasiorth/pipeline.hpp"
#include "quasiorth/problem.hpp"
#include "quasiorth/quadratic_transform.hpp"

using namespace quasiorth;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kBreakdown = 3;
constexpr int kOracleFailure = 4;
constexpr long kMaxPrecision = 4096;

struct Options {
  std::string input;
  std::size_t n = 0;
  bool n_given = false;
  std::string tol = "1e-8";
  long precision = 0;
  std::string backend;
  std::string output;
  std::string format = "csv";
  std::size_t r = 0;
  std::string points;
};

struct Table {
  std::string name;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<Table> tables;
  std::vector<std::string> notes;  // emitted as "# ..." lines / "notes" array
  nlohmann::json extra = nlohmann::json::object();
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_family:
    case ErrorCode::backend_unsupported:
    case ErrorCode::insufficient_coefficients:
      return kInputError;
    case ErrorCode::oracle_singular:
      return kOracleFailure;
    default:
      return kBreakdown;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Report& report, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json doc = report.extra;
    for (const auto& t : report.tables) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < t.headers.size(); ++i) obj[t.headers[i]] = row[i];
        rows.push_back(std::move(obj));
      }
      doc[t.name] = std::move(rows);
    }
    doc["notes"] = report.notes;
    out << doc.dump(2) << "\n";
    return out.str();
  }
  for (const auto& note : report.notes) out << "# " << note << "\n";
  for (auto it = report.extra.begin(); it != report.extra.end(); ++it) {
    out << "# " << it.key() << " = "
        << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) out << "\n";
    first = false;
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
      out << (i ? "," : "") << csv_escape(t.headers[i]);
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
      out << "\n";
    }
  }
  return out.str();
}

void emit(const Report& report, const Options& opt) {
  std::string text = render(report, opt.format);
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + opt.output);
  out << text;
}

// Full-precision value plus a rounded display column.
void push_value(std::vector<std::string>& row, const Scalar& v) {
  row.push_back(v.str());
  row.push_back(v.display());
}

NumericContext context_for(const Problem& p, const Options& opt) {
  Backend backend = p.backend.value_or(Backend::floating);
  if (opt.backend == "rational") backend = Backend::rational;
  else if (opt.backend == "float") backend = Backend::floating;
  else if (!opt.backend.empty()) throw Error(ErrorCode::invalid_argument, "--backend must be rational or float");
  if (backend == Backend::rational) return NumericContext::rational();
  long bits = opt.precision > 0 ? opt.precision : p.precision_bits.value_or(128);
  return NumericContext::floating(bits);
}

// Runs `body`, doubling the precision while the error monitor reports
// PrecisionExhausted.
Report with_escalation(const Problem& problem, NumericContext ctx,
                       const std::function<Report(const ProblemInstance&)>& body) {
  std::vector<std::string> notes;
  for (;;) {
    try {
      Report r = body(instantiate(problem, ctx));
      r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
      if (ctx.backend == Backend::floating) r.extra["precision_bits"] = ctx.precision;
      else r.extra["backend"] = "rational";
      return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::precision_exhausted || ctx.backend == Backend::rational ||
          ctx.precision * 2 > kMaxPrecision) {
        throw;
      }
      notes.push_back("precision " + std::to_string(ctx.precision) + " bits exhausted (" +
                      e.what() + "); retrying at " + std::to_string(ctx.precision * 2));
      ctx.precision *= 2;
    }
  }
}

std::size_t count_for(const Problem& p, const Options& opt, std::size_t fallback) {
  if (opt.n_given) return opt.n;
  return p.n.value_or(fallback);
}

// ----------------------------------------------------------------- transform

Report transform_report(const ProblemInstance& in, std::size_t N) {
  TransformOutcome t = run_transform(in, N);
  const bool order2 = t.connection.order == 2;
  Table table{"rows", {"n", "kappa", "kappa_display"}, {}};
  if (order2) {
    table.headers.insert(table.headers.end(), {"lambda", "lambda_display"});
  }
  table.headers.insert(table.headers.end(),
                       {"alpha[n-1]", "alpha[n-1]_display", "alpha_hat[n-1]", "alpha_hat[n-1]_display"});
  for (std::size_t n = 1; n <= N; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    push_value(row, t.connection.kappa[n]);
    if (order2) push_value(row, t.connection.lambda[n]);
    push_value(row, t.recurrence.beta(n - 1));
    push_value(row, t.recurrence.beta_hat(n - 1));
    table.rows.push_back(std::move(row));
  }
  Report r;
  r.tables.push_back(std::move(table));
  r.notes = t.warnings;
  r.extra["path"] = std::string(to_string(t.path));
  r.extra["C"] = t.divisor.C().str();
  return r;
}

// -------------------------------------------------------------------- verify

struct Check {
  std::string name;
  Scalar value;
  bool pass;
};

Report verify_report(const ProblemInstance& in, std::size_t N, const Scalar& tol,
                     bool& all_pass) {
  if (!in.measure) {
    throw Error(ErrorCode::backend_unsupported, "verify needs the float backend");
  }
  const Scalar qtol = default_quadrature_tolerance(in.ctx);
  TransformOutcome t = run_transform(in, N);
  const std::size_t m = std::min<std::size_t>(N, 20);
  std::vector<Check> checks;
  auto add = [&](std::string name, const Scalar& v) {
    checks.push_back({std::move(name), v, v <= tol});
  };

  MeasureSpec dA = modified_measure(*in.measure, t.divisor);
  auto defect = orthogonality_defect(t.recurrence, dA, m, qtol);
  add("orthogonality_off_diagonal", defect.max_off_diagonal);
  add("orthogonality_norms", defect.max_norm_error);

  const auto& cc = t.connection;
  if (cc.order == 1) {
    const Scalar& D = t.divisor.D();
    auto residuals = conserved_residuals(in.rc, cc, D);
    Scalar worst(0);
    Scalar scale = max(Scalar(1), abs(D));
    for (const auto& r : residuals) worst = max(worst, abs(r) / scale);
    add("conserved_quantity", worst);
    Scalar slack = tol * max(Scalar(1), abs(cc.kappa[1]));
    auto bad = kappa_invariant_violation(in.rc, cc, D, slack);
    checks.push_back({"kappa_sign_and_bound", Scalar(bad ? static_cast<long>(*bad) : 0), !bad});
  } else {
    add("s1_s4_residuals", quadratic_residuals(in.rc, cc, t.recurrence).max());
  }

  auto G = gram_matrix(in.rc, *in.measure, t.divisor, m + 1, qtol);
  add("normalization", abs(G[0][0] - 1));
  Scalar worst(0);
  for (std::size_t n = 1; n <= m; ++n) {
    auto c = direct_connection(G, static_cast<std::size_t>(cc.order), n);
    std::vector<Scalar> ref{cc.kappa[n]};
    if (cc.order == 2 && n >= 2) ref.push_back(cc.lambda[n]);
    Scalar scale(0), diff(0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      scale = max(scale, abs(ref[j]));
      diff = max(diff, abs(c[j] - ref[j]));
    }
    worst = max(worst, scale.is_zero() ? diff : diff / scale);
  }
  add("oracle_agreement", worst);

  Report r;
  Table table{"checks", {"check", "max_residual", "max_residual_display", "status"}, {}};
  all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    std::vector<std::string> row{c.name};
    push_value(row, c.value);
    row.push_back(c.pass ? "PASS" : "FAIL");
    table.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(table));
  r.notes = t.warnings;
  r.extra["tol"] = tol.display();
  r.extra["path"] = std::string(to_string(t.path));
  r.extra["result"] = all_pass ? "PASS" : "FAIL";
  return r;
}

// -------------------------------------------------------------------- expand

std::vector<std::string> split_points(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  }
  return out;
}

Report expand_report(const ProblemInstance& in, std::size_t N, const std::vector<std::string>& points) {
  if (in.divisor.kind() != DivisorKind::linear) {
    throw Error(ErrorCode::invalid_argument, "expand supports linear divisors only");
  }
  TransformOutcome t = run_transform(in, std::max<std::size_t>(N, 1));
  auto f = fourier_coefficients(t.connection, in.rc, N);

  Report r;
  r.notes = t.warnings;
  std::optional<ParsevalReport> parseval;
  if (in.measure) {
    try {
      parseval = parseval_residual(in.rc, t.connection, t.divisor, *in.measure, N,
                                   default_quadrature_tolerance(in.ctx));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::quadrature_divergent) throw;
      r.notes.push_back(std::string("warning: Parseval column omitted: ") + e.what());
    }
  } else {
    r.notes.push_back("warning: Parseval column omitted: needs the float backend");
  }

  Table coeffs{"coefficients", {"n", "f", "f_display"}, {}};
  if (parseval) coeffs.headers.insert(coeffs.headers.end(), {"parseval_partial", "parseval_partial_display"});
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    push_value(row, f[n]);
    if (parseval) push_value(row, parseval->partial_sums[n]);
    coeffs.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(coeffs));
  if (parseval) {
    r.extra["parseval_rhs"] = parseval->rhs.str();
    r.extra["parseval_residual"] = parseval->residual.display();
    if (N >= 8) {
      r.extra["log_weighted_tail_slope"] = parseval->tail_slope;
      r.extra["log_weighted_summable"] = parseval->log_weighted_summable;
    }
  }

  if (!points.empty()) {
    Table sums{"partial_sums", {"x", "partial_sum", "partial_sum_display"}, {}};
    for (const auto& p : points) {
      Scalar x = in.ctx.convert(Scalar::parse_rational(p));
      std::vector<std::string> row{p};
      push_value(row, evaluate_partial_sum(in.rc, f, N, x));
      sums.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(sums));
  }
  r.extra["C"] = t.divisor.C().str();
  return r;
}

// -------------------------------------------------------------------- oracle

Report oracle_report(const ProblemInstance& in, std::size_t r, std::size_t n) {
  if (!in.measure) throw Error(ErrorCode::backend_unsupported, "oracle needs the float backend");
  const Scalar qtol = default_quadrature_tolerance(in.ctx);
  auto G = gram_matrix(in.rc, *in.measure, in.divisor, n + 1, qtol);
  auto c = direct_connection(G, r, n);
  Report rep;
  Table table{"coefficients", {"j", "c", "c_display"}, {}};
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<std::string> row{std::to_string(j + 1)};
    push_value(row, c[j]);
    if (!c[j].is_finite()) throw Error(ErrorCode::oracle_singular, "non-finite coefficient", n);
    table.rows.push_back(std::move(row));
  }
  if (c.size() < r) {
    rep.notes.push_back("n < r: reduced system with " + std::to_string(c.size()) + " unknowns");
  }
  rep.tables.push_back(std::move(table));
  rep.extra["n"] = n;
  rep.extra["r"] = r;
  return rep;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("input", opt.input, "JSON problem file")->required();
  cmd->add_option_function<std::size_t>(
      "--n", [&opt](const std::size_t& v) { opt.n = v; opt.n_given = true; },
      "number of indices / degree");
  cmd->add_option("--precision", opt.precision, "float precision in bits")
      ->check(CLI::Range(16L, kMaxPrecision));
  cmd->add_option("--backend", opt.backend, "rational or float")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--output", opt.output, "write the table to this path");
  cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure division by linear and quadratic polynomials: connection coefficients, "
               "new recurrences, expansions and oracles"};
  app.require_subcommand(1);
  Options opt;

  auto* transform = app.add_subcommand("transform", "kappa (lambda), alpha, alpha_hat tables");
  add_common(transform, opt);
  auto* verify = app.add_subcommand("verify", "invariant and oracle checks");
  add_common(verify, opt);
  verify->add_option("--tol", opt.tol, "pass threshold for every check");
  auto* expand = app.add_subcommand("expand", "Fourier coefficients, partial sums, Parseval");
  add_common(expand, opt);
  expand->add_option("--points", opt.points, "comma-separated evaluation points");
  auto* oracle = app.add_subcommand("oracle", "Gram-system connection coefficients c_n^(j)");
  add_common(oracle, opt);
  oracle->add_option("--r", opt.r, "number of coefficients (default: divisor degree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    Problem problem = parse_problem(read_file(opt.input));
    NumericContext ctx = context_for(problem, opt);
    bool verified = true;
    Report report;
    if (transform->parsed()) {
      std::size_t N = count_for(problem, opt, 10);
      report = with_escalation(problem, ctx, [&](const ProblemInstance& in) {
        return transform_report(in, N);
      });
    } else if (verify->parsed()) {
      std::size_t N = count_for(problem, opt, 10);
      Scalar tol = Scalar::parse_rational(opt.tol);
      if (tol.sign() < 0) throw Error(ErrorCode::invalid_argument, "--tol must be >= 0");
      if (ctx.backend == Backend::rational) {
        std::cerr << "note: verify runs quadrature checks; using the float backend at 128 bits\n";
        ctx = NumericContext::floating(128);
      }
      report = with_escalation(problem, ctx, [&](const ProblemInstance& in) {
        return verify_report(in, N, tol, verified);
      });
    } else if (expand->parsed()) {
      std::size_t N = count_for(problem, opt, 10);
      auto points = split_points(opt.points);
      report = with_escalation(problem, ctx, [&](const ProblemInstance& in) {
        return expand_report(in, N, points);
      });
    } else {
      std::size_t degree = problem.form == Problem::DivisorForm::kesten_mckay
                               ? 2
                               : problem.coefficients.size();
      std::size_t r = opt.r > 0 ? opt.r : degree;
      std::size_t n = count_for(problem, opt, r);
      if (ctx.backend == Backend::rational) {
        throw Error(ErrorCode::backend_unsupported, "oracle needs the float backend");
      }
      try {
        report = with_escalation(problem, ctx, [&](const ProblemInstance& in) {
          return oracle_report(in, r, n);
        });
      } catch (const Error& e) {
        if (exit_code_for(e) == kInputError) throw;
        std::cerr << "error: " << e.what() << "\n";
        return kOracleFailure;
      }
    }
    emit(report, opt);
    if (!opt.output.empty()) {
      for (const auto& note : report.notes) std::cerr << note << "\n";
    }
    return verified ? 0 : kVerifyFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
