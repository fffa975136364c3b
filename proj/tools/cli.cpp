#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <variant>

#include "calcverify/calcverify.hpp"

namespace calcverify::cli {

namespace {

// ---------------------------------------------------------------------------
// Output

using FieldValue = std::variant<double, long long, bool, std::string, std::vector<double>>;

struct Field {
  std::string name;
  FieldValue value;
};

std::string format_number(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v, 17) : "null"; }

void emit(std::ostream& out, const std::vector<Field>& fields, OutputMode mode) {
  if (mode == OutputMode::plain) {
    for (const auto& f : fields) {
      out << f.name << ": ";
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_number(v, 10);
            } else if constexpr (std::is_same_v<T, bool>) {
              out << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
              for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_number(v[i], 10);
            } else {
              out << v;
            }
          },
          f.value);
      out << '\n';
    }
    return;
  }

  // Flat JSON object; numbers carry 17 significant digits, which the JSON
  // library's shortest-form serializer would not guarantee.
  out << '{';
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << (i ? ", " : "") << nlohmann::json(fields[i].name).dump() << ": ";
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out << json_number(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out << (v ? "true" : "false");
          } else if constexpr (std::is_same_v<T, long long>) {
            out << v;
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            out << '[';
            for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << json_number(v[k]);
            out << ']';
          } else {
            out << nlohmann::json(v).dump();
          }
        },
        fields[i].value);
  }
  out << "}\n";
}

// ---------------------------------------------------------------------------
// Errors

// An expression argument that failed to parse or evaluate, with enough
// context to draw a caret under the offending byte.
struct ExprFailure {
  std::string label;
  std::string source;
  std::size_t offset;
  std::string message;
  bool parse;  // false: evaluation
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Expr parse_arg(const std::string& label, const std::string& text, std::vector<std::string> vars) {
  try {
    return parse(text, std::move(vars));
  } catch (const ParseError& e) {
    std::string msg = e.what();
    if (!e.expected().empty()) msg += " (expected " + e.expected() + ")";
    throw ExprFailure{label, text, e.offset(), msg, true};
  }
}

std::string describe_point(std::span<const std::string> vars, std::span<const double> x) {
  std::string s;
  for (std::size_t i = 0; i < vars.size() && i < x.size(); ++i) {
    s += (i ? ", " : "") + vars[i] + " = " + format_number(x[i], 17);
  }
  return s;
}

IntegrandND labeled(const std::string& label, const Expr& e) {
  return [label, e](std::span<const double> x) {
    try {
      return evaluate(e, x);
    } catch (const EvalError& err) {
      throw ExprFailure{label, e.source(), err.offset(),
                        std::string(err.what()) + " at " + describe_point(e.variables(), x), false};
    }
  };
}

Integrand1D labeled_1d(const std::string& label, const Expr& e) {
  auto f = labeled(label, e);
  return [f](double x) { return f(std::span<const double>(&x, 1)); };
}

void report_error(std::ostream& out, std::ostream& err, OutputMode mode, const std::string& kind,
                  const std::string& message, const ExprFailure* expr = nullptr) {
  if (mode == OutputMode::json) {
    std::vector<Field> fields{{"error", kind}, {"message", message}};
    if (expr) {
      fields.push_back({"argument", expr->label});
      fields.push_back({"offset", static_cast<long long>(expr->offset)});
    }
    emit(out, fields, OutputMode::json);
    return;
  }
  err << "error: " << message << '\n';
  if (expr) {
    const std::string prefix = "  " + expr->label + ": ";
    err << prefix << expr->source << '\n';
    err << std::string(prefix.size() + std::min(expr->offset, expr->source.size()), ' ') << "^\n";
  }
}

double parse_real(const std::string& what, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || !std::isfinite(v)) {
    throw UsageError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Subcommands

QuadratureRule rule_for(const CliConfig& cfg, int n, std::ostream& err) {
  if (n < 1 || n > kMaxRuleSize) return gauss_rule(n);  // capability error
  const auto path = cfg.cache_path.empty() ? default_cache_path() : cfg.cache_path;
  try {
    return RuleCache(path, gauss_rule, &err).get_or_build(n);
  } catch (const IoError& e) {
    err << "warning: rule cache unavailable (" << e.what() << "); computing the rule directly\n";
    return gauss_rule(n);
  }
}

int cmd_integrate(const CliConfig& cfg, const std::string& text, const std::vector<std::string>& axes,
                  std::ostream& out, std::ostream& err) {
  if (axes.empty() || axes.size() % 3 != 0) {
    throw UsageError("integrate expects one to three '<var> <lo> <hi>' triples after the expression");
  }
  const std::size_t dims = axes.size() / 3;
  if (dims > static_cast<std::size_t>(kMaxBoxDims)) throw UsageError("integrate supports at most 3 axes");

  std::vector<std::string> vars;
  std::vector<double> lo, hi;
  for (std::size_t k = 0; k < dims; ++k) {
    vars.push_back(axes[3 * k]);
    lo.push_back(parse_real("lower bound of " + axes[3 * k], axes[3 * k + 1]));
    hi.push_back(parse_real("upper bound of " + axes[3 * k], axes[3 * k + 2]));
  }
  const Expr e = parse_arg("f", text, vars);
  const Box box(lo, hi);
  const QuadratureRule rule = rule_for(cfg, cfg.n, err);

  const auto f = labeled("f", e);
  const double value = dims == 1 ? integrate_1d([&f](double x) { return f(std::span<const double>(&x, 1)); }, lo[0],
                                                hi[0], rule)
                                 : integrate_box(f, box, rule);
  emit(out, {{"value", value}, {"n", static_cast<long long>(cfg.n)}, {"dims", static_cast<long long>(dims)}},
       cfg.mode);
  return kExitOk;
}

int cmd_diffcheck(const CliConfig& cfg, const std::string& var, const std::string& f_text,
                  const std::string& fprime_text, double point, std::ostream& out) {
  const Expr f = parse_arg("f", f_text, {var});
  const Expr fprime = parse_arg("fprime", fprime_text, {var});
  const DerivativeReport r =
      verify_derivative(labeled_1d("f", f), labeled_1d("fprime", fprime), point, cfg.h, cfg.tol_abs, cfg.tol_rel);
  emit(out,
       {{"point", r.point},
        {"h", r.h},
        {"analytic", r.analytic},
        {"numeric", r.numeric},
        {"abs_diff", r.abs_diff},
        {"rel_diff", r.rel_diff},
        {"verdict", std::string(to_string(r.verdict))}},
       cfg.mode);
  return r.verdict == Verdict::pass ? kExitOk : kExitFailed;
}

int cmd_antideriv(const CliConfig& cfg, const std::string& var, const std::string& f_text, const std::string& F_text,
                  double a, double b, std::ostream& out) {
  const Expr f = parse_arg("f", f_text, {var});
  const Expr F = parse_arg("F", F_text, {var});
  const AntiderivativeReport r = verify_antiderivative(labeled_1d("f", f), labeled_1d("F", F), a, b, cfg.n, cfg.tol_abs);
  emit(out,
       {{"a", r.a},
        {"b", r.b},
        {"ftc_value", r.ftc_value},
        {"quad_value", r.quad_value},
        {"n", static_cast<long long>(r.n)},
        {"abs_diff", r.abs_diff},
        {"verdict", std::string(to_string(r.verdict))}},
       cfg.mode);
  return r.verdict == Verdict::pass ? kExitOk : kExitFailed;
}

struct SolveArgs {
  std::string var = "x";
  std::string f;
  std::string fprime;
  double c = 0.0;
  std::string method = "newton";
  std::optional<double> x0;
  std::optional<double> x1;
  double tol = kDefaultSolveTol;
  int max_iterations = kDefaultMaxIterations;
};

int cmd_solve(const CliConfig& cfg, const SolveArgs& s, std::ostream& out, std::ostream& err) {
  if (!s.x0) throw UsageError("solve needs --x0");
  if (s.method == "secant" && !s.x1) throw UsageError("the secant method needs --x1");
  if (s.method == "secant" && !s.fprime.empty()) throw UsageError("--fprime only applies to the newton method");

  const Expr f = parse_arg("f", s.f, {s.var});
  const auto fn = labeled_1d("f", f);
  Integrand1D dfn;
  if (!s.fprime.empty()) dfn = labeled_1d("fprime", parse_arg("fprime", s.fprime, {s.var}));

  try {
    const SolveResult r = s.method == "newton" ? newton_solve(fn, dfn, s.c, *s.x0, s.tol, s.max_iterations)
                                               : secant_solve(fn, s.c, *s.x0, *s.x1, s.tol, s.max_iterations);
    emit(out,
         {{"method", s.method},
          {"root", r.root},
          {"residual", r.residual},
          {"iterations", static_cast<long long>(r.iterations)},
          {"converged", r.converged}},
         cfg.mode);
    if (!r.converged && cfg.mode == OutputMode::plain) {
      err << "no convergence after " << r.iterations << " iterations; last iterate " << format_number(r.root, 17)
          << '\n';
    }
    return r.converged ? kExitOk : kExitFailed;
  } catch (const SolveError& e) {
    const double residual = [&] {
      try {
        return std::abs(fn(e.last_iterate()) - s.c);
      } catch (...) {
        return std::nan("");
      }
    }();
    std::vector<Field> fields{{"method", s.method},
                              {"root", e.last_iterate()},
                              {"residual", residual},
                              {"iterations", static_cast<long long>(e.iterations())},
                              {"converged", false}};
    if (cfg.mode == OutputMode::json) fields.push_back({"message", std::string(e.what())});
    emit(out, fields, cfg.mode);
    if (cfg.mode == OutputMode::plain) {
      err << "no convergence: " << e.what() << "; last iterate " << format_number(e.last_iterate(), 17) << '\n';
    }
    return kExitFailed;
  }
}

int cmd_nodes(const CliConfig& cfg, int n, std::ostream& out) {
  const QuadratureRule rule = gauss_rule(n);
  if (cfg.mode == OutputMode::json) {
    emit(out,
         {{"n", static_cast<long long>(n)},
          {"nodes", std::vector<double>(rule.nodes().begin(), rule.nodes().end())},
          {"weights", std::vector<double>(rule.weights().begin(), rule.weights().end())}},
         cfg.mode);
  } else {
    RuleSet set;
    set.emplace(n, rule);
    write_tables(out, set);
  }
  return kExitOk;
}

int cmd_cordic(const CliConfig& cfg, double theta, int iters, std::ostream& out) {
  const CordicTable table(iters);
  const SinCos sc = cordic_sincos(theta, table);
  const double ref_sin = std::sin(theta), ref_cos = std::cos(theta);
  emit(out,
       {{"theta", theta},
        {"iters", static_cast<long long>(iters)},
        {"sin", sc.sin},
        {"cos", sc.cos},
        {"ref_sin", ref_sin},
        {"ref_cos", ref_cos},
        {"sin_abs_diff", std::abs(sc.sin - ref_sin)},
        {"cos_abs_diff", std::abs(sc.cos - ref_cos)}},
       cfg.mode);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  bool json = false;
  std::string cache;

  CLI::App app{"Numerical calculus verification: Gauss-Legendre integration, derivative and\n"
               "antiderivative checks, Newton/secant solving and CORDIC sine/cosine."};
  app.name("calcverify");
  // "--h" is the difference step, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  const auto add_output = [&](CLI::App* sub) { sub->add_flag("--json", json, "Emit a single JSON object"); };
  const auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", cache, "Rule cache file (default: $CALCVERIFY_CACHE or the user cache dir)");
  };

  // integrate
  std::string int_expr;
  std::vector<std::string> int_axes;
  auto* integrate = app.add_subcommand("integrate", "Integrate f over a 1-3 dimensional box");
  integrate->add_option("expr", int_expr, "Integrand, e.g. \"1/sqrt(x)\"")->required();
  integrate->add_option("axes", int_axes, "<var> <lo> <hi> per axis")->required();
  integrate->add_option("--n", cfg.n, "Gauss points per axis")->capture_default_str();
  add_output(integrate);
  add_cache(integrate);

  // diffcheck
  std::string dc_f, dc_fprime, dc_var = "x";
  double dc_point = 0.0;
  auto* diffcheck = app.add_subcommand("diffcheck", "Compare an analytic derivative with a central difference");
  diffcheck->add_option("f", dc_f, "Function")->required();
  diffcheck->add_option("fprime", dc_fprime, "Claimed derivative")->required();
  diffcheck->add_option("point", dc_point, "Point a")->required();
  diffcheck->add_option("--h", cfg.h, "Difference step")->capture_default_str();
  diffcheck->add_option("--tol", cfg.tol_abs, "Absolute and relative tolerance")->capture_default_str();
  diffcheck->add_option("--var", dc_var, "Variable name")->capture_default_str();
  add_output(diffcheck);

  // antideriv
  std::string ad_f, ad_F, ad_var = "x";
  double ad_a = 0.0, ad_b = 0.0;
  auto* antideriv = app.add_subcommand("antideriv", "Compare F(b) - F(a) with a Gauss quadrature of f");
  antideriv->add_option("f", ad_f, "Integrand")->required();
  antideriv->add_option("F", ad_F, "Claimed antiderivative")->required();
  antideriv->add_option("a", ad_a, "Lower bound")->required();
  antideriv->add_option("b", ad_b, "Upper bound")->required();
  antideriv->add_option("--n", cfg.n, "Gauss points")->capture_default_str();
  antideriv->add_option("--tol", cfg.tol_abs, "Absolute tolerance")->capture_default_str();
  antideriv->add_option("--var", ad_var, "Variable name")->capture_default_str();
  add_output(antideriv);

  // solve
  SolveArgs sv;
  auto* solve = app.add_subcommand("solve", "Solve f(x) = c by Newton's or the secant method");
  solve->add_option("f", sv.f, "Function")->required();
  solve->add_option("--c", sv.c, "Target value c")->capture_default_str();
  solve->add_option("--method", sv.method, "newton or secant")
      ->check(CLI::IsMember({"newton", "secant"}))
      ->capture_default_str();
  solve->add_option("--x0", sv.x0, "Starting point");
  solve->add_option("--x1", sv.x1, "Second starting point (secant)");
  solve->add_option("--fprime", sv.fprime, "Analytic derivative for Newton (default: central difference)");
  solve->add_option("--tol", sv.tol, "Residual tolerance")->capture_default_str();
  solve->add_option("--max-iters", sv.max_iterations, "Iteration cap")->capture_default_str();
  solve->add_option("--var", sv.var, "Variable name")->capture_default_str();
  add_output(solve);

  // nodes
  int nodes_n = 0;
  auto* nodes = app.add_subcommand("nodes", "Print the n-point Gauss-Legendre rule in table-file format");
  nodes->add_option("n", nodes_n, "Point count (1-64)")->required();
  add_output(nodes);

  // cordic
  double cordic_theta = 0.0;
  int cordic_iters = kDefaultCordicIterations;
  auto* cordic = app.add_subcommand("cordic", "Sine and cosine by CORDIC, compared with the C library");
  cordic->add_option("theta", cordic_theta, "Angle in radians")->required();
  cordic->add_option("--iters", cordic_iters, "CORDIC iterations (1-60)")->capture_default_str();
  add_output(cordic);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.mode = json ? OutputMode::json : OutputMode::plain;
  cfg.tol_rel = cfg.tol_abs;
  cfg.cache_path = cache;

  try {
    if (*integrate) return cmd_integrate(cfg, int_expr, int_axes, out, err);
    if (*diffcheck) return cmd_diffcheck(cfg, dc_var, dc_f, dc_fprime, dc_point, out);
    if (*antideriv) return cmd_antideriv(cfg, ad_var, ad_f, ad_F, ad_a, ad_b, out);
    if (*solve) return cmd_solve(cfg, sv, out, err);
    if (*nodes) return cmd_nodes(cfg, nodes_n, out);
    if (*cordic) return cmd_cordic(cfg, cordic_theta, cordic_iters, out);
  } catch (const ExprFailure& e) {
    report_error(out, err, cfg.mode, e.parse ? "parse" : "domain", e.message, &e);
    return kExitUsage;
  } catch (const UsageError& e) {
    report_error(out, err, cfg.mode, "usage", e.what());
    return kExitUsage;
  } catch (const CapabilityError& e) {
    report_error(out, err, cfg.mode, "capability", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    report_error(out, err, cfg.mode, "domain", e.what());
    return kExitUsage;
  } catch (const NumericError& e) {
    report_error(out, err, cfg.mode, "numeric", e.what());
    return kExitFailed;
  } catch (const Error& e) {
    report_error(out, err, cfg.mode, "error", e.what());
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace calcverify::cli
