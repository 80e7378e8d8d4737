#include "cli.hpp"

#include "certquad/bounds.hpp"
#include "certquad/coefficients.hpp"
#include "certquad/composite.hpp"
#include "certquad/means.hpp"
#include "certquad/oracle.hpp"
#include "certquad/rules.hpp"
#include "certquad/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

namespace certquad::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad flag values, missing flags and flag combinations that make no sense.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation succeeded but found a violated inequality.
struct Violation {
  std::string document;
  std::string message;
};

enum class Format { Json, Csv, Pretty };

struct Options {
  std::string f;
  std::string a, b;
  std::string alpha, lambda;
  std::string rule;
  std::vector<std::string> q;
  std::string theorem = "t22";
  std::string panels;
  std::string target;
  std::size_t max_panels = 4096;
  std::string format = "json";
  std::uint64_t seed = VerifyConfig{}.seed;
  std::size_t samples = VerifyConfig{}.samples;
  std::string check = "soundness";
  std::string domain;
  bool assert_convex = false;
  bool exact = false;
  std::string kind;
  std::string n;
  int prop = 0;
  std::string p = "2";
  unsigned threads = 0;
};

// ---------------------------------------------------------------------------
// Input parsing

NumberInput number(const std::string& flag, const std::string& text) {
  if (text.empty()) throw UsageError("--" + flag + " is required");
  try {
    return parse_number(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

double finite_number(const std::string& flag, const std::string& text) {
  const double v = number(flag, text).value;
  if (!std::isfinite(v)) throw UsageError("--" + flag + " must be finite");
  return v;
}

int integer(const std::string& flag, const std::string& text) {
  const auto in = number(flag, text);
  if (!in.exact || denominator(*in.exact) != 1 || abs(*in.exact) > 1000000)
    throw UsageError("--" + flag + " must be an integer");
  return numerator(*in.exact).convert_to<int>();
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "pretty") return Format::Pretty;
  throw UsageError("--format must be json, csv or pretty");
}

double oracle_tolerance() {
  const char* env = std::getenv("CERTQUAD_TOL");
  if (!env || !*env) return kDefaultOracleTol;
  double v = 0.0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0) || !(v < 1.0))
    throw UsageError("CERTQUAD_TOL must be a number in (0, 1)");
  return v;
}

double endpoint(std::string_view s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return finite_number("domain", std::string(s));
}

OpenDomain parse_domain(const std::string& text) {
  if (text.empty()) return {};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--domain expects lo,hi");
  OpenDomain d{endpoint(std::string_view(text).substr(0, comma)),
               endpoint(std::string_view(text).substr(comma + 1))};
  if (!(d.lo < d.hi)) throw UsageError("--domain needs lo < hi");
  return d;
}

FunctionModel resolve_function(const Options& o) {
  if (o.f.empty()) throw UsageError("--f is required");
  if (auto m = lookup_builtin(o.f)) {
    if (!o.domain.empty() || o.assert_convex)
      throw UsageError("--domain and --assert-convex apply to expressions, not builtins");
    return *m;
  }
  return user_function(o.f, parse_domain(o.domain), o.assert_convex);
}

struct ParamsInput {
  RuleParams params{0.5, 0.0};
  std::optional<ExactRuleParams> exact;
};

ParamsInput resolve_params(const Options& o) {
  if (!o.rule.empty()) {
    if (!o.alpha.empty() || !o.lambda.empty())
      throw UsageError("--rule cannot be combined with --alpha/--lambda");
    const auto kind = parse_named_rule(o.rule);
    if (!kind) throw UsageError("--rule must be midpoint, trapezoid or simpson");
    const auto exact = named_rule_exact(*kind);
    return {to_double(exact), exact};
  }
  if (o.alpha.empty() || o.lambda.empty())
    throw UsageError("give --rule or both --alpha and --lambda");
  const auto alpha = number("alpha", o.alpha);
  const auto lambda = number("lambda", o.lambda);
  ParamsInput in{RuleParams(alpha.value, lambda.value), std::nullopt};
  if (alpha.exact && lambda.exact) in.exact = ExactRuleParams(*alpha.exact, *lambda.exact);
  return in;
}

std::vector<NumberInput> resolve_qs(const Options& o, std::vector<double> fallback) {
  std::vector<NumberInput> out;
  for (const auto& s : o.q) out.push_back(number("q", s));
  if (out.empty())
    for (double q : fallback) out.push_back({q, std::nullopt, ""});
  for (const auto& q : out)
    if (!std::isfinite(q.value)) throw UsageError("--q values must be finite");
  return out;
}

Interval resolve_interval(const Options& o) {
  const double a = finite_number("a", o.a);
  const double b = finite_number("b", o.b);
  if (!(a < b)) throw UsageError("need a < b");
  return Interval(a, b);
}

void refuse_exact(const Options& o, std::string_view command) {
  if (o.exact)
    throw UsageError("--exact: " + std::string(command) +
                     " evaluates f in floating point, so an exact result is impossible");
}

// ---------------------------------------------------------------------------
// Rendering

Json echo(const NumberInput& in) {
  if (in.exact) return to_string(*in.exact);
  return in.value;
}

Json echo(const std::string& flag, const std::string& text) { return echo(number(flag, text)); }

Json nullable(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt17(v.get<double>());
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

/// Header plus one line per object; keys are taken from the first row.
std::string csv_table(const Json& rows) {
  if (rows.empty()) return "";
  std::string out;
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    out += (first ? "" : ",") + key;
    first = false;
  }
  out += "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, _] : rows.front().items()) {
      out += (first ? "" : ",") + csv_cell(row.contains(key) ? row[key] : Json(nullptr));
      first = false;
    }
    out += "\n";
  }
  return out;
}

/// Scalars as "key: value"; nested objects indented; arrays of objects as
/// aligned tables.
void pretty_into(std::string& out, const Json& doc, const std::string& indent) {
  std::size_t width = 0;
  for (const auto& [key, _] : doc.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out += indent + key + ":\n";
      pretty_into(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out += indent + key + ":\n";
      std::vector<std::string> cols;
      for (const auto& [k, _] : value.front().items()) cols.push_back(k);
      std::vector<std::size_t> w;
      for (const auto& c : cols) w.push_back(c.size());
      for (const auto& row : value)
        for (std::size_t i = 0; i < cols.size(); ++i)
          w[i] = std::max(w[i], scalar_text(row[cols[i]]).size());
      auto line = [&](auto cell) {
        std::string s = indent + " ";
        for (std::size_t i = 0; i < cols.size(); ++i) {
          std::string c = cell(i);
          s += " " + c + std::string(w[i] - c.size(), ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out += s + "\n";
      };
      line([&](std::size_t i) { return cols[i]; });
      for (const auto& row : value) line([&](std::size_t i) { return scalar_text(row[cols[i]]); });
    } else if (value.is_array()) {
      std::string items;
      for (const auto& v : value) items += (items.empty() ? "" : ", ") + scalar_text(v);
      out += indent + key + ": " + std::string(width - key.size(), ' ') + items + "\n";
    } else {
      out += indent + key + ": " + std::string(width - key.size(), ' ') + scalar_text(value) + "\n";
    }
  }
}

std::string pretty(const Json& doc) {
  std::string out;
  pretty_into(out, doc, "");
  return out;
}

std::string render(const Json& doc, Format format, const char* table_key) {
  switch (format) {
    case Format::Json: return doc.dump(2) + "\n";
    case Format::Pretty: return pretty(doc);
    case Format::Csv: {
      if (table_key && doc.contains(table_key)) return csv_table(doc[table_key]);
      Json flat = Json::object();
      for (const auto& [k, v] : doc.items())
        if (!v.is_structured()) flat[k] = v;
      return csv_table(Json::array({flat}));
    }
  }
  return {};
}

Json certificate_json(const ErrorCertificate& c, const Options& o, const ParamsInput& pin,
                      const NumberInput& q) {
  Json j;
  j["function"] = c.function;
  j["a"] = echo("a", o.a);
  j["b"] = echo("b", o.b);
  if (pin.exact) {
    j["alpha"] = to_string(pin.exact->alpha());
    j["lambda"] = to_string(pin.exact->lambda());
  } else {
    j["alpha"] = c.params.alpha();
    j["lambda"] = c.params.lambda();
  }
  j["theorem"] = to_string(c.theorem);
  j["q"] = q.text.empty() ? Json(c.q) : echo(q);
  j["p"] = nullable(c.p);
  j["approx"] = c.approx;
  j["bound"] = c.bound;
  j["advisory"] = c.advisory;
  j["regime"] = to_string(c.regime);
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

std::string cmd_bound(const Options& o) {
  refuse_exact(o, "bound");
  const Format format = parse_format(o.format);
  const auto f = resolve_function(o);
  const auto iv = resolve_interval(o);
  const auto pin = resolve_params(o);
  const auto qs = resolve_qs(o, {1.0});

  Json certs = Json::array();
  if (o.theorem == "best") {
    std::vector<double> grid;
    for (const auto& q : qs) grid.push_back(q.value);
    const auto cert = best_bound(f, iv, pin.params, grid);
    const auto it = std::find_if(qs.begin(), qs.end(), [&](const auto& q) { return q.value == cert.q; });
    certs.push_back(certificate_json(cert, o, pin, *it));
  } else {
    const auto theorem = parse_theorem(o.theorem);
    if (!theorem) throw UsageError("--theorem must be t22, t23, t24 or best");
    for (const auto& q : qs) {
      const auto cert = pin.exact ? bound(*theorem, f, iv, *pin.exact, q.value)
                                  : bound(*theorem, f, iv, pin.params, q.value);
      certs.push_back(certificate_json(cert, o, pin, q));
    }
  }

  if (certs.size() == 1) {
    Json doc;
    doc["v"] = "v1";
    for (auto& [k, v] : certs.front().items()) doc[k] = v;
    return render(doc, format, nullptr);
  }
  Json doc;
  doc["v"] = "v1";
  doc["certificates"] = std::move(certs);
  return render(doc, format, "certificates");
}

std::string cmd_integrate(const Options& o) {
  refuse_exact(o, "integrate");
  const Format format = parse_format(o.format);
  const auto f = resolve_function(o);
  const auto iv = resolve_interval(o);
  const auto pin = resolve_params(o);
  const auto qs = resolve_qs(o, {1.0});
  if (qs.size() != 1) throw UsageError("integrate takes a single --q");
  const auto theorem = parse_theorem(o.theorem);
  if (!theorem) throw UsageError("--theorem must be t22, t23 or t24 for integrate");
  if (o.panels.empty() == o.target.empty()) throw UsageError("give exactly one of --panels or --target");

  CompositeResult r;
  Json doc;
  doc["v"] = "v1";
  doc["function"] = f.name();
  doc["a"] = echo("a", o.a);
  doc["b"] = echo("b", o.b);
  doc["alpha"] = pin.exact ? Json(to_string(pin.exact->alpha())) : Json(pin.params.alpha());
  doc["lambda"] = pin.exact ? Json(to_string(pin.exact->lambda())) : Json(pin.params.lambda());
  doc["q"] = echo(qs.front());
  if (!o.panels.empty()) {
    const int n = integer("panels", o.panels);
    if (n < 1) throw UsageError("--panels must be at least 1");
    const auto panels = static_cast<std::size_t>(n);
    r = pin.exact ? composite_integrate(f, iv, *pin.exact, qs.front().value, *theorem, panels)
                  : composite_integrate(f, iv, pin.params, qs.front().value, *theorem, panels);
    doc["mode"] = "uniform";
  } else {
    const double target = finite_number("target", o.target);
    if (!(target > 0.0)) throw UsageError("--target must be positive");
    if (o.max_panels < 1) throw UsageError("--max-panels must be at least 1");
    r = pin.exact
            ? adaptive_integrate(f, iv, *pin.exact, qs.front().value, *theorem, target, o.max_panels)
            : adaptive_integrate(f, iv, pin.params, qs.front().value, *theorem, target, o.max_panels);
    doc["mode"] = "adaptive";
    doc["target"] = echo("target", o.target);
    doc["max_panels"] = o.max_panels;
  }
  doc["theorem"] = r.panels.empty() ? Json(o.theorem) : Json(to_string(r.panels.front().certificate.theorem));
  doc["panel_count"] = r.panels.size();
  doc["value"] = r.value;
  doc["total_bound"] = r.total_bound;
  doc["target_met"] = r.target_met;
  doc["advisory"] = r.advisory;
  Json panels = Json::array();
  for (std::size_t i = 0; i < r.panels.size(); ++i) {
    const auto& p = r.panels[i];
    panels.push_back({{"panel", i},
                      {"a", p.interval.a()},
                      {"b", p.interval.b()},
                      {"approx", p.certificate.approx},
                      {"bound", p.certificate.bound},
                      {"weighted_bound", p.weighted_bound()},
                      {"regime", to_string(p.certificate.regime)}});
  }
  doc["panels"] = std::move(panels);
  return render(doc, format, "panels");
}

constexpr const char* kCoefficientNames[] = {"gamma1", "gamma2", "upsilon1", "upsilon2",
                                             "mu1",    "mu2",    "mu3",      "mu4",
                                             "eta1",   "eta2",   "eta3",     "eta4"};

template <typename T>
std::vector<T> coefficient_list(const PowerMeanCoefficients<T>& c) {
  return {c.gamma1, c.gamma2, c.upsilon1, c.upsilon2, c.mu1,  c.mu2,
          c.mu3,    c.mu4,    c.eta1,     c.eta2,     c.eta3, c.eta4};
}

std::string cmd_coeffs(const Options& o) {
  const Format format = parse_format(o.format);
  const auto pin = resolve_params(o);
  if (o.exact && !pin.exact) throw UsageError("--exact needs rational --alpha and --lambda");
  const auto p = number("p", o.p);
  if (!(p.value > 1.0) || !std::isfinite(p.value)) throw UsageError("--p must exceed 1");
  const bool exact_holder = pin.exact && p.exact && denominator(*p.exact) == 1;
  if (o.exact && !exact_holder)
    throw UsageError("--exact: Hölder constants are exact only for integer --p");

  const auto regime = classify_regime(pin.params).tag;
  Json doc;
  doc["v"] = "v1";
  doc["alpha"] = pin.exact ? Json(to_string(pin.exact->alpha())) : Json(pin.params.alpha());
  doc["lambda"] = pin.exact ? Json(to_string(pin.exact->lambda())) : Json(pin.params.lambda());
  doc["exact"] = pin.exact.has_value();
  doc["regime"] = to_string(regime);

  std::vector<double> decimals;
  if (pin.exact) {
    const auto c = power_mean_coeffs(*pin.exact);
    const auto values = coefficient_list(c);
    for (std::size_t i = 0; i < values.size(); ++i) {
      doc[kCoefficientNames[i]] = to_string(values[i]);
      decimals.push_back(to_double(values[i]));
    }
  } else {
    decimals = coefficient_list(power_mean_coeffs(pin.params));
    for (std::size_t i = 0; i < decimals.size(); ++i) doc[kCoefficientNames[i]] = decimals[i];
  }
  Json dec;
  for (std::size_t i = 0; i < decimals.size(); ++i) dec[kCoefficientNames[i]] = decimals[i];
  doc["decimal"] = std::move(dec);

  Json holder;
  holder["p"] = echo(p);
  Json holder_dec;
  const char* eps_names[] = {"eps1", "eps2", "eps3", "eps4"};
  if (exact_holder) {
    const auto h = holder_coeffs(*pin.exact, numerator(*p.exact).convert_to<int>());
    const std::optional<Rational>* slots[] = {&h.eps1, &h.eps2, &h.eps3, &h.eps4};
    for (int i = 0; i < 4; ++i) {
      holder[eps_names[i]] = *slots[i] ? Json(to_string(**slots[i])) : Json(nullptr);
      holder_dec[eps_names[i]] = *slots[i] ? Json(to_double(**slots[i])) : Json(nullptr);
    }
  } else {
    const auto h = holder_coeffs(pin.params, p.value);
    const std::optional<double>* slots[] = {&h.eps1, &h.eps2, &h.eps3, &h.eps4};
    for (int i = 0; i < 4; ++i) {
      holder[eps_names[i]] = nullable(*slots[i]);
      holder_dec[eps_names[i]] = nullable(*slots[i]);
    }
  }
  holder["decimal"] = std::move(holder_dec);
  doc["holder"] = std::move(holder);

  if (format != Format::Csv) return render(doc, format, nullptr);
  // One row per constant: name, value as given (exact when available), decimal.
  std::string out = "name,value,decimal\n";
  for (const char* name : kCoefficientNames)
    out += std::string(name) + "," + csv_cell(doc[name]) + "," + csv_cell(doc["decimal"][name]) + "\n";
  for (const char* name : eps_names)
    out += std::string(name) + "," + csv_cell(doc["holder"][name]) + "," +
           csv_cell(doc["holder"]["decimal"][name]) + "\n";
  return out;
}

std::string cmd_means(const Options& o) {
  refuse_exact(o, "means");
  const Format format = parse_format(o.format);
  if ((o.prop == 0) == o.kind.empty()) throw UsageError("give exactly one of --kind or --prop");
  Json doc;
  doc["v"] = "v1";

  if (!o.kind.empty()) {
    const auto kind = parse_mean_kind(o.kind);
    if (!kind) throw UsageError("unknown mean '" + o.kind + "'");
    const double a = finite_number("a", o.a);
    const double b = finite_number("b", o.b);
    std::optional<double> extra;
    doc["kind"] = to_string(*kind);
    doc["a"] = echo("a", o.a);
    doc["b"] = echo("b", o.b);
    if (*kind == MeanKind::NLogarithmic) {
      extra = integer("n", o.n);
      doc["n"] = static_cast<int>(*extra);
    } else if (*kind == MeanKind::WeightedArithmetic || *kind == MeanKind::WeightedGeometric ||
               *kind == MeanKind::WeightedHarmonic) {
      extra = finite_number("alpha", o.alpha);
      doc["alpha"] = echo("alpha", o.alpha);
    }
    doc["value"] = eval_mean(*kind, a, b, extra);
    return render(doc, format, nullptr);
  }

  PropositionInput in;
  in.which = o.prop;
  in.a = finite_number("a", o.a);
  in.b = finite_number("b", o.b);
  const auto pin = resolve_params(o);
  in.params = pin.params;
  const auto qs = resolve_qs(o, {1.0});
  if (qs.size() != 1) throw UsageError("--prop takes a single --q");
  in.q = qs.front().value;
  if (!o.n.empty()) in.n = integer("n", o.n);

  const auto r = proposition_check(in);
  const auto c = proposition_consistency(in, 1e-12, std::max(1e-10, 10.0 * oracle_tolerance()));
  doc["prop"] = in.which;
  doc["a"] = echo("a", o.a);
  doc["b"] = echo("b", o.b);
  doc["alpha"] = pin.exact ? Json(to_string(pin.exact->alpha())) : Json(pin.params.alpha());
  doc["lambda"] = pin.exact ? Json(to_string(pin.exact->lambda())) : Json(pin.params.lambda());
  doc["q"] = echo(qs.front());
  doc["n"] = in.n ? Json(*in.n) : Json(nullptr);
  doc["lhs"] = r.lhs;
  doc["rhs"] = r.rhs;
  doc["holds"] = r.holds;
  doc["margin"] = r.margin;
  doc["consistent"] = c.consistent;
  doc["rhs_gap"] = c.rhs_gap;
  doc["lhs_gap"] = c.lhs_gap;
  std::string text = render(doc, format, nullptr);
  if (!r.holds || !c.consistent)
    throw Violation{std::move(text), !r.holds ? "proposition does not hold" : "engine mismatch"};
  return text;
}

std::string cmd_verify(const Options& o, std::ostream& err) {
  refuse_exact(o, "verify");
  const Format format = parse_format(o.format);
  if (format == Format::Pretty) throw UsageError("verify emits json or csv");
  VerifyConfig cfg;
  const auto check = parse_verify_check(o.check);
  if (!check) throw UsageError("--check must be soundness, identity, hh, coeffs or all");
  cfg.check = *check;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.threads = o.threads;
  cfg.oracle_tol = oracle_tolerance();
  if (!o.q.empty()) {
    cfg.qs.clear();
    for (const auto& q : resolve_qs(o, {})) {
      if (!(q.value >= 1.0)) throw UsageError("--q values must be >= 1");
      cfg.qs.push_back(q.value);
    }
  }
  const auto report = run_verify(cfg);
  std::string text;
  if (format == Format::Json) {
    text = render_json(report);
  } else {
    text = render_csv(report);
    err << "rows " << report.rows.size() << ", violations " << report.violations << ", max_ratio "
        << fmt17(report.max_ratio) << ", max_residual " << fmt17(report.max_residual) << "\n";
  }
  if (report.violations > 0)
    throw Violation{std::move(text), std::to_string(report.violations) + " violation(s)"};
  return text;
}

void add_function_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--f", o.f, "builtin name (pow:N, reciprocal, neglog, exp, expneg) or expression in x");
  cmd->add_option("--domain", o.domain, "open domain lo,hi of an expression (inf allowed)");
  cmd->add_flag("--assert-convex", o.assert_convex, "assert |f'|^q convex instead of probing");
  cmd->add_option("--a", o.a, "left endpoint");
  cmd->add_option("--b", o.b, "right endpoint");
}

void add_rule_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "node weight alpha in [0,1], decimal or p/q");
  cmd->add_option("--lambda", o.lambda, "endpoint weight lambda in [0,1], decimal or p/q");
  cmd->add_option("--rule", o.rule, "midpoint, trapezoid or simpson");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "json, csv or pretty");
  cmd->add_flag("--exact", o.exact, "refuse unless the result can be computed exactly");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified error bounds for a two-parameter quadrature rule", "certquad"};
  app.set_config("--config", "", "TOML/INI file of flag values; unknown keys are errors");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  // lets --config follow the subcommand name
  app.fallthrough();

  auto* bound_cmd = app.add_subcommand("bound", "certify |rule value - mean| on [a, b]");
  add_function_flags(bound_cmd, o);
  add_rule_flags(bound_cmd, o);
  bound_cmd->add_option("--q", o.q, "exponent(s) q >= 1, comma separated")->delimiter(',');
  bound_cmd->add_option("--theorem", o.theorem, "t22, t23, t24 or best");
  add_common(bound_cmd, o);

  auto* integrate_cmd = app.add_subcommand("integrate", "composite or adaptive certified integration");
  add_function_flags(integrate_cmd, o);
  add_rule_flags(integrate_cmd, o);
  integrate_cmd->add_option("--q", o.q, "exponent q >= 1")->delimiter(',');
  integrate_cmd->add_option("--theorem", o.theorem, "t22, t23 or t24");
  integrate_cmd->add_option("--panels", o.panels, "uniform panel count");
  integrate_cmd->add_option("--target", o.target, "adaptive: total bound to reach");
  integrate_cmd->add_option("--max-panels", o.max_panels, "adaptive: panel cap");
  add_common(integrate_cmd, o);

  auto* coeffs_cmd = app.add_subcommand("coeffs", "dump the kernel constants for (alpha, lambda)");
  add_rule_flags(coeffs_cmd, o);
  coeffs_cmd->add_option("--p", o.p, "Hölder exponent p > 1 for eps1..eps4");
  add_common(coeffs_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "seeded verification sweep over the builtin corpus");
  verify_cmd->add_option("--check", o.check, "soundness, identity, hh, coeffs or all");
  verify_cmd->add_option("--seed", o.seed, "64-bit seed for mt19937_64");
  verify_cmd->add_option("--samples", o.samples, "random (alpha, lambda) pairs");
  verify_cmd->add_option("--q", o.q, "exponents to sweep")->delimiter(',');
  verify_cmd->add_option("--threads", o.threads, "worker threads, 0 for all cores");
  add_common(verify_cmd, o);

  auto* means_cmd = app.add_subcommand("means", "evaluate a mean or check a proposition");
  means_cmd->add_option("--kind", o.kind, "A_alpha, A, G_alpha, G, H_alpha, H, L, L_n, I");
  means_cmd->add_option("--prop", o.prop, "proposition 1..6");
  means_cmd->add_option("--a", o.a, "first argument");
  means_cmd->add_option("--b", o.b, "second argument");
  means_cmd->add_option("--n", o.n, "integer n for L_n and propositions 1-2");
  add_rule_flags(means_cmd, o);
  means_cmd->add_option("--q", o.q, "exponent q")->delimiter(',');
  add_common(means_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    std::string text;
    if (bound_cmd->parsed()) text = cmd_bound(o);
    else if (integrate_cmd->parsed()) text = cmd_integrate(o);
    else if (coeffs_cmd->parsed()) text = cmd_coeffs(o);
    else if (verify_cmd->parsed()) text = cmd_verify(o, err);
    else if (means_cmd->parsed()) text = cmd_means(o);
    out << text;
    return kOk;
  } catch (const Violation& v) {
    // The document is still complete; the exit code carries the verdict.
    out << v.document;
    err << "violation: " << v.message << "\n";
    return kViolation;
  } catch (const HypothesisRefused& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OracleFailure& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace certquad::cli
