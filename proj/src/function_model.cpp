#include "certquad/function_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace certquad {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Builtin: return "builtin";
    case Provenance::UserAsserted: return "user-asserted";
    case Provenance::NumericallyProbed: return "numerically-probed";
  }
  return "?";
}

bool ConvexityAssertion::covers(double q) const {
  if (!(q >= 1.0)) return false;
  if (all_q) return true;
  return std::find(exponents.begin(), exponents.end(), q) != exponents.end();
}

FunctionModel::FunctionModel(std::string name, Expr f, OpenDomain domain,
                             ConvexityAssertion convexity, Provenance provenance)
    : name_(std::move(name)),
      f_(f),
      fprime_(differentiate(f)),
      domain_(domain),
      convexity_(std::move(convexity)),
      provenance_(provenance) {
  if (!(domain_.lo < domain_.hi)) throw DomainError("function domain must be a non-empty interval");
}

FunctionModel FunctionModel::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scale factor must be positive");
  Expr g = Expr::binary(ExprKind::Mul, Expr::constant(c), f_);
  return FunctionModel(name_ + "*" + std::to_string(c), g, domain_, convexity_, provenance_);
}

FunctionModel power_model(int n, bool negative_side) {
  if (n == 0) throw DomainError("power_model needs a non-zero exponent");
  const Expr base = Expr::variable();
  const Expr expo = n < 0 ? Expr::unary(ExprKind::Neg, Expr::constant(-static_cast<double>(n)))
                          : Expr::constant(static_cast<double>(n));
  // For n >= 2, |f'|^q = n^q |x|^((n-1)q) is convex on the whole line, so
  // only negative exponents need 0 kept out of the domain.
  constexpr double inf = std::numeric_limits<double>::infinity();
  OpenDomain d;
  if (n < 0) d = negative_side ? OpenDomain{-inf, 0.0} : OpenDomain{0.0, inf};
  std::string name = "pow:" + std::to_string(n);
  if (negative_side && n < 0) name += ":neg";
  return FunctionModel(name, Expr::binary(ExprKind::Pow, base, expo), d, ConvexityAssertion::all(),
                       Provenance::Builtin);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FunctionModel builtin(std::string name, std::string_view text, OpenDomain d) {
  return FunctionModel(std::move(name), parse(text), d, ConvexityAssertion::all(),
                       Provenance::Builtin);
}

}  // namespace

std::vector<FunctionModel> builtin_corpus() {
  std::vector<FunctionModel> out;
  for (int n : {2, 3, 4, -2}) out.push_back(power_model(n));
  out.push_back(builtin("reciprocal", "1/x", {0.0, kInf}));
  out.push_back(builtin("neglog", "-ln(x)", {0.0, kInf}));
  out.push_back(builtin("exp", "exp(x)", {-kInf, kInf}));
  out.push_back(builtin("expneg", "exp(-x)", {-kInf, kInf}));
  return out;
}

std::optional<FunctionModel> lookup_builtin(std::string_view name) {
  if (name.starts_with("pow:")) {
    auto rest = name.substr(4);
    bool negative_side = false;
    if (rest.ends_with(":neg")) {
      negative_side = true;
      rest.remove_suffix(4);
    }
    int n = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || n == 0) return std::nullopt;
    return power_model(n, negative_side);
  }
  for (auto& m : builtin_corpus())
    if (m.name() == name) return m;
  return std::nullopt;
}

FunctionModel user_function(std::string_view text, OpenDomain domain, bool assert_convex) {
  return FunctionModel(std::string(text), parse(text), domain,
                       assert_convex ? ConvexityAssertion::all() : ConvexityAssertion::none(),
                       assert_convex ? Provenance::UserAsserted : Provenance::NumericallyProbed);
}

bool probe_convexity(const FunctionModel& f, const Interval& iv, double q, int grid) {
  if (grid < 2) grid = 2;
  std::vector<double> xs(static_cast<std::size_t>(grid));
  std::vector<double> gs(xs.size());
  const auto g = [&](double x) { return std::pow(std::fabs(f.derivative(x)), q); };
  try {
    for (int i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / (grid - 1);
      xs[i] = iv.at(t);
      gs[i] = g(xs[i]);
    }
    for (int i = 0; i < grid; ++i) {
      for (int j = i + 1; j < grid; ++j) {
        const double mid = g(0.5 * (xs[i] + xs[j]));
        const double avg = 0.5 * (gs[i] + gs[j]);
        const double slack = 1e-12 * std::max({1.0, std::fabs(mid), std::fabs(avg)});
        if (!(mid <= avg + slack)) return false;
      }
    }
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

}  // namespace certquad
