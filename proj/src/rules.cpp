#include "certquad/rules.hpp"

#include <cmath>

namespace certquad {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval ends must be finite");
  if (!(a < b)) throw DomainError("interval needs a < b");
}

namespace {

void require_domain(const FunctionModel& f, const Interval& iv) {
  if (!f.domain().contains(iv))
    throw DomainError("interval [" + std::to_string(iv.a()) + ", " + std::to_string(iv.b()) +
                      "] is not inside the domain of " + f.name());
}

}  // namespace

double rule_value(const FunctionModel& f, const Interval& iv, const RuleParams& params) {
  require_domain(f, iv);
  const double a = params.alpha();
  const double l = params.lambda();
  const double ends = a * f.value(iv.a()) + (1.0 - a) * f.value(iv.b());
  // Skip the node evaluation when its weight is zero; it may coincide with
  // an endpoint anyway.
  const double node = l == 1.0 ? 0.0 : f.value(iv.node(a));
  return l * ends + (1.0 - l) * node;
}

RuleValue rule_value_with_reference(const FunctionModel& f, const Interval& iv,
                                    const RuleParams& params, double tol) {
  RuleValue r;
  r.approx = rule_value(f, iv, params);
  r.mean_integral_ref = mean_ref(f, iv, tol);
  r.lhs_abs = std::fabs(r.approx - *r.mean_integral_ref);
  return r;
}

double identity_rhs(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                    double tol) {
  require_domain(f, iv);
  const double split = params.split();
  const double c_left = params.left_kink();
  const double c_right = params.right_kink();
  const auto fp = [&](double t) { return f.derivative(iv.at(t)); };

  double total = 0.0;
  if (split > 0.0)
    total += integrate_ref([&](double t) { return (t - c_left) * fp(t); }, 0.0, split, tol).value;
  if (split < 1.0)
    total += integrate_ref([&](double t) { return (t - c_right) * fp(t); }, split, 1.0, tol).value;
  return iv.width() * total;
}

ExactRuleParams named_rule_exact(NamedRule kind) {
  const Rational half(1, 2);
  switch (kind) {
    case NamedRule::Midpoint: return {half, Rational(0)};
    case NamedRule::Trapezoid: return {half, Rational(1)};
    case NamedRule::Simpson: return {half, Rational(1, 3)};
  }
  throw std::logic_error("unknown rule");
}

RuleParams named_rule(NamedRule kind) { return to_double(named_rule_exact(kind)); }

std::optional<NamedRule> parse_named_rule(std::string_view name) {
  if (name == "midpoint") return NamedRule::Midpoint;
  if (name == "trapezoid") return NamedRule::Trapezoid;
  if (name == "simpson") return NamedRule::Simpson;
  return std::nullopt;
}

std::string_view to_string(NamedRule kind) {
  switch (kind) {
    case NamedRule::Midpoint: return "midpoint";
    case NamedRule::Trapezoid: return "trapezoid";
    case NamedRule::Simpson: return "simpson";
  }
  return "?";
}

}  // namespace certquad
