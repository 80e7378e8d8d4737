#pragma once

// The two-parameter rule
//   Q = lambda (alpha f(a) + (1-alpha) f(b)) + (1-lambda) f(alpha a + (1-alpha) b)
// approximating the integral mean, and the kernel identity that expresses
// Q - mean as a weighted integral of f'.

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"
#include "certquad/oracle.hpp"
#include "certquad/params.hpp"

#include <optional>
#include <string_view>

namespace certquad {

struct RuleValue {
  double approx = 0.0;
  std::optional<double> mean_integral_ref;
  std::optional<double> lhs_abs;
};

double rule_value(const FunctionModel& f, const Interval& iv, const RuleParams& params);

/// rule_value together with the oracle mean and |approx - mean|.
RuleValue rule_value_with_reference(const FunctionModel& f, const Interval& iv,
                                    const RuleParams& params, double tol = kDefaultOracleTol);

/// (b-a) [ int_0^{1-alpha} (t - alpha lambda) f'(tb + (1-t)a) dt
///       + int_{1-alpha}^1 (t - 1 + lambda(1-alpha)) f'(tb + (1-t)a) dt ],
/// signed, integrated by the reference oracle.
double identity_rhs(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                    double tol = 1e-12);

enum class NamedRule { Midpoint, Trapezoid, Simpson };

ExactRuleParams named_rule_exact(NamedRule kind);
RuleParams named_rule(NamedRule kind);
std::optional<NamedRule> parse_named_rule(std::string_view name);
std::string_view to_string(NamedRule kind);

}  // namespace certquad
