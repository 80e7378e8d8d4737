#include "certquad/means.hpp"

#include "certquad/bounds.hpp"
#include "certquad/coefficients.hpp"
#include "certquad/function_model.hpp"
#include "certquad/rules.hpp"

#include <algorithm>
#include <cmath>

namespace certquad {

std::optional<MeanKind> parse_mean_kind(std::string_view name) {
  if (name == "A_alpha") return MeanKind::WeightedArithmetic;
  if (name == "A") return MeanKind::Arithmetic;
  if (name == "G_alpha") return MeanKind::WeightedGeometric;
  if (name == "G") return MeanKind::Geometric;
  if (name == "H_alpha") return MeanKind::WeightedHarmonic;
  if (name == "H") return MeanKind::Harmonic;
  if (name == "L") return MeanKind::Logarithmic;
  if (name == "L_n") return MeanKind::NLogarithmic;
  if (name == "I") return MeanKind::Identric;
  return std::nullopt;
}

std::string_view to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::WeightedArithmetic: return "A_alpha";
    case MeanKind::Arithmetic: return "A";
    case MeanKind::WeightedGeometric: return "G_alpha";
    case MeanKind::Geometric: return "G";
    case MeanKind::WeightedHarmonic: return "H_alpha";
    case MeanKind::Harmonic: return "H";
    case MeanKind::Logarithmic: return "L";
    case MeanKind::NLogarithmic: return "L_n";
    case MeanKind::Identric: return "I";
  }
  return "?";
}

namespace {

void require_weight(std::string_view mean, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw MeanDomainError(mean, "alpha in [0,1]");
}

void require_positive(std::string_view mean, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw MeanDomainError(mean, "a, b > 0");
}

void require_nonzero(std::string_view mean, double a, double b) {
  if (a == 0.0 || b == 0.0) throw MeanDomainError(mean, "a, b != 0");
}

}  // namespace

double weighted_arithmetic_mean(double a, double b, double alpha) {
  require_weight("A_alpha", alpha);
  return alpha * a + (1.0 - alpha) * b;
}

double arithmetic_mean(double a, double b) { return 0.5 * (a + b); }

double weighted_geometric_mean(double a, double b, double alpha) {
  require_weight("G_alpha", alpha);
  require_positive("G_alpha", a, b);
  return std::pow(a, alpha) * std::pow(b, 1.0 - alpha);
}

double geometric_mean(double a, double b) {
  require_positive("G", a, b);
  return std::sqrt(a * b);
}

double weighted_harmonic_mean(double a, double b, double alpha) {
  require_weight("H_alpha", alpha);
  require_nonzero("H_alpha", a, b);
  // 1/(1/a) need not round back to a
  if (alpha == 1.0) return a;
  if (alpha == 0.0) return b;
  const double s = alpha / a + (1.0 - alpha) / b;
  if (s == 0.0) throw MeanDomainError("H_alpha", "alpha/a + (1-alpha)/b != 0");
  return 1.0 / s;
}

double harmonic_mean(double a, double b) {
  require_nonzero("H", a, b);
  if (a + b == 0.0) throw MeanDomainError("H", "a + b != 0");
  return 2.0 * a * b / (a + b);
}

double logarithmic_mean(double a, double b) {
  if (a == 0.0 || b == 0.0) throw MeanDomainError("L", "ab != 0");
  if (std::fabs(a) == std::fabs(b)) throw MeanDomainError("L", "|a| != |b|");
  return (b - a) / (std::log(std::fabs(b)) - std::log(std::fabs(a)));
}

double n_logarithmic_mean_pow(double a, double b, int n) {
  if (n == 0 || n == -1) throw MeanDomainError("L_n", "n in Z \\ {-1, 0}");
  if (a == b) throw MeanDomainError("L_n", "a != b");
  if (n < -1 && (a == 0.0 || b == 0.0)) throw MeanDomainError("L_n", "a, b != 0 for n < -1");
  const double m = static_cast<double>(n) + 1.0;
  return (std::pow(b, m) - std::pow(a, m)) / (m * (b - a));
}

double n_logarithmic_mean(double a, double b, int n) {
  const double base = n_logarithmic_mean_pow(a, b, n);
  const double root = 1.0 / static_cast<double>(n);
  if (base >= 0.0) return std::pow(base, root);
  if (n % 2 != 0) return -std::pow(-base, root);
  throw MeanDomainError("L_n", "non-negative L_n^n for even n");
}

double identric_mean(double a, double b) {
  require_positive("I", a, b);
  if (a == b) throw MeanDomainError("I", "a != b");
  return std::exp((b * std::log(b) - a * std::log(a)) / (b - a) - 1.0);
}

double eval_mean(MeanKind kind, double a, double b, std::optional<double> extra) {
  auto need_extra = [&](std::string_view what) {
    if (!extra) throw MeanDomainError(to_string(kind), what);
    return *extra;
  };
  switch (kind) {
    case MeanKind::WeightedArithmetic: return weighted_arithmetic_mean(a, b, need_extra("alpha"));
    case MeanKind::Arithmetic: return arithmetic_mean(a, b);
    case MeanKind::WeightedGeometric: return weighted_geometric_mean(a, b, need_extra("alpha"));
    case MeanKind::Geometric: return geometric_mean(a, b);
    case MeanKind::WeightedHarmonic: return weighted_harmonic_mean(a, b, need_extra("alpha"));
    case MeanKind::Harmonic: return harmonic_mean(a, b);
    case MeanKind::Logarithmic: return logarithmic_mean(a, b);
    case MeanKind::NLogarithmic: {
      const double n = need_extra("integer n");
      if (std::trunc(n) != n || std::fabs(n) > 1e9) throw MeanDomainError("L_n", "integer n");
      return n_logarithmic_mean(a, b, static_cast<int>(n));
    }
    case MeanKind::Identric: return identric_mean(a, b);
  }
  throw std::logic_error("unknown mean");
}

// ---------------------------------------------------------------------------
// Propositions

namespace {

bool power_mean_family(int which) { return which % 2 == 1; }

void validate(const PropositionInput& in) {
  const std::string name = "proposition " + std::to_string(in.which);
  if (in.which < 1 || in.which > 6) throw DomainError("proposition must be 1..6");
  if (!(in.a < in.b)) throw MeanDomainError(name, "a < b");
  if (in.which <= 3) {
    if (in.a <= 0.0 && 0.0 <= in.b) throw MeanDomainError(name, "0 outside [a, b]");
  } else if (!(in.a > 0.0)) {
    throw MeanDomainError(name, "0 < a < b");
  }
  if (in.which <= 2 && (!in.n || std::abs(*in.n) < 2))
    throw MeanDomainError(name, "integer n with |n| >= 2");
  if (power_mean_family(in.which)) {
    if (!(in.q >= 1.0) || !std::isfinite(in.q)) throw MeanDomainError(name, "q >= 1");
  } else if (!(in.q > 1.0) || !std::isfinite(in.q)) {
    throw MeanDomainError(name, "q > 1");
  }
}

double pow_or_one(double x, double e) {
  if (e == 0.0) return 1.0;
  return x <= 0.0 ? 0.0 : std::pow(x, e);
}

// gamma^(1-1/q) (mu_b B + mu_a A)^(1/q) + upsilon^(1-1/q) (eta_b B + eta_a A)^(1/q)
double power_mean_braces(const RuleParams& params, double q, double weight_b, double weight_a) {
  const auto sel = select_power_mean(power_mean_coeffs(params), classify_regime(params).tag);
  const double o = 1.0 - 1.0 / q;
  return pow_or_one(sel.gamma, o) * pow_or_one(sel.mu_b * weight_b + sel.mu_a * weight_a, 1.0 / q) +
         pow_or_one(sel.upsilon, o) *
             pow_or_one(sel.eta_b * weight_b + sel.eta_a * weight_a, 1.0 / q);
}

// (1/(p+1))^(1/p) [ (1-alpha)^(1/q) eps_L^(1/p) theta_left + alpha^(1/q) eps_R^(1/p) theta_right ]
double holder_brackets(const RuleParams& params, double q, double theta_left, double theta_right) {
  const double p = *conjugate(q).p;
  const auto eps = select_holder(params, classify_regime(params).tag, p);
  const double a = params.alpha();
  return std::pow(1.0 / (p + 1.0), 1.0 / p) *
         (pow_or_one(1.0 - a, 1.0 / q) * pow_or_one(eps.left, 1.0 / p) * theta_left +
          pow_or_one(a, 1.0 / q) * pow_or_one(eps.right, 1.0 / p) * theta_right);
}

double lhs_of(const PropositionInput& in) {
  const double a = in.a, b = in.b;
  const double al = in.params.alpha(), l = in.params.lambda();
  switch (in.which) {
    case 1:
    case 2: {
      const int n = *in.n;
      const double an = std::pow(a, n), bn = std::pow(b, n);
      const double mix = l * weighted_arithmetic_mean(an, bn, al) +
                         (1.0 - l) * std::pow(weighted_arithmetic_mean(a, b, al), n);
      return std::fabs(mix - n_logarithmic_mean_pow(a, b, n));
    }
    case 3:
    case 4: {
      const double mix = l / weighted_harmonic_mean(a, b, al) +
                         (1.0 - l) / weighted_arithmetic_mean(a, b, al);
      return std::fabs(mix - 1.0 / logarithmic_mean(a, b));
    }
    default: {
      const double mix =
          weighted_arithmetic_mean(std::log(weighted_geometric_mean(a, b, al)),
                                   std::log(weighted_arithmetic_mean(a, b, al)), l);
      return std::fabs(mix - std::log(identric_mean(a, b)));
    }
  }
}

double rhs_of(const PropositionInput& in) {
  const double a = in.a, b = in.b, q = in.q;
  const double w = b - a;
  const double node = weighted_arithmetic_mean(a, b, in.params.alpha());
  switch (in.which) {
    case 1: {
      const double e = (*in.n - 1) * q;
      return w * std::abs(*in.n) *
             power_mean_braces(in.params, q, std::pow(std::fabs(b), e), std::pow(std::fabs(a), e));
    }
    case 2: {
      const double e = (*in.n - 1) * q;
      if (node == 0.0) throw MeanDomainError("proposition 2", "A_alpha(a,b) != 0");
      const double node_term = std::pow(std::fabs(node), e);
      const double theta1 = std::pow(arithmetic_mean(node_term, std::pow(std::fabs(a), e)), 1.0 / q);
      const double theta2 = std::pow(arithmetic_mean(node_term, std::pow(std::fabs(b), e)), 1.0 / q);
      return w * std::abs(*in.n) * holder_brackets(in.params, q, theta1, theta2);
    }
    case 3:
      return w * power_mean_braces(in.params, q, 1.0 / std::pow(std::fabs(b), 2.0 * q),
                                   1.0 / std::pow(std::fabs(a), 2.0 * q));
    case 4:
    case 6: {
      const double k = in.which == 4 ? 2.0 * q : q;
      const double node_k = std::pow(node, k);
      const double theta3 = std::pow(harmonic_mean(node_k, std::pow(a, k)), -1.0 / q);
      const double theta4 = std::pow(harmonic_mean(node_k, std::pow(b, k)), -1.0 / q);
      return w * holder_brackets(in.params, q, theta3, theta4);
    }
    default:
      return w * power_mean_braces(in.params, q, 1.0 / std::pow(b, q), 1.0 / std::pow(a, q));
  }
}

FunctionModel generating_function(const PropositionInput& in) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (in.which <= 2) return power_model(*in.n, in.b < 0.0);
  if (in.which <= 4) {
    const OpenDomain d = in.b < 0.0 ? OpenDomain{-inf, 0.0} : OpenDomain{0.0, inf};
    return FunctionModel("reciprocal", parse("1/x"), d, ConvexityAssertion::all(),
                         Provenance::Builtin);
  }
  return *lookup_builtin("neglog");
}

}  // namespace

PropositionResult proposition_check(const PropositionInput& in) {
  validate(in);
  PropositionResult r;
  r.lhs = lhs_of(in);
  r.rhs = rhs_of(in);
  r.margin = r.rhs - r.lhs;
  r.holds = r.lhs <= r.rhs + 1e-10;
  return r;
}

ConsistencyResult proposition_consistency(const PropositionInput& in, double rhs_tol,
                                          double lhs_tol) {
  const auto prop = proposition_check(in);
  const FunctionModel f = generating_function(in);
  const Interval iv(in.a, in.b);
  const Theorem t = power_mean_family(in.which) ? Theorem::T22 : Theorem::T23;
  const auto cert = bound(t, f, iv, in.params, in.q);
  const auto rv = rule_value_with_reference(f, iv, in.params, 1e-13);

  ConsistencyResult c;
  c.rhs_gap = std::fabs(prop.rhs - cert.bound) / std::max(1.0, std::fabs(prop.rhs));
  c.lhs_gap = std::fabs(prop.lhs - *rv.lhs_abs);
  c.consistent = c.rhs_gap <= rhs_tol && c.lhs_gap <= lhs_tol;
  return c;
}

}  // namespace certquad
