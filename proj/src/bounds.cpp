#include "certquad/bounds.hpp"

#include "certquad/rules.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace certquad {

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::T22: return "t22";
    case Theorem::T22q1: return "t22q1";
    case Theorem::T23: return "t23";
    case Theorem::T24: return "t24";
  }
  return "?";
}

std::optional<Theorem> parse_theorem(std::string_view name) {
  if (name == "t22") return Theorem::T22;
  if (name == "t22q1") return Theorem::T22q1;
  if (name == "t23") return Theorem::T23;
  if (name == "t24") return Theorem::T24;
  return std::nullopt;
}

namespace {

// x^e with x clamped at zero and 0^0 = 1.
double pow_nonneg(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return std::max(x, 0.0);
  return x <= 0.0 ? 0.0 : std::pow(x, e);
}

bool is_holder(Theorem t) { return t == Theorem::T23 || t == Theorem::T24; }

}  // namespace

HypothesisStatus check_hypothesis(const FunctionModel& f, const Interval& iv, Theorem theorem,
                                  double q) {
  if (!std::isfinite(q)) throw HypothesisRefused("q must be finite");
  if (is_holder(theorem) && !(q > 1.0)) throw HypothesisRefused("q>1 required");
  if (!(q >= 1.0)) throw HypothesisRefused("q>=1 required");
  if (theorem == Theorem::T22q1 && q != 1.0) throw HypothesisRefused("t22q1 needs q=1");
  if (!f.domain().contains(iv))
    throw DomainError("interval is not inside the domain of " + f.name());
  if (f.convexity().covers(q)) return HypothesisStatus::Proven;
  if (probe_convexity(f, iv, q)) return HypothesisStatus::Probed;
  throw HypothesisRefused("|f'|^q is not convex on the interval for " + f.name() +
                          " (numerical probe failed)");
}

double power_mean_bound(const PowerMeanSelection& sel, double q, double width, double abs_dfa,
                        double abs_dfb) {
  const double x = std::pow(abs_dfb, q);
  const double y = std::pow(abs_dfa, q);
  const double outer = 1.0 - 1.0 / q;
  const double left = pow_nonneg(sel.gamma, outer) * pow_nonneg(sel.mu_b * x + sel.mu_a * y, 1.0 / q);
  const double right =
      pow_nonneg(sel.upsilon, outer) * pow_nonneg(sel.eta_b * x + sel.eta_a * y, 1.0 / q);
  return width * (left + right);
}

double power_mean_bound(const RuleParams& params, double q, double width, double abs_dfa,
                        double abs_dfb) {
  const auto sel = select_power_mean(power_mean_coeffs(params), classify_regime(params).tag);
  return power_mean_bound(sel, q, width, abs_dfa, abs_dfb);
}

double power_mean_bound(const ExactRuleParams& params, double q, double width, double abs_dfa,
                        double abs_dfb) {
  const auto c = power_mean_coeffs(params);
  const RegimeCase tag = classify_regime(params).tag;
  const bool case3 = tag == RegimeCase::Case3;
  const bool case2 = tag == RegimeCase::Case2;
  const Rational& gamma = case3 ? c.gamma1 : c.gamma2;
  const Rational& mu_b = case3 ? c.mu3 : c.mu1;
  const Rational& mu_a = case3 ? c.mu4 : c.mu2;
  const Rational& upsilon = case2 ? c.upsilon1 : c.upsilon2;
  const Rational& eta_b = case2 ? c.eta1 : c.eta3;
  const Rational& eta_a = case2 ? c.eta2 : c.eta4;
  // Doubles are rationals, so the linear combinations are formed exactly and
  // rounded once; for q = 1 the whole bound is.
  const Rational x(q == 1.0 ? abs_dfb : std::pow(abs_dfb, q));
  const Rational y(q == 1.0 ? abs_dfa : std::pow(abs_dfa, q));
  const Rational left = mu_b * x + mu_a * y;
  const Rational right = eta_b * x + eta_a * y;
  if (q == 1.0) return to_double(Rational(width) * (left + right));
  const double outer = 1.0 - 1.0 / q;
  return width * (pow_nonneg(to_double(gamma), outer) * pow_nonneg(to_double(left), 1.0 / q) +
                  pow_nonneg(to_double(upsilon), outer) * pow_nonneg(to_double(right), 1.0 / q));
}

double holder_node_bound(const RuleParams& params, double q, double width, double abs_dfa,
                         double abs_dfb, double abs_dnode) {
  const double p = *conjugate(q).p;
  const auto eps = select_holder(params, classify_regime(params).tag, p);
  const double x = std::pow(abs_dfb, q);
  const double y = std::pow(abs_dfa, q);
  const double z = std::pow(abs_dnode, q);
  const double delta1 = 0.5 * (z + y);
  const double delta2 = 0.5 * (z + x);
  const double a = params.alpha();
  const double left = pow_nonneg(1.0 - a, 1.0 / q) * pow_nonneg(eps.left, 1.0 / p) *
                      pow_nonneg(delta1, 1.0 / q);
  const double right =
      pow_nonneg(a, 1.0 / q) * pow_nonneg(eps.right, 1.0 / p) * pow_nonneg(delta2, 1.0 / q);
  return width * std::pow(1.0 / (p + 1.0), 1.0 / p) * (left + right);
}

double holder_endpoint_bound(const RuleParams& params, double q, double width, double abs_dfa,
                             double abs_dfb) {
  const double p = *conjugate(q).p;
  const auto eps = select_holder(params, classify_regime(params).tag, p);
  const double x = std::pow(abs_dfb, q);
  const double y = std::pow(abs_dfa, q);
  const double a = params.alpha();
  // Integrals of t and 1-t against |f'(b)|^q, |f'(a)|^q over [0, 1-a] and [1-a, 1].
  const double delta3 = 0.5 * (x * (1.0 - a) * (1.0 - a) + (1.0 - a * a) * y);
  const double delta4 = 0.5 * (x * a * (2.0 - a) + a * a * y);
  const double left = pow_nonneg(eps.left, 1.0 / p) * pow_nonneg(delta3, 1.0 / q);
  const double right = pow_nonneg(eps.right, 1.0 / p) * pow_nonneg(delta4, 1.0 / q);
  return width * std::pow(1.0 / (p + 1.0), 1.0 / p) * (left + right);
}

ErrorCertificate certify(Theorem theorem, const FunctionModel& f, const Interval& iv,
                         const RuleParams& params, double q, HypothesisStatus status) {
  if (theorem == Theorem::T22 && q == 1.0) theorem = Theorem::T22q1;
  const double dfa = std::fabs(f.derivative(iv.a()));
  const double dfb = std::fabs(f.derivative(iv.b()));
  double b = 0.0;
  switch (theorem) {
    case Theorem::T22:
    case Theorem::T22q1: b = power_mean_bound(params, q, iv.width(), dfa, dfb); break;
    case Theorem::T23: {
      const double dnode = std::fabs(f.derivative(iv.node(params.alpha())));
      b = holder_node_bound(params, q, iv.width(), dfa, dfb, dnode);
      break;
    }
    case Theorem::T24: b = holder_endpoint_bound(params, q, iv.width(), dfa, dfb); break;
  }
  return ErrorCertificate{iv,
                          params,
                          theorem,
                          q,
                          conjugate(q).p,
                          b,
                          rule_value(f, iv, params),
                          status == HypothesisStatus::Probed,
                          classify_regime(params).tag,
                          f.name()};
}

ErrorCertificate certify(Theorem theorem, const FunctionModel& f, const Interval& iv,
                         const ExactRuleParams& params, double q, HypothesisStatus status) {
  auto cert = certify(theorem, f, iv, to_double(params), q, status);
  if (cert.theorem == Theorem::T22 || cert.theorem == Theorem::T22q1) {
    cert.bound = power_mean_bound(params, q, iv.width(), std::fabs(f.derivative(iv.a())),
                                  std::fabs(f.derivative(iv.b())));
    cert.regime = classify_regime(params).tag;
  }
  return cert;
}

ErrorCertificate bound(Theorem theorem, const FunctionModel& f, const Interval& iv,
                       const ExactRuleParams& params, double q) {
  const auto status = check_hypothesis(f, iv, theorem, q);
  return certify(theorem, f, iv, params, q, status);
}

ErrorCertificate bound(Theorem theorem, const FunctionModel& f, const Interval& iv,
                       const RuleParams& params, double q) {
  const auto status = check_hypothesis(f, iv, theorem, q);
  return certify(theorem, f, iv, params, q, status);
}

ErrorCertificate bound_t22(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q) {
  return bound(Theorem::T22, f, iv, params, q);
}

ErrorCertificate bound_t23(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q) {
  return bound(Theorem::T23, f, iv, params, q);
}

ErrorCertificate bound_t24(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q) {
  return bound(Theorem::T24, f, iv, params, q);
}

ErrorCertificate best_bound(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                            std::span<const double> q_grid) {
  if (q_grid.empty()) throw DomainError("best_bound needs a non-empty q grid");
  std::vector<double> qs(q_grid.begin(), q_grid.end());
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  std::optional<ErrorCertificate> best;
  std::string last_refusal = "no admissible (theorem, q) candidate";
  for (Theorem t : {Theorem::T22, Theorem::T23, Theorem::T24}) {
    for (double q : qs) {
      if (is_holder(t) && !(q > 1.0)) continue;
      try {
        auto cert = bound(t, f, iv, params, q);
        if (!best || cert.bound < best->bound) best = std::move(cert);
      } catch (const HypothesisRefused& e) {
        last_refusal = e.what();
      }
    }
  }
  if (!best) throw HypothesisRefused(last_refusal);
  return *best;
}

}  // namespace certquad
