#include "certquad/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace certquad {

PowerMeanCoefficients<double> to_double(const PowerMeanCoefficients<Rational>& c) {
  return {to_double(c.gamma1), to_double(c.gamma2), to_double(c.upsilon1), to_double(c.upsilon2),
          to_double(c.mu1),    to_double(c.mu2),    to_double(c.mu3),      to_double(c.mu4),
          to_double(c.eta1),   to_double(c.eta2),   to_double(c.eta3),     to_double(c.eta4)};
}

namespace {

// eps = x^(p+1) + y^(p+1) or x^(p+1) - y^(p+1); empty when a base is negative.
template <typename T, typename Pow>
std::optional<T> eps_term(const T& x, const T& y, bool plus, Pow pow) {
  if (x < T(0) || y < T(0)) return std::nullopt;
  return plus ? pow(x) + pow(y) : pow(x) - pow(y);
}

template <typename T, typename Pow>
HolderCoefficients<T> holder_impl(const BasicRuleParams<T>& params, Pow pow) {
  const T one(1);
  const T& a = params.alpha();
  const T al = params.left_kink();
  const T ls = params.lambda() * (one - a);
  HolderCoefficients<T> h;
  h.eps1 = eps_term(al, one - a - al, true, pow);
  h.eps2 = eps_term(al, al - one + a, false, pow);
  h.eps3 = eps_term(ls, a - ls, true, pow);
  h.eps4 = eps_term(ls, ls - a, false, pow);
  return h;
}

}  // namespace

HolderCoefficients<double> holder_coeffs(const RuleParams& params, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("Hölder exponent p must satisfy p > 1");
  return holder_impl(params, [p](double x) { return std::pow(x, p + 1.0); });
}

HolderCoefficients<Rational> holder_coeffs(const ExactRuleParams& params, int p) {
  if (p < 2) throw DomainError("exact Hölder coefficients need an integer p >= 2");
  return holder_impl(params, [p](const Rational& x) {
    Rational r(1);
    for (int i = 0; i < p + 1; ++i) r *= x;
    return r;
  });
}

PowerMeanSelection select_power_mean(const PowerMeanCoefficients<double>& c, RegimeCase tag) {
  PowerMeanSelection s{};
  if (tag == RegimeCase::Case3) {
    s.gamma = c.gamma1;
    s.mu_b = c.mu3;
    s.mu_a = c.mu4;
  } else {
    s.gamma = c.gamma2;
    s.mu_b = c.mu1;
    s.mu_a = c.mu2;
  }
  if (tag == RegimeCase::Case2) {
    s.upsilon = c.upsilon1;
    s.eta_b = c.eta1;
    s.eta_a = c.eta2;
  } else {
    s.upsilon = c.upsilon2;
    s.eta_b = c.eta3;
    s.eta_a = c.eta4;
  }
  return s;
}

HolderSelection select_holder(const RuleParams& params, RegimeCase tag, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("Hölder exponent p must satisfy p > 1");
  const auto pw = [p](double x) { return std::pow(std::max(x, 0.0), p + 1.0); };
  const double a = params.alpha();
  const double al = params.left_kink();
  const double ls = params.lambda() * (1.0 - a);
  HolderSelection s{};
  s.left = tag == RegimeCase::Case3 ? pw(al) - pw(al - 1.0 + a) : pw(al) + pw(1.0 - a - al);
  s.right = tag == RegimeCase::Case2 ? pw(ls) - pw(ls - a) : pw(ls) + pw(a - ls);
  s.left = std::max(s.left, 0.0);
  s.right = std::max(s.right, 0.0);
  return s;
}

namespace {

// Integral over s in [s0, s1] (0 <= s0 <= s1) of s^p (k0 + k1 s).
double monomial_piece(double s0, double s1, double p, double k0, double k1) {
  const double i0 = (std::pow(s1, p + 1.0) - std::pow(s0, p + 1.0)) / (p + 1.0);
  const double i1 = (std::pow(s1, p + 2.0) - std::pow(s0, p + 2.0)) / (p + 2.0);
  return k0 * i0 + k1 * i1;
}

}  // namespace

double integral_oracle_abs_weight(double c, double lo, double hi, double p, Weight weight) {
  if (!(lo <= hi)) throw DomainError("integral_oracle_abs_weight: lo must not exceed hi");
  if (!(p >= 0.0)) throw DomainError("integral_oracle_abs_weight: p must be non-negative");
  double total = 0.0;

  // Piece below the kink: t = c - s, s in [c - min(hi,c), c - lo].
  if (lo < c) {
    const double top = std::min(hi, c);
    double k0 = 1.0, k1 = 0.0;
    if (weight == Weight::T) {
      k0 = c;
      k1 = -1.0;
    } else if (weight == Weight::OneMinusT) {
      k0 = 1.0 - c;
      k1 = 1.0;
    }
    total += monomial_piece(c - top, c - lo, p, k0, k1);
  }
  // Piece above the kink: t = c + s, s in [max(lo,c) - c, hi - c].
  if (hi > c) {
    const double bottom = std::max(lo, c);
    double k0 = 1.0, k1 = 0.0;
    if (weight == Weight::T) {
      k0 = c;
      k1 = 1.0;
    } else if (weight == Weight::OneMinusT) {
      k0 = 1.0 - c;
      k1 = -1.0;
    }
    total += monomial_piece(bottom - c, hi - c, p, k0, k1);
  }
  return total;
}

}  // namespace certquad
