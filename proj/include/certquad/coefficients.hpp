#pragma once

// Closed-form kernel constants for the power-mean and Hölder bound
// families, plus an independent piecewise-exact integrator for the
// defining |t - c|^p weight integrals.

#include "certquad/params.hpp"

#include <optional>

namespace certquad {

/// All twelve power-mean constants.  Every constant is evaluated from its
/// closed form regardless of regime, so inactive ones may be negative.
template <typename T>
struct PowerMeanCoefficients {
  T gamma1, gamma2;
  T upsilon1, upsilon2;
  T mu1, mu2, mu3, mu4;
  T eta1, eta2, eta3, eta4;
};

template <typename T>
PowerMeanCoefficients<T> power_mean_coeffs(const BasicRuleParams<T>& params) {
  const T one(1), two(2), three(3);
  const T& a = params.alpha();
  const T& l = params.lambda();
  const T al = a * l;            // left kink
  const T s = one - a;           // split point 1 - alpha
  const T r = one - l * s;       // right kink 1 - lambda(1-alpha)
  const T ls = l * s;            // 1 - right kink

  PowerMeanCoefficients<T> c;
  c.gamma1 = s * (al - s / two);
  c.gamma2 = al * al - c.gamma1;

  c.upsilon1 = (one - s * s) / two - a * r;
  c.upsilon2 = (one + s * s) / two - (l + one) * s * r;

  c.mu1 = (al * al * al + s * s * s) / three - al * s * s / two;
  c.mu2 = (one + a * a * a + (one - al) * (one - al) * (one - al)) / three -
          (one - al) / two * (one + a * a);
  c.mu3 = al * s * s / two - s * s * s / three;
  c.mu4 = (al - one) * (one - a * a) / two + (one - a * a * a) / three;

  c.eta1 = (one - s * s * s) / three - r / two * a * (two - a);
  c.eta2 = ls * a * a / two - a * a * a / three;
  c.eta3 = r * r * r / three - r / two * (one + s * s) + (one + s * s * s) / three;
  c.eta4 = ls * ls * ls / three - ls * a * a / two + a * a * a / three;
  return c;
}

PowerMeanCoefficients<double> to_double(const PowerMeanCoefficients<Rational>& c);

/// Hölder-family constants eps1..eps4.  A value is empty when its defining
/// base is negative, i.e. the constant belongs to an inactive regime and
/// the literal formula would raise a negative number to a real power.
template <typename T>
struct HolderCoefficients {
  std::optional<T> eps1, eps2, eps3, eps4;
};

/// p > 1, real.
HolderCoefficients<double> holder_coeffs(const RuleParams& params, double p);
/// Exact variant for integer p >= 2.
HolderCoefficients<Rational> holder_coeffs(const ExactRuleParams& params, int p);

/// The constants a bound engine actually uses in a given regime.
struct PowerMeanSelection {
  double gamma;              // integral of the left kernel
  double mu_b, mu_a;         // left kernel weighted by t and 1-t
  double upsilon;            // integral of the right kernel
  double eta_b, eta_a;       // right kernel weighted by t and 1-t
};

PowerMeanSelection select_power_mean(const PowerMeanCoefficients<double>& c, RegimeCase tag);

/// Regime-selected (eps_left, eps_right), not yet divided by p + 1.
/// Bases are clamped at zero so rounding at a regime boundary cannot
/// produce a negative base.
struct HolderSelection {
  double left;
  double right;
};

HolderSelection select_holder(const RuleParams& params, RegimeCase tag, double p);

enum class Weight { One, T, OneMinusT };

/// Integral of |t - c|^p * weight(t) over [lo, hi], computed by splitting
/// at t = c and integrating each monomial piece in closed form.
double integral_oracle_abs_weight(double c, double lo, double hi, double p, Weight weight);

}  // namespace certquad
