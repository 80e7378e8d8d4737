#pragma once

// Rule parameters (alpha, lambda), the three coefficient regimes, and
// conjugate exponent bookkeeping.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace certquad {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Raised for arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// "num/den" (or a bare integer) for exact values.
std::string to_string(const Rational& x);

/// A user-supplied number: always has a floating value, and an exact
/// rational when it was written as an integer or "num/den".
struct NumberInput {
  double value = 0.0;
  std::optional<Rational> exact;
  std::string text;

  bool is_exact() const { return exact.has_value(); }
};

/// Parses "3", "-2", "1/3", "0.25", "1e-6".  Throws std::invalid_argument.
NumberInput parse_number(std::string_view text);

/// The pair (alpha, lambda) in [0,1]^2.  T is double or Rational.
template <typename T>
class BasicRuleParams {
public:
  BasicRuleParams(T alpha, T lambda) : alpha_(std::move(alpha)), lambda_(std::move(lambda)) {
    if (!(alpha_ >= T(0) && alpha_ <= T(1)))
      throw DomainError("alpha must lie in [0,1]");
    if (!(lambda_ >= T(0) && lambda_ <= T(1)))
      throw DomainError("lambda must lie in [0,1]");
  }

  const T& alpha() const { return alpha_; }
  const T& lambda() const { return lambda_; }

  /// Interior node position on the normalized segment, x = (1-alpha) b + alpha a.
  T split() const { return T(1) - alpha_; }
  /// Kink of the left kernel |t - alpha*lambda|.
  T left_kink() const { return alpha_ * lambda_; }
  /// Kink of the right kernel |t - 1 + lambda(1-alpha)|.
  T right_kink() const { return T(1) - lambda_ * (T(1) - alpha_); }

  friend bool operator==(const BasicRuleParams&, const BasicRuleParams&) = default;

private:
  T alpha_;
  T lambda_;
};

using RuleParams = BasicRuleParams<double>;
using ExactRuleParams = BasicRuleParams<Rational>;

RuleParams to_double(const ExactRuleParams& params);

enum class RegimeCase { Case1 = 1, Case2 = 2, Case3 = 3 };

std::string_view to_string(RegimeCase c);

template <typename T>
struct BasicRegime {
  RegimeCase tag;
  T left_kink;   // alpha*lambda
  T split;       // 1 - alpha
  T right_kink;  // 1 - lambda(1-alpha)
};

using Regime = BasicRegime<double>;

/// Case1: aL <= 1-a <= 1-L(1-a); Case2: aL <= 1-L(1-a) <= 1-a;
/// Case3: 1-a <= aL <= 1-L(1-a).  Ties go to the lowest-numbered case.
template <typename T>
BasicRegime<T> classify_regime(const BasicRuleParams<T>& params) {
  BasicRegime<T> r{RegimeCase::Case1, params.left_kink(), params.split(), params.right_kink()};
  // aL <= 1-L(1-a) holds exactly for lambda <= 1, but at lambda = 1 the
  // rounded kinks can land in either order, so only the split is compared.
  if (r.left_kink <= r.split && r.split <= r.right_kink)
    r.tag = RegimeCase::Case1;
  else if (r.right_kink <= r.split)
    r.tag = RegimeCase::Case2;
  else
    r.tag = RegimeCase::Case3;
  return r;
}

/// Hölder exponent pair; p is infinite when q == 1.
struct ExponentPair {
  double q;
  std::optional<double> p;

  bool p_infinite() const { return !p.has_value(); }
};

ExponentPair conjugate(double q);

}  // namespace certquad
