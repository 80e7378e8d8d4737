#pragma once

// Evaluatable functions with a symbolic derivative, a domain, and a record
// of how convexity of |f'|^q is known.

#include "certquad/expression.hpp"
#include "certquad/interval.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace certquad {

/// Open interval (lo, hi); either end may be infinite.
struct OpenDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return lo < x && x < hi; }
  bool contains(const Interval& iv) const { return contains(iv.a()) && contains(iv.b()); }
};

enum class Provenance { Builtin, UserAsserted, NumericallyProbed };

std::string_view to_string(Provenance p);

/// Exponents q for which |f'|^q is known to be convex on the domain.
struct ConvexityAssertion {
  bool all_q = false;            // every q >= 1
  std::vector<double> exponents; // otherwise, these q only

  static ConvexityAssertion all() { return {true, {}}; }
  static ConvexityAssertion none() { return {}; }
  bool covers(double q) const;
};

class FunctionModel {
public:
  FunctionModel(std::string name, Expr f, OpenDomain domain, ConvexityAssertion convexity,
                Provenance provenance);

  const std::string& name() const { return name_; }
  const Expr& f() const { return f_; }
  const Expr& fprime() const { return fprime_; }
  const OpenDomain& domain() const { return domain_; }
  const ConvexityAssertion& convexity() const { return convexity_; }
  Provenance provenance() const { return provenance_; }

  double value(double x) const { return evaluate(f_, x); }
  double derivative(double x) const { return evaluate(fprime_, x); }

  /// c * f for c > 0; convexity facts carry over unchanged.
  FunctionModel scaled(double c) const;

private:
  std::string name_;
  Expr f_;
  Expr fprime_;
  OpenDomain domain_;
  ConvexityAssertion convexity_;
  Provenance provenance_;
};

/// x^n, n a non-zero integer.  Positive n live on the whole line; negative
/// n on (0, inf), or (-inf, 0) when negative_side is set.  |f'|^q is convex
/// there for every q >= 1.
FunctionModel power_model(int n, bool negative_side = false);

/// pow:2, pow:3, pow:4, pow:-2, reciprocal, neglog, exp, expneg.
std::vector<FunctionModel> builtin_corpus();

/// Resolves "pow:<n>", "reciprocal", "neglog", "exp", "expneg".
std::optional<FunctionModel> lookup_builtin(std::string_view name);

/// A function typed by the user.  Unless convexity is asserted it is
/// modelled as numerically probed.
FunctionModel user_function(std::string_view text, OpenDomain domain = {},
                            bool assert_convex = false);

/// Midpoint-convexity probe of |f'|^q on a 64x64 grid over [a, b]:
/// g((x+y)/2) <= (g(x)+g(y))/2 + 1e-12 * max(1, |g|).  Evaluation
/// failures count as a failed probe.
bool probe_convexity(const FunctionModel& f, const Interval& iv, double q, int grid = 64);

}  // namespace certquad
