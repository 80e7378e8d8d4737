#pragma once

// Special means of two real numbers and the inequality checks obtained by
// instantiating the bound engines at f = x^n, 1/x and -ln x.

#include "certquad/params.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace certquad {

enum class MeanKind {
  WeightedArithmetic,  // A_alpha(a,b) = alpha a + (1-alpha) b
  Arithmetic,          // A(a,b) = (a+b)/2
  WeightedGeometric,   // G_alpha(a,b) = a^alpha b^(1-alpha), a, b > 0
  Geometric,           // G(a,b) = sqrt(ab)
  WeightedHarmonic,    // H_alpha(a,b) = (alpha/a + (1-alpha)/b)^-1
  Harmonic,            // H(a,b) = 2ab/(a+b)
  Logarithmic,         // L(a,b) = (b-a)/(ln|b| - ln|a|)
  NLogarithmic,        // L_n(a,b) = ((b^(n+1) - a^(n+1))/((n+1)(b-a)))^(1/n)
  Identric,            // I(a,b) = e^-1 (b^b/a^a)^(1/(b-a))
};

std::optional<MeanKind> parse_mean_kind(std::string_view name);
std::string_view to_string(MeanKind kind);

/// Names the violated domain predicate.
class MeanDomainError : public DomainError {
public:
  MeanDomainError(std::string_view mean, std::string_view predicate)
      : DomainError(std::string(mean) + ": requires " + std::string(predicate)),
        predicate_(predicate) {}
  const std::string& predicate() const { return predicate_; }

private:
  std::string predicate_;
};

/// extra is alpha for the weighted means and n for L_n.
double eval_mean(MeanKind kind, double a, double b, std::optional<double> extra = std::nullopt);

double weighted_arithmetic_mean(double a, double b, double alpha);
double arithmetic_mean(double a, double b);
double weighted_geometric_mean(double a, double b, double alpha);
double geometric_mean(double a, double b);
double weighted_harmonic_mean(double a, double b, double alpha);
double harmonic_mean(double a, double b);
double logarithmic_mean(double a, double b);
double n_logarithmic_mean(double a, double b, int n);
/// L_n(a,b)^n, defined even where the n-th root is not.
double n_logarithmic_mean_pow(double a, double b, int n);
double identric_mean(double a, double b);

struct PropositionInput {
  int which = 1;  // 1..6
  double a = 0.0;
  double b = 0.0;
  RuleParams params{0.5, 0.0};
  double q = 1.0;
  std::optional<int> n;  // propositions 1 and 2
};

struct PropositionResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double margin = 0.0;  // rhs - lhs
};

/// Propositions 1, 3, 5 follow from the power-mean bound (q >= 1) at
/// f = x^n, 1/x, -ln x; 2, 4, 6 from the node-averaged Hölder bound (q > 1).
/// Domains: 1-3 need a < b with 0 outside [a, b]; 4-6 need 0 < a < b;
/// 1-2 need an integer n with |n| >= 2.
PropositionResult proposition_check(const PropositionInput& in);

struct ConsistencyResult {
  bool consistent = false;
  double rhs_gap = 0.0;  // |rhs - engine bound| relative to max(1, |rhs|)
  double lhs_gap = 0.0;  // |lhs - |rule value - oracle mean||
};

/// Compares a proposition with the bound engine and the rule/oracle pair
/// applied to its generating function.
ConsistencyResult proposition_consistency(const PropositionInput& in, double rhs_tol = 1e-12,
                                          double lhs_tol = 1e-10);

}  // namespace certquad
