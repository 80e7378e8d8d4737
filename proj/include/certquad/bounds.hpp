#pragma once

// Error-bound engines for the two-parameter rule under convexity of |f'|^q:
//
//   T22  power-mean bound, q >= 1 (T22q1 names the q = 1 instance)
//   T23  Hölder bound with |f'|^q averaged at the interior node, q > 1
//   T24  Hölder bound with |f'|^q averaged at the endpoints, q > 1
//
// Each bound majorizes |rule value - integral mean| on [a, b].

#include "certquad/coefficients.hpp"
#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"
#include "certquad/params.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace certquad {

enum class Theorem { T22, T22q1, T23, T24 };

std::string_view to_string(Theorem t);
std::optional<Theorem> parse_theorem(std::string_view name);

/// The hypothesis of the chosen engine cannot be established.
class HypothesisRefused : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class HypothesisStatus { Proven, Probed };

/// Checks q against the engine's range and convexity of |f'|^q on [a, b].
/// Returns Probed when convexity was only sampled.  Throws HypothesisRefused.
HypothesisStatus check_hypothesis(const FunctionModel& f, const Interval& iv, Theorem theorem,
                                  double q);

struct ErrorCertificate {
  Interval interval;
  RuleParams params;
  Theorem theorem;
  double q;
  std::optional<double> p;  // empty for q = 1
  double bound;
  double approx;
  bool advisory;
  RegimeCase regime;
  std::string function;
};

// Formula kernels on derivative magnitudes |f'(a)|, |f'(b)|, |f'(node)|.
// width is b - a.

double power_mean_bound(const RuleParams& params, double q, double width, double abs_dfa,
                        double abs_dfb);
double power_mean_bound(const PowerMeanSelection& sel, double q, double width, double abs_dfa,
                        double abs_dfb);

/// Exact coefficients; the linear combinations are formed in rational
/// arithmetic and, for q = 1, so is the whole bound.
double power_mean_bound(const ExactRuleParams& params, double q, double width, double abs_dfa,
                        double abs_dfb);
double holder_node_bound(const RuleParams& params, double q, double width, double abs_dfa,
                         double abs_dfb, double abs_dnode);

double holder_endpoint_bound(const RuleParams& params, double q, double width, double abs_dfa,
                             double abs_dfb);

/// Builds a certificate without re-checking the hypothesis.  T22 with
/// q = 1 is reported as T22q1.
ErrorCertificate certify(Theorem theorem, const FunctionModel& f, const Interval& iv,
                         const RuleParams& params, double q, HypothesisStatus status);

/// Rational (alpha, lambda): T22 uses the exact kernel above, T23 and T24
/// the floating one.
ErrorCertificate certify(Theorem theorem, const FunctionModel& f, const Interval& iv,
                         const ExactRuleParams& params, double q, HypothesisStatus status);
ErrorCertificate bound(Theorem theorem, const FunctionModel& f, const Interval& iv,
                       const ExactRuleParams& params, double q);

ErrorCertificate bound_t22(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q);
ErrorCertificate bound_t23(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q);
ErrorCertificate bound_t24(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                           double q);

ErrorCertificate bound(Theorem theorem, const FunctionModel& f, const Interval& iv,
                       const RuleParams& params, double q);

/// Smallest certificate over T22 (q >= 1) and T23, T24 (q > 1) for every q
/// in the grid.  Ties go to T22 < T23 < T24, then to the smaller q.
ErrorCertificate best_bound(const FunctionModel& f, const Interval& iv, const RuleParams& params,
                            std::span<const double> q_grid);

}  // namespace certquad
