#pragma once

// Panelized integration with summed certificates.  A panel certificate
// bounds the error of the panel's mean; multiplying by the panel width
// turns it into a bound on the panel's integral error.

#include "certquad/bounds.hpp"

#include <cstddef>
#include <vector>

namespace certquad {

struct Panel {
  Interval interval;
  ErrorCertificate certificate;

  double weighted_bound() const { return interval.width() * certificate.bound; }
};

struct CompositeResult {
  double value = 0.0;        // approximation of the integral over [a, b]
  double total_bound = 0.0;  // sum of width * panel bound
  std::vector<Panel> panels; // ordered left to right, tiling [a, b]
  bool target_met = true;
  bool advisory = false;
};

/// n uniform panels; endpoints a + (b-a) i/n.
CompositeResult composite_integrate(const FunctionModel& f, const Interval& iv,
                                    const RuleParams& params, double q, Theorem theorem,
                                    std::size_t n);
CompositeResult composite_integrate(const FunctionModel& f, const Interval& iv,
                                    const ExactRuleParams& params, double q, Theorem theorem,
                                    std::size_t n);

/// Greedy bisection of the panel with the largest width-scaled bound
/// (leftmost on ties) until total_bound <= target or max_panels is
/// reached.  target_met reports which.
CompositeResult adaptive_integrate(const FunctionModel& f, const Interval& iv,
                                   const RuleParams& params, double q, Theorem theorem,
                                   double target, std::size_t max_panels);
CompositeResult adaptive_integrate(const FunctionModel& f, const Interval& iv,
                                   const ExactRuleParams& params, double q, Theorem theorem,
                                   double target, std::size_t max_panels);

}  // namespace certquad
