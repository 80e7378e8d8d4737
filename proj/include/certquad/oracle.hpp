#pragma once

// Reference integrator and finite-difference differentiator.  Used only to
// validate identities, coefficients and certificates, never to produce a
// certificate.

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"

#include <functional>
#include <span>
#include <stdexcept>

namespace certquad {

inline constexpr double kDefaultOracleTol = 1e-10;

struct OracleResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int refinement_depth = 0;
};

class OracleFailure : public std::runtime_error {
public:
  OracleFailure(const std::string& what, OracleResult best)
      : std::runtime_error(what), best_(best) {}
  const OracleResult& best_estimate() const { return best_; }

private:
  OracleResult best_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) bisection over [lo, hi].
/// Success means the summed |K15 - G7| estimate is at most
/// tol * max(1, |value|).  Interior breakpoints (e.g. kinks of |t - c|)
/// are honoured as initial split points.  Throws OracleFailure when the
/// depth cap is reached.
OracleResult integrate_ref(const Integrand& g, double lo, double hi, double tol = kDefaultOracleTol,
                           std::span<const double> breakpoints = {});

OracleResult integrate_ref(const Integrand& g, const Interval& iv, double tol = kDefaultOracleTol,
                           std::span<const double> breakpoints = {});

/// (1/(b-a)) * integral of f over [a, b].
double mean_ref(const FunctionModel& f, const Interval& iv, double tol = kDefaultOracleTol);

/// f((a+b)/2) <= mean <= (f(a)+f(b))/2, each within 1e-12 slack.
bool hh_check(const FunctionModel& f, const Interval& iv, double tol = kDefaultOracleTol);

double central_difference(const Integrand& g, double x, double h = 1e-6);

}  // namespace certquad
