#pragma once

#include "certquad/params.hpp"

namespace certquad {

/// Closed integration interval [a, b] with a < b, both finite.
class Interval {
public:
  Interval(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double width() const { return b_ - a_; }
  /// The rule's interior node alpha*a + (1-alpha)*b.
  double node(double alpha) const { return alpha * a_ + (1.0 - alpha) * b_; }
  /// Point t*b + (1-t)*a of the normalized parametrization.
  double at(double t) const { return t * b_ + (1.0 - t) * a_; }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  double a_;
  double b_;
};

}  // namespace certquad
