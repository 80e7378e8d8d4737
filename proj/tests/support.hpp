#pragma once

// Independent oracles shared by the unit and acceptance tests.

#include "certquad/params.hpp"
#include "certquad/verify.hpp"

#include <cmath>
#include <vector>

namespace certquad::testing {

inline Rational rat(long n, long d = 1) { return Rational(n) / Rational(d); }

inline Rational ipow(const Rational& x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// Exact integral of |t - c|^p * w(t) over [lo, hi] for integer p >= 0,
/// w = 1, t or 1 - t (weight 0, 1, 2).  Substitutes u = t - c and
/// integrates the monomials u^k, u^(k+1) piece by piece.
inline Rational exact_abs_moment(const Rational& c, const Rational& lo, const Rational& hi, int p,
                                 int weight) {
  auto piece = [&](const Rational& u0, const Rational& u1, bool negative) {
    // |u|^p = s u^p on the piece, s = (-1)^p when u <= 0.
    const Rational s = negative && (p % 2 == 1) ? Rational(-1) : Rational(1);
    auto mono = [&](int k) { return (ipow(u1, k + 1) - ipow(u0, k + 1)) / Rational(k + 1); };
    // t = u + c, 1 - t = (1 - c) - u
    switch (weight) {
      case 0: return s * mono(p);
      case 1: return s * (mono(p + 1) + c * mono(p));
      default: return s * ((Rational(1) - c) * mono(p) - mono(p + 1));
    }
  };
  Rational total(0);
  if (lo < c) total += piece(lo - c, (hi < c ? hi : c) - c, true);
  if (hi > c) total += piece((lo > c ? lo : c) - c, hi - c, false);
  return total;
}

struct Sample {
  double alpha, lambda;
};

/// n samples of (alpha, lambda) falling in the given regime, by rejection
/// from uniform draws.
inline std::vector<Sample> regime_samples(RegimeCase tag, std::size_t n, std::uint64_t seed) {
  SweepRng rng(seed);
  std::vector<Sample> out;
  while (out.size() < n) {
    const Sample s{rng.uniform(), rng.uniform()};
    if (classify_regime(RuleParams(s.alpha, s.lambda)).tag == tag) out.push_back(s);
  }
  return out;
}

inline bool rel_close(double x, double y, double rel, double abs_floor = 0.0) {
  return std::fabs(x - y) <= rel * std::fabs(y) + abs_floor;
}

}  // namespace certquad::testing
