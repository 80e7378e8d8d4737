// Acceptance harness: one PASS/FAIL line per criterion.  Tolerances and
// time limits are pinned below.  The process exits 0 only when the set of
// failing criteria equals kKnownDefects, so an unexpected failure or an
// unexpected recovery both break the build.

#include "certquad/bounds.hpp"
#include "certquad/coefficients.hpp"
#include "certquad/composite.hpp"
#include "certquad/means.hpp"
#include "certquad/oracle.hpp"
#include "certquad/rules.hpp"
#include "certquad/verify.hpp"
#include "support.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace certquad;
using certquad::testing::exact_abs_moment;
using certquad::testing::ipow;
using certquad::testing::rat;

namespace {

// Criterion 7 as stated cannot hold at the first doubling; see README.
const std::set<int> kKnownDefects{7};

constexpr double kCoeffRel = 1e-10;
constexpr double kCoeffAbsFloor = 1e-16;  // closed forms of values near 0 lose relative accuracy
constexpr double kPartitionTol = 1e-12;
constexpr double kIdentityTol = 1e-8;
constexpr double kSoundSlack = 1e-10;
constexpr double kReductionRel = 1e-12;
constexpr double kRatioLo = 1.9, kRatioHi = 2.1;
constexpr double kPropRhsTol = 1e-12;
constexpr double kPropLhsTol = 1e-10;
constexpr double kChainSlack = 4e-16;  // relative to b: a couple of ulps

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool within_time(double seconds, double limit, std::string& detail) {
  detail += ", " + fmt(seconds) + " s (limit " + fmt(limit) + " s)";
  return seconds < limit;
}

// Power-mean constants and Hölder bases a regime actually uses.
struct Defining {
  Rational gamma, mu_b, mu_a, upsilon, eta_b, eta_a;
};

Defining exact_defining(const ExactRuleParams& params) {
  const Rational s = params.split(), kl = params.left_kink(), kr = params.right_kink();
  return {exact_abs_moment(kl, 0, s, 1, 0), exact_abs_moment(kl, 0, s, 1, 1),
          exact_abs_moment(kl, 0, s, 1, 2), exact_abs_moment(kr, s, 1, 1, 0),
          exact_abs_moment(kr, s, 1, 1, 1), exact_abs_moment(kr, s, 1, 1, 2)};
}

Outcome c1_exact_fixture() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = power_mean_coeffs(ExactRuleParams(rat(1, 2), rat(1, 3)));
  const bool ok = c.gamma2 == rat(5, 72) && c.mu1 == rat(29, 1296) && c.mu2 == rat(61, 1296) &&
                  c.eta3 == rat(61, 1296) && c.eta4 == rat(29, 1296);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = "gamma2=" + to_string(c.gamma2) + " mu1=" + to_string(c.mu1) + " mu2=" +
                  to_string(c.mu2) + " eta3=" + to_string(c.eta3) + " eta4=" + to_string(c.eta4);
  return {within_time(dt, 1.0, d) && ok, d};
}

std::array<std::vector<testing::Sample>, 3> regime_batches() {
  return {testing::regime_samples(RegimeCase::Case1, 1000, 1),
          testing::regime_samples(RegimeCase::Case2, 1000, 2),
          testing::regime_samples(RegimeCase::Case3, 1000, 3)};
}

Outcome c2_coefficients_vs_integrals() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checks = 0, bad = 0, floored = 0;
  double worst_rel = 0.0;
  auto compare = [&](double closed, double oracle) {
    ++checks;
    const double err = std::fabs(closed - oracle);
    const double rel = oracle != 0.0 ? err / std::fabs(oracle) : (err == 0.0 ? 0.0 : INFINITY);
    if (err <= kCoeffRel * std::fabs(oracle)) {
      worst_rel = std::max(worst_rel, rel);
    } else if (err <= kCoeffAbsFloor) {
      ++floored;
    } else {
      ++bad;
    }
  };
  for (int tag = 1; tag <= 3; ++tag) {
    for (const auto& smp : regime_batches()[tag - 1]) {
      const RuleParams params(smp.alpha, smp.lambda);
      // doubles convert exactly, so the rational oracle sees the same point
      const ExactRuleParams exact(Rational(smp.alpha), Rational(smp.lambda));
      const auto sel = select_power_mean(power_mean_coeffs(params), static_cast<RegimeCase>(tag));
      const auto want = exact_defining(exact);
      compare(sel.gamma, to_double(want.gamma));
      compare(sel.mu_b, to_double(want.mu_b));
      compare(sel.mu_a, to_double(want.mu_a));
      compare(sel.upsilon, to_double(want.upsilon));
      compare(sel.eta_b, to_double(want.eta_b));
      compare(sel.eta_a, to_double(want.eta_a));

      const double s = params.split(), kl = params.left_kink(), kr = params.right_kink();
      for (double p : {1.5, 2.0, 3.0}) {
        const auto eps = select_holder(params, static_cast<RegimeCase>(tag), p);
        double left, right;
        if (p == 1.5) {
          // adaptive Gauss-Kronrod with the kink as a breakpoint
          auto w = [p](double c) { return [p, c](double t) { return std::pow(std::fabs(t - c), p); }; };
          const std::array<double, 1> bl{kl}, br{kr};
          left = s > 0 ? integrate_ref(w(kl), 0.0, s, 1e-14, bl).value : 0.0;
          right = s < 1 ? integrate_ref(w(kr), s, 1.0, 1e-14, br).value : 0.0;
        } else {
          const int ip = static_cast<int>(p);
          left = to_double(exact_abs_moment(exact.left_kink(), 0, exact.split(), ip, 0));
          right = to_double(exact_abs_moment(exact.right_kink(), exact.split(), 1, ip, 0));
        }
        compare(eps.left / (p + 1), left);
        compare(eps.right / (p + 1), right);
      }
    }
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = std::to_string(checks) + " checks, " + std::to_string(bad) + " outside tolerance, worst rel " +
                  fmt(worst_rel) + ", " + std::to_string(floored) + " near-zero values within abs " +
                  fmt(kCoeffAbsFloor);
  return {within_time(dt, 30.0, d) && bad == 0, d};
}

Outcome c3_partitions() {
  double worst = 0.0;
  for (const auto& batch : regime_batches()) {
    for (const auto& smp : batch) {
      const auto c = power_mean_coeffs(RuleParams(smp.alpha, smp.lambda));
      worst = std::max({worst, std::fabs(c.mu1 + c.mu2 - c.gamma2), std::fabs(c.mu3 + c.mu4 - c.gamma1),
                        std::fabs(c.eta1 + c.eta2 - c.upsilon1), std::fabs(c.eta3 + c.eta4 - c.upsilon2)});
    }
  }
  return {worst <= kPartitionTol, "max |defect| " + fmt(worst) + " over 3000 samples x 4 identities"};
}

Outcome c4_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& f : builtin_corpus()) {
    for (const auto& iv : interval_battery(f)) {
      const double mean = mean_ref(f, iv, 1e-13);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          const RuleParams p(i / 4.0, j / 4.0);
          worst = std::max(worst, std::fabs(rule_value(f, iv, p) - mean - identity_rhs(f, iv, p)));
          ++checks;
        }
      }
    }
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = std::to_string(checks) + " checks, max residual " + fmt(worst);
  return {within_time(dt, 60.0, d) && checks == 600 && worst < kIdentityTol, d};
}

Outcome c5_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t certs = 0, violations = 0, refused = 0;
  double worst_ratio = 0.0;
  for (const auto& f : builtin_corpus()) {
    for (const auto& iv : interval_battery(f)) {
      const double mean = mean_ref(f, iv, 1e-12);
      for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
          const RuleParams p(i / 10.0, j / 10.0);
          auto run = [&](Theorem t, double q) {
            try {
              const auto c = bound(t, f, iv, p, q);
              const double err = std::fabs(c.approx - mean);
              ++certs;
              if (err > c.bound + kSoundSlack) ++violations;
              if (c.bound > 0) worst_ratio = std::max(worst_ratio, err / c.bound);
            } catch (const HypothesisRefused&) {
              ++refused;
            }
          };
          for (double q : {1.0, 1.5, 2.0, 3.0}) run(Theorem::T22, q);
          for (double q : {1.5, 2.0, 3.0}) {
            run(Theorem::T23, q);
            run(Theorem::T24, q);
          }
        }
      }
    }
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = std::to_string(certs) + " certificates, " + std::to_string(violations) + " violations, " +
                  std::to_string(refused) + " refused, max error/bound " + fmt(worst_ratio);
  return {within_time(dt, 300.0, d) && violations == 0 && refused == 0 && certs >= 20000, d};
}

bool rel_eq(double x, double y) { return std::fabs(x - y) <= kReductionRel * std::max(std::fabs(y), 1e-300); }

Outcome c6_reductions() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };

  // Exact part: the engine's constants at the named rules collapse to the
  // reduced formulas' weights.
  const auto simpson = named_rule_exact(NamedRule::Simpson);
  const auto midpoint = named_rule_exact(NamedRule::Midpoint);
  const auto trapezoid = named_rule_exact(NamedRule::Trapezoid);
  const auto ds = exact_defining(simpson), dm = exact_defining(midpoint), dtz = exact_defining(trapezoid);
  const auto cs = power_mean_coeffs(simpson);
  expect(cs.gamma2 == rat(5, 72) && cs.upsilon2 == rat(5, 72) && cs.mu1 == rat(29, 1296) &&
             cs.mu2 == rat(61, 1296) && cs.eta3 == rat(61, 1296) && cs.eta4 == rat(29, 1296) &&
             ds.mu_b == cs.mu1 && ds.eta_b == cs.eta3,
         "simpson power-mean constants");
  // midpoint: gamma = 1/8 with weights (1/3, 2/3) and (2/3, 1/3)
  expect(dm.gamma == rat(1, 8) && dm.upsilon == rat(1, 8) && dm.mu_b / dm.gamma == rat(1, 3) &&
             dm.mu_a / dm.gamma == rat(2, 3) && dm.eta_b / dm.upsilon == rat(2, 3) &&
             dm.eta_a / dm.upsilon == rat(1, 3),
         "midpoint weights");
  // midpoint at q = 1: total weight 1/8 on each endpoint, i.e. (b-a)/4 (|f'(a)|+|f'(b)|)/2
  expect(dm.mu_b + dm.eta_b == rat(1, 8) && dm.mu_a + dm.eta_a == rat(1, 8), "midpoint q=1");
  // trapezoid: gamma = 1/8 with weights (1/6, 5/6) and (5/6, 1/6)
  expect(dtz.gamma == rat(1, 8) && dtz.upsilon == rat(1, 8) && dtz.mu_b / dtz.gamma == rat(1, 6) &&
             dtz.mu_a / dtz.gamma == rat(5, 6) && dtz.eta_b / dtz.upsilon == rat(5, 6),
         "trapezoid weights");
  // Simpson Hölder constants, integer p: (1/2)^(p-1) eps/(p+1) = (1/12)^p (1+2^(p+1))/(3(p+1)),
  // and the endpoint averages at alpha = 1/2 are (X+3Y)/8 and (3X+Y)/8.
  for (int p : {2, 3, 4, 5}) {
    const auto h = holder_coeffs(simpson, p);
    const Rational want = ipow(rat(1, 12), p) * (1 + ipow(rat(2), p + 1)) / (3 * (p + 1));
    const Rational scale = ipow(rat(1, 2), p - 1) / (p + 1);
    expect(h.eps1 && h.eps3 && *h.eps1 * scale == want && *h.eps3 * scale == want,
           "simpson holder p=" + std::to_string(p));
  }
  {
    const Rational a = simpson.alpha();
    const Rational one(1), half = rat(1, 2);
    expect(half * (one - a) * (one - a) == rat(1, 8) && half * (one - a * a) == rat(3, 8) &&
               half * a * (2 - a) == rat(3, 8) && half * a * a == rat(1, 8),
           "simpson endpoint averages");
  }

  // Numeric part: engine against the printed reductions.
  SweepRng rng(2012);
  const auto corpus = builtin_corpus();
  for (int k = 0; k < 20; ++k) {
    const auto& f = corpus[rng.next() % corpus.size()];
    const auto battery = interval_battery(f);
    const auto iv = battery[rng.next() % battery.size()];
    const double q = 1.05 + 2.95 * rng.uniform();
    const double p = *conjugate(q).p;
    const double w = iv.width();
    const double Fa = std::fabs(f.derivative(iv.a())), Fb = std::fabs(f.derivative(iv.b()));
    const double X = std::pow(Fb, q), Y = std::pow(Fa, q);
    const double Z = std::pow(std::fabs(f.derivative(iv.node(0.5))), q);
    auto r = [q](double v) { return std::pow(v, 1 / q); };
    const double hc = std::pow((1 + std::pow(2.0, p + 1)) / (3 * (p + 1)), 1 / p) / 12;
    const std::string tag = " #" + std::to_string(k) + " " + f.name();
    auto bq = [&](Theorem t, const ExactRuleParams& params, double qq) { return bound(t, f, iv, params, qq).bound; };

    expect(rel_eq(bq(Theorem::T22, simpson, q),
                  w * (std::pow(5.0 / 72, 1 - 1 / q) * (r((29 * X + 61 * Y) / 1296) + r((61 * X + 29 * Y) / 1296)))),
           "T22 simpson" + tag);
    expect(rel_eq(bq(Theorem::T22, midpoint, q), w / 8 * (r((X + 2 * Y) / 3) + r((2 * X + Y) / 3))),
           "T22 midpoint" + tag);
    expect(rel_eq(bq(Theorem::T22, midpoint, 1.0), w / 4 * (Fa + Fb) / 2), "T22 midpoint q=1" + tag);
    expect(rel_eq(bq(Theorem::T22, trapezoid, q), w / 8 * (r((X + 5 * Y) / 6) + r((5 * X + Y) / 6))),
           "T22 trapezoid" + tag);
    expect(rel_eq(bq(Theorem::T23, simpson, q), w * hc * (r((Z + Y) / 2) + r((Z + X) / 2))), "T23 simpson" + tag);
    expect(rel_eq(bq(Theorem::T24, simpson, q), w * hc * (r((3 * X + Y) / 4) + r((X + 3 * Y) / 4))),
           "T24 simpson" + tag);
  }
  std::string d = failed.empty() ? "exact constants and 20 numeric tuples x 6 reductions agree"
                                 : std::to_string(failed.size()) + " mismatches, first: " + failed.front();
  return {failed.empty(), d};
}

Outcome c7_doubling() {
  const auto f = *lookup_builtin("exp");
  const Interval unit(0, 1);
  const double exact = std::exp(1.0) - 1.0;
  const auto mid = named_rule_exact(NamedRule::Midpoint);
  std::vector<double> totals;
  bool contained = true;
  for (int n = 1; n <= 64; n *= 2) {
    const auto r = composite_integrate(f, unit, mid, 1.0, Theorem::T22, n);
    contained = contained && std::fabs(r.value - exact) <= r.total_bound;
    totals.push_back(r.total_bound);
  }
  bool in_band = true;
  std::string ratios;
  for (std::size_t i = 0; i + 1 < totals.size(); ++i) {
    const double ratio = totals[i] / totals[i + 1];
    in_band = in_band && ratio >= kRatioLo && ratio <= kRatioHi;
    ratios += (i ? " " : "") + fmt(ratio);
  }
  return {contained && in_band, std::string("ratios ") + ratios + "; error <= bound at every n: " +
                                    (contained ? "yes" : "no")};
}

Outcome c8_propositions() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRng rng(606);
  std::size_t failures = 0;
  double worst_rhs = 0.0, worst_lhs = 0.0;
  for (int which = 1; which <= 6; ++which) {
    for (int k = 0; k < 200; ++k) {
      PropositionInput in;
      in.which = which;
      double a = rng.uniform(0.05, 5.0), b = rng.uniform(0.05, 5.0);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-2) b = a + 1.0;
      const bool negative = which <= 3 && rng.next() % 2 == 0;
      in.a = negative ? -b : a;
      in.b = negative ? -a : b;
      in.params = RuleParams(rng.uniform(), rng.uniform());
      in.q = (which % 2 == 1 ? 1.0 : 1.01) + 3.0 * rng.uniform();
      if (which <= 2) {
        static constexpr int ns[] = {-4, -3, -2, 2, 3, 4, 5, 6};
        in.n = ns[rng.next() % 8];
      }
      const auto r = proposition_check(in);
      const auto c = proposition_consistency(in, kPropRhsTol, kPropLhsTol);
      worst_rhs = std::max(worst_rhs, c.rhs_gap);
      worst_lhs = std::max(worst_lhs, c.lhs_gap);
      if (!r.holds || !c.consistent) ++failures;
    }
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = "1200 tuples, " + std::to_string(failures) + " failures, max rhs gap " + fmt(worst_rhs) +
                  ", max lhs gap " + fmt(worst_lhs);
  return {within_time(dt, 60.0, d) && failures == 0, d};
}

Outcome c9_means() {
  SweepRng rng(909);
  std::size_t chain = 0, endpoints = 0;
  for (int k = 0; k < 1000; ++k) {
    double a = std::exp(rng.uniform(-6, 6)), b = std::exp(rng.uniform(-6, 6));
    if (a > b) std::swap(a, b);
    if (a == b) b = std::nextafter(b, INFINITY) * 2;
    const double s = kChainSlack * b;
    const double h = harmonic_mean(a, b), g = geometric_mean(a, b), l = logarithmic_mean(a, b),
                 i = identric_mean(a, b), m = arithmetic_mean(a, b);
    if (!(h <= g + s && g <= l + s && l <= i + s && i <= m + s)) ++chain;
    if (weighted_arithmetic_mean(a, b, 1) != a || weighted_arithmetic_mean(a, b, 0) != b ||
        weighted_geometric_mean(a, b, 1) != a || weighted_geometric_mean(a, b, 0) != b ||
        weighted_harmonic_mean(a, b, 1) != a || weighted_harmonic_mean(a, b, 0) != b)
      ++endpoints;
  }
  return {chain == 0 && endpoints == 0, "1000 pairs, " + std::to_string(chain) + " chain failures, " +
                                            std::to_string(endpoints) + " inexact endpoint identities"};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  if (pclose(pipe) != 0) out = "<nonzero exit>";
  return out;
}

Outcome c10_determinism(const std::string& cli) {
  const std::string base = "'" + cli + "' verify --check all --seed 20120610 --samples 8";
  const auto first = capture(base);
  const auto second = capture(base);
  const auto serial = capture(base + " --threads 1");
  const auto csv1 = capture(base + " --format csv 2>/dev/null");
  const auto csv2 = capture(base + " --format csv --threads 3 2>/dev/null");
  const bool ok = first.size() > 1000 && first == second && first == serial && csv1.size() > 100 && csv1 == csv2;
  return {ok, std::to_string(first.size()) + "-byte JSON report reproduced across 3 runs, CSV across 2: " +
                  (ok ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to certquad>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact coefficient fixture", c1_exact_fixture},
      {"closed forms vs defining integrals", c2_coefficients_vs_integrals},
      {"partition identities", c3_partitions},
      {"kernel identity residual", c4_identity},
      {"certificate soundness", c5_soundness},
      {"named-rule reductions", c6_reductions},
      {"composite bound halves per doubling", c7_doubling},
      {"propositions 1-6", c8_propositions},
      {"means chain and endpoints", c9_means},
      {"verify determinism", [&] { return c10_determinism(cli); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << ": " << o.detail;
    if (!o.pass && kKnownDefects.count(id)) std::cout << " (known: unattainable as specified)";
    std::cout << "\n";
  }
  const bool expected = failed == kKnownDefects;
  std::cout << (expected ? "acceptance: failures match the documented set"
                         : "acceptance: unexpected outcome")
            << "\n";
  return expected ? 0 : 1;
}
