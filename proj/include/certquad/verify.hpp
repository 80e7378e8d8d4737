#pragma once

// Reproducible verification sweeps over the builtin corpus: certificate
// soundness, the kernel identity, Hermite-Hadamard, and coefficient
// closed forms against their defining integrals.

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace certquad {

/// Uniform doubles in [0, 1) from the top 53 bits of std::mt19937_64, so a
/// given seed yields the same sample points on every conforming platform.
class SweepRng {
public:
  explicit SweepRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

enum class VerifyCheck { Soundness, Identity, HermiteHadamard, Coefficients, All };

std::optional<VerifyCheck> parse_verify_check(std::string_view name);
std::string_view to_string(VerifyCheck c);

struct VerifyConfig {
  VerifyCheck check = VerifyCheck::Soundness;
  std::uint64_t seed = 20120610;
  std::size_t samples = 16;  // random (alpha, lambda) pairs, on top of the named rules
  std::vector<double> qs = {1.0, 1.5, 2.0, 3.0};
  double oracle_tol = 1e-10;
  unsigned threads = 0;      // 0: hardware concurrency
};

struct VerifyRow {
  std::string function;
  std::optional<double> a, b;
  std::optional<double> alpha, lambda, q;
  std::string theorem;  // t22 / t22q1 / t23 / t24 / identity / hh / coeffs / partition
  double lhs = 0.0;     // quantity that must stay below bound
  double bound = 0.0;
  double margin = 0.0;  // bound - lhs
  std::string regime;
  bool ok = true;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<VerifyRow> rows;
  std::size_t violations = 0;
  double max_ratio = 0.0;     // max lhs/bound over certificate rows
  double max_residual = 0.0;  // max identity residual
};

/// Intervals each corpus member is swept over.
std::vector<Interval> interval_battery(const FunctionModel& f);

VerifyReport run_verify(const VerifyConfig& config);

std::string render_json(const VerifyReport& report);
std::string render_csv(const VerifyReport& report);

inline constexpr const char* kVerifyCsvHeader =
    "function,a,b,alpha,lambda,q,theorem,lhs,bound,margin,regime";

}  // namespace certquad
