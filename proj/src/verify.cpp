#include "certquad/verify.hpp"

#include "certquad/bounds.hpp"
#include "certquad/coefficients.hpp"
#include "certquad/oracle.hpp"
#include "certquad/rules.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

namespace certquad {

std::optional<VerifyCheck> parse_verify_check(std::string_view name) {
  if (name == "soundness") return VerifyCheck::Soundness;
  if (name == "identity") return VerifyCheck::Identity;
  if (name == "hh") return VerifyCheck::HermiteHadamard;
  if (name == "coeffs") return VerifyCheck::Coefficients;
  if (name == "all") return VerifyCheck::All;
  return std::nullopt;
}

std::string_view to_string(VerifyCheck c) {
  switch (c) {
    case VerifyCheck::Soundness: return "soundness";
    case VerifyCheck::Identity: return "identity";
    case VerifyCheck::HermiteHadamard: return "hh";
    case VerifyCheck::Coefficients: return "coeffs";
    case VerifyCheck::All: return "all";
  }
  return "?";
}

std::vector<Interval> interval_battery(const FunctionModel& f) {
  if (f.domain().lo >= 0.0) return {{0.5, 1.5}, {1.0, 2.0}, {0.2, 3.0}};
  if (f.domain().hi <= 0.0) return {{-1.5, -0.5}, {-2.0, -1.0}, {-3.0, -0.2}};
  return {{0.0, 1.0}, {-1.0, 1.0}, {-2.0, 0.5}};
}

namespace {

constexpr double kSoundnessSlack = 1e-10;
constexpr double kIdentityLimit = 1e-8;
constexpr double kCoefficientLimit = 1e-10;
constexpr double kPartitionLimit = 1e-12;

// Relative gap with an absolute floor for values near zero.
double scaled_gap(double x, double y) { return std::fabs(x - y) / std::max(std::fabs(y), 1e-4); }

std::vector<RuleParams> parameter_samples(const VerifyConfig& cfg) {
  std::vector<RuleParams> out = {named_rule(NamedRule::Midpoint), named_rule(NamedRule::Trapezoid),
                                 named_rule(NamedRule::Simpson)};
  SweepRng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const double alpha = rng.uniform();
    const double lambda = rng.uniform();
    out.emplace_back(alpha, lambda);
  }
  return out;
}

using Job = std::function<std::vector<VerifyRow>()>;

std::vector<VerifyRow> run_jobs(const std::vector<Job>& jobs, unsigned threads) {
  std::vector<std::vector<VerifyRow>> results(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < jobs.size(); i += threads) results[i] = jobs[i]();
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<VerifyRow> rows;
  for (auto& r : results) rows.insert(rows.end(), std::make_move_iterator(r.begin()),
                                      std::make_move_iterator(r.end()));
  return rows;
}

VerifyRow base_row(const FunctionModel& f, const Interval& iv) {
  VerifyRow r;
  r.function = f.name();
  r.a = iv.a();
  r.b = iv.b();
  return r;
}

std::vector<VerifyRow> soundness_job(const FunctionModel& f, const Interval& iv,
                                     const std::vector<RuleParams>& samples, const VerifyConfig& cfg) {
  std::vector<VerifyRow> rows;
  const double mean = mean_ref(f, iv, cfg.oracle_tol);
  for (const auto& params : samples) {
    for (Theorem t : {Theorem::T22, Theorem::T23, Theorem::T24}) {
      for (double q : cfg.qs) {
        if (t != Theorem::T22 && !(q > 1.0)) continue;
        const auto cert = bound(t, f, iv, params, q);
        VerifyRow r = base_row(f, iv);
        r.alpha = params.alpha();
        r.lambda = params.lambda();
        r.q = q;
        r.theorem = std::string(to_string(cert.theorem));
        r.lhs = std::fabs(cert.approx - mean);
        r.bound = cert.bound;
        r.margin = r.bound - r.lhs;
        r.regime = std::string(to_string(cert.regime));
        r.ok = r.lhs <= r.bound + kSoundnessSlack;
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

std::vector<VerifyRow> identity_job(const FunctionModel& f, const Interval& iv,
                                    const std::vector<RuleParams>& samples, const VerifyConfig& cfg) {
  std::vector<VerifyRow> rows;
  const double mean = mean_ref(f, iv, std::min(cfg.oracle_tol, 1e-12));
  for (const auto& params : samples) {
    VerifyRow r = base_row(f, iv);
    r.alpha = params.alpha();
    r.lambda = params.lambda();
    r.theorem = "identity";
    r.lhs = std::fabs((rule_value(f, iv, params) - mean) - identity_rhs(f, iv, params));
    r.bound = kIdentityLimit;
    r.margin = r.bound - r.lhs;
    r.regime = std::string(to_string(classify_regime(params).tag));
    r.ok = r.lhs < r.bound;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Hermite-Hadamard is a statement about convex f, which |f'|^q convexity
// does not imply (x^3 on [-2, 0.5]).  Pairs failing this sampled midpoint
// test of f itself are left out of the hh sweep.
bool sampled_convex(const FunctionModel& f, const Interval& iv) {
  constexpr int grid = 64;
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      const double x = iv.at(static_cast<double>(i) / (grid - 1));
      const double y = iv.at(static_cast<double>(j) / (grid - 1));
      const double mid = f.value(0.5 * (x + y));
      const double avg = 0.5 * (f.value(x) + f.value(y));
      if (mid > avg + 1e-12 * std::max({1.0, std::fabs(mid), std::fabs(avg)})) return false;
    }
  }
  return true;
}

std::vector<VerifyRow> hh_job(const FunctionModel& f, const Interval& iv, const VerifyConfig& cfg) {
  if (!sampled_convex(f, iv)) return {};
  const double mean = mean_ref(f, iv, cfg.oracle_tol);
  const double mid = f.value(0.5 * (iv.a() + iv.b()));
  const double ends = 0.5 * (f.value(iv.a()) + f.value(iv.b()));
  VerifyRow r = base_row(f, iv);
  r.theorem = "hh";
  r.lhs = std::max(mid - mean, mean - ends);  // non-positive when the double inequality holds
  r.bound = 1e-12;
  r.margin = r.bound - r.lhs;
  r.ok = hh_check(f, iv, cfg.oracle_tol);
  return {r};
}

std::vector<VerifyRow> coefficient_job(const RuleParams& params) {
  const auto c = power_mean_coeffs(params);
  const auto tag = classify_regime(params).tag;
  const auto sel = select_power_mean(c, tag);
  const double split = params.split();
  const double kl = params.left_kink();
  const double kr = params.right_kink();

  double worst = 0.0;
  auto track = [&](double closed, double integral) { worst = std::max(worst, scaled_gap(closed, integral)); };
  track(sel.gamma, integral_oracle_abs_weight(kl, 0.0, split, 1.0, Weight::One));
  track(sel.mu_b, integral_oracle_abs_weight(kl, 0.0, split, 1.0, Weight::T));
  track(sel.mu_a, integral_oracle_abs_weight(kl, 0.0, split, 1.0, Weight::OneMinusT));
  track(sel.upsilon, integral_oracle_abs_weight(kr, split, 1.0, 1.0, Weight::One));
  track(sel.eta_b, integral_oracle_abs_weight(kr, split, 1.0, 1.0, Weight::T));
  track(sel.eta_a, integral_oracle_abs_weight(kr, split, 1.0, 1.0, Weight::OneMinusT));
  for (double p : {1.5, 2.0, 3.0}) {
    const auto eps = select_holder(params, tag, p);
    track(eps.left / (p + 1.0), integral_oracle_abs_weight(kl, 0.0, split, p, Weight::One));
    track(eps.right / (p + 1.0), integral_oracle_abs_weight(kr, split, 1.0, p, Weight::One));
  }

  const double partition = std::max({std::fabs(c.mu1 + c.mu2 - c.gamma2), std::fabs(c.mu3 + c.mu4 - c.gamma1),
                                     std::fabs(c.eta1 + c.eta2 - c.upsilon1),
                                     std::fabs(c.eta3 + c.eta4 - c.upsilon2)});

  VerifyRow r;
  r.function = "-";
  r.alpha = params.alpha();
  r.lambda = params.lambda();
  r.regime = std::string(to_string(tag));
  VerifyRow part = r;

  r.theorem = "coeffs";
  r.lhs = worst;
  r.bound = kCoefficientLimit;
  r.margin = r.bound - r.lhs;
  r.ok = r.lhs <= r.bound;

  part.theorem = "partition";
  part.lhs = partition;
  part.bound = kPartitionLimit;
  part.margin = part.bound - part.lhs;
  part.ok = part.lhs <= part.bound;
  return {r, part};
}

bool wants(VerifyCheck selected, VerifyCheck c) { return selected == VerifyCheck::All || selected == c; }

}  // namespace

VerifyReport run_verify(const VerifyConfig& config) {
  VerifyReport report;
  report.config = config;
  const auto corpus = builtin_corpus();
  const auto samples = parameter_samples(config);

  std::vector<Job> jobs;
  if (wants(config.check, VerifyCheck::Coefficients))
    for (const auto& params : samples) jobs.push_back([params] { return coefficient_job(params); });
  for (const auto& f : corpus) {
    for (const auto& iv : interval_battery(f)) {
      if (wants(config.check, VerifyCheck::HermiteHadamard))
        jobs.push_back([&f, iv, &config] { return hh_job(f, iv, config); });
      if (wants(config.check, VerifyCheck::Identity))
        jobs.push_back([&f, iv, &samples, &config] { return identity_job(f, iv, samples, config); });
      if (wants(config.check, VerifyCheck::Soundness))
        jobs.push_back([&f, iv, &samples, &config] { return soundness_job(f, iv, samples, config); });
    }
  }

  report.rows = run_jobs(jobs, config.threads);
  for (const auto& r : report.rows) {
    if (!r.ok) ++report.violations;
    if (r.theorem == "identity") report.max_residual = std::max(report.max_residual, r.lhs);
    if (r.theorem.starts_with("t2") && r.bound > 0.0)
      report.max_ratio = std::max(report.max_ratio, r.lhs / r.bound);
  }
  return report;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

}  // namespace

std::string render_json(const VerifyReport& report) {
  nlohmann::ordered_json doc;
  doc["v"] = "v1";
  doc["check"] = to_string(report.config.check);
  doc["seed"] = report.config.seed;
  doc["samples"] = report.config.samples;
  doc["q"] = report.config.qs;
  doc["summary"] = {{"rows", report.rows.size()},
                    {"violations", report.violations},
                    {"max_ratio", report.max_ratio},
                    {"max_residual", report.max_residual}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"function", r.function},
                    {"a", opt(r.a)},
                    {"b", opt(r.b)},
                    {"alpha", opt(r.alpha)},
                    {"lambda", opt(r.lambda)},
                    {"q", opt(r.q)},
                    {"theorem", r.theorem},
                    {"lhs", r.lhs},
                    {"bound", r.bound},
                    {"margin", r.margin},
                    {"regime", r.regime},
                    {"ok", r.ok}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render_csv(const VerifyReport& report) {
  std::string out = std::string(kVerifyCsvHeader) + "\n";
  for (const auto& r : report.rows) {
    out += r.function + "," + csv_number(r.a) + "," + csv_number(r.b) + "," + csv_number(r.alpha) +
           "," + csv_number(r.lambda) + "," + csv_number(r.q) + "," + r.theorem + "," +
           csv_number(r.lhs) + "," + csv_number(r.bound) + "," + csv_number(r.margin) + "," +
           r.regime + "\n";
  }
  return out;
}

}  // namespace certquad
