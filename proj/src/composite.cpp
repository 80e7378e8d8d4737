#include "certquad/composite.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace certquad {

namespace {

void accumulate(CompositeResult& r) {
  r.value = 0.0;
  r.total_bound = 0.0;
  for (const auto& p : r.panels) {
    r.value += p.interval.width() * p.certificate.approx;
    r.total_bound += p.weighted_bound();
  }
}

template <typename Params>
CompositeResult uniform_impl(const FunctionModel& f, const Interval& iv, const Params& params,
                             double q, Theorem theorem, std::size_t n) {
  if (n < 1) throw DomainError("composite_integrate needs at least one panel");
  // Convexity on [a, b] restricts to every panel, so one check covers all.
  const auto status = check_hypothesis(f, iv, theorem, q);
  CompositeResult r;
  r.advisory = status == HypothesisStatus::Probed;
  r.panels.reserve(n);
  const double a = iv.a();
  const double w = iv.width();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? a : a + w * (static_cast<double>(i) / static_cast<double>(n));
    const double hi = i + 1 == n ? iv.b() : a + w * (static_cast<double>(i + 1) / static_cast<double>(n));
    const Interval panel(lo, hi);
    r.panels.push_back({panel, certify(theorem, f, panel, params, q, status)});
  }
  accumulate(r);
  return r;
}

template <typename Params>
CompositeResult adaptive_impl(const FunctionModel& f, const Interval& iv, const Params& params,
                              double q, Theorem theorem, double target, std::size_t max_panels) {
  if (!(target > 0.0)) throw DomainError("adaptive_integrate needs a positive target");
  if (max_panels < 1) throw DomainError("adaptive_integrate needs max_panels >= 1");
  const auto status = check_hypothesis(f, iv, theorem, q);

  struct Entry {
    Panel panel;
    bool operator<(const Entry& other) const {
      const double lhs = panel.weighted_bound();
      const double rhs = other.panel.weighted_bound();
      if (lhs != rhs) return lhs < rhs;
      return panel.interval.a() > other.panel.interval.a();  // left panel wins ties
    }
  };

  std::priority_queue<Entry> heap;
  heap.push({{iv, certify(theorem, f, iv, params, q, status)}});
  double total = heap.top().panel.weighted_bound();

  while (total > target && heap.size() < max_panels) {
    const Panel worst = heap.top().panel;
    heap.pop();
    const double mid = 0.5 * (worst.interval.a() + worst.interval.b());
    if (!(worst.interval.a() < mid && mid < worst.interval.b())) {
      heap.push({worst});  // cannot split further in floating point
      break;
    }
    const Interval left(worst.interval.a(), mid);
    const Interval right(mid, worst.interval.b());
    Panel pl{left, certify(theorem, f, left, params, q, status)};
    Panel pr{right, certify(theorem, f, right, params, q, status)};
    total += pl.weighted_bound() + pr.weighted_bound() - worst.weighted_bound();
    heap.push({pl});
    heap.push({pr});
  }

  CompositeResult r;
  r.advisory = status == HypothesisStatus::Probed;
  r.panels.reserve(heap.size());
  while (!heap.empty()) {
    r.panels.push_back(heap.top().panel);
    heap.pop();
  }
  std::sort(r.panels.begin(), r.panels.end(),
            [](const Panel& x, const Panel& y) { return x.interval.a() < y.interval.a(); });
  accumulate(r);
  r.target_met = r.total_bound <= target;
  return r;
}

}  // namespace

CompositeResult composite_integrate(const FunctionModel& f, const Interval& iv,
                                    const RuleParams& params, double q, Theorem theorem,
                                    std::size_t n) {
  return uniform_impl(f, iv, params, q, theorem, n);
}

CompositeResult composite_integrate(const FunctionModel& f, const Interval& iv,
                                    const ExactRuleParams& params, double q, Theorem theorem,
                                    std::size_t n) {
  return uniform_impl(f, iv, params, q, theorem, n);
}

CompositeResult adaptive_integrate(const FunctionModel& f, const Interval& iv,
                                   const RuleParams& params, double q, Theorem theorem,
                                   double target, std::size_t max_panels) {
  return adaptive_impl(f, iv, params, q, theorem, target, max_panels);
}

CompositeResult adaptive_integrate(const FunctionModel& f, const Interval& iv,
                                   const ExactRuleParams& params, double q, Theorem theorem,
                                   double target, std::size_t max_panels) {
  return adaptive_impl(f, iv, params, q, theorem, target, max_panels);
}

}  // namespace certquad
