#include "certquad/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace certquad {

namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxDepth = 48;
constexpr std::size_t kMaxSegments = 200000;

struct Segment {
  double lo, hi;
  double value;
  double error;
  int depth;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const Integrand& g, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = g(center - dx) + g(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half), depth};
}

}  // namespace

OracleResult integrate_ref(const Integrand& g, double lo, double hi, double tol,
                           std::span<const double> breakpoints) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate_ref needs a finite interval with lo <= hi");
  if (!(tol > 0.0)) throw DomainError("integrate_ref needs a positive tolerance");
  if (lo == hi) return {};

  std::vector<double> cuts{lo};
  for (double c : breakpoints)
    if (c > lo && c < hi) cuts.push_back(c);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    heap.push(gauss_kronrod(g, cuts[i], cuts[i + 1], 0));

  auto totals = [&heap] {
    auto copy = heap;
    double value = 0.0, error = 0.0;
    int depth = 0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      depth = std::max(depth, copy.top().depth);
      copy.pop();
    }
    return OracleResult{value, error, depth};
  };

  const OracleResult initial = totals();
  double value = initial.value;
  double error = initial.abs_error_estimate;
  int max_depth = 0;
  while (error > tol * std::max(1.0, std::fabs(value))) {
    const Segment worst = heap.top();
    if (worst.depth >= kMaxDepth || heap.size() >= kMaxSegments)
      throw OracleFailure("reference integrator exceeded its refinement cap", totals());
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(g, worst.lo, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(g, mid, worst.hi, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    max_depth = std::max(max_depth, worst.depth + 1);
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  OracleResult out = totals();
  out.refinement_depth = max_depth;
  return out;
}

OracleResult integrate_ref(const Integrand& g, const Interval& iv, double tol,
                           std::span<const double> breakpoints) {
  return integrate_ref(g, iv.a(), iv.b(), tol, breakpoints);
}

double mean_ref(const FunctionModel& f, const Interval& iv, double tol) {
  const auto r = integrate_ref([&f](double x) { return f.value(x); }, iv, tol);
  return r.value / iv.width();
}

bool hh_check(const FunctionModel& f, const Interval& iv, double tol) {
  const double mean = mean_ref(f, iv, tol);
  const double mid = f.value(0.5 * (iv.a() + iv.b()));
  const double ends = 0.5 * (f.value(iv.a()) + f.value(iv.b()));
  constexpr double slack = 1e-12;
  return mid <= mean + slack && mean <= ends + slack;
}

double central_difference(const Integrand& g, double x, double h) {
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

}  // namespace certquad
