#include "certquad/oracle.hpp"
#include "certquad/verify.hpp"

#include "doctest.h"

#include <array>
#include <cmath>

using namespace certquad;

TEST_CASE("reference integrator reproduces closed forms") {
  CHECK(integrate_ref([](double x) { return x * x; }, 0.0, 1.0).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(integrate_ref([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate_ref([](double x) { return 1.0 / x; }, 1.0, 2.0, 1e-13).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // x^20 forces refinement
  const auto r = integrate_ref([](double x) { return std::pow(x, 20); }, 0.0, 2.0, 1e-13);
  CHECK(r.value == doctest::Approx(std::pow(2.0, 21) / 21.0).epsilon(1e-13));
  CHECK(integrate_ref([](double) { return 1.0; }, 3.0, 3.0).value == 0.0);
}

TEST_CASE("breakpoints make kinked integrands exact") {
  const double c = 1.0 / 3.0;
  const std::array<double, 1> cuts{c};
  const auto r = integrate_ref([c](double t) { return std::fabs(t - c); }, 0.0, 1.0, 1e-12, cuts);
  CHECK(r.value == doctest::Approx((c * c + (1 - c) * (1 - c)) / 2).epsilon(1e-15));
  CHECK(r.refinement_depth == 0);
  // without the breakpoint the oracle still converges, by bisection
  const auto s = integrate_ref([c](double t) { return std::fabs(t - c); }, 0.0, 1.0, 1e-12);
  CHECK(s.value == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("reference integrator reports failure instead of guessing") {
  try {
    integrate_ref([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12);
    FAIL("expected OracleFailure");
  } catch (const OracleFailure& e) {
    CHECK(e.best_estimate().value > 10.0);
  }
  CHECK_THROWS_AS(integrate_ref([](double x) { return x; }, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_ref([](double x) { return x; }, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("integral means and Hermite-Hadamard") {
  const auto sq = *lookup_builtin("pow:2");
  CHECK(mean_ref(sq, Interval(0, 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto nl = *lookup_builtin("neglog");
  // mean of -ln over [1, e] is -1/(e-1)
  CHECK(mean_ref(nl, Interval(1, std::exp(1.0))) ==
        doctest::Approx(-1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
  for (const char* name : {"pow:2", "pow:4", "pow:-2", "reciprocal", "neglog", "exp", "expneg"}) {
    const auto f = *lookup_builtin(name);
    for (const auto& iv : interval_battery(f)) CHECK(hh_check(f, iv));
  }
  // x^3 is concave left of 0; Hermite-Hadamard's left half fails there
  CHECK_FALSE(hh_check(*lookup_builtin("pow:3"), Interval(-2.0, -0.5)));
}

TEST_CASE("central differences") {
  CHECK(central_difference([](double x) { return x * x * x; }, 2.0) ==
        doctest::Approx(12.0).epsilon(1e-9));
  CHECK(central_difference([](double x) { return std::exp(x); }, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
}
