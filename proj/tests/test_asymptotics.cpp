#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qproducts/asymptotics.hpp"
#include "qproducts/errors.hpp"
#include "test_support.hpp"

using namespace qprod;

namespace {

oracle::i128 naive_max(int s, int n) {
  oracle::i128 best = 0;
  for (auto c : oracle::naive_expand(s, n)) best = std::max(best, c < 0 ? -c : c);
  return best;
}

}  // namespace

TEST_CASE("maximum coefficient") {
  CHECK(max_abs_coefficient(ProductSpec(1, 3)) == 1);
  CHECK(max_abs_coefficient(ProductSpec(2, 1)) == 2);
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 20; ++n) CHECK(max_abs_coefficient(ProductSpec(s, n)) == big(naive_max(s, n)));
  }
}

TEST_CASE("maximum is non-decreasing in s on the grid") {
  for (int n = 1; n <= 20; ++n) {
    for (int s = 1; s < 5; ++s) CHECK(max_abs_coefficient(ProductSpec(s, n)) <= max_abs_coefficient(ProductSpec(s + 1, n)));
  }
}

TEST_CASE("log of big integers") {
  CHECK(log_of(BigInt(1)) == doctest::Approx(0.0));
  CHECK(log_of(BigInt(1000)) == doctest::Approx(std::log(1000.0)));
  BigInt huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 7, 5000);
  CHECK(log_of(huge) == doctest::Approx(5000 * std::log(7.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_of(BigInt(0)), DomainError);
}

TEST_CASE("unit circle maximum") {
  auto m = unit_circle_max(ProductSpec(1, 1), 16);
  CHECK(m.value == doctest::Approx(2.0));
  CHECK(m.theta == doctest::Approx(std::numbers::pi));
  m = unit_circle_max(ProductSpec(2, 1), 16);
  CHECK(m.value == doctest::Approx(4.0));
  const auto spec = ProductSpec(1, 5);
  m = unit_circle_max(spec, 4 * spec.degree());
  CHECK(std::exp(m.log_value) >= 1.0 * max_abs_coefficient(spec).get_d());
  CHECK_THROWS_AS(unit_circle_max(spec, 10), DomainError);
}

TEST_CASE("sandwich inequality") {
  for (auto [s, n] : {std::pair{1, 5}, std::pair{1, 1}, std::pair{2, 4}, std::pair{3, 9}, std::pair{1, 30}}) {
    const auto c = sandwich_inequality_check(ProductSpec(s, n));
    CHECK(c.holds);
    CHECK(c.abs_sum <= c.bound);
  }
  const auto c11 = sandwich_inequality_check(ProductSpec(1, 1));
  CHECK(c11.max_coefficient == 1);
  CHECK(c11.abs_sum == 2);
  CHECK(c11.bound == 2);
  CHECK(std::exp(c11.unit_circle_log) == doctest::Approx(2.0));
}

TEST_CASE("Sudler objective and constant") {
  const auto k = sudler_constant();
  CHECK(std::abs(k.value - kSudlerReference) <= 5e-5);
  CHECK(k.argmax_w > 0.5);
  CHECK(k.argmax_w < 1.0);
  CHECK(sudler_objective(0.55) < k.value);
  CHECK(sudler_objective(0.95) < k.value);
  // Closed form at w = 1: (1/1) int_0^1 log sin(pi t) dt = -log 2, so g(1-) -> 0.
  CHECK(std::abs(sudler_objective(1.0 - 1e-9)) < 1e-6);
  // At w = 1/2 the integral is -(log 2)/2.
  CHECK(sudler_objective(0.5) == doctest::Approx(0.0).epsilon(1e-10));

  const auto other = sudler_constant(1e-6, 0.6, 0.9);
  CHECK(std::abs(other.value - k.value) <= 2e-6 * k.value);
  CHECK_THROWS_AS(sudler_constant(1e-6, 0.5 + 1e-6, 0.7), std::runtime_error);
  CHECK_THROWS_AS(sudler_constant(0.5), DomainError);
}

TEST_CASE("quadrature refinement") {
  double err = 0.0;
  const double g = sudler_objective(0.79, &err);
  CHECK(err < 1e-9);
  // Midpoint rule on the smooth part log(sin(pi t) / (pi t)) plus the exact
  // integral of log(pi t).
  const int steps = 200000;
  const double w = 0.79;
  const double pi = std::numbers::pi;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = pi * (i + 0.5) * w / steps;
    integral += std::log(std::sin(x) / x);
  }
  integral = integral * w / steps + w * (std::log(pi * w) - 1.0);
  CHECK(std::log(2.0) + integral / w == doctest::Approx(g).epsilon(1e-9));
}

TEST_CASE("fit needs three points") {
  CHECK_THROWS_AS(asymptotic_fit(1, 100, 100, 25), DomainError);
  const auto fit = asymptotic_fit(1, 20, 60, 10);
  CHECK(fit.n_values.size() == 5);
  CHECK(fit.slope > 0.1);
  CHECK(fit.slope < 0.3);
  CHECK(fit.k_estimate() == fit.slope);
  for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
    CHECK(fit.log_max[i] == doctest::Approx(log_of(max_abs_coefficient(ProductSpec(1, fit.n_values[i])))));
  }
}
