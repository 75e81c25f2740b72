#include "qproducts/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qproducts/errors.hpp"

namespace qprod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHeadSplit = 1e-3;
constexpr double kGolden = 0.6180339887498949;  // (sqrt 5 - 1) / 2

template <class F>
std::pair<double, double> golden_section_max(F f, double lo, double hi, double width) {
  double a = lo;
  double b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return f1 < f2 ? std::pair{x2, f2} : std::pair{x1, f1};
}

// log(sin x / x), smooth at 0.
double log_sinc(double x) {
  if (x < 1e-4) return -x * x / 6.0 - x * x * x * x / 180.0;
  return std::log(std::sin(x) / x);
}

}  // namespace

BigInt max_abs_coefficient(const ProductSpec& spec) {
  const IntPolynomial t = expand_restricted_product(spec);
  BigInt best = 0;
  for (const auto& c : t.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(c);
  }
  return best;
}

double log_of(const BigInt& x) {
  if (sgn(x) <= 0) throw DomainError("log_of needs a positive integer");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

double log_abs_on_unit_circle(const ProductSpec& spec, double theta) {
  double total = 0.0;
  for (int j = 1; j <= spec.n(); ++j) {
    total += std::log(std::abs(2.0 * std::sin(0.5 * j * theta)));
  }
  return spec.s() * total;
}

UnitCircleMax unit_circle_max(const ProductSpec& spec, std::int64_t samples) {
  if (samples < 4 * spec.degree() || samples < 4) {
    throw DomainError("unit-circle search needs at least 4 N_{s,n} samples");
  }
  const double h = kPi / static_cast<double>(samples);
  double best_theta = kPi;
  double best = log_abs_on_unit_circle(spec, kPi);
  for (std::int64_t i = 1; i < samples; ++i) {
    const double theta = h * static_cast<double>(i);
    const double v = log_abs_on_unit_circle(spec, theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  const double lo = std::max(best_theta - h, 0.0);
  const double hi = std::min(best_theta + h, kPi);
  const auto [theta, refined] =
      golden_section_max([&](double x) { return log_abs_on_unit_circle(spec, x); }, lo, hi, h * 1e-9);
  if (refined > best) {
    best = refined;
    best_theta = theta;
  }
  return {best, std::exp(best), best_theta};
}

double sudler_objective(double w, double* quadrature_error) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("w must lie in (0, 1)");
  using boost::math::quadrature::gauss_kronrod;

  // Head: int_0^e log(pi t) dt in closed form plus the smooth remainder.
  const double e = std::min(w, kHeadSplit);
  double head_err = 0.0;
  double head = e * (std::log(kPi * e) - 1.0);
  head += gauss_kronrod<double, 15>::integrate([](double t) { return log_sinc(kPi * t); }, 0.0, e, 10, 1e-12,
                                               &head_err);

  double body = 0.0;
  double body_err = 0.0;
  if (w > e) {
    body = gauss_kronrod<double, 31>::integrate([](double t) { return std::log(std::sin(kPi * t)); }, e, w,
                                                15, 1e-12, &body_err);
  }
  if (quadrature_error != nullptr) *quadrature_error = (head_err + body_err) / w;
  return std::numbers::ln2 + (head + body) / w;
}

SudlerConstant sudler_constant(double rel_tol, double lo, double hi) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("rel_tol must lie in (0, 1e-3]");
  if (!(0.5 <= lo && lo < hi && hi < 1.0)) throw DomainError("bracket must satisfy 1/2 <= lo < hi < 1");

  const double w = golden_section_max([](double x) { return sudler_objective(x); }, lo, hi, 1e-10).first;
  double err = 0.0;
  const double at_max = sudler_objective(w, &err);
  if (w - lo < 1e-7 || hi - w < 1e-7) {
    throw std::runtime_error("Sudler maximiser reached the bracket edge at w = " + std::to_string(w));
  }
  if (err > rel_tol * std::abs(at_max)) {
    throw std::runtime_error("Sudler quadrature error " + std::to_string(err) + " exceeds tolerance");
  }
  return {at_max, w, err};
}

AsymptoticFit asymptotic_fit(int s, int n_min, int n_max, int step) {
  if (s < 1 || n_min < 1 || step < 1 || n_max < n_min) throw DomainError("invalid fit grid");
  AsymptoticFit fit;
  fit.s = s;
  for (int n = n_min; n <= n_max; n += step) fit.n_values.push_back(n);
  if (fit.n_values.size() < 3) throw DomainError("an asymptotic fit needs at least three grid points");

  for (int n : fit.n_values) fit.log_max.push_back(log_of(max_abs_coefficient(ProductSpec(s, n))));

  const auto count = static_cast<double>(fit.n_values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
    const double x = fit.n_values[i];
    const double y = fit.log_max[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / count;
  for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
    const double x = fit.n_values[i];
    fit.residual_bound = std::max(fit.residual_bound, std::abs(fit.log_max[i] - (fit.slope * x + fit.intercept)));
    if (x > 1) {
      fit.log_band_constant = std::max(
          fit.log_band_constant, std::abs(fit.log_max[i] - s * kSudlerReference * x) / std::log(x));
    }
  }
  return fit;
}

SandwichCheck sandwich_inequality_check(const ProductSpec& spec) {
  const IntPolynomial t = expand_restricted_product(spec);
  SandwichCheck check;
  check.max_coefficient = 0;
  check.abs_sum = 0;
  for (const auto& c : t.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), check.max_coefficient.get_mpz_t()) > 0) check.max_coefficient = abs(c);
    check.abs_sum += abs(c);
  }
  check.bound = check.max_coefficient * BigInt(static_cast<long>(spec.degree() + 1));
  check.unit_circle_log = unit_circle_max(spec, 8 * (spec.degree() + 1)).log_value;

  const double slack = 1e-12 * std::max(1.0, std::abs(check.unit_circle_log));
  const bool lower = log_of(check.max_coefficient) <= check.unit_circle_log + slack;
  const bool middle = check.unit_circle_log <= log_of(check.abs_sum) + slack;
  const bool upper = check.abs_sum <= check.bound;
  check.holds = lower && middle && upper;
  return check;
}

}  // namespace qprod
