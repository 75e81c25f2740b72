#pragma once

// Growth of the largest coefficient of T_{s,n}: exact maxima, the maximum of
// |T_{s,n}| on the unit circle, Sudler's constant
//
//     K = log 2 + max_{1/2 < w < 1} (1/w) int_0^w log sin(pi t) dt  ~ 0.19861,
//
// and a least-squares fit of log max_j |t_{j,s,n}| against n.

#include <cstdint>
#include <vector>

#include "qproducts/poly_core.hpp"

namespace qprod {

inline constexpr double kSudlerReference = 0.19861;

/// max_j |t_{j,s,n}| from the exact expansion.
BigInt max_abs_coefficient(const ProductSpec& spec);

/// Natural log of a positive big integer.
double log_of(const BigInt& x);

/// log |T_{s,n}(e^{i theta})| = s sum_j log |2 sin(j theta / 2)|.
double log_abs_on_unit_circle(const ProductSpec& spec, double theta);

struct UnitCircleMax {
  double log_value;
  double value;
  double theta;
};

/// Grid maximum of |T_{s,n}(e^{i theta})| over theta in [0, pi] (the modulus
/// is even in theta) followed by golden-section refinement around the best
/// grid point. Requires samples >= 4 N_{s,n}.
UnitCircleMax unit_circle_max(const ProductSpec& spec, std::int64_t samples);

/// g(w) = log 2 + (1/w) int_0^w log sin(pi t) dt, for 0 < w < 1.
double sudler_objective(double w, double* quadrature_error = nullptr);

struct SudlerConstant {
  double value;
  double argmax_w;
  double quadrature_error;
};

/// Golden-section maximisation of g over [lo, hi] (defaults: 1/2 and 1 with
/// a 1e-6 margin). Throws std::runtime_error if the maximiser lands on the
/// bracket edge or the quadrature error exceeds rel_tol * K.
SudlerConstant sudler_constant(double rel_tol = 1e-6, double lo = 0.5 + 1e-6, double hi = 1.0 - 1e-6);

struct AsymptoticFit {
  int s = 0;
  std::vector<int> n_values;
  std::vector<double> log_max;  // log max_j |t_{j,s,n}|
  double slope = 0.0;
  double intercept = 0.0;
  double residual_bound = 0.0;  // max |log_max - (slope n + intercept)|
  /// max over the grid of |log_max - s K n| / log n with K = kSudlerReference.
  double log_band_constant = 0.0;

  double k_estimate() const { return slope / s; }
};

/// Exact maxima for n = n_min, n_min + step, ..., <= n_max and an ordinary
/// least-squares line through (n, log max). Needs at least three points.
AsymptoticFit asymptotic_fit(int s, int n_min, int n_max, int step);

struct SandwichCheck {
  BigInt max_coefficient;   // M_{n,s}
  double unit_circle_log;   // log of the refined unit-circle maximum
  BigInt abs_sum;           // sum_j |t_j|
  BigInt bound;             // (N_{s,n} + 1) M_{n,s}
  bool holds = false;
};

/// M <= max_{|q|=1} |T| <= sum |t_j| <= (N+1) M, the unit-circle maximum
/// estimated with 8 (N+1) grid samples plus refinement. The floating
/// comparisons allow a relative slack of 1e-12.
SandwichCheck sandwich_inequality_check(const ProductSpec& spec);

}  // namespace qprod
