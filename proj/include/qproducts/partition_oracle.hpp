#pragma once

// Combinatorial ground truth for T_{s,n}: signed counts of subset tuples,
// Gaussian binomials, and the classical series for the infinite products
// with s = 1, 2, 3 and 24.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qproducts/poly_core.hpp"

namespace qprod {

/// Number of s-tuples (V_1, ..., V_s) of subsets of D_n whose elements sum to
/// j in total, split by the parity of |V_1| + ... + |V_s|.
struct ParityCounts {
  BigInt even;
  BigInt odd;
  BigInt difference() const { return even - odd; }
};

/// Dynamic programme over parts 1..n; a part used m times can be placed in
/// the s subsets in C(s, m) ways, which is what makes even - odd = t_{j,s,n}.
ParityCounts parity_counts(int s, int n, std::int64_t j);
/// parity_counts for every j in 0..N_{s,n}.
std::vector<ParityCounts> parity_count_table(int s, int n);

/// Gaussian binomial [m choose r]_q (zero polynomial when r > m).
IntPolynomial q_binomial(int m, int r);

/// prod_{j<=n} (1 - q^j) == sum_k [n choose k]_q (-1)^k q^{k(k+1)/2}.
bool cauchy_identity_check(int n);

struct SeriesTerm {
  std::int64_t exponent;
  std::int64_t coefficient;
  friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

/// A series truncated at max_exponent, terms merged by exponent in
/// increasing order; zero coefficients are dropped.
struct Series {
  std::int64_t max_exponent = 0;
  std::vector<SeriesTerm> terms;

  std::int64_t coefficient(std::int64_t exponent) const;
};

/// sum over k in Z of (-1)^k q^{k(3k-1)/2}.
Series pentagonal_series(std::int64_t max_exponent);

enum class JacobiConvention {
  as_printed,  // exponent k(k-1)/2
  standard,    // exponent k(k+1)/2
};

/// sum over k >= 0 of (-1)^k (2k+1) q^{e(k)}.
Series jacobi_series(std::int64_t max_exponent, JacobiConvention convention);

/// sum over n >= 0, -n/2 <= m <= n/2 of (-1)^{n+m} q^{(n^2-3m^2)/2 + (n+m)/2}.
Series hecke_rogers_series(std::int64_t max_exponent);

/// T_{s,n} and the series agree for every exponent <= up_to (default n). The
/// series must reach up_to.
bool stable_prefix_check(int s, int n, const Series& series, std::optional<std::int64_t> up_to = {});

/// prod_{k<=n} (1 - q^k)^24, whose first n+1 coefficients are tau(1..n+1).
IntPolynomial truncated_tau(int n);

}  // namespace qprod
