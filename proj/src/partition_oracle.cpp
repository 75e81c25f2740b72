#include "qproducts/partition_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "qproducts/errors.hpp"

namespace qprod {

namespace {

std::vector<BigInt> binomial_row(int s) {
  std::vector<BigInt> row(static_cast<std::size_t>(s) + 1);
  for (int m = 0; m <= s; ++m) {
    mpz_bin_uiui(row[static_cast<std::size_t>(m)].get_mpz_t(), static_cast<unsigned long>(s),
                 static_cast<unsigned long>(m));
  }
  return row;
}

// counts[parity][sum] for sums 0..limit.
std::array<std::vector<BigInt>, 2> parity_dp(int s, int n, std::int64_t limit) {
  require_within_cap(static_cast<std::uint64_t>(limit) + 1, "parity count table");
  const auto len = static_cast<std::size_t>(limit) + 1;
  const std::vector<BigInt> ways = binomial_row(s);

  std::array<std::vector<BigInt>, 2> cur{std::vector<BigInt>(len), std::vector<BigInt>(len)};
  cur[0][0] = 1;
  for (int part = 1; part <= n; ++part) {
    std::array<std::vector<BigInt>, 2> next{std::vector<BigInt>(len), std::vector<BigInt>(len)};
    for (int parity = 0; parity < 2; ++parity) {
      for (std::size_t x = 0; x < len; ++x) {
        const BigInt& here = cur[static_cast<std::size_t>(parity)][x];
        if (sgn(here) == 0) continue;
        for (int m = 0; m <= s; ++m) {
          const std::size_t target = x + static_cast<std::size_t>(part) * static_cast<std::size_t>(m);
          if (target >= len) break;
          const int p = parity ^ (m & 1);
          mpz_addmul(next[static_cast<std::size_t>(p)][target].get_mpz_t(), here.get_mpz_t(),
                     ways[static_cast<std::size_t>(m)].get_mpz_t());
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

void append_merged(Series& series, const std::map<std::int64_t, std::int64_t>& merged) {
  for (const auto& [e, c] : merged) {
    if (c != 0) series.terms.push_back({e, c});
  }
}

}  // namespace

ParityCounts parity_counts(int s, int n, std::int64_t j) {
  const ProductSpec spec(s, n);
  if (j < 0 || j > spec.degree()) throw DomainError("parity counts need 0 <= j <= N_{s,n}");
  auto dp = parity_dp(s, n, j);
  return {dp[0][static_cast<std::size_t>(j)], dp[1][static_cast<std::size_t>(j)]};
}

std::vector<ParityCounts> parity_count_table(int s, int n) {
  const ProductSpec spec(s, n);
  auto dp = parity_dp(s, n, spec.degree());
  std::vector<ParityCounts> out;
  out.reserve(dp[0].size());
  for (std::size_t j = 0; j < dp[0].size(); ++j) out.push_back({dp[0][j], dp[1][j]});
  return out;
}

IntPolynomial q_binomial(int m, int r) {
  if (m < 0 || r < 0) throw DomainError("q-binomial needs m, r >= 0");
  if (r > m) return IntPolynomial::zero(1);
  // row[c] = [i choose c]_q; [i choose c] = [i-1 choose c-1] + q^c [i-1 choose c].
  std::vector<IntPolynomial> row(static_cast<std::size_t>(r) + 1, IntPolynomial::zero(1));
  row[0] = IntPolynomial::one();
  for (int i = 1; i <= m; ++i) {
    for (int c = std::min(i, r); c >= 1; --c) {
      row[static_cast<std::size_t>(c)] =
          row[static_cast<std::size_t>(c - 1)] + shifted(row[static_cast<std::size_t>(c)], static_cast<std::size_t>(c));
    }
  }
  return row[static_cast<std::size_t>(r)];
}

bool cauchy_identity_check(int n) {
  const ProductSpec spec(1, n);
  const IntPolynomial lhs = expand_restricted_product(spec);
  IntPolynomial rhs = IntPolynomial::zero(static_cast<std::size_t>(spec.degree()) + 1);
  for (int k = 0; k <= n; ++k) {
    IntPolynomial term = shifted(q_binomial(n, k), static_cast<std::size_t>(k) * (k + 1) / 2);
    if (k % 2 != 0) term = IntPolynomial::zero(1) - term;
    rhs = rhs + term;
  }
  return lhs == rhs;
}

std::int64_t Series::coefficient(std::int64_t exponent) const {
  const auto it = std::lower_bound(terms.begin(), terms.end(), exponent,
                                   [](const SeriesTerm& t, std::int64_t e) { return t.exponent < e; });
  return it != terms.end() && it->exponent == exponent ? it->coefficient : 0;
}

Series pentagonal_series(std::int64_t max_exponent) {
  if (max_exponent < 0) throw DomainError("max_exponent must be >= 0");
  std::map<std::int64_t, std::int64_t> merged;
  // k(3k-1)/2 >= (|k| - 1) |k| for every integer k.
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(max_exponent))) + 2;
  for (std::int64_t k = -bound; k <= bound; ++k) {
    const std::int64_t e = k * (3 * k - 1) / 2;
    if (e <= max_exponent) merged[e] += k % 2 == 0 ? 1 : -1;
  }
  Series series{max_exponent, {}};
  append_merged(series, merged);
  return series;
}

Series jacobi_series(std::int64_t max_exponent, JacobiConvention convention) {
  if (max_exponent < 0) throw DomainError("max_exponent must be >= 0");
  std::map<std::int64_t, std::int64_t> merged;
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e = convention == JacobiConvention::standard ? k * (k + 1) / 2 : k * (k - 1) / 2;
    if (e > max_exponent) break;
    merged[e] += (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  }
  Series series{max_exponent, {}};
  append_merged(series, merged);
  return series;
}

Series hecke_rogers_series(std::int64_t max_exponent) {
  if (max_exponent < 0) throw DomainError("max_exponent must be >= 0");
  require_within_cap(static_cast<std::uint64_t>(max_exponent) + 1, "Hecke-Rogers series");
  std::map<std::int64_t, std::int64_t> merged;
  // With |m| <= n/2 the exponent is at least n^2/8.
  const auto n_max = static_cast<std::int64_t>(std::sqrt(8.0 * static_cast<double>(max_exponent))) + 1;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t m = -(n / 2); m <= n / 2; ++m) {
      const std::int64_t twice = n * n - 3 * m * m + n + m;
      const std::int64_t e = twice / 2;
      if (e <= max_exponent) merged[e] += (n + m) % 2 == 0 ? 1 : -1;
    }
  }
  Series series{max_exponent, {}};
  append_merged(series, merged);
  return series;
}

bool stable_prefix_check(int s, int n, const Series& series, std::optional<std::int64_t> up_to) {
  const ProductSpec spec(s, n);
  const std::int64_t limit = up_to.value_or(n);
  if (limit < 0 || limit > n) throw DomainError("prefix limit must lie in [0, n]");
  if (series.max_exponent < limit) throw DomainError("series does not reach the compared prefix");
  const IntPolynomial t = expand_prefix(spec, limit);
  for (std::int64_t e = 0; e <= limit; ++e) {
    if (t.coeff(e) != BigInt(static_cast<long>(series.coefficient(e)))) return false;
  }
  return true;
}

IntPolynomial truncated_tau(int n) { return expand_restricted_product(ProductSpec(24, n)); }

}  // namespace qprod
