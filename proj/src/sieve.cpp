#include "qproducts/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qproducts/errors.hpp"

namespace qprod {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require_k(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("n and k must be non-negative");
}

// Coefficients in u of prod_{a=1..n} (lin(a) u + cst(a)).
template <class Factor>
std::vector<Cplx> expand_linear_product(int n, Factor factor) {
  std::vector<Cplx> c(static_cast<std::size_t>(n) + 1, Cplx{0.0, 0.0});
  c[0] = 1.0;
  for (int a = 1; a <= n; ++a) {
    const auto [lin, cst] = factor(a);
    for (int i = a; i >= 1; --i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * cst + c[static_cast<std::size_t>(i - 1)] * lin;
    c[0] *= cst;
  }
  return c;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

// --- characters --------------------------------------------------------------

CharacterIndex::CharacterIndex(std::int64_t r, std::int64_t modulus) : r_(r), modulus_(modulus) {
  if (modulus < 1) throw DomainError("character modulus must be >= 1");
  if (r < 0 || r >= modulus) throw DomainError("character index must satisfy 0 <= r < N");
}

std::int64_t CharacterIndex::order() const noexcept { return modulus_ / std::gcd(r_, modulus_); }

Cplx CharacterIndex::operator()(std::int64_t m) const {
  const std::int64_t k = mod_floor(mod_floor(m, modulus_) * r_, modulus_);
  if (k == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(modulus_));
}

CharacterIndex CharacterIndex::pow(std::int64_t e) const {
  return CharacterIndex(mod_floor(mod_floor(e, modulus_) * r_, modulus_), modulus_);
}

// --- cycle types -------------------------------------------------------------

int CycleType::cycles() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::uint64_t CycleType::permutation_count() const {
  unsigned __int128 denom = 1;
  for (std::size_t idx = 0; idx < counts.size(); ++idx) {
    const auto i = static_cast<unsigned __int128>(idx + 1);
    for (int c = 1; c <= counts[idx]; ++c) denom *= i * static_cast<unsigned __int128>(c);
  }
  unsigned __int128 num = 1;
  for (int i = 2; i <= k; ++i) num *= static_cast<unsigned __int128>(i);
  return static_cast<std::uint64_t>(num / denom);
}

int CycleType::sign() const { return (k - cycles()) % 2 == 0 ? 1 : -1; }

namespace {

void partitions_ascending(int remaining, int max_part, std::vector<int>& prefix,
                          std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int p = 1; p <= std::min(remaining, max_part); ++p) {
    prefix.push_back(p);
    partitions_ascending(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<CycleType> enumerate_cycle_types(int k) {
  if (k < 1) throw DomainError("cycle types need k >= 1");
  if (k > kMaxCycleTypeOrder) {
    throw ResourceLimitError("cycle types limited to k <= " + std::to_string(kMaxCycleTypeOrder));
  }
  std::vector<std::vector<int>> parts;
  std::vector<int> prefix;
  partitions_ascending(k, k, prefix, parts);

  std::vector<CycleType> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    CycleType type{k, std::vector<int>(static_cast<std::size_t>(k), 0)};
    for (int part : p) ++type.counts[static_cast<std::size_t>(part - 1)];
    out.push_back(std::move(type));
  }
  return out;
}

Cplx z_polynomial(std::span<const Cplx> t) {
  const auto k = static_cast<int>(t.size());
  std::vector<Cplx> z(static_cast<std::size_t>(k) + 1);
  z[0] = 1.0;
  for (int m = 1; m <= k; ++m) {
    Cplx acc{0.0, 0.0};
    double ratio = 1.0;  // (m-1)!/(m-i)!
    for (int i = 1; i <= m; ++i) {
      if (i > 1) ratio *= static_cast<double>(m - i + 1);
      acc += ratio * t[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(m - i)];
    }
    z[static_cast<std::size_t>(m)] = acc;
  }
  return z[static_cast<std::size_t>(k)];
}

bool egf_consistency_check(int k_max, std::span<const Cplx> t, double tol) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  if (static_cast<int>(t.size()) < k_max) throw DomainError("need at least k_max values of t");
  if (k_max > kMaxCycleTypeOrder) throw ResourceLimitError("k_max too large");

  const auto len = static_cast<std::size_t>(k_max) + 1;
  // A(u) = sum t_i u^i / i, no constant term.
  std::vector<Cplx> a(len, 0.0);
  for (int i = 1; i <= k_max; ++i) a[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)] / static_cast<double>(i);

  // exp(A) = sum_m A^m / m!, truncated at degree k_max.
  std::vector<Cplx> series(len, 0.0);
  std::vector<Cplx> term(len, 0.0);
  term[0] = 1.0;
  for (int m = 0; m <= k_max; ++m) {
    for (std::size_t i = 0; i < len; ++i) series[i] += term[i];
    std::vector<Cplx> next(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      if (term[i] == Cplx{0.0, 0.0}) continue;
      for (std::size_t j = 1; i + j < len; ++j) next[i + j] += term[i] * a[j];
    }
    for (auto& c : next) c /= static_cast<double>(m + 1);
    term = std::move(next);
  }

  for (int k = 1; k <= k_max; ++k) {
    const Cplx z = z_polynomial(t.first(static_cast<std::size_t>(k)));
    const Cplx from_series = series[static_cast<std::size_t>(k)] * factorial(k);
    if (std::abs(z - from_series) > tol * std::max(1.0, std::abs(z))) return false;
  }
  return true;
}

// --- distinct-tuple sums -----------------------------------------------------

std::vector<Cplx> character_power_sums(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  std::vector<Cplx> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const CharacterIndex chi = psi.pow(i);
    Cplx s{0.0, 0.0};
    for (int a = 1; a <= n; ++a) s += chi(a);
    out.push_back(s);
  }
  return out;
}

namespace {

void distinct_tuples(int n, int depth, int k, unsigned used, Cplx prod, const std::vector<Cplx>& values,
                     Cplx& total) {
  if (depth == k) {
    total += prod;
    return;
  }
  for (int a = 1; a <= n; ++a) {
    const unsigned bit = 1u << a;
    if (used & bit) continue;
    distinct_tuples(n, depth + 1, k, used | bit, prod * values[static_cast<std::size_t>(a)], values, total);
  }
}

}  // namespace

Cplx f_psi_distinct_bruteforce(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  if (n > kBruteForceMaxN || k > kBruteForceMaxK) {
    throw ResourceLimitError("distinct-tuple enumeration limited to n <= 8, k <= 6");
  }
  if (k > n) return {0.0, 0.0};
  std::vector<Cplx> values(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) values[static_cast<std::size_t>(a)] = psi(a);
  Cplx total{0.0, 0.0};
  distinct_tuples(n, 0, k, 0u, Cplx{1.0, 0.0}, values, total);
  return total;
}

Cplx f_psi_sieve(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  if (k > n) return {0.0, 0.0};
  const auto c = expand_linear_product(n, [&](int a) { return std::pair{-psi(a), Cplx{1.0, 0.0}}; });
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * factorial(k) * c[static_cast<std::size_t>(k)];
}

Cplx f_psi_sieve_reversed(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  if (k > n) return {0.0, 0.0};
  const auto c = expand_linear_product(n, [&](int a) { return std::pair{Cplx{1.0, 0.0}, -psi(-a)}; });
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * factorial(k) * c[static_cast<std::size_t>(k)];
}

Cplx f_psi_cycle_index(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  if (k == 0) return {1.0, 0.0};
  std::vector<Cplx> t = character_power_sums(n, k, psi);
  for (auto& v : t) v = -v;
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * z_polynomial(t);
}

Cplx f_psi_cycle_sum(int n, int k, const CharacterIndex& psi) {
  require_k(n, k);
  if (k == 0) return {1.0, 0.0};
  const std::vector<Cplx> sums = character_power_sums(n, k, psi);
  Cplx total{0.0, 0.0};
  for (const CycleType& type : enumerate_cycle_types(k)) {
    Cplx term = static_cast<double>(type.sign()) * static_cast<double>(type.permutation_count());
    for (int i = 1; i <= k; ++i) {
      for (int c = 0; c < type.counts[static_cast<std::size_t>(i - 1)]; ++c) {
        term *= sums[static_cast<std::size_t>(i - 1)];
      }
    }
    total += term;
  }
  return total;
}

bool prop_lws_check(int n, int k, const CharacterIndex& psi, double tol) {
  return std::abs(f_psi_cycle_sum(n, k, psi) - f_psi_distinct_bruteforce(n, k, psi)) <= tol;
}

std::uint64_t ordered_tuple_count(int n, int k) {
  require_k(n, k);
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c *= static_cast<std::uint64_t>(n - i);
  return c;
}

RestrictedCountCheck restricted_count_identity_check(int s, int n, std::int64_t modulus, std::int64_t j,
                                                     std::span<const int> k_tuple) {
  if (s < 1 || n < 1) throw DomainError("s and n must be positive");
  if (n > kRestrictedCountMaxN || s > kRestrictedCountMaxS) {
    throw ResourceLimitError("subset-tuple enumeration limited to n <= 6, s <= 2");
  }
  if (static_cast<int>(k_tuple.size()) != s) throw DomainError("k_tuple must have s entries");
  if (modulus < 1 || j < 0 || j >= modulus) throw DomainError("need N >= 1 and 0 <= j < N");
  for (int k : k_tuple) {
    if (k < 0 || k > n) throw DomainError("each k_i must satisfy 0 <= k_i <= n");
  }

  // Element sums of every subset of D_n with the requested size.
  std::vector<std::vector<std::int64_t>> sums(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != k_tuple[static_cast<std::size_t>(i)]) continue;
      std::int64_t total = 0;
      for (int a = 1; a <= n; ++a) {
        if (mask & (1u << (a - 1))) total += a;
      }
      sums[static_cast<std::size_t>(i)].push_back(total);
    }
  }
  std::uint64_t count = 0;
  if (s == 1) {
    for (auto x : sums[0]) count += mod_floor(x - j, modulus) == 0 ? 1 : 0;
  } else {
    for (auto x : sums[0]) {
      for (auto y : sums[1]) count += mod_floor(x + y - j, modulus) == 0 ? 1 : 0;
    }
  }

  RestrictedCountCheck check;
  std::uint64_t weight = 1;
  for (int k : k_tuple) weight *= ordered_tuple_count(k, k);
  check.lhs = weight * count;

  double principal = 1.0;
  for (int k : k_tuple) principal *= static_cast<double>(ordered_tuple_count(n, k));
  Cplx total = principal;
  for (std::int64_t r = 1; r < modulus; ++r) {
    const CharacterIndex psi(r, modulus);
    Cplx term = std::conj(psi(j));
    for (int k : k_tuple) term *= f_psi_sieve(n, k, psi);
    total += term;
  }
  check.rhs = total / static_cast<double>(modulus);
  check.holds = std::abs(check.rhs - static_cast<double>(check.lhs)) < 1e-6;
  return check;
}

}  // namespace qprod
