#pragma once

// Distinct-coordinate character sums over D_n = {1, ..., n} and the
// cycle-type machinery that evaluates them.
//
// For a character psi of Z_N, F_psi(n, k) is the sum over ordered k-tuples of
// distinct elements of D_n of psi(x_1) ... psi(x_k). It can be computed by
// brute force, as a signed sum over cycle types of S_k, through the cycle
// index polynomial Z_k, or as a coefficient of a degree-n product in u. All
// routes are double precision; desk-scale inputs keep them within 1e-9.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qprod {

using Cplx = std::complex<double>;

/// psi(m) = exp(2 pi i m r / N); r = 0 is the trivial character.
class CharacterIndex {
 public:
  CharacterIndex(std::int64_t r, std::int64_t modulus);

  std::int64_t r() const noexcept { return r_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  bool trivial() const noexcept { return r_ == 0; }
  /// N / gcd(r, N)
  std::int64_t order() const noexcept;
  Cplx operator()(std::int64_t m) const;
  /// psi^e, again a character of Z_N.
  CharacterIndex pow(std::int64_t e) const;

 private:
  std::int64_t r_;
  std::int64_t modulus_;
};

/// Cycle type (1^{c_1}, 2^{c_2}, ..., k^{c_k}) of a permutation in S_k.
struct CycleType {
  int k = 0;
  std::vector<int> counts;  // counts[i-1] = c_i

  int cycles() const;
  /// k! / prod_i (i^{c_i} c_i!)
  std::uint64_t permutation_count() const;
  /// (-1)^{k - number of cycles}
  int sign() const;
};

inline constexpr int kMaxCycleTypeOrder = 20;  // 20! still fits in 64 bits

/// All cycle types of S_k, ordered by ascending lexicographic order of the
/// non-increasing part sequence: (1,1,...,1) first, (k) last.
std::vector<CycleType> enumerate_cycle_types(int k);

/// Z_k(t_1..t_k) with k = t.size(), via
///   Z_k = sum_{i=1..k} (k-1)!/(k-i)! t_i Z_{k-i}.
Cplx z_polynomial(std::span<const Cplx> t);

/// Compares Z_k(t)/k! with the coefficients of exp(sum_{i<=k_max} t_i u^i / i),
/// the latter from a truncated power-series exponential, for k <= k_max.
bool egf_consistency_check(int k_max, std::span<const Cplx> t, double tol = 1e-9);

/// s_{D_n}(psi^i) for i = 1..k.
std::vector<Cplx> character_power_sums(int n, int k, const CharacterIndex& psi);

inline constexpr int kBruteForceMaxN = 8;
inline constexpr int kBruteForceMaxK = 6;

/// Direct enumeration of ordered distinct k-tuples (n <= 8, k <= 6).
Cplx f_psi_distinct_bruteforce(int n, int k, const CharacterIndex& psi);

/// (-1)^k k! [u^k] prod_{a in D_n} (1 - psi(a) u).
Cplx f_psi_sieve(int n, int k, const CharacterIndex& psi);

/// (-1)^k k! [u^k] prod_{a in D_n} (u - psi(-a)), the product written with
/// reversed roots. It differs from f_psi_sieve by the unit factor
/// (-1)^n psi(-n(n+1)/2); kept so that difference can be checked.
Cplx f_psi_sieve_reversed(int n, int k, const CharacterIndex& psi);

/// (-1)^k Z_k(-s(psi), -s(psi^2), ..., -s(psi^k)).
Cplx f_psi_cycle_index(int n, int k, const CharacterIndex& psi);

/// sum over cycle types of sign * N(c) * prod_i s(psi^i)^{c_i}.
Cplx f_psi_cycle_sum(int n, int k, const CharacterIndex& psi);

/// f_psi_cycle_sum agrees with f_psi_distinct_bruteforce within tol.
bool prop_lws_check(int n, int k, const CharacterIndex& psi, double tol = 1e-9);

/// n (n-1) ... (n-k+1): the number of ordered distinct k-tuples from D_n.
std::uint64_t ordered_tuple_count(int n, int k);

struct RestrictedCountCheck {
  std::uint64_t lhs = 0;  // k_1! ... k_s! * (direct count)
  Cplx rhs;               // character-sum side
  bool holds = false;
};

inline constexpr int kRestrictedCountMaxN = 6;
inline constexpr int kRestrictedCountMaxS = 2;

/// k_1!...k_s! M(k_1..k_s, j) against
///   (1/N) prod (n)_{k_i} + (1/N) sum_{psi != psi_0} psi^{-1}(j) prod F_psi(n, k_i),
/// where M counts s-tuples of subsets V_i of D_n with |V_i| = k_i and total
/// element sum = j (mod N). F_psi comes from f_psi_sieve.
RestrictedCountCheck restricted_count_identity_check(int s, int n, std::int64_t modulus,
                                                     std::int64_t j, std::span<const int> k_tuple);

}  // namespace qprod
