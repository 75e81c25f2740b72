#pragma once

// Exact integer polynomials and the restricted q-product
//
//     T_{s,n}(q) = prod_{j=1..n} (1 - q^j)^s  =  sum_i t_{i,s,n} q^i,
//
// together with the reduction modulo x^N - 1 that yields exact sums of
// coefficients over an arithmetic progression. Everything here is exact
// integer arithmetic; this module is the ground truth the formula modules
// are checked against.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace qprod {

using BigInt = mpz_class;

/// The pair (s, n) describing T_{s,n}. Both must be positive.
class ProductSpec {
 public:
  ProductSpec(int s, int n);

  int s() const noexcept { return s_; }
  int n() const noexcept { return n_; }

  /// N_{s,n} = s n (n+1) / 2, the degree of T_{s,n}.
  std::int64_t degree() const noexcept;

  /// True when the top coefficient (-1)^{sn} is negative.
  bool odd_sign() const noexcept { return (static_cast<std::int64_t>(s_) * n_) % 2 != 0; }

  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;

 private:
  int s_;
  int n_;
};

/// The arithmetic progression S_{N,j} = { N m + j }, 0 <= j < N.
class ProgressionQuery {
 public:
  ProgressionQuery(std::int64_t modulus, std::int64_t residue);

  std::int64_t modulus() const noexcept { return modulus_; }
  std::int64_t residue() const noexcept { return residue_; }

 private:
  std::int64_t modulus_;
  std::int64_t residue_;
};

/// Dense polynomial with arbitrary-precision integer coefficients; index i
/// holds the coefficient of q^i. Trailing zeros are allowed and ignored by
/// degree() and equality.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {}
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial zero(std::size_t length) { return IntPolynomial(std::vector<BigInt>(length)); }
  static IntPolynomial one() { return IntPolynomial({1}); }

  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Index of the last nonzero coefficient, or -1 for the zero polynomial.
  std::int64_t degree() const noexcept;
  bool is_zero() const noexcept { return degree() < 0; }

  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  BigInt& operator[](std::size_t i) { return coeffs_[i]; }
  /// Coefficient of q^i, zero outside the stored range.
  BigInt coeff(std::int64_t i) const;

  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }
  std::vector<BigInt>& data() noexcept { return coeffs_; }

  /// Sum of all coefficients, i.e. the value at q = 1.
  BigInt sum() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b);

 private:
  std::vector<BigInt> coeffs_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);

/// Schoolbook product; zero coefficients of either side are skipped.
IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b);
/// q^shift * p
IntPolynomial shifted(const IntPolynomial& p, std::size_t shift);
/// p^e by repeated squaring over multiply().
IntPolynomial power(const IntPolynomial& p, unsigned e);
/// (1 - q^j)^s by repeated squaring of the binomial.
IntPolynomial binomial_power(int j, int s);

// --- resource cap -----------------------------------------------------------

/// Maximum number of coefficients any single expansion may allocate.
/// Defaults to 10^7; the QPROD_COEFF_CAP environment variable overrides the
/// default, and set_coefficient_cap() overrides both.
std::size_t coefficient_cap();
void set_coefficient_cap(std::size_t cap);
/// Throws ResourceLimitError when `count` exceeds coefficient_cap().
void require_within_cap(std::uint64_t count, const char* what);

// --- restricted product -----------------------------------------------------

enum class ExpansionMethod {
  /// Multiply (1-q^j)^s for j = 1..n into an accumulator with multiply().
  schoolbook,
  /// Apply c[i] -= c[i-j] in place, s times per j.
  incremental,
  /// Expand T_{1,n}, then raise to the s-th power with the linear
  /// recurrence P f' = s P' f (one exact division per coefficient).
  power_recurrence,
  /// Picks incremental or power_recurrence by estimated cost.
  automatic,
};

/// Exact coefficients t_{0..N_{s,n}} of T_{s,n}.
IntPolynomial expand_restricted_product(const ProductSpec& spec,
                                        ExpansionMethod method = ExpansionMethod::automatic);

/// Coefficients t_0 .. t_{min(max_index, N_{s,n})}; cheaper than a full
/// expansion when only a prefix is needed.
IntPolynomial expand_prefix(const ProductSpec& spec, std::int64_t max_index,
                            ExpansionMethod method = ExpansionMethod::automatic);

/// r[j] = sum of p[i] over i = j (mod N), for j = 0..N-1.
IntPolynomial cyclic_reduce(const IntPolynomial& p, std::int64_t modulus);

/// M_{s,n,N}(j): exact sum of t_{i,s,n} over i in S_{N,j}.
BigInt progression_sum_oracle(const ProductSpec& spec, const ProgressionQuery& query);

struct ReflectionCheck {
  bool holds;
  int sign;  // (-1)^{sn}
};

/// Checks q^{N} p(1/q) = (-1)^{sn} p(q), i.e. p[N-i] = (-1)^{sn} p[i].
ReflectionCheck reverse_negate_check(const IntPolynomial& p, const ProductSpec& spec);

}  // namespace qprod
