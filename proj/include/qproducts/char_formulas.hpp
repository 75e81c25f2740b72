#pragma once

// Character-sum formulas for progression sums of T_{s,n}.
//
// For the characters psi_r(m) = exp(2 pi i m r / N) of Z_N,
//
//   M_{s,n,N}(j) = (1/N) sum_{r != 0} psi_r(j)^{-1} prod_{a=1..n} (1 - psi_r(-a))^s
//
// and the same sum folded over r <-> N-r into a real sine/cosine form. Both
// are evaluated in MPFR arithmetic and rounded to the nearest integer. The
// rounding is accepted only when the residual is below 1/4; otherwise the
// fractional precision is doubled, up to 1024 bits, before giving up with a
// PrecisionError.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qproducts/poly_core.hpp"

namespace qprod {

/// An integer recovered from a floating evaluation.
struct CertifiedInteger {
  BigInt value;
  int precision_bits = 0;  // MPFR mantissa bits of the accepted evaluation
  double residual = 0.0;   // |float value - value|
};

/// Fractional bits tried first, and the ceiling of the escalation.
inline constexpr int kInitialFractionalBits = 64;
inline constexpr int kMaxFractionalBits = 1024;
inline constexpr double kRoundingThreshold = 0.25;

/// Root-of-unity filter, one residue.
CertifiedInteger character_sum_main00(const ProductSpec& spec, const ProgressionQuery& query);
/// Root-of-unity filter for every residue 0..N-1; the character products
/// are shared between residues.
std::vector<CertifiedInteger> character_sums_main00(const ProductSpec& spec, std::int64_t modulus);

/// Sine branch when s n is odd, cosine branch otherwise.
CertifiedInteger trig_form_main0000(const ProductSpec& spec, const ProgressionQuery& query);
std::vector<CertifiedInteger> trig_forms_main0000(const ProductSpec& spec, std::int64_t modulus);

/// t_{j,s,n} from the character sum with N = N_{s,n} + 1.
CertifiedInteger single_coefficient_main0(const ProductSpec& spec, std::int64_t j);

/// Sum of t_{i,s,n} over i = j (mod n+1), equal to (n+1)^{s-1} c_{n+1}(j).
/// Only primitive (n+1)-th roots of unity survive in the filter, and each
/// contributes T_{1,n} = n+1 per factor. The value is (n+1)^{s-1} phi(n+1) at
/// j = 0 and -(n+1)^{s-1} elsewhere exactly when n+1 is prime.
BigInt closed_form_main1(const ProductSpec& spec, std::int64_t j);

/// The two-case form (n+1)^{s-1} phi(n+1) for j = 0, -(n+1)^{s-1} otherwise.
/// Agrees with closed_form_main1 at j = 0 always, and for every j exactly
/// when n+1 is prime.
BigInt closed_form_main1_two_case(const ProductSpec& spec, std::int64_t j);

/// Euler's totient by trial division.
std::int64_t euler_totient(std::int64_t m);

/// Moebius function by trial division.
int moebius(std::int64_t m);

/// Ramanujan sum c_q(j) = sum of exp(2 pi i a j / q) over 1 <= a <= q with
/// gcd(a, q) = 1, computed as sum over d | gcd(q, j) of mu(q/d) d.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t j);

struct VanishingCheck {
  bool applies = false;  // 2j = N_{s,n} (mod N)
  BigInt oracle_sum;     // exact M_{s,n,N}(j)
  /// The predicate implies a zero sum.
  bool consistent() const { return !applies || sgn(oracle_sum) == 0; }
};

/// Requires s n odd (DomainError otherwise).
VanishingCheck vanishing_predicate_main000(const ProductSpec& spec, const ProgressionQuery& query);

/// All residues mod N vanish for 1 <= N <= n-1 (DomainError outside).
bool small_modulus_vanishing(const ProductSpec& spec, std::int64_t modulus);

struct DivisorCoefficients {
  BigInt at_divisor;     // t_{D}
  BigInt at_complement;  // t_{N_{s,n} - D}
  bool holds() const { return at_divisor == -1 && at_complement == 1; }
};

/// s and n odd, D | N_{s,n}, N_{s,n}/2 < D <= N_{s,n}. Within that range the
/// only divisor is N_{s,n} itself, but the range is validated as stated.
DivisorCoefficients divisor_coefficients_div1(const ProductSpec& spec, std::int64_t divisor);
/// Divisors D of N_{s,n} with N_{s,n}/2 < D <= N_{s,n}.
std::vector<std::int64_t> admissible_div1_divisors(const ProductSpec& spec);

/// t_{s n (n+1)/4}; requires n = 3 (mod 4) and s odd.
BigInt midpoint_zero_peak1(const ProductSpec& spec);

struct TauProgression {
  BigInt value;                 // closed_form_main1 with s = 24
  std::optional<BigInt> oracle; // exact sum from the expansion, when requested
};

/// Sum of tau_n(l (n+1) + j) over l, for 0 <= j <= n.
TauProgression tau_progression(int n, std::int64_t j, bool cross_check = true);

}  // namespace qprod
