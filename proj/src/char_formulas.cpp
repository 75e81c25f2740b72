#include "qproducts/char_formulas.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "qproducts/errors.hpp"
#include "qproducts/mp_real.hpp"

namespace qprod {

namespace {

using mp::Complex;
using mp::Real;

int bit_length(std::uint64_t x) { return x == 0 ? 1 : std::bit_width(x); }

// Every term of either sum is bounded by 2^{sn} and there are fewer than N
// of them, each built from O(sn) roundings; these integer bits keep the
// accumulated error near 2^{-fractional bits}.
mpfr_prec_t integer_bits(const ProductSpec& spec, std::int64_t modulus) {
  const auto sn = static_cast<std::uint64_t>(spec.s()) * static_cast<std::uint64_t>(spec.n());
  return static_cast<mpfr_prec_t>(sn) + bit_length(static_cast<std::uint64_t>(modulus)) +
         bit_length(sn + static_cast<std::uint64_t>(modulus)) + 4;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Real ipow(const Real& base, int e) {
  Real result(1, base.precision());
  Real b = base;
  while (e != 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

Complex ipow(const Complex& base, int e) {
  Complex result(Real(1, base.re.precision()), Real(0, base.re.precision()));
  Complex b = base;
  while (e != 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

// sin(pi k / N) and cos(pi k / N) for k in [0, 2N).
class HalfTurnTable {
 public:
  HalfTurnTable(std::int64_t modulus, mpfr_prec_t bits) : modulus_(modulus) {
    require_within_cap(static_cast<std::uint64_t>(2 * modulus), "root-of-unity table");
    const Real pi = Real::pi(bits);
    sin_.reserve(static_cast<std::size_t>(2 * modulus));
    cos_.reserve(static_cast<std::size_t>(2 * modulus));
    for (std::int64_t k = 0; k < 2 * modulus; ++k) {
      Real angle = pi;
      angle.mul_si(static_cast<long>(k)).div_si(static_cast<long>(modulus));
      sin_.push_back(sin(angle));
      cos_.push_back(cos(angle));
    }
  }

  const Real& sin_half(std::int64_t k) const { return sin_[static_cast<std::size_t>(mod_floor(k, 2 * modulus_))]; }
  const Real& cos_half(std::int64_t k) const { return cos_[static_cast<std::size_t>(mod_floor(k, 2 * modulus_))]; }
  // exp(2 pi i m / N)
  const Real& cos_root(std::int64_t m) const { return cos_half(2 * mod_floor(m, modulus_)); }
  const Real& sin_root(std::int64_t m) const { return sin_half(2 * mod_floor(m, modulus_)); }

 private:
  std::int64_t modulus_;
  std::vector<Real> sin_;
  std::vector<Real> cos_;
};

// (1/N) sum_{r != 0} psi_r(j)^{-1} prod_a (1 - psi_r(-a))^s. Characters r and
// N-r contribute complex conjugates, so only 1 <= r <= N/2 is visited.
std::vector<Real> root_filter_values(const ProductSpec& spec, std::int64_t modulus,
                                     const std::vector<std::int64_t>& residues, mpfr_prec_t bits) {
  const HalfTurnTable table(modulus, bits);
  const std::int64_t half = modulus / 2;

  std::vector<Complex> products;
  products.reserve(static_cast<std::size_t>(half));
  for (std::int64_t r = 1; r <= half; ++r) {
    Complex prod(Real(1, bits), Real(0, bits));
    for (int a = 1; a <= spec.n(); ++a) {
      const std::int64_t m = static_cast<std::int64_t>(a) * r;
      Complex factor(Real(1, bits) - table.cos_root(m), Real(0, bits) - table.sin_root(m));
      prod *= ipow(factor, spec.s());
    }
    products.push_back(std::move(prod));
  }

  std::vector<Real> out;
  out.reserve(residues.size());
  for (const std::int64_t j : residues) {
    Real total(0, bits);
    for (std::int64_t r = 1; r <= half; ++r) {
      const Complex& p = products[static_cast<std::size_t>(r - 1)];
      const std::int64_t m = -j * r;
      Real re = table.cos_root(m) * p.re;
      re -= table.sin_root(m) * p.im;
      if (2 * r != modulus) re.mul_si(2);
      total += re;
    }
    total.div_si(static_cast<long>(modulus));
    out.push_back(std::move(total));
  }
  return out;
}

// Folded form: sum over 1 <= r <= N/2 of sin or cos(pi r (2j - N_{s,n}) / N)
// times prod_a sin^s(pi a r / N), scaled by 2^{sn+1} (+-1) / N. The r = N/2
// character (N even) is its own partner and enters with weight 1/2.
std::vector<Real> trig_values(const ProductSpec& spec, std::int64_t modulus,
                              const std::vector<std::int64_t>& residues, mpfr_prec_t bits) {
  const HalfTurnTable table(modulus, bits);
  const std::int64_t half = modulus / 2;
  const std::int64_t sn = static_cast<std::int64_t>(spec.s()) * spec.n();
  const bool odd = spec.odd_sign();

  std::vector<Real> sine_products;
  sine_products.reserve(static_cast<std::size_t>(half));
  for (std::int64_t r = 1; r <= half; ++r) {
    Real prod(1, bits);
    for (int a = 1; a <= spec.n(); ++a) {
      prod *= ipow(table.sin_half(static_cast<std::int64_t>(a) * r), spec.s());
    }
    sine_products.push_back(std::move(prod));
  }

  // Prefactor 2^{sn+1} i^{sn+1} (sn odd) or 2^{sn+1} i^{sn} (sn even). One
  // factor of 2 is already in the doubled paired terms.
  const std::int64_t quarter_turns = odd ? (sn + 1) / 2 : sn / 2;
  const bool negative = quarter_turns % 2 != 0;

  std::vector<Real> out;
  out.reserve(residues.size());
  for (const std::int64_t j : residues) {
    const std::int64_t shift = 2 * j - spec.degree();
    Real total(0, bits);
    for (std::int64_t r = 1; r <= half; ++r) {
      const std::int64_t k = mod_floor(r * mod_floor(shift, 2 * modulus), 2 * modulus);
      Real term = (odd ? table.sin_half(k) : table.cos_half(k)) *
                  sine_products[static_cast<std::size_t>(r - 1)];
      if (2 * r != modulus) term.mul_si(2);
      total += term;
    }
    total.mul_2si(static_cast<long>(sn));
    if (negative) total.negate();
    total.div_si(static_cast<long>(modulus));
    out.push_back(std::move(total));
  }
  return out;
}

template <class Evaluate>
std::vector<CertifiedInteger> certify(const ProductSpec& spec, std::int64_t modulus,
                                      const std::vector<std::int64_t>& residues, Evaluate evaluate) {
  const mpfr_prec_t base = integer_bits(spec, modulus);
  double worst = 0.0;
  for (int frac = kInitialFractionalBits; frac <= kMaxFractionalBits; frac *= 2) {
    const mpfr_prec_t bits = base + frac;
    const std::vector<Real> values = evaluate(spec, modulus, residues, bits);
    std::vector<CertifiedInteger> out;
    out.reserve(values.size());
    worst = 0.0;
    for (const Real& v : values) {
      auto [z, residual] = v.round_with_residual();
      worst = std::max(worst, residual);
      out.push_back({std::move(z), static_cast<int>(bits), residual});
    }
    if (worst < kRoundingThreshold) return out;
  }
  throw PrecisionError("character sum for s=" + std::to_string(spec.s()) + ", n=" +
                       std::to_string(spec.n()) + ", N=" + std::to_string(modulus) +
                       " did not round certifiably (residual " + std::to_string(worst) + ")");
}

std::vector<std::int64_t> all_residues(std::int64_t modulus) {
  require_within_cap(static_cast<std::uint64_t>(modulus), "residue list");
  std::vector<std::int64_t> r(static_cast<std::size_t>(modulus));
  for (std::int64_t j = 0; j < modulus; ++j) r[static_cast<std::size_t>(j)] = j;
  return r;
}

}  // namespace

CertifiedInteger character_sum_main00(const ProductSpec& spec, const ProgressionQuery& query) {
  return certify(spec, query.modulus(), {query.residue()}, root_filter_values).front();
}

std::vector<CertifiedInteger> character_sums_main00(const ProductSpec& spec, std::int64_t modulus) {
  if (modulus < 1) throw DomainError("modulus must be >= 1");
  return certify(spec, modulus, all_residues(modulus), root_filter_values);
}

CertifiedInteger trig_form_main0000(const ProductSpec& spec, const ProgressionQuery& query) {
  return certify(spec, query.modulus(), {query.residue()}, trig_values).front();
}

std::vector<CertifiedInteger> trig_forms_main0000(const ProductSpec& spec, std::int64_t modulus) {
  if (modulus < 1) throw DomainError("modulus must be >= 1");
  return certify(spec, modulus, all_residues(modulus), trig_values);
}

CertifiedInteger single_coefficient_main0(const ProductSpec& spec, std::int64_t j) {
  if (j < 0 || j > spec.degree()) {
    throw DomainError("coefficient index must lie in [0, N_{s,n}]");
  }
  return character_sum_main00(spec, ProgressionQuery(spec.degree() + 1, j));
}

std::int64_t euler_totient(std::int64_t m) {
  if (m < 1) throw DomainError("totient requires m >= 1");
  std::int64_t result = m;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

int moebius(std::int64_t m) {
  if (m < 1) throw DomainError("moebius requires m >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  return m > 1 ? -sign : sign;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t j) {
  if (q < 1) throw DomainError("ramanujan_sum requires q >= 1");
  const std::int64_t g = std::gcd(q, mod_floor(j, q));
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= g; ++d) {
    if (g % d == 0) total += moebius(q / d) * d;
  }
  return total;
}

namespace {

BigInt main1_scale(const ProductSpec& spec, std::int64_t j) {
  if (j < 0 || j > spec.n()) throw DomainError("closed form requires 0 <= j <= n");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(spec.n()) + 1,
                static_cast<unsigned long>(spec.s()) - 1);
  return scale;
}

}  // namespace

BigInt closed_form_main1(const ProductSpec& spec, std::int64_t j) {
  const BigInt scale = main1_scale(spec, j);
  return scale * BigInt(static_cast<long>(ramanujan_sum(spec.n() + 1, j)));
}

BigInt closed_form_main1_two_case(const ProductSpec& spec, std::int64_t j) {
  const BigInt scale = main1_scale(spec, j);
  if (j == 0) return scale * BigInt(static_cast<long>(euler_totient(spec.n() + 1)));
  return -scale;
}

VanishingCheck vanishing_predicate_main000(const ProductSpec& spec, const ProgressionQuery& query) {
  if (!spec.odd_sign()) throw DomainError("the vanishing criterion requires s*n odd");
  VanishingCheck check;
  check.applies = mod_floor(2 * query.residue() - spec.degree(), query.modulus()) == 0;
  check.oracle_sum = progression_sum_oracle(spec, query);
  return check;
}

bool small_modulus_vanishing(const ProductSpec& spec, std::int64_t modulus) {
  if (modulus < 1 || modulus > spec.n() - 1) {
    throw DomainError("small-modulus vanishing requires 1 <= N <= n-1");
  }
  const IntPolynomial r = cyclic_reduce(expand_restricted_product(spec), modulus);
  for (const auto& c : r.coeffs()) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> admissible_div1_divisors(const ProductSpec& spec) {
  const std::int64_t top = spec.degree();
  std::vector<std::int64_t> out;
  for (std::int64_t d = top / 2 + 1; d <= top; ++d) {
    if (top % d == 0) out.push_back(d);
  }
  return out;
}

DivisorCoefficients divisor_coefficients_div1(const ProductSpec& spec, std::int64_t divisor) {
  if (spec.s() % 2 == 0 || spec.n() % 2 == 0) {
    throw DomainError("divisor coefficients require s and n odd");
  }
  const std::int64_t top = spec.degree();
  if (divisor < 1 || top % divisor != 0 || 2 * divisor <= top || divisor > top) {
    throw DomainError("D must divide N_{s,n} with N_{s,n}/2 < D <= N_{s,n}");
  }
  const IntPolynomial t = expand_restricted_product(spec);
  return {t.coeff(divisor), t.coeff(top - divisor)};
}

BigInt midpoint_zero_peak1(const ProductSpec& spec) {
  if (spec.n() % 4 != 3 || spec.s() % 2 == 0) {
    throw DomainError("midpoint coefficient requires n = 3 (mod 4) and s odd");
  }
  const std::int64_t mid = spec.degree() / 2;
  return expand_prefix(spec, mid).coeff(mid);
}

TauProgression tau_progression(int n, std::int64_t j, bool cross_check) {
  const ProductSpec spec(24, n);
  TauProgression result{closed_form_main1(spec, j), std::nullopt};
  if (cross_check) {
    result.oracle = progression_sum_oracle(spec, ProgressionQuery(n + 1, j));
  }
  return result;
}

}  // namespace qprod
