#include "qproducts/poly_core.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "qproducts/errors.hpp"

namespace qprod {

ProductSpec::ProductSpec(int s, int n) : s_(s), n_(n) {
  if (s < 1 || n < 1) {
    throw DomainError("ProductSpec requires s >= 1 and n >= 1 (got s=" + std::to_string(s) +
                      ", n=" + std::to_string(n) + ")");
  }
}

std::int64_t ProductSpec::degree() const noexcept {
  return static_cast<std::int64_t>(s_) * n_ * (n_ + 1) / 2;
}

ProgressionQuery::ProgressionQuery(std::int64_t modulus, std::int64_t residue)
    : modulus_(modulus), residue_(residue) {
  if (modulus < 1) {
    throw DomainError("progression modulus must be >= 1");
  }
  if (residue < 0 || residue >= modulus) {
    throw DomainError("progression residue must satisfy 0 <= j < N");
  }
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

std::int64_t IntPolynomial::degree() const noexcept {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) != 0) return static_cast<std::int64_t>(i);
  }
  return -1;
}

BigInt IntPolynomial::coeff(std::int64_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

BigInt IntPolynomial::sum() const {
  BigInt total = 0;
  for (const auto& c : coeffs_) total += c;
  return total;
}

bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
  const auto da = a.degree();
  if (da != b.degree()) return false;
  for (std::int64_t i = 0; i <= da; ++i) {
    if (a.coeffs_[static_cast<std::size_t>(i)] != b.coeffs_[static_cast<std::size_t>(i)]) {
      return false;
    }
  }
  return true;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da < 0 || db < 0) return IntPolynomial::zero(1);
  require_within_cap(static_cast<std::uint64_t>(da + db + 1), "polynomial product");

  std::vector<BigInt> out(static_cast<std::size_t>(da + db + 1));
  for (std::int64_t j = 0; j <= db; ++j) {
    const BigInt& bj = b[static_cast<std::size_t>(j)];
    if (sgn(bj) == 0) continue;
    for (std::int64_t i = 0; i <= da; ++i) {
      const BigInt& ai = a[static_cast<std::size_t>(i)];
      if (sgn(ai) == 0) continue;
      mpz_addmul(out[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial shifted(const IntPolynomial& p, std::size_t shift) {
  std::vector<BigInt> out(p.size() + shift);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + shift] = p[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial power(const IntPolynomial& p, unsigned e) {
  IntPolynomial result = IntPolynomial::one();
  IntPolynomial base = p;
  while (e != 0) {
    if (e & 1u) result = multiply(result, base);
    e >>= 1;
    if (e != 0) base = multiply(base, base);
  }
  return result;
}

IntPolynomial binomial_power(int j, int s) {
  if (j < 1 || s < 0) throw DomainError("binomial_power requires j >= 1, s >= 0");
  std::vector<BigInt> b(static_cast<std::size_t>(j) + 1);
  b[0] = 1;
  b[static_cast<std::size_t>(j)] = -1;
  return power(IntPolynomial(std::move(b)), static_cast<unsigned>(s));
}

// --- resource cap -----------------------------------------------------------

namespace {

constexpr std::size_t kDefaultCap = 10'000'000;

std::size_t cap_from_environment() {
  if (const char* env = std::getenv("QPROD_COEFF_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCap;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{cap_from_environment()};
  return cap;
}

}  // namespace

std::size_t coefficient_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_coefficient_cap(std::size_t cap) { cap_storage().store(cap, std::memory_order_relaxed); }

void require_within_cap(std::uint64_t count, const char* what) {
  const auto cap = coefficient_cap();
  if (count > cap) {
    throw ResourceLimitError(std::string(what) + " needs " + std::to_string(count) +
                             " coefficients, above the cap of " + std::to_string(cap));
  }
}

// --- restricted product -----------------------------------------------------

namespace {

// Truncated in-place product: c holds max_index+1 slots.
void apply_incremental(std::vector<BigInt>& c, const ProductSpec& spec, std::int64_t max_index) {
  c.assign(static_cast<std::size_t>(max_index) + 1, BigInt(0));
  c[0] = 1;
  std::int64_t deg = 0;
  for (int j = 1; j <= spec.n(); ++j) {
    for (int rep = 0; rep < spec.s(); ++rep) {
      const std::int64_t top = std::min(deg + j, max_index);
      for (std::int64_t i = top; i >= j; --i) {
        c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - j)];
      }
      deg += j;
    }
  }
}

void apply_power_recurrence(std::vector<BigInt>& f, const ProductSpec& spec, std::int64_t max_index) {
  const ProductSpec base_spec(1, spec.n());
  std::vector<BigInt> p;
  apply_incremental(p, base_spec, base_spec.degree());

  const std::int64_t d = base_spec.degree();
  const long s1 = spec.s() + 1;
  f.assign(static_cast<std::size_t>(max_index) + 1, BigInt(0));
  f[0] = 1;
  BigInt acc;
  BigInt term;
  for (std::int64_t k = 1; k <= max_index; ++k) {
    acc = 0;
    const std::int64_t top = std::min(k, d);
    for (std::int64_t i = 1; i <= top; ++i) {
      const BigInt& pi = p[static_cast<std::size_t>(i)];
      if (sgn(pi) == 0) continue;
      const long mult = s1 * static_cast<long>(i) - static_cast<long>(k);
      if (mult == 0) continue;
      mpz_mul_si(term.get_mpz_t(), pi.get_mpz_t(), mult);
      mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(), f[static_cast<std::size_t>(k - i)].get_mpz_t());
    }
    mpz_divexact_ui(f[static_cast<std::size_t>(k)].get_mpz_t(), acc.get_mpz_t(),
                    static_cast<unsigned long>(k));
  }
}

ExpansionMethod resolve(ExpansionMethod method, const ProductSpec& spec, std::int64_t max_index) {
  if (method != ExpansionMethod::automatic) return method;
  const double len = static_cast<double>(max_index) + 1.0;
  const double incremental_cost = static_cast<double>(spec.s()) * spec.n() * len;
  const double d = static_cast<double>(spec.n()) * (spec.n() + 1) / 2.0;
  const double recurrence_cost = 2.0 * d * len + spec.n() * d;
  return recurrence_cost < incremental_cost ? ExpansionMethod::power_recurrence
                                            : ExpansionMethod::incremental;
}

}  // namespace

IntPolynomial expand_prefix(const ProductSpec& spec, std::int64_t max_index, ExpansionMethod method) {
  if (max_index < 0) throw DomainError("expand_prefix requires max_index >= 0");
  max_index = std::min(max_index, spec.degree());
  require_within_cap(static_cast<std::uint64_t>(max_index) + 1, "restricted product expansion");

  std::vector<BigInt> c;
  switch (resolve(method, spec, max_index)) {
    case ExpansionMethod::schoolbook: {
      IntPolynomial acc = IntPolynomial::one();
      for (int j = 1; j <= spec.n(); ++j) acc = multiply(acc, binomial_power(j, spec.s()));
      c.assign(acc.coeffs().begin(), acc.coeffs().begin() + max_index + 1);
      break;
    }
    case ExpansionMethod::incremental:
      apply_incremental(c, spec, max_index);
      break;
    case ExpansionMethod::power_recurrence:
    case ExpansionMethod::automatic:
      apply_power_recurrence(c, spec, max_index);
      break;
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial expand_restricted_product(const ProductSpec& spec, ExpansionMethod method) {
  return expand_prefix(spec, spec.degree(), method);
}

IntPolynomial cyclic_reduce(const IntPolynomial& p, std::int64_t modulus) {
  if (modulus < 1) throw DomainError("cyclic_reduce requires N >= 1");
  require_within_cap(static_cast<std::uint64_t>(modulus), "cyclic reduction");
  std::vector<BigInt> r(static_cast<std::size_t>(modulus));
  const auto m = static_cast<std::size_t>(modulus);
  for (std::size_t i = 0; i < p.size(); ++i) r[i % m] += p[i];
  return IntPolynomial(std::move(r));
}

BigInt progression_sum_oracle(const ProductSpec& spec, const ProgressionQuery& query) {
  const IntPolynomial t = expand_restricted_product(spec);
  const IntPolynomial r = cyclic_reduce(t, query.modulus());
  return r[static_cast<std::size_t>(query.residue())];
}

ReflectionCheck reverse_negate_check(const IntPolynomial& p, const ProductSpec& spec) {
  const int sign = spec.odd_sign() ? -1 : 1;
  const std::int64_t top = spec.degree();
  for (std::int64_t i = 0; i <= top; ++i) {
    BigInt mirrored = p.coeff(top - i);
    if (sign < 0) mirrored = -mirrored;
    if (mirrored != p.coeff(i)) return {false, sign};
  }
  // Nothing may live beyond the nominal degree.
  return {p.degree() <= top, sign};
}

}  // namespace qprod
