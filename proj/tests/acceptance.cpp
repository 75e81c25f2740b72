// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qproducts/asymptotics.hpp"
#include "qproducts/char_formulas.hpp"
#include "qproducts/partition_oracle.hpp"
#include "qproducts/sieve.hpp"

using namespace qprod;

namespace {

BigInt big(oracle::i128 v) { return BigInt(oracle::to_string(v)); }

struct Outcome {
  bool pass = true;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& detail) {
    ++cases;
    if (ok) return;
    pass = false;
    if (failures++ == 0) first_failure = detail();
  }
};

std::string pair_str(int s, int n) { return "s=" + std::to_string(s) + " n=" + std::to_string(n); }

Outcome formula_oracle_equivalence() {
  Outcome o;
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 10; ++n) {
      const ProductSpec spec(s, n);
      const auto naive = oracle::naive_expand(s, n);
      for (std::int64_t m = 1; m <= spec.degree() + 1; ++m) {
        const auto expected = oracle::residue_sums(naive, m);
        const auto filter = character_sums_main00(spec, m);
        const auto trig = trig_forms_main0000(spec, m);
        for (std::int64_t j = 0; j < m; ++j) {
          const auto idx = static_cast<std::size_t>(j);
          const BigInt exact = progression_sum_oracle(spec, ProgressionQuery(m, j));
          const bool ok = exact == big(expected[idx]) && filter[idx].value == exact && trig[idx].value == exact;
          o.expect(ok, [&] {
            return pair_str(s, n) + " N=" + std::to_string(m) + " j=" + std::to_string(j) + " oracle=" +
                   exact.get_str() + " main00=" + filter[idx].value.get_str() + " main0000=" + trig[idx].value.get_str();
          });
        }
      }
    }
  }
  return o;
}

Outcome coefficient_recovery() {
  Outcome o;
  int max_bits = 0;
  for (int s = 1; s <= 2; ++s) {
    for (int n = 1; n <= 8; ++n) {
      const ProductSpec spec(s, n);
      const auto naive = oracle::naive_expand(s, n);
      for (std::int64_t j = 0; j <= spec.degree(); ++j) {
        const auto v = single_coefficient_main0(spec, j);
        max_bits = std::max(max_bits, v.precision_bits);
        o.expect(v.value == big(naive[static_cast<std::size_t>(j)]) && v.residual < kRoundingThreshold, [&] {
          return pair_str(s, n) + " j=" + std::to_string(j) + " got " + v.value.get_str();
        });
      }
    }
  }
  o.note = "max precision " + std::to_string(max_bits) + " bits";
  return o;
}

Outcome closed_form() {
  Outcome o;
  std::uint64_t two_case_mismatch = 0;
  for (int s = 1; s <= 4; ++s) {
    for (int n = 1; n <= 30; ++n) {
      const ProductSpec spec(s, n);
      const auto expected = oracle::residue_sums(oracle::naive_expand(s, n), n + 1);
      for (std::int64_t j = 0; j <= n; ++j) {
        const BigInt exact = progression_sum_oracle(spec, ProgressionQuery(n + 1, j));
        const BigInt v = closed_form_main1(spec, j);
        o.expect(v == exact && exact == big(expected[static_cast<std::size_t>(j)]), [&] {
          return pair_str(s, n) + " j=" + std::to_string(j) + " closed=" + v.get_str() + " oracle=" + exact.get_str();
        });
        if (j == 0) {
          BigInt scale;
          mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(n) + 1, static_cast<unsigned long>(s) - 1);
          o.expect(exact == scale * BigInt(static_cast<long>(oracle::totient(n + 1))),
                   [&] { return pair_str(s, n) + " j=0 is not (n+1)^{s-1} phi(n+1)"; });
        }
        if (closed_form_main1_two_case(spec, j) != exact) ++two_case_mismatch;
      }
    }
  }
  o.note = "value (n+1)^{s-1} c_{n+1}(j); the two-case form differs in " + std::to_string(two_case_mismatch) +
           " cases, all with n+1 composite";
  return o;
}

Outcome vanishing_suites() {
  Outcome o;
  std::uint64_t zero_cases = 0;
  for (int s = 1; s <= 5; s += 2) {
    for (int n = 1; n <= 15; n += 2) {
      const ProductSpec spec(s, n);
      const auto naive = oracle::naive_expand(s, n);
      for (std::int64_t m = 1; m <= spec.degree() + 1; ++m) {
        const auto sums = oracle::residue_sums(naive, m);
        for (std::int64_t j = 0; j < m; ++j) {
          const bool predicate = (2 * j - spec.degree()) % m == 0;
          if (!predicate) continue;
          const auto check = vanishing_predicate_main000(spec, ProgressionQuery(m, j));
          ++zero_cases;
          o.expect(check.applies && check.consistent() && sums[static_cast<std::size_t>(j)] == 0, [&] {
            return "main000 " + pair_str(s, n) + " N=" + std::to_string(m) + " j=" + std::to_string(j);
          });
        }
      }
    }
  }
  std::uint64_t cor_cases = 0;
  for (int s = 1; s <= 4; ++s) {
    for (int n = 2; n <= 12; ++n) {
      const ProductSpec spec(s, n);
      const auto naive = oracle::naive_expand(s, n);
      for (std::int64_t m = 1; m <= n - 1; ++m) {
        ++cor_cases;
        bool all_zero = true;
        for (auto v : oracle::residue_sums(naive, m)) all_zero = all_zero && v == 0;
        o.expect(all_zero && small_modulus_vanishing(spec, m),
                 [&] { return "main00cor " + pair_str(s, n) + " N=" + std::to_string(m); });
      }
    }
  }
  o.note = std::to_string(zero_cases) + " predicate cases (s in {1,3,5}), " + std::to_string(cor_cases) +
           " small-modulus cases (s <= 4)";
  return o;
}

Outcome divisor_and_midpoint() {
  Outcome o;
  constexpr std::int64_t kMaxDegree = 10000;
  std::uint64_t div_pairs = 0;
  std::uint64_t peak_pairs = 0;
  for (int n = 1; n * (n + 1) / 2 <= kMaxDegree; ++n) {
    for (int s = 1; static_cast<std::int64_t>(s) * n * (n + 1) / 2 <= kMaxDegree; s += 2) {
      const ProductSpec spec(s, n);
      if (n % 2 == 1) {
        ++div_pairs;
        for (std::int64_t d : admissible_div1_divisors(spec)) {
          const auto c = divisor_coefficients_div1(spec, d);
          o.expect(c.holds(), [&] { return "div1 " + pair_str(s, n) + " D=" + std::to_string(d); });
        }
      }
      if (n % 4 == 3) {
        ++peak_pairs;
        const BigInt mid = midpoint_zero_peak1(spec);
        o.expect(sgn(mid) == 0, [&] { return "peak1 " + pair_str(s, n) + " value " + mid.get_str(); });
      }
    }
  }
  o.note = std::to_string(div_pairs) + " div1 pairs, " + std::to_string(peak_pairs) + " peak1 pairs";
  return o;
}

Outcome sieve_identities() {
  Outcome o;
  constexpr double kTol = 1e-9;
  for (int n = 1; n <= 6; ++n) {
    for (std::int64_t m = 1; m <= 8; ++m) {
      for (std::int64_t r = 0; r < m; ++r) {
        const CharacterIndex psi(r, m);
        for (int k = 0; k <= n; ++k) {
          const Cplx truth = oracle::distinct_tuple_sum(n, k, r, m);
          const Cplx brute = f_psi_distinct_bruteforce(n, k, psi);
          const Cplx a = f_psi_sieve(n, k, psi);
          const Cplx b = f_psi_cycle_index(n, k, psi);
          const Cplx c = f_psi_cycle_sum(n, k, psi);
          const double worst = std::max({std::abs(brute - truth), std::abs(a - truth), std::abs(b - truth),
                                         std::abs(c - truth)});
          o.expect(worst < kTol, [&] {
            std::ostringstream os;
            os << "n=" << n << " k=" << k << " N=" << m << " r=" << r << " error " << worst;
            return os.str();
          });
        }
      }
    }
  }
  std::uint64_t rc_cases = 0;
  for (int s = 1; s <= 2; ++s) {
    for (int n = 1; n <= 6; ++n) {
      for (std::int64_t m = 1; m <= 8; ++m) {
        std::vector<int> ks(static_cast<std::size_t>(s), 0);
        while (true) {
          for (std::int64_t j = 0; j < m; ++j) {
            ++rc_cases;
            const auto check = restricted_count_identity_check(s, n, m, j, ks);
            std::uint64_t weight = 1;
            for (int k : ks) weight *= ordered_tuple_count(k, k);
            const std::uint64_t direct = weight * oracle::restricted_count(s, n, m, j, ks);
            o.expect(check.holds && check.lhs == direct &&
                         std::abs(check.rhs - Cplx(static_cast<double>(direct), 0)) < 1e-6,
                     [&] { return "rc " + pair_str(s, n) + " N=" + std::to_string(m) + " j=" + std::to_string(j); });
          }
          std::size_t i = 0;
          while (i < ks.size() && ks[i] == n) ks[i++] = 0;
          if (i == ks.size()) break;
          ++ks[i];
        }
      }
    }
  }
  o.note = std::to_string(rc_cases) + " restricted-count cases";
  return o;
}

Outcome partition_parity() {
  Outcome o;
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 8; ++n) {
      const auto naive = oracle::naive_expand(s, n);
      const auto table = parity_count_table(s, n);
      o.expect(table.size() == naive.size(), [&] { return pair_str(s, n) + " table length"; });
      for (std::size_t j = 0; j < std::min(table.size(), naive.size()); ++j) {
        o.expect(table[j].difference() == big(naive[j]),
                 [&] { return pair_str(s, n) + " j=" + std::to_string(j); });
      }
    }
  }
  return o;
}

Outcome classical_series() {
  Outcome o;
  const Series pent = pentagonal_series(30);
  const Series hr = hecke_rogers_series(30);
  const Series jac = jacobi_series(30, JacobiConvention::standard);
  const Series jac_printed = jacobi_series(30, JacobiConvention::as_printed);
  for (int n = 1; n <= 30; ++n) {
    const auto t1 = oracle::naive_expand(1, n);
    const auto t2 = oracle::naive_expand(2, n);
    const auto t3 = oracle::naive_expand(3, n);
    for (int e = 0; e <= n; ++e) {
      o.expect(big(t1[static_cast<std::size_t>(e)]) == pent.coefficient(e) &&
                   big(t2[static_cast<std::size_t>(e)]) == hr.coefficient(e),
               [&] { return "n=" + std::to_string(n) + " exponent " + std::to_string(e); });
    }
    o.expect(stable_prefix_check(1, n, pent) && stable_prefix_check(2, n, hr),
             [&] { return "prefix check n=" + std::to_string(n); });
    o.expect(stable_prefix_check(3, n, jac), [&] { return "jacobi standard n=" + std::to_string(n); });
    // The as-printed exponent merges k = 0 and k = 1 at q^0.
    o.expect(!stable_prefix_check(3, n, jac_printed) && jac_printed.coefficient(0) == -2 && t3[0] == 1,
             [&] { return "jacobi as-printed unexpectedly matches at n=" + std::to_string(n); });
  }
  o.note = "as-printed Jacobi coefficient at q^0 is -2";
  return o;
}

Outcome sudler() {
  Outcome o;
  const auto k = sudler_constant();
  std::ostringstream os;
  os.precision(10);
  os << "K=" << k.value << " at w=" << k.argmax_w;
  o.expect(std::abs(k.value - kSudlerReference) <= 5e-5, [&] { return os.str(); });
  o.note = os.str();
  return o;
}

Outcome slope() {
  Outcome o;
  const double k = sudler_constant().value;
  const auto f1 = asymptotic_fit(1, 100, 300, 25);
  const auto f2 = asymptotic_fit(2, 50, 150, 25);
  std::ostringstream os;
  os.precision(6);
  os << "s=1 slope " << f1.slope << ", s=2 slope/2 " << f2.k_estimate() << ", s=1 log band C " << f1.log_band_constant;
  o.expect(std::abs(f1.slope - k) <= 0.02, [&] { return os.str(); });
  o.expect(std::abs(f2.k_estimate() - k) <= 0.03, [&] { return os.str(); });
  o.note = os.str();
  return o;
}

Outcome tau_progressions() {
  Outcome o;
  std::string mismatches;
  for (int n = 1; n <= 6; ++n) {
    const IntPolynomial sums = cyclic_reduce(truncated_tau(n), n + 1);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(n) + 1, 23);
    for (std::int64_t j = 0; j <= n; ++j) {
      const BigInt stated = j == 0 ? scale * BigInt(static_cast<long>(oracle::totient(n + 1))) : BigInt(-scale);
      const BigInt& exact = sums[static_cast<std::size_t>(j)];
      o.expect(exact == stated, [&] {
        return "n=" + std::to_string(n) + " j=" + std::to_string(j) + ": sum is " +
               BigInt(exact / scale).get_str() + "*(n+1)^23, stated " + BigInt(stated / scale).get_str() + "*(n+1)^23";
      });
      if (exact != stated && mismatches.find("n=" + std::to_string(n)) == std::string::npos) {
        mismatches += (mismatches.empty() ? "" : ",") + std::string("n=") + std::to_string(n);
      }
      // The Ramanujan-sum value matches every case.
      if (tau_progression(n, j, false).value != exact) o.note += " closed_form_main1 mismatch at n=" + std::to_string(n);
    }
  }
  if (!mismatches.empty()) {
    o.note = "stated values fail where n+1 is composite (" + mismatches +
             "); exact sums equal (n+1)^23 c_{n+1}(j) in every case" + o.note;
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "formula-oracle equivalence (main00, main0000)", formula_oracle_equivalence},
      {2, "coefficient recovery (main0)", coefficient_recovery},
      {3, "closed form modulo n+1 (main1)", closed_form},
      {4, "vanishing suites (main000, main00cor)", vanishing_suites},
      {5, "divisor and midpoint coefficients (div1, peak1)", divisor_and_midpoint},
      {6, "sieve identities and restricted counts", sieve_identities},
      {7, "partition parity counts", partition_parity},
      {8, "classical series prefixes", classical_series},
      {9, "Sudler constant", sudler},
      {10, "asymptotic slope (maxpeak)", slope},
      {11, "tau progressions", tau_progressions},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.cases << " cases";
    if (!o.pass) line << ", " << o.failures << " failing; first: " << o.first_failure;
    if (!o.note.empty()) line << "; " << o.note;
    line << " (" << std::fixed << secs << " s)";
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (11 - failed) << "/11 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
