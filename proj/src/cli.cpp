#include "qproducts/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qproducts/asymptotics.hpp"
#include "qproducts/char_formulas.hpp"
#include "qproducts/errors.hpp"
#include "qproducts/partition_oracle.hpp"
#include "qproducts/serialize.hpp"
#include "qproducts/sieve.hpp"

namespace qprod::cli {

namespace {

const CLI::Range kPositive(std::int64_t{1}, std::numeric_limits<std::int64_t>::max(), "POSITIVE");
const CLI::Range kNonNegative(std::int64_t{0}, std::numeric_limits<std::int64_t>::max(), "NONNEGATIVE");

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxListedFailures = 20;
constexpr double kSieveTolerance = 1e-9;
constexpr double kSudlerTolerance = 5e-5;

std::string str(int v) { return std::to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const BigInt& v) { return to_decimal(v); }

// Shortest round-trip decimal form; stable across runs.
std::string str(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string str(Cplx z) { return str(z.real()) + (z.imag() < 0 ? "" : "+") + str(z.imag()) + "i"; }

Json record(int s, int n, std::int64_t modulus, std::int64_t j, const std::string& value, const std::string& method,
            int precision_bits) {
  return Json{{"s", str(s)},
              {"n", str(n)},
              {"N", str(modulus)},
              {"j", str(j)},
              {"value", value},
              {"method", method},
              {"precision_bits", str(precision_bits)}};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_null()) return "";
  return csv_escape(v.dump());
}

// Records sharing their first record's keys become one CSV table.
std::string records_to_csv(const Json& records) {
  std::ostringstream os;
  if (records.empty()) return os.str();
  std::vector<std::string> columns;
  for (const auto& [key, _] : records.front().items()) columns.push_back(key);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << (r.contains(columns[i]) ? csv_cell(r[columns[i]]) : "");
    }
    os << '\n';
  }
  return os.str();
}

struct Output {
  std::string format;
  std::string path;
};

struct Report {
  std::string text;
  int status = kExitOk;
};

// --- verify ------------------------------------------------------------------

struct Check {
  std::string label;
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;
  Json failures = Json::array();
  Json values = Json::array();
  Json notes = Json::object();

  void count(bool ok, const std::function<Json()>& detail) {
    ++cases;
    if (ok) return;
    ++failure_count;
    if (failures.size() < kMaxListedFailures) failures.push_back(detail());
  }
  bool holds() const { return failure_count == 0; }
};

struct VerifyParams {
  int s = 0;
  int n = 0;
  bool has_s = false;
  bool has_n = false;
  int smax = 2;
  int nmax = 8;
  std::int64_t modulus = 0;
  bool has_modulus = false;
  std::int64_t max_exponent = 30;
  int nmod_max = 8;
  std::string convention = "standard";
};

bool single(const VerifyParams& p) { return p.has_s && p.has_n; }

std::vector<std::pair<int, int>> grid(const VerifyParams& p, int s_cap = 0, int n_cap = 0) {
  std::vector<int> ss;
  std::vector<int> ns;
  if (p.has_s) {
    ss.push_back(p.s);
  } else {
    for (int s = 1; s <= (s_cap > 0 ? std::min(p.smax, s_cap) : p.smax); ++s) ss.push_back(s);
  }
  if (p.has_n) {
    ns.push_back(p.n);
  } else {
    for (int n = 1; n <= (n_cap > 0 ? std::min(p.nmax, n_cap) : p.nmax); ++n) ns.push_back(n);
  }
  std::vector<std::pair<int, int>> out;
  for (int s : ss) {
    for (int n : ns) out.emplace_back(s, n);
  }
  return out;
}

std::vector<std::int64_t> moduli(const VerifyParams& p, const ProductSpec& spec) {
  if (p.has_modulus) return {p.modulus};
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= spec.degree() + 1; ++m) out.push_back(m);
  return out;
}

void require_applicable(bool ok, const VerifyParams& p, const std::string& why) {
  if (!ok && single(p)) throw DomainError(why);
}

JacobiConvention parse_convention(const std::string& c) {
  return c == "as-printed" ? JacobiConvention::as_printed : JacobiConvention::standard;
}

Check check_filter(const VerifyParams& p, const std::string& label) {
  Check c{label};
  const bool trig = label == "main0000";
  for (auto [s, n] : grid(p)) {
    const ProductSpec spec(s, n);
    const IntPolynomial t = expand_restricted_product(spec);
    for (std::int64_t m : moduli(p, spec)) {
      const IntPolynomial oracle = cyclic_reduce(t, m);
      const auto got = trig ? trig_forms_main0000(spec, m) : character_sums_main00(spec, m);
      for (std::int64_t j = 0; j < m; ++j) {
        const auto& v = got[static_cast<std::size_t>(j)];
        c.count(v.value == oracle[static_cast<std::size_t>(j)], [&] {
          Json r = record(s, n, m, j, str(v.value), label, v.precision_bits);
          r["expected"] = str(oracle[static_cast<std::size_t>(j)]);
          return r;
        });
        if (single(p) && p.has_modulus) c.values.push_back(record(s, n, m, j, str(v.value), label, v.precision_bits));
      }
    }
  }
  return c;
}

Check check_main000(const VerifyParams& p) {
  Check c{"main000"};
  for (auto [s, n] : grid(p)) {
    const bool odd = (static_cast<std::int64_t>(s) * n) % 2 == 1;
    require_applicable(odd, p, "main000 needs s n odd");
    if (!odd) continue;
    const ProductSpec spec(s, n);
    const IntPolynomial t = expand_restricted_product(spec);
    for (std::int64_t m : moduli(p, spec)) {
      const IntPolynomial oracle = cyclic_reduce(t, m);
      for (std::int64_t j = 0; j < m; ++j) {
        if ((2 * j - spec.degree()) % m != 0) continue;
        const BigInt& v = oracle[static_cast<std::size_t>(j)];
        c.count(sgn(v) == 0, [&] { return record(s, n, m, j, str(v), "oracle", 0); });
      }
    }
  }
  return c;
}

Check check_main0(const VerifyParams& p) {
  Check c{"main0"};
  for (auto [s, n] : grid(p)) {
    const ProductSpec spec(s, n);
    const IntPolynomial t = expand_restricted_product(spec);
    const std::int64_t m = spec.degree() + 1;
    const auto got = character_sums_main00(spec, m);
    for (std::int64_t j = 0; j < m; ++j) {
      const auto& v = got[static_cast<std::size_t>(j)];
      c.count(v.value == t[static_cast<std::size_t>(j)], [&] {
        Json r = record(s, n, m, j, str(v.value), "main0", v.precision_bits);
        r["expected"] = str(t[static_cast<std::size_t>(j)]);
        return r;
      });
      if (single(p)) c.values.push_back(record(s, n, m, j, str(v.value), "main0", v.precision_bits));
    }
  }
  return c;
}

Check check_main1(const VerifyParams& p) {
  Check c{"main1"};
  c.notes["convention"] = p.convention;
  for (auto [s, n] : grid(p)) {
    const ProductSpec spec(s, n);
    const IntPolynomial oracle = cyclic_reduce(expand_restricted_product(spec), n + 1);
    for (std::int64_t j = 0; j <= n; ++j) {
      const BigInt v = p.convention == "as-printed" ? closed_form_main1_two_case(spec, j) : closed_form_main1(spec, j);
      c.count(v == oracle[static_cast<std::size_t>(j)], [&] {
        Json r = record(s, n, n + 1, j, str(v), "main1", 0);
        r["expected"] = str(oracle[static_cast<std::size_t>(j)]);
        return r;
      });
      if (single(p)) c.values.push_back(record(s, n, n + 1, j, str(v), "main1", 0));
    }
  }
  return c;
}

Check check_main00cor(const VerifyParams& p) {
  Check c{"main00cor"};
  for (auto [s, n] : grid(p)) {
    require_applicable(n >= 2, p, "main00cor needs n >= 2");
    const ProductSpec spec(s, n);
    for (std::int64_t m = 1; m <= n - 1; ++m) {
      if (p.has_modulus && m != p.modulus) continue;
      c.count(small_modulus_vanishing(spec, m), [&] {
        return Json{{"s", str(s)}, {"n", str(n)}, {"N", str(m)}};
      });
    }
  }
  return c;
}

Check check_div1(const VerifyParams& p) {
  Check c{"div1"};
  for (auto [s, n] : grid(p)) {
    const bool ok = s % 2 == 1 && n % 2 == 1;
    require_applicable(ok, p, "div1 needs s and n odd");
    if (!ok) continue;
    const ProductSpec spec(s, n);
    for (std::int64_t d : admissible_div1_divisors(spec)) {
      const auto v = divisor_coefficients_div1(spec, d);
      c.count(v.holds(), [&] {
        return Json{{"s", str(s)},
                    {"n", str(n)},
                    {"D", str(d)},
                    {"t_D", str(v.at_divisor)},
                    {"t_complement", str(v.at_complement)}};
      });
    }
  }
  return c;
}

Check check_peak1(const VerifyParams& p) {
  Check c{"peak1"};
  for (auto [s, n] : grid(p)) {
    const bool ok = s % 2 == 1 && n % 4 == 3;
    require_applicable(ok, p, "peak1 needs s odd and n = 3 (mod 4)");
    if (!ok) continue;
    const BigInt v = midpoint_zero_peak1(ProductSpec(s, n));
    c.count(sgn(v) == 0, [&] { return Json{{"s", str(s)}, {"n", str(n)}, {"value", str(v)}}; });
  }
  return c;
}

Check check_tau(const VerifyParams& p) {
  Check c{"tau"};
  c.notes["convention"] = p.convention;
  std::vector<int> ns;
  if (p.has_n) {
    ns.push_back(p.n);
  } else {
    for (int n = 1; n <= p.nmax; ++n) ns.push_back(n);
  }
  for (int n : ns) {
    for (std::int64_t j = 0; j <= n; ++j) {
      auto v = tau_progression(n, j, true);
      if (p.convention == "as-printed") v.value = closed_form_main1_two_case(ProductSpec(24, n), j);
      c.count(v.oracle && *v.oracle == v.value, [&] {
        Json r = record(24, n, n + 1, j, str(v.value), "tau", 0);
        r["expected"] = v.oracle ? str(*v.oracle) : "";
        return r;
      });
      if (p.has_n) c.values.push_back(record(24, n, n + 1, j, str(v.value), "tau", 0));
    }
  }
  return c;
}

Check check_maxpeak(const VerifyParams& p) {
  Check c{"maxpeak"};
  for (auto [s, n] : grid(p)) {
    const auto v = sandwich_inequality_check(ProductSpec(s, n));
    c.count(v.holds, [&] {
      return Json{{"s", str(s)},
                  {"n", str(n)},
                  {"max_coefficient", str(v.max_coefficient)},
                  {"unit_circle_log", str(v.unit_circle_log)},
                  {"abs_sum", str(v.abs_sum)}};
    });
  }
  const auto k = sudler_constant();
  c.count(std::abs(k.value - kSudlerReference) <= kSudlerTolerance,
          [&] { return Json{{"K", str(k.value)}, {"K_ref", str(kSudlerReference)}}; });
  c.notes["K"] = str(k.value);
  c.notes["K_ref"] = str(kSudlerReference);
  return c;
}

Check check_series(const VerifyParams& p, const std::string& label) {
  Check c{label};
  if (label == "jacobi") c.notes["convention"] = p.convention;
  const int s = label == "pentagonal" ? 1 : label == "hecke-rogers" ? 2 : 3;
  const Series series = label == "pentagonal" ? pentagonal_series(p.max_exponent)
                        : label == "hecke-rogers"
                            ? hecke_rogers_series(p.max_exponent)
                            : jacobi_series(p.max_exponent, parse_convention(p.convention));
  // Exponents 0..max are compared; products with n >= max reach all of them.
  const std::int64_t top = std::max<std::int64_t>(p.max_exponent, 1);
  for (std::int64_t n = 1; n <= top; ++n) {
    const std::int64_t up_to = std::min(n, p.max_exponent);
    const bool ok = stable_prefix_check(s, static_cast<int>(n), series, up_to);
    c.count(ok, [&] {
      const IntPolynomial t = expand_prefix(ProductSpec(s, static_cast<int>(n)), up_to);
      Json r{{"s", str(s)}, {"n", str(n)}};
      for (std::int64_t e = 0; e <= up_to; ++e) {
        if (t.coeff(e) != BigInt(static_cast<long>(series.coefficient(e)))) {
          r["exponent"] = str(e);
          r["product"] = str(t.coeff(e));
          r["series"] = str(series.coefficient(e));
          break;
        }
      }
      return r;
    });
  }
  return c;
}

Check check_cauchy(const VerifyParams& p) {
  Check c{"cauchy"};
  const int top = p.has_n ? p.n : static_cast<int>(std::max<std::int64_t>(p.max_exponent, 1));
  for (int n = p.has_n ? p.n : 1; n <= top; ++n) {
    c.count(cauchy_identity_check(n), [&] { return Json{{"n", str(n)}}; });
  }
  return c;
}

Check check_parity(const VerifyParams& p) {
  Check c{"co"};
  for (auto [s, n] : grid(p)) {
    const ProductSpec spec(s, n);
    const IntPolynomial t = expand_restricted_product(spec);
    const auto table = parity_count_table(s, n);
    for (std::size_t j = 0; j < table.size(); ++j) {
      const BigInt diff = table[j].difference();
      c.count(diff == t[j], [&] {
        return Json{{"s", str(s)}, {"n", str(n)}, {"j", str(static_cast<std::int64_t>(j))},
                    {"even", str(table[j].even)}, {"odd", str(table[j].odd)}, {"expected", str(t[j])}};
      });
    }
  }
  return c;
}

std::vector<int> sieve_ns(const VerifyParams& p) {
  std::vector<int> ns;
  if (p.has_n) {
    ns.push_back(p.n);
  } else {
    for (int n = 1; n <= std::min(p.nmax, kRestrictedCountMaxN); ++n) ns.push_back(n);
  }
  return ns;
}

std::vector<std::int64_t> sieve_moduli(const VerifyParams& p) {
  if (p.has_modulus) return {p.modulus};
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= p.nmod_max; ++m) out.push_back(m);
  return out;
}

Check check_sieve(const VerifyParams& p, const std::string& label) {
  Check c{label};
  for (int n : sieve_ns(p)) {
    if (n > kBruteForceMaxN) throw DomainError("sieve checks enumerate tuples and need n <= " + str(kBruteForceMaxN));
    for (std::int64_t m : sieve_moduli(p)) {
      for (std::int64_t r = 0; r < m; ++r) {
        const CharacterIndex psi(r, m);
        if (label == "egf") {
          std::vector<Cplx> t = character_power_sums(n, n, psi);
          for (auto& x : t) x = -x;
          c.count(egf_consistency_check(n, t, kSieveTolerance), [&] {
            return Json{{"n", str(n)}, {"N", str(m)}, {"r", str(r)}};
          });
          continue;
        }
        for (int k = 0; k <= std::min(n, kBruteForceMaxK); ++k) {
          const Cplx truth = f_psi_distinct_bruteforce(n, k, psi);
          Cplx got;
          if (label == "hfines") {
            got = f_psi_sieve(n, k, psi);
          } else if (label == "hz") {
            got = f_psi_cycle_index(n, k, psi);
          } else {
            got = f_psi_cycle_sum(n, k, psi);
          }
          c.count(std::abs(got - truth) <= kSieveTolerance, [&] {
            return Json{{"n", str(n)}, {"k", str(k)}, {"N", str(m)}, {"r", str(r)},
                        {"value", str(got)}, {"expected", str(truth)}};
          });
        }
      }
    }
  }
  return c;
}

Check check_rc(const VerifyParams& p) {
  Check c{"rc"};
  for (auto [s, n] : grid(p, kRestrictedCountMaxS, kRestrictedCountMaxN)) {
    if (s > kRestrictedCountMaxS || n > kRestrictedCountMaxN) {
      throw DomainError("the restricted count identity is enumerated for s <= 2 and n <= 6");
    }
    for (std::int64_t m : sieve_moduli(p)) {
      std::vector<int> ks(static_cast<std::size_t>(s), 0);
      while (true) {
        for (std::int64_t j = 0; j < m; ++j) {
          const auto v = restricted_count_identity_check(s, n, m, j, ks);
          c.count(v.holds, [&] {
            Json kj = Json::array();
            for (int k : ks) kj.push_back(str(k));
            return Json{{"s", str(s)}, {"n", str(n)}, {"N", str(m)}, {"j", str(j)}, {"k", kj},
                        {"count", str(static_cast<std::int64_t>(v.lhs))}, {"character_side", str(v.rhs)}};
          });
        }
        std::size_t i = 0;
        while (i < ks.size() && ks[i] == n) ks[i++] = 0;
        if (i == ks.size()) break;
        ++ks[i];
      }
    }
  }
  return c;
}

Check run_check(const std::string& label, const VerifyParams& p) {
  if (label == "main00" || label == "main0000") return check_filter(p, label);
  if (label == "main000") return check_main000(p);
  if (label == "main0") return check_main0(p);
  if (label == "main1") return check_main1(p);
  if (label == "main00cor") return check_main00cor(p);
  if (label == "div1") return check_div1(p);
  if (label == "peak1") return check_peak1(p);
  if (label == "tau") return check_tau(p);
  if (label == "maxpeak") return check_maxpeak(p);
  if (label == "pentagonal" || label == "jacobi" || label == "hecke-rogers") return check_series(p, label);
  if (label == "cauchy") return check_cauchy(p);
  if (label == "co") return check_parity(p);
  if (label == "hfines" || label == "hz" || label == "lws" || label == "egf") return check_sieve(p, label);
  if (label == "rc") return check_rc(p);
  throw std::invalid_argument("unknown theorem label: " + label);
}

Report verify_report(const std::vector<std::string>& labels, const VerifyParams& p, const Output& o) {
  std::vector<Check> checks;
  for (const auto& label : labels) checks.push_back(run_check(label, p));
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds(); });

  Report rep;
  rep.status = all ? kExitOk : kExitCheckFailed;
  if (o.format == "csv") {
    Json rows = Json::array();
    for (const auto& c : checks) {
      rows.push_back(Json{{"theorem", c.label},
                          {"holds", c.holds() ? "true" : "false"},
                          {"cases", str(static_cast<std::int64_t>(c.cases))},
                          {"failures", str(static_cast<std::int64_t>(c.failure_count))}});
    }
    rep.text = records_to_csv(rows);
    return rep;
  }
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j{{"theorem", c.label},
           {"holds", c.holds()},
           {"cases", str(static_cast<std::int64_t>(c.cases))},
           {"failure_count", str(static_cast<std::int64_t>(c.failure_count))},
           {"failures", c.failures}};
    if (!c.values.empty()) j["values"] = c.values;
    if (!c.notes.empty()) j["notes"] = c.notes;
    arr.push_back(std::move(j));
  }
  Json doc{{"command", "verify"}, {"status", all ? "pass" : "fail"}, {"checks", arr}};
  rep.text = doc.dump(2) + "\n";
  return rep;
}

// --- other subcommands -----------------------------------------------------------

Report records_report(const std::string& command, const std::string& label, const Json& records, bool ok,
                      const Output& o) {
  Report rep;
  rep.status = ok ? kExitOk : kExitCheckFailed;
  if (o.format == "csv") {
    rep.text = records_to_csv(records);
  } else {
    Json doc{{"command", command}, {"theorem", label}, {"status", ok ? "pass" : "fail"}, {"records", records}};
    rep.text = doc.dump(2) + "\n";
  }
  return rep;
}

ExpansionMethod parse_method(const std::string& m) {
  if (m == "schoolbook") return ExpansionMethod::schoolbook;
  if (m == "incremental") return ExpansionMethod::incremental;
  if (m == "power") return ExpansionMethod::power_recurrence;
  return ExpansionMethod::automatic;
}

Report expand_report(int s, int n, const std::string& method, const Output& o) {
  const ProductSpec spec(s, n);
  const IntPolynomial t = expand_restricted_product(spec, parse_method(method));
  Report rep;
  if (o.format == "json") {
    Json doc{{"command", "expand"}, {"s", str(s)}, {"n", str(n)}, {"degree", str(spec.degree())},
             {"coefficients", polynomial_to_json(t)}};
    rep.text = doc.dump(2) + "\n";
  } else {
    rep.text = polynomial_to_csv(t);
  }
  return rep;
}

Report progsum_report(int s, int n, std::int64_t modulus, std::int64_t j, bool has_j, const std::string& method,
                      const Output& o) {
  const ProductSpec spec(s, n);
  if (has_j) static_cast<void>(ProgressionQuery(modulus, j));
  const IntPolynomial oracle = cyclic_reduce(expand_restricted_product(spec), modulus);
  std::vector<CertifiedInteger> filter;
  std::vector<CertifiedInteger> trig;
  if (method == "main00" || method == "all") filter = character_sums_main00(spec, modulus);
  if (method == "main0000" || method == "all") trig = trig_forms_main0000(spec, modulus);

  Json records = Json::array();
  bool ok = true;
  for (std::int64_t r = 0; r < modulus; ++r) {
    if (has_j && r != j) continue;
    const auto idx = static_cast<std::size_t>(r);
    if (method == "oracle" || method == "all") records.push_back(record(s, n, modulus, r, str(oracle[idx]), "oracle", 0));
    if (!filter.empty()) {
      records.push_back(record(s, n, modulus, r, str(filter[idx].value), "main00", filter[idx].precision_bits));
      ok = ok && filter[idx].value == oracle[idx];
    }
    if (!trig.empty()) {
      records.push_back(record(s, n, modulus, r, str(trig[idx].value), "main0000", trig[idx].precision_bits));
      ok = ok && trig[idx].value == oracle[idx];
    }
  }
  return records_report("progsum", method == "oracle" ? "oracle" : method == "all" ? "main00,main0000" : method,
                        records, ok, o);
}

Report coeff_report(int s, int n, std::int64_t j, bool has_j, const Output& o) {
  const ProductSpec spec(s, n);
  if (has_j && (j < 0 || j > spec.degree())) throw DomainError("coeff needs 0 <= j <= N_{s,n}");
  const IntPolynomial t = expand_restricted_product(spec);
  const std::int64_t m = spec.degree() + 1;
  Json records = Json::array();
  bool ok = true;
  for (std::int64_t i = 0; i < m; ++i) {
    if (has_j && i != j) continue;
    const CertifiedInteger v = single_coefficient_main0(spec, i);
    records.push_back(record(s, n, m, i, str(v.value), "main0", v.precision_bits));
    records.push_back(record(s, n, m, i, str(t[static_cast<std::size_t>(i)]), "oracle", 0));
    ok = ok && v.value == t[static_cast<std::size_t>(i)];
  }
  return records_report("coeff", "main0", records, ok, o);
}

Report series_report(const std::string& kind, std::int64_t max_exponent, const std::string& convention,
                     const Output& o) {
  const Series series = kind == "pentagonal" ? pentagonal_series(max_exponent)
                        : kind == "hecke-rogers"
                            ? hecke_rogers_series(max_exponent)
                            : jacobi_series(max_exponent, parse_convention(convention));
  Report rep;
  if (o.format == "json") {
    Json doc{{"command", "series"}, {"kind", kind}};
    if (kind == "jacobi") doc["convention"] = convention;
    doc["series"] = series_to_json(series);
    rep.text = doc.dump(2) + "\n";
  } else {
    rep.text = series_to_csv(series);
  }
  return rep;
}

Report tau_report(int n, std::int64_t j, bool has_j, const Output& o) {
  if (n < 1) throw DomainError("tau needs n >= 1");
  if (has_j && (j < 0 || j > n)) throw DomainError("tau needs 0 <= j <= n");
  Json records = Json::array();
  bool ok = true;
  for (std::int64_t i = 0; i <= n; ++i) {
    if (has_j && i != j) continue;
    const auto v = tau_progression(n, i, true);
    Json r = record(24, n, n + 1, i, str(v.value), "tau", 0);
    r["oracle"] = v.oracle ? str(*v.oracle) : "";
    records.push_back(std::move(r));
    ok = ok && v.oracle && *v.oracle == v.value;
  }
  return records_report("tau", "tau", records, ok, o);
}

Report kconst_report(double rel_tol, const Output& o) {
  const auto k = sudler_constant(rel_tol);
  Json rec{{"K", str(k.value)},
           {"K_ref", str(kSudlerReference)},
           {"argmax_w", str(k.argmax_w)},
           {"quadrature_error", str(k.quadrature_error)}};
  Report rep;
  if (o.format == "csv") {
    rep.text = records_to_csv(Json::array({rec}));
  } else {
    Json doc{{"command", "kconst"}, {"theorem", "maxpeak"}};
    for (const auto& [key, v] : rec.items()) doc[key] = v;
    rep.text = doc.dump(2) + "\n";
  }
  return rep;
}

Report maxfit_report(int s, int n_min, int n_max, int step, const Output& o) {
  const AsymptoticFit fit = asymptotic_fit(s, n_min, n_max, step);
  Json points = Json::array();
  for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
    points.push_back(Json{{"n", str(fit.n_values[i])}, {"log_max", str(fit.log_max[i])}});
  }
  Report rep;
  if (o.format == "csv") {
    rep.text = records_to_csv(points);
    return rep;
  }
  Json doc{{"command", "maxfit"},
           {"theorem", "maxpeak"},
           {"s", str(s)},
           {"n_range", Json::array({str(n_min), str(n_max)})},
           {"step", str(step)},
           {"slope", str(fit.slope)},
           {"slope_per_s", str(fit.k_estimate())},
           {"K_ref", str(kSudlerReference)},
           {"intercept", str(fit.intercept)},
           {"residual_bound", str(fit.residual_bound)},
           {"log_band_constant", str(fit.log_band_constant)},
           {"points", points}};
  rep.text = doc.dump(2) + "\n";
  return rep;
}

void add_output_options(CLI::App* sub, Output& o, const std::string& default_format) {
  o.format = default_format;
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.path, "Write the report to this file instead of stdout");
}

}  // namespace

const std::vector<std::string>& verify_labels() {
  static const std::vector<std::string> labels = {
      "main00", "main0000",   "main000", "main0",  "main1", "main00cor", "div1", "peak1", "tau", "maxpeak",
      "pentagonal", "jacobi", "hecke-rogers", "cauchy", "co", "hfines", "hz",  "lws",   "egf", "rc"};
  return labels;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic tools for the products prod_{j<=n} (1 - q^j)^s", "qprod"};
  app.require_subcommand(1);

  Output o;
  std::function<Report()> action;

  int s = 0, n = 0;
  std::int64_t modulus = 0, j = 0;
  std::string method;

  auto* expand = app.add_subcommand("expand", "Coefficients of T_{s,n}");
  expand->add_option("--s", s)->required()->check(kPositive);
  expand->add_option("--n", n)->required()->check(kPositive);
  method = "auto";
  expand->add_option("--method", method)->check(CLI::IsMember({"auto", "schoolbook", "incremental", "power"}));
  Output expand_out;
  add_output_options(expand, expand_out, "csv");
  expand->callback([&] {
    o = expand_out;
    action = [&] { return expand_report(s, n, method, o); };
  });

  std::string progsum_method = "all";
  auto* progsum = app.add_subcommand("progsum", "Sums of coefficients along a residue class");
  progsum->add_option("--s", s)->required()->check(kPositive);
  progsum->add_option("--n", n)->required()->check(kPositive);
  progsum->add_option("--N", modulus)->required()->check(kPositive);
  auto* progsum_j = progsum->add_option("--j", j, "Residue (all residues when omitted)")->check(kNonNegative);
  progsum->add_option("--method", progsum_method)->check(CLI::IsMember({"all", "oracle", "main00", "main0000"}));
  Output progsum_out;
  add_output_options(progsum, progsum_out, "json");
  progsum->callback([&] {
    o = progsum_out;
    const bool has_j = progsum_j->count() > 0;
    action = [&, has_j] { return progsum_report(s, n, modulus, j, has_j, progsum_method, o); };
  });

  auto* coeff = app.add_subcommand("coeff", "Single coefficients through the character sum");
  coeff->add_option("--s", s)->required()->check(kPositive);
  coeff->add_option("--n", n)->required()->check(kPositive);
  auto* coeff_j = coeff->add_option("--j", j, "Exponent (all when omitted)")->check(kNonNegative);
  Output coeff_out;
  add_output_options(coeff, coeff_out, "json");
  coeff->callback([&] {
    o = coeff_out;
    const bool has_j = coeff_j->count() > 0;
    action = [&, has_j] { return coeff_report(s, n, j, has_j, o); };
  });

  VerifyParams vp;
  std::string theorem;
  bool all = false;
  auto* verify = app.add_subcommand("verify", "Check a labelled statement against the exact expansion");
  auto* v_theorem = verify->add_option("--theorem", theorem)->check(CLI::IsMember(verify_labels()));
  auto* v_all = verify->add_flag("--all", all, "Run every label");
  v_theorem->excludes(v_all);
  auto* v_s = verify->add_option("--s", vp.s)->check(kPositive);
  auto* v_n = verify->add_option("--n", vp.n)->check(kPositive);
  auto* v_N = verify->add_option("--N", vp.modulus)->check(kPositive);
  verify->add_option("--smax", vp.smax)->check(kPositive);
  verify->add_option("--nmax", vp.nmax)->check(kPositive);
  verify->add_option("--Nmax", vp.nmod_max, "Largest modulus for the character-sum identities")
      ->check(kPositive);
  verify->add_option("--max", vp.max_exponent, "Largest exponent for series checks")->check(kNonNegative);
  verify->add_option("--convention", vp.convention)->check(CLI::IsMember({"standard", "as-printed"}));
  Output verify_out;
  add_output_options(verify, verify_out, "json");
  verify->callback([&] {
    o = verify_out;
    vp.has_s = v_s->count() > 0;
    vp.has_n = v_n->count() > 0;
    vp.has_modulus = v_N->count() > 0;
    if (!all && theorem.empty()) throw CLI::ValidationError("verify", "give --theorem LABEL or --all");
    action = [&] { return verify_report(all ? verify_labels() : std::vector<std::string>{theorem}, vp, o); };
  });

  std::string kind;
  std::int64_t series_max = 30;
  std::string series_convention = "standard";
  auto* series = app.add_subcommand("series", "Truncated classical series");
  series->add_option("--kind", kind)->required()->check(CLI::IsMember({"pentagonal", "jacobi", "hecke-rogers"}));
  series->add_option("--max", series_max)->check(kNonNegative);
  series->add_option("--convention", series_convention)->check(CLI::IsMember({"standard", "as-printed"}));
  Output series_out;
  add_output_options(series, series_out, "csv");
  series->callback([&] {
    o = series_out;
    action = [&] { return series_report(kind, series_max, series_convention, o); };
  });

  auto* tau = app.add_subcommand("tau", "Progression sums of prod (1 - q^k)^24 modulo n+1");
  tau->add_option("--n", n)->required()->check(kPositive);
  auto* tau_j = tau->add_option("--j", j)->check(kNonNegative);
  Output tau_out;
  add_output_options(tau, tau_out, "json");
  tau->callback([&] {
    o = tau_out;
    const bool has_j = tau_j->count() > 0;
    action = [&, has_j] { return tau_report(n, j, has_j, o); };
  });

  double rel_tol = 1e-6;
  auto* kconst = app.add_subcommand("kconst", "Sudler's constant K");
  kconst->add_option("--rel-tol", rel_tol)->check(CLI::Range(1e-15, 1e-3));
  Output kconst_out;
  add_output_options(kconst, kconst_out, "json");
  kconst->callback([&] {
    o = kconst_out;
    action = [&] { return kconst_report(rel_tol, o); };
  });

  int fit_s = 1, n_min = 100, n_max = 300, step = 25;
  auto* maxfit = app.add_subcommand("maxfit", "Least-squares slope of log max |t_j| against n");
  maxfit->add_option("--s", fit_s)->check(kPositive);
  maxfit->add_option("--nmin", n_min)->check(kPositive);
  maxfit->add_option("--nmax", n_max)->check(kPositive);
  maxfit->add_option("--step", step)->check(kPositive);
  Output maxfit_out;
  add_output_options(maxfit, maxfit_out, "json");
  maxfit->callback([&] {
    o = maxfit_out;
    action = [&] { return maxfit_report(fit_s, n_min, n_max, step, o); };
  });

  std::vector<const char*> argv{"qprod"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qprod: " << e.what() << '\n';
    return kExitUsage;
  }

  Report rep;
  try {
    rep = action();
  } catch (const DomainError& e) {
    err << "qprod: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "qprod: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "qprod: resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const PrecisionError& e) {
    err << "qprod: precision: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "qprod: out of memory\n";
    return kExitResource;
  } catch (const std::runtime_error& e) {
    err << "qprod: " << e.what() << '\n';
    return kExitResource;
  }

  if (o.path.empty()) {
    out << rep.text;
  } else {
    std::ofstream file(o.path, std::ios::binary);
    if (!file) {
      err << "qprod: cannot open " << o.path << '\n';
      return kExitUsage;
    }
    file << rep.text;
  }
  return rep.status;
}

}  // namespace qprod::cli
