#include <doctest.h>

#include <algorithm>
#include <random>

#include "qproducts/errors.hpp"
#include "qproducts/poly_core.hpp"
#include "test_support.hpp"

using namespace qprod;

namespace {

const ExpansionMethod kMethods[] = {ExpansionMethod::schoolbook, ExpansionMethod::incremental,
                                    ExpansionMethod::power_recurrence, ExpansionMethod::automatic};

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ProductSpec(0, 3), DomainError);
  CHECK_THROWS_AS(ProductSpec(2, 0), DomainError);
  CHECK(ProductSpec(3, 4).degree() == 30);
  CHECK_THROWS_AS(ProgressionQuery(0, 0), DomainError);
  CHECK_THROWS_AS(ProgressionQuery(4, 4), DomainError);
  CHECK_THROWS_AS(ProgressionQuery(4, -1), DomainError);
}

TEST_CASE("small expansions") {
  CHECK(expand_restricted_product(ProductSpec(1, 2)) == IntPolynomial({1, -1, -1, 1}));
  CHECK(expand_restricted_product(ProductSpec(2, 1)) == IntPolynomial({1, -2, 1}));
  CHECK(expand_restricted_product(ProductSpec(1, 3)) == IntPolynomial({1, -1, -1, 0, 1, 1, -1}));
}

TEST_CASE("every method equals the subset-tuple count") {
  for (int s = 1; s <= 4; ++s) {
    for (int n = 1; s * n <= 16; ++n) {
      const IntPolynomial expected = poly_of(oracle::subset_expand(s, n));
      for (auto m : kMethods) {
        CAPTURE(s);
        CAPTURE(n);
        CHECK(expand_restricted_product(ProductSpec(s, n), m) == expected);
      }
    }
  }
}

TEST_CASE("methods are bit-identical to schoolbook on larger products") {
  for (auto [s, n] : {std::pair{1, 40}, std::pair{2, 25}, std::pair{5, 12}, std::pair{24, 6}, std::pair{7, 9}}) {
    const ProductSpec spec(s, n);
    const IntPolynomial base = expand_restricted_product(spec, ExpansionMethod::schoolbook);
    CHECK(base == poly_of(oracle::naive_expand(s, n)));
    for (auto m : kMethods) CHECK(expand_restricted_product(spec, m) == base);
  }
}

TEST_CASE("factor order does not matter") {
  std::mt19937 rng(12345);
  for (auto [s, n] : {std::pair{1, 9}, std::pair{3, 6}, std::pair{2, 10}}) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      IntPolynomial acc = IntPolynomial::one();
      for (int j : order) acc = multiply(acc, binomial_power(j, s));
      CHECK(acc == expand_restricted_product(ProductSpec(s, n)));
    }
  }
}

TEST_CASE("shape of T_{s,n}") {
  for (int s = 1; s <= 5; ++s) {
    for (int n = 1; n <= 12; ++n) {
      const ProductSpec spec(s, n);
      const IntPolynomial t = expand_restricted_product(spec);
      CHECK(t.degree() == spec.degree());
      CHECK(static_cast<std::int64_t>(t.size()) == spec.degree() + 1);
      CHECK(t[0] == 1);
      CHECK(t[static_cast<std::size_t>(spec.degree())] == (spec.odd_sign() ? -1 : 1));
      const auto refl = reverse_negate_check(t, spec);
      CHECK(refl.holds);
      CHECK(refl.sign == (spec.odd_sign() ? -1 : 1));
      CHECK(progression_sum_oracle(spec, ProgressionQuery(1, 0)) == 0);
    }
  }
}

TEST_CASE("reflection examples") {
  CHECK(reverse_negate_check(IntPolynomial({1, -1, -1, 0, 1, 1, -1}), ProductSpec(1, 3)).sign == -1);
  CHECK(reverse_negate_check(IntPolynomial({1, -2, 1}), ProductSpec(2, 1)).holds);
  CHECK(reverse_negate_check(IntPolynomial({1, -1, -1, 1}), ProductSpec(1, 2)).holds);
  CHECK_FALSE(reverse_negate_check(IntPolynomial({1, -1, 0, 1}), ProductSpec(1, 2)).holds);
}

TEST_CASE("cyclic_reduce") {
  CHECK(cyclic_reduce(IntPolynomial({1, -1, -1, 1}), 2) == IntPolynomial({0, 0}));
  const IntPolynomial t13{1, -1, -1, 0, 1, 1, -1};
  const IntPolynomial r3 = cyclic_reduce(t13, 3);
  CHECK(r3.size() == 3);
  CHECK(r3 == IntPolynomial({0, 0, 0}));
  CHECK(cyclic_reduce(IntPolynomial({3, 4, 5}), 1) == IntPolynomial({12}));
  CHECK_THROWS_AS(cyclic_reduce(t13, 0), DomainError);

  const auto naive = oracle::naive_expand(3, 7);
  const IntPolynomial t = expand_restricted_product(ProductSpec(3, 7));
  for (std::int64_t m = 1; m <= 90; ++m) {
    const IntPolynomial r = cyclic_reduce(t, m);
    CHECK(r.sum() == t.sum());
    CHECK(r == poly_of(oracle::residue_sums(naive, m)));
  }
}

TEST_CASE("progression sum examples") {
  CHECK(progression_sum_oracle(ProductSpec(1, 4), ProgressionQuery(5, 0)) == 4);
  CHECK(progression_sum_oracle(ProductSpec(1, 4), ProgressionQuery(5, 1)) == -1);
  CHECK(progression_sum_oracle(ProductSpec(1, 3), ProgressionQuery(1, 0)) == 0);
  CHECK(progression_sum_oracle(ProductSpec(2, 2), ProgressionQuery(3, 1)) == -3);
  CHECK(progression_sum_oracle(ProductSpec(2, 2), ProgressionQuery(7, 0)) == 1);
}

TEST_CASE("prefix expansion") {
  for (auto m : kMethods) {
    const ProductSpec spec(3, 20);
    const IntPolynomial full = expand_restricted_product(spec);
    for (std::int64_t limit : {0L, 1L, 17L, 300L, 629L, 630L, 5000L}) {
      const IntPolynomial p = expand_prefix(spec, limit, m);
      const std::int64_t top = std::min<std::int64_t>(limit, spec.degree());
      CHECK(static_cast<std::int64_t>(p.size()) == top + 1);
      for (std::int64_t i = 0; i <= top; ++i) CHECK(p[static_cast<std::size_t>(i)] == full[static_cast<std::size_t>(i)]);
    }
  }
  CHECK_THROWS_AS(expand_prefix(ProductSpec(1, 3), -1), DomainError);
}

TEST_CASE("coefficient cap") {
  const std::size_t old = coefficient_cap();
  set_coefficient_cap(100);
  CHECK_THROWS_AS(expand_restricted_product(ProductSpec(1, 20)), ResourceLimitError);
  CHECK_NOTHROW(expand_restricted_product(ProductSpec(1, 10)));
  set_coefficient_cap(old);
  CHECK(coefficient_cap() == old);
}

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial a{1, 2};
  const IntPolynomial b{0, 0, 3, 0};
  CHECK(a + b == IntPolynomial({1, 2, 3}));
  CHECK(a - a == IntPolynomial::zero(1));
  CHECK((a - a).degree() == -1);
  CHECK(multiply(a, a) == IntPolynomial({1, 4, 4}));
  CHECK(power(a, 3) == IntPolynomial({1, 6, 12, 8}));
  CHECK(shifted(a, 2) == IntPolynomial({0, 0, 1, 2}));
  CHECK(binomial_power(2, 3) == IntPolynomial({1, 0, -3, 0, 3, 0, -1}));
  CHECK(a.coeff(7) == 0);
  CHECK(IntPolynomial({1, 2, 0, 0}) == IntPolynomial({1, 2}));
}
