#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "qproducts/poly_core.hpp"

inline qprod::BigInt big(oracle::i128 v) { return qprod::BigInt(oracle::to_string(v)); }

inline qprod::IntPolynomial poly_of(const std::vector<oracle::i128>& c) {
  std::vector<qprod::BigInt> out;
  out.reserve(c.size());
  for (auto v : c) out.push_back(big(v));
  return qprod::IntPolynomial(std::move(out));
}

inline qprod::IntPolynomial poly_of(const std::vector<std::int64_t>& c) {
  std::vector<qprod::BigInt> out;
  out.reserve(c.size());
  for (auto v : c) out.emplace_back(static_cast<long>(v));
  return qprod::IntPolynomial(std::move(out));
}
