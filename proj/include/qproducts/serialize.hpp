#pragma once

// Text encodings. Coefficients are written as decimal strings because they
// outgrow 64 bits quickly.
//
//   JSON: ["1", "-1", "-1", "1"]          index = exponent
//   CSV:  exponent,coefficient\n0,1\n...

#include <string>

#include <json.hpp>

#include "qproducts/partition_oracle.hpp"
#include "qproducts/poly_core.hpp"

namespace qprod {

std::string to_decimal(const BigInt& x);
BigInt from_decimal(const std::string& text);

nlohmann::json polynomial_to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const nlohmann::json& j);
std::string polynomial_to_csv(const IntPolynomial& p);
IntPolynomial polynomial_from_csv(const std::string& text);

nlohmann::json series_to_json(const Series& s);
std::string series_to_csv(const Series& s);

}  // namespace qprod
