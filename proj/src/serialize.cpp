#include "qproducts/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace qprod {

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

BigInt from_decimal(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  return v;
}

nlohmann::json polynomial_to_json(const IntPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_decimal(c));
  return out;
}

IntPolynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("coefficient JSON must be an array");
  std::vector<BigInt> coeffs;
  coeffs.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) throw std::invalid_argument("coefficients must be decimal strings");
    coeffs.push_back(from_decimal(item.get<std::string>()));
  }
  return IntPolynomial(std::move(coeffs));
}

std::string polynomial_to_csv(const IntPolynomial& p) {
  std::ostringstream os;
  os << "exponent,coefficient\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << i << ',' << to_decimal(p[i]) << '\n';
  return os.str();
}

IntPolynomial polynomial_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "exponent,coefficient") {
    throw std::invalid_argument("missing CSV header");
  }
  std::vector<BigInt> coeffs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed CSV row: " + line);
    const auto exponent = std::stoull(line.substr(0, comma));
    if (exponent >= coeffs.size()) coeffs.resize(exponent + 1);
    coeffs[exponent] = from_decimal(line.substr(comma + 1));
  }
  return IntPolynomial(std::move(coeffs));
}

nlohmann::json series_to_json(const Series& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms) {
    terms.push_back({{"exponent", std::to_string(t.exponent)}, {"coefficient", std::to_string(t.coefficient)}});
  }
  return {{"max_exponent", std::to_string(s.max_exponent)}, {"terms", terms}};
}

std::string series_to_csv(const Series& s) {
  std::ostringstream os;
  os << "exponent,coefficient\n";
  for (const auto& t : s.terms) os << t.exponent << ',' << t.coefficient << '\n';
  return os.str();
}

}  // namespace qprod
