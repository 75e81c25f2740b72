#include <sstream>
#include <string>
#include <vector>

#include <Python.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qproducts/asymptotics.hpp"
#include "qproducts/char_formulas.hpp"
#include "qproducts/cli.hpp"
#include "qproducts/errors.hpp"
#include "qproducts/partition_oracle.hpp"
#include "qproducts/poly_core.hpp"

namespace py = pybind11;
using namespace qprod;

namespace {

py::int_ to_py(const BigInt& v) {
  const std::string digits = v.get_str(10);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::list to_py(const IntPolynomial& p) {
  py::list out;
  for (const auto& c : p.coeffs()) out.append(to_py(c));
  return out;
}

ExpansionMethod parse_method(const std::string& m) {
  if (m == "schoolbook") return ExpansionMethod::schoolbook;
  if (m == "incremental") return ExpansionMethod::incremental;
  if (m == "power") return ExpansionMethod::power_recurrence;
  if (m == "auto") return ExpansionMethod::automatic;
  throw DomainError("unknown expansion method: " + m);
}

py::dict certified(const CertifiedInteger& c) {
  py::dict d;
  d["value"] = to_py(c.value);
  d["precision_bits"] = c.precision_bits;
  d["residual"] = c.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qproducts, m) {
  m.doc() = "Exact coefficients and progression sums of prod_{j<=n} (1 - q^j)^s";

  static py::exception<ResourceLimitError> resource_error(m, "ResourceLimitError", PyExc_RuntimeError);
  static py::exception<PrecisionError> precision_error(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceLimitError& e) {
      PyErr_SetString(resource_error.ptr(), e.what());
    } catch (const PrecisionError& e) {
      PyErr_SetString(precision_error.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("degree", [](int s, int n) { return ProductSpec(s, n).degree(); }, py::arg("s"), py::arg("n"));
  m.def(
      "expand", [](int s, int n, const std::string& method) {
        return to_py(expand_restricted_product(ProductSpec(s, n), parse_method(method)));
      },
      py::arg("s"), py::arg("n"), py::arg("method") = "auto");
  m.def(
      "cyclic_reduce", [](int s, int n, std::int64_t modulus) {
        return to_py(cyclic_reduce(expand_restricted_product(ProductSpec(s, n)), modulus));
      },
      py::arg("s"), py::arg("n"), py::arg("N"));
  m.def(
      "progression_sum", [](int s, int n, std::int64_t modulus, std::int64_t j) {
        return to_py(progression_sum_oracle(ProductSpec(s, n), ProgressionQuery(modulus, j)));
      },
      py::arg("s"), py::arg("n"), py::arg("N"), py::arg("j"));
  m.def(
      "character_sum", [](int s, int n, std::int64_t modulus, std::int64_t j) {
        return certified(character_sum_main00(ProductSpec(s, n), ProgressionQuery(modulus, j)));
      },
      py::arg("s"), py::arg("n"), py::arg("N"), py::arg("j"));
  m.def(
      "trig_form", [](int s, int n, std::int64_t modulus, std::int64_t j) {
        return certified(trig_form_main0000(ProductSpec(s, n), ProgressionQuery(modulus, j)));
      },
      py::arg("s"), py::arg("n"), py::arg("N"), py::arg("j"));
  m.def(
      "coefficient", [](int s, int n, std::int64_t j) {
        return certified(single_coefficient_main0(ProductSpec(s, n), j));
      },
      py::arg("s"), py::arg("n"), py::arg("j"));
  m.def(
      "closed_form", [](int s, int n, std::int64_t j) { return to_py(closed_form_main1(ProductSpec(s, n), j)); },
      py::arg("s"), py::arg("n"), py::arg("j"));
  m.def(
      "tau_progression", [](int n, std::int64_t j) {
        const auto t = tau_progression(n, j, true);
        return py::make_tuple(to_py(t.value), t.oracle ? py::object(to_py(*t.oracle)) : py::object(py::none()));
      },
      py::arg("n"), py::arg("j"));
  m.def(
      "parity_counts", [](int s, int n, std::int64_t j) {
        const auto c = parity_counts(s, n, j);
        return py::make_tuple(to_py(c.even), to_py(c.odd));
      },
      py::arg("s"), py::arg("n"), py::arg("j"));
  m.def(
      "q_binomial", [](int mm, int r) { return to_py(q_binomial(mm, r)); }, py::arg("m"), py::arg("r"));
  m.def(
      "series", [](const std::string& kind, std::int64_t max_exponent, const std::string& convention) {
        Series s;
        if (kind == "pentagonal") {
          s = pentagonal_series(max_exponent);
        } else if (kind == "hecke-rogers") {
          s = hecke_rogers_series(max_exponent);
        } else if (kind == "jacobi") {
          s = jacobi_series(max_exponent,
                            convention == "as-printed" ? JacobiConvention::as_printed : JacobiConvention::standard);
        } else {
          throw DomainError("unknown series kind: " + kind);
        }
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& t : s.terms) out.emplace_back(t.exponent, t.coefficient);
        return out;
      },
      py::arg("kind"), py::arg("max_exponent"), py::arg("convention") = "standard");
  m.def(
      "sudler_constant", [](double rel_tol) {
        const auto k = sudler_constant(rel_tol);
        py::dict d;
        d["K"] = k.value;
        d["argmax_w"] = k.argmax_w;
        d["quadrature_error"] = k.quadrature_error;
        return d;
      },
      py::arg("rel_tol") = 1e-6);
  m.def(
      "max_abs_coefficient", [](int s, int n) { return to_py(max_abs_coefficient(ProductSpec(s, n))); },
      py::arg("s"), py::arg("n"));
  m.def("coefficient_cap", &coefficient_cap);
  m.def("set_coefficient_cap", &set_coefficient_cap, py::arg("cap"));
  m.def(
      "run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
