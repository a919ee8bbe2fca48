#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "recmahler/functions.hpp"
#include "recmahler/identities.hpp"
#include "recmahler/probe.hpp"
#include "recmahler/report_json.hpp"

namespace py = pybind11;
using namespace recmahler;

namespace {

// Python ints cross as decimal text so nothing is truncated to 64 bits.
std::vector<BigInt> big_ints(const std::vector<py::int_>& xs) {
  std::vector<BigInt> out;
  for (const auto& x : xs) out.emplace_back(py::str(x).cast<std::string>());
  return out;
}

LinearRecurrence make_rec(const std::vector<py::int_>& c, const std::vector<py::int_>& init) {
  return LinearRecurrence::make(big_ints(c), big_ints(init));
}

std::string dumps(const report::Json& j) { return j.dump(); }

std::string analyze(const std::vector<py::int_>& c, const std::vector<py::int_>& init, const std::string& place,
                    const std::vector<std::string>& point) {
  const LinearRecurrence rec = make_rec(c, init);
  const Place pl = Place::parse(place);
  report::Json j;
  j["condition"] = report::to_json(check_condition(rec, pl));
  if (!point.empty()) {
    MPoint z{{}, pl};
    for (const auto& s : point) z.coords.push_back(parse_rat(s));
    j["omega"] = report::to_json(check_omega(OmegaTransform::companion(rec), z));
  }
  return dumps(j);
}

std::string evaluate(const std::string& function, const std::vector<py::int_>& c, const std::vector<py::int_>& init,
                     const std::string& a, const std::string& x, const std::string& y, int dx, int dy,
                     const std::string& place, long prec_bits, long padic_digits) {
  const FunctionInstance inst{make_rec(c, init), parse_rat(a), Place::parse(place), parse_function_id(function)};
  const auto r = jet_eval(inst, parse_rat(x), parse_rat(y), dx, dy, Precision{prec_bits, padic_digits});
  return dumps(report::to_json(r));
}

std::string verify_suite(const std::string& place, long prec_bits, long padic_digits) {
  report::Json out = report::Json::array();
  for (const auto& s : default_suite(Place::parse(place), Precision{prec_bits, padic_digits}))
    out.push_back(report::to_json(verify(s.id, s.params)));
  return dumps(out);
}

std::string relation(const std::vector<std::string>& values, const py::int_& height, long digits, long degree) {
  std::vector<LabeledValue> lv;
  const mpfr_prec_t bits = bits_for_digits(digits);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rat q = parse_rat(values[i]);
    lv.push_back({"v" + std::to_string(i), ComplexBall::from_rat(q, bits),
                  [q](mpfr_prec_t b) { return ComplexBall::from_rat(q, b); }});
  }
  const BigInt h(py::str(height).cast<std::string>());
  return dumps(report::to_json(degree == 1 ? integer_relation(lv, h, digits) : algebraic_probe(lv, degree, h, digits)));
}

std::string rank_report(const std::string& mode, const std::vector<std::string>& betas, int M) {
  std::vector<Rat> bs;
  for (const auto& b : betas) bs.push_back(parse_rat(b));
  return dumps(report::to_json(rank_check(mode == "SSS" ? RankMode::SSS : RankMode::RRR, bs, M)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of recmahler; the package wraps these calls and decodes their JSON.";

  static py::exception<Error> error(m, "RecmahlerError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(code_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("SCHEMA") = report::kSchema;
  m.attr("__version__") = report::kVersion;

  m.def("run_cli", [](const std::vector<std::string>& args) {
    const auto o = cli::run(args);
    return py::make_tuple(o.exit_code, o.out, o.err);
  }, py::arg("args"), "Same as the command line; returns (exit_code, stdout, stderr).");

  m.def("term", [](const std::vector<py::int_>& c, const std::vector<py::int_>& init, std::size_t k) {
    return py::int_(py::str(to_string(make_rec(c, init).term(k))));
  }, py::arg("c"), py::arg("init"), py::arg("k"));

  m.def("analyze", &analyze, py::arg("c"), py::arg("init"), py::arg("place") = "inf",
        py::arg("point") = std::vector<std::string>{});
  m.def("evaluate", &evaluate, py::arg("function"), py::arg("c"), py::arg("init"), py::arg("a"), py::arg("x"),
        py::arg("y"), py::arg("dx") = 0, py::arg("dy") = 0, py::arg("place") = "inf", py::arg("prec_bits") = 256,
        py::arg("padic_digits") = 64);
  m.def("verify_suite", &verify_suite, py::arg("place") = "inf", py::arg("prec_bits") = 256,
        py::arg("padic_digits") = 64);
  m.def("relation", &relation, py::arg("values"), py::arg("height"), py::arg("digits"), py::arg("degree") = 1);
  m.def("rank_check", &rank_report, py::arg("mode"), py::arg("betas"), py::arg("M"));

  m.def("transfer_A", [](unsigned k) { return transfer_A(k).to_string(transfer_variable_names(k, false)); });
  m.def("transfer_B", [](unsigned k) { return transfer_B(k).to_string(transfer_variable_names(k, true)); });
  m.def("transfer_C", [](unsigned k) { return transfer_C(k).to_string(transfer_variable_names(k, true)); });
}
