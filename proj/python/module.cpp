// Python bindings: a thin JSON-string interface over the same report
// functions the command-line tool uses.  The bioct package wraps these in
// dict-in/dict-out helpers.
#include <pybind11/pybind11.h>

#include "bioct/jsonio.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace bioct;

namespace {

std::string run(const std::function<json(const json&)>& fn,
                const std::string& input) {
  return fn(json::parse(input)).dump();
}

}  // namespace

PYBIND11_MODULE(_bioct, m) {
  m.doc() = "bi-octonion algebra toolkit (JSON-string core bindings)";

  py::register_exception<InvariantError>(m, "InvariantError");
  py::register_exception<TkkError>(m, "TkkError");
  py::register_exception<jsonio::JsonIoError>(m, "JsonIoError",
                                              PyExc_ValueError);

  m.def("algebra_build", [](const std::string& s) {
    return run([](const json& j) { return jsonio::algebra_build_report(j); }, s);
  }, py::arg("descriptor_json"),
     "Build a product algebra; returns dim, centroid data, Albert form.");

  m.def("algebra_invariants", [](const std::string& s) {
    return run([](const json& j) { return jsonio::algebra_invariants_report(j); }, s);
  }, py::arg("descriptor_json"),
     "Mod-2 invariants b1, b3, b6 plus the division and decomposability flags.");

  m.def("algebra_division", [](const std::string& s) {
    return run([](const json& j) { return jsonio::algebra_division_report(j); }, s);
  }, py::arg("descriptor_json"),
     "Division verdict with an isotropy witness when one exists.");

  m.def("algebra_isotopic", [](const std::string& s) {
    return run([](const json& j) { return jsonio::algebra_isotopic_report(j); }, s);
  }, py::arg("pair_json"),
     "Isotopy verdict for {\"field\":..., \"first\":..., \"second\":...}.");

  m.def("algebra_decompose", [](const std::string& s) {
    return run([](const json& j) { return jsonio::algebra_decompose_report(j); }, s);
  }, py::arg("descriptor_json"),
     "Decide decomposability and recover factor dims or the centroid d.");

  m.def("form_witt", [](const std::string& s) {
    return run([](const json& j) { return jsonio::form_witt_report(j); }, s);
  }, py::arg("form_json"), "Witt decomposition: anisotropic kernel + index.");

  m.def("form_en", [](const std::string& s, int n) {
    return jsonio::form_en_report(json::parse(s), n).dump();
  }, py::arg("form_json"), py::arg("n") = 3,
     "Cohomological invariant e_n of a form in I^n.");

  m.def("form_similar", [](const std::string& s) {
    return run([](const json& j) { return jsonio::form_similar_report(j); }, s);
  }, py::arg("pair_json"),
     "Similarity verdict for {\"first\":..., \"second\":...}, with a factor.");

  m.def("tkk_profile", [](const std::string& s) {
    return run([](const json& j) { return jsonio::tkk_profile_report(j); }, s);
  }, py::arg("descriptor_json"),
     "5-graded Lie algebra profile: dims, total, type label.");

  m.def("rost_construct", [](const std::string& s) {
    return run([](const json& j) { return jsonio::rost_construct_report(j); }, s);
  }, py::arg("spec_json"),
     "Build an Albert form and matching descriptor from a Rost-style spec.");

  m.def("selftest", [](std::uint64_t seed, int trials) {
    return jsonio::selftest_report(seed, trials).dump();
  }, py::arg("seed") = 0, py::arg("trials") = 100,
     "Run the acceptance criteria; trials is a percentage of the CI profile.");
}
