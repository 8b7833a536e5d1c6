#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iyb/certificate.hpp"
#include "iyb/constructors.hpp"
#include "iyb/error.hpp"
#include "iyb/search.hpp"

namespace py = pybind11;
using namespace iyb;

namespace {

py::dict check_to_dict(const CertificateCheck& c) {
  py::dict d;
  d["kind"] = c.kind;
  d["ok"] = c.report.ok;
  d["check"] = c.report.check;
  d["witness"] = c.report.witness;
  d["notes"] = c.report.notes;
  return d;
}

std::string provenance_text(const IYBStructure& s, const std::string& builder, const nlohmann::json& params) {
  require_verified(s, builder);
  return canonical_text(structure_certificate(s, Provenance{builder, params, std::nullopt}));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bijective 1-cocycles of finite groups: constructions, search and certificate verification.";

  // translators run in reverse order of registration: the base class goes first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  py::class_<Group>(m, "Group")
      .def(py::init(&parse_group_spec), py::arg("spec"))
      .def_property_readonly("order", &Group::order)
      .def_property_readonly("name", &Group::name)
      .def_property_readonly("generators", &Group::generators)
      .def("mul", &Group::mul)
      .def("inv", &Group::inv)
      .def("commutator", &Group::commutator)
      .def("element_order", &Group::element_order)
      .def("info", [](const Group& g) {
        auto inv = structural_invariants(g);
        py::dict d;
        d["order"] = g.order();
        d["center"] = inv.center;
        d["derived"] = inv.derived;
        d["nilpotency_class"] = inv.nilpotency_class ? py::cast(*inv.nilpotency_class) : py::none();
        d["element_orders"] = inv.element_orders;
        return d;
      })
      .def("__repr__", [](const Group& g) { return "<Group " + g.name() + " of order " + std::to_string(g.order()) + ">"; });

  m.def("howell_form", [](u64 modulus, std::size_t rank, std::vector<Vec> rows) {
    return zk::span_of(modulus, rank, std::move(rows)).rows();
  }, py::arg("modulus"), py::arg("rank"), py::arg("rows"), "Canonical Howell rows of the span of `rows` in (Z/modulus)^rank.");

  m.def("hertweck_certificate", [](u64 q, bool allow_any_odd_q) {
    py::gil_scoped_release release;
    HertweckGroups h = hertweck_groups(q);
    return provenance_text(hertweck_d_structure(h, allow_any_odd_q), "hertweck-d",
                           {{"q", q}, {"zeta", h.zeta}, {"allow_any_odd_q", allow_any_odd_q}});
  }, py::arg("q"), py::arg("allow_any_odd_q") = false);

  m.def("class2_odd_certificate", [](const std::string& spec) {
    Group g = parse_group_spec(spec);
    return provenance_text(class2_odd(g), "class2-odd", {{"group", spec}});
  }, py::arg("group"));

  m.def("heuristic_certificate", [](const std::string& spec, u64 seed, unsigned restarts, unsigned k, bool deterministic) {
    Group g = parse_group_spec(spec);
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.max_restarts = restarts;
    cfg.k = k;
    cfg.deterministic = deterministic;
    SearchResult r = [&] {
      py::gil_scoped_release release;
      return heuristic_lift(g, cfg);
    }();
    nlohmann::json params{{"group", spec}, {"restart", r.restart}, {"k", r.k}, {"max_restarts", restarts},
                          {"hyperplanes", "random"}, {"deterministic", deterministic}};
    return canonical_text(ideal_certificate(r.ring, r.ideal, nullptr, Provenance{"heuristic", params, seed}));
  }, py::arg("group"), py::arg("seed") = 42, py::arg("restarts") = 100, py::arg("k") = 0, py::arg("deterministic") = true);

  m.def("brute_force_count", [](const std::string& spec, unsigned k) {
    return brute_force_ideals(parse_group_spec(spec), k).size();
  }, py::arg("group"), py::arg("k"));

  m.def("verify_certificate", [](const std::string& text, bool full) {
    nlohmann::json c = parse_certificate(text);
    VerifyOptions vo;
    if (full) {
      vo.mode = CocycleMode::Full;
      vo.full_limit = ~u64{0};
    }
    CertificateCheck chk = [&] {
      py::gil_scoped_release release;
      return verify_certificate(c, vo);
    }();
    return check_to_dict(chk);
  }, py::arg("text"), py::arg("full") = false);

  m.def("canonical_text", [](const std::string& text) { return canonical_text(parse_certificate(text)); });
}
