// Python module nbl._core. Structured results cross the boundary as JSON
// text (the same records the CLI prints); nbl/__init__.py decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nbl/errors.hpp"
#include "nbl/io.hpp"
#include "nbl/verify.hpp"

namespace py = pybind11;
using namespace nbl;

namespace {

EnumerationSpec make_spec(const PermGroup& g, const std::string& classes, const std::string& profile,
                          const std::string& base, const std::string& equiv, const std::string& cover) {
  EnumerationSpec s;
  s.base = parse_base(base);
  s.equivalence = parse_equivalence(equiv);
  if (cover == "galois") {
    s.cover = CoverMode::galois();
  } else if (cover == "transitive") {
    s.cover = CoverMode::transitive();
  } else if (cover != "any") {
    throw ParseError("unknown cover mode '" + cover + "'");
  }
  if (!profile.empty()) {
    ICIProfile p;
    p.counts = parse_class_counts(g, profile);
    s.classes = p;
  } else {
    s.classes = parse_class_list(g, classes);
  }
  return s;
}

OrbitOptions options(unsigned threads) {
  OrbitOptions o;
  o.threads = std::max(1U, threads);
  return o;
}

std::vector<Elem> elements(const PermGroup& g, const std::vector<std::string>& cycles) {
  std::vector<Elem> out;
  for (const auto& c : cycles) out.push_back(g.index_of(Perm::from_cycles(c, g.degree())));
  return out;
}

std::string classes_json(const PermGroup& g) {
  json out = json::array();
  const ClassTable& t = g.classes();
  for (ClassId c = 0; c < t.size(); ++c) {
    const Elem rep = t.representative(c);
    out.push_back({{"id", c},
                   {"representative", g.element(rep).cycles()},
                   {"size", t[c].members.size()},
                   {"element_order", g.element_order(rep)}});
  }
  return out.dump();
}

std::string components_json(const std::string& spec, std::size_t r, const std::string& classes,
                            const std::string& profile, const std::string& base, const std::string& equiv,
                            const std::string& cover, unsigned threads) {
  const PermGroup g = parse_group_spec(spec);
  const Decomposition d = decompose_components(g, r, make_spec(g, classes, profile, base, equiv, cover),
                                               options(threads));
  json list = json::array();
  for (const Component& c : d.components) list.push_back(component_to_json(spec, c));
  json out = {{"group", g.name()}, {"r", r}, {"components", list}, {"tuples", d.tuples}, {"complete", d.complete}};
  if (!d.complete) out["reason"] = d.reason;
  return out.dump();
}

std::string series_json(const std::string& spec, long long r_min, long long r_max, const std::string& classes,
                        const std::string& base, const std::string& equiv, const std::string& cover,
                        unsigned threads) {
  const PermGroup g = parse_group_spec(spec);
  const CountSeries s = count_series(g, make_spec(g, classes, "", base, equiv, cover), r_min, r_max, options(threads));
  json points = json::object();
  for (const auto& [r, n] : s.points) points[std::to_string(r)] = n;
  json out = {{"points", points}, {"truncated", s.truncated}};
  if (s.period) out["period"] = {{"period", s.period->period}, {"onset", s.period->onset}};
  return out.dump();
}

std::uint64_t hf(const std::string& spec, const std::vector<std::string>& subgroup, const std::string& xi,
                 std::size_t r, bool strict) {
  const PermGroup g = parse_group_spec(spec);
  const HfResult res = hf_count(g, elements(g, subgroup), parse_class_counts(g, xi), r, strict);
  if (!res.complete) throw BudgetExceeded("hf", res.reason, res.count);
  return res.count;
}

py::tuple rational(const std::string& spec, const std::string& profile) {
  const PermGroup g = parse_group_spec(spec);
  ICIProfile p;
  p.counts = parse_class_counts(g, profile);
  const RationalityResult res = is_globally_rational(g, p);
  py::object m = res.witness_m ? py::object(py::int_(*res.witness_m)) : py::object(py::none());
  py::object c = res.moved_class ? py::object(py::str(g.element(g.classes().representative(*res.moved_class)).cycles()))
                                 : py::object(py::none());
  return py::make_tuple(res.rational, m, c);
}

std::string lift_json(const std::vector<std::string>& tuple) {
  const CentralExtension e = builtin_a4_extension();
  const LiftValue v = lifting_invariant(NielsenTuple::from_cycles(e.base(), tuple), e);
  return json{{"element", e.cover().element(v.element).cycles()}, {"degree", v.degree}}.dump();
}

std::string cpfv_json(std::size_t r_min, std::size_t r_max, unsigned threads) {
  const CentralExtension e = builtin_a4_extension();
  return cpfv_to_json("A4", e, cpfv_probe(e.base(), e, EnumerationSpec{}, r_min, r_max, options(threads))).dump();
}

std::vector<std::string> braid(const std::string& spec, const std::vector<std::string>& tuple, std::size_t i,
                               bool inverse) {
  const PermGroup g = parse_group_spec(spec);
  const NielsenTuple t = apply_braid(NielsenTuple::from_cycles(g, tuple), i,
                                     inverse ? Direction::Inverse : Direction::Forward);
  std::vector<std::string> out;
  for (Elem e : t.entries()) out.push_back(g.element(e).cycles());
  return out;
}

std::string verify_json(const std::string& suite, unsigned threads) {
  VerifyOptions o;
  o.threads = std::max(1U, threads);
  SuiteResult res;
  {
    py::gil_scoped_release unlock;
    res = run_suite(suite, o);
  }
  return json{{"suite", res.suite},   {"passed", res.passed}, {"checks", res.checks},
              {"failures", res.failures}, {"notes", res.notes},   {"failed", res.failed}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "braid orbits of Nielsen classes";

  auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base_error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base_error.ptr());

  m.def("group_order", [](const std::string& spec) { return parse_group_spec(spec).order(); });
  m.def("classes_json", [](const std::string& spec) { return classes_json(parse_group_spec(spec)); });
  m.def("components_json", &components_json, py::arg("group"), py::arg("r"), py::arg("classes") = "all",
        py::arg("profile") = "", py::arg("base") = "p1", py::arg("equiv") = "marked", py::arg("cover") = "any",
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("series_json", &series_json, py::arg("group"), py::arg("r_min"), py::arg("r_max"),
        py::arg("classes") = "all", py::arg("base") = "p1", py::arg("equiv") = "marked", py::arg("cover") = "any",
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("hf_count", &hf, py::arg("group"), py::arg("subgroup"), py::arg("xi"), py::arg("r"),
        py::arg("strict") = false, py::call_guard<py::gil_scoped_release>());
  m.def("is_rational", &rational, py::arg("group"), py::arg("profile"));
  m.def("lift_json", &lift_json, py::arg("tuple"));
  m.def("cpfv_json", &cpfv_json, py::arg("r_min"), py::arg("r_max"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("braid", &braid, py::arg("group"), py::arg("tuple"), py::arg("i"), py::arg("inverse") = false);
  m.def("suite_names", &suite_names);
  m.def("verify_json", &verify_json, py::arg("suite"), py::arg("threads") = 1);
}
