#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "arcres/arcs.hpp"
#include "arcres/design.hpp"
#include "arcres/geometry.hpp"
#include "arcres/pipeline.hpp"
#include "arcres/resolve.hpp"
#include "arcres/search.hpp"

namespace py = pybind11;
using namespace arcres;

namespace {

using PlanePtr = std::shared_ptr<ProjectivePlane>;

PlanePtr mutable_ptr(const std::shared_ptr<const ProjectivePlane>& p) { return std::const_pointer_cast<ProjectivePlane>(p); }

py::dict report_dict(const ValidationReport& r) {
  py::list v;
  for (const auto& x : r.violations()) {
    py::dict d;
    d["kind"] = std::string(to_string(x.kind));
    d["indices"] = x.indices;
    d["message"] = x.message;
    v.append(d);
  }
  py::dict out;
  out["valid"] = r.ok();
  out["violations"] = v;
  return out;
}

py::dict params_dict(const DesignParams& p) {
  py::dict d;
  d["v"] = p.v;
  d["k"] = p.k;
  d["lambda"] = p.lambda;
  d["r"] = p.r;
  d["b"] = p.b;
  d["n"] = p.n ? py::cast(*p.n) : py::none();
  d["s"] = p.s ? py::cast(*p.s) : py::none();
  d["q"] = p.q ? py::cast(*p.q) : py::none();
  return d;
}

py::dict row_dict(const ReportRow& r) {
  py::dict d;
  d["hyperoval_id"] = r.hyperoval_id;
  d["plane_label"] = r.plane_label;
  d["rank2"] = r.rank2;
  d["n_parallel_classes"] = r.n_parallel_classes;
  d["n_resolutions"] = r.n_resolutions;
  d["n_max_compatible_sets"] = r.n_max_compatible_sets;
  d["embed_valid"] = r.embed_valid ? py::cast(*r.embed_valid) : py::none();
  d["rank_bound"] = r.rank_bound ? py::cast(*r.rank_bound) : py::none();
  py::dict t;
  for (const auto& [stage, secs] : r.timings) t[py::str(stage)] = secs;
  d["timings"] = t;
  return d;
}

BitGraph graph_from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  BitGraph g(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ParameterError("edge endpoint out of range");
    g.add_edge(a, b);
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximal arcs, resolvable Steiner designs and compatible resolutions";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

  py::class_<Field, std::shared_ptr<Field>>(m, "Field")
      .def(py::init<unsigned, std::uint32_t>(), py::arg("t"), py::arg("modulus"))
      .def_static("default_modulus", &Field::default_modulus)
      .def_property_readonly("degree", &Field::degree)
      .def_property_readonly("modulus", &Field::modulus)
      .def_property_readonly("order", &Field::order)
      .def("add", [](const Field& f, std::uint32_t a, std::uint32_t b) { return f.add({a}, {b}).value; })
      .def("mul", [](const Field& f, std::uint32_t a, std::uint32_t b) { return f.mul({a}, {b}).value; })
      .def("inv", [](const Field& f, std::uint32_t a) { return f.inv({a}).value; })
      .def("pow", [](const Field& f, std::uint32_t a, std::uint64_t e) { return f.pow({a}, e).value; });

  py::class_<ProjectivePlane, PlanePtr>(m, "ProjectivePlane")
      .def(py::init<std::uint32_t, std::vector<std::vector<std::uint32_t>>, std::string>(), py::arg("order"),
           py::arg("lines"), py::arg("label") = "")
      .def_property_readonly("order", &ProjectivePlane::order)
      .def_property_readonly("num_points", &ProjectivePlane::num_points)
      .def_property_readonly("num_lines", &ProjectivePlane::num_lines)
      .def_property_readonly("lines", &ProjectivePlane::lines)
      .def_property_readonly("label", &ProjectivePlane::label)
      .def_property_readonly("has_coordinates", [](const ProjectivePlane& p) { return p.coordinates().has_value(); })
      .def("incident", &ProjectivePlane::incident)
      .def("to_text", [](const ProjectivePlane& p) {
        std::ostringstream os;
        write_plane(os, p);
        return os.str();
      });

  m.def(
      "build_pg2",
      [](unsigned t, std::optional<std::uint32_t> modulus) {
        auto f = std::make_shared<const Field>(t, modulus ? *modulus : Field::default_modulus(t));
        return std::make_shared<ProjectivePlane>(build_pg2(f));
      },
      py::arg("t"), py::arg("modulus") = py::none(), "PG(2, 2^t) in canonical point order");
  m.def(
      "load_plane",
      [](const std::string& text, std::uint32_t order, const std::string& label, std::optional<std::uint32_t> base) {
        std::istringstream in(text);
        return std::make_shared<ProjectivePlane>(load_plane(in, order, label, base));
      },
      py::arg("text"), py::arg("order"), py::arg("label") = "", py::arg("index_base") = py::none());
  m.def("dual_plane", [](const ProjectivePlane& p) { return std::make_shared<ProjectivePlane>(dual_plane(p)); });
  m.def("validate_plane", [](const ProjectivePlane& p) { return report_dict(validate_plane(p)); });

  py::class_<Arc>(m, "Arc")
      .def_property_readonly("plane", [](const Arc& a) { return mutable_ptr(a.plane); })
      .def_readonly("points", &Arc::points)
      .def_readonly("k", &Arc::k)
      .def_property_readonly("m", &Arc::m);

  m.def("validate_maximal_arc", [](const ProjectivePlane& p, const std::vector<std::uint32_t>& pts, std::uint32_t k) {
    return report_dict(validate_maximal_arc(p, pts, k));
  });
  m.def("make_arc", [](PlanePtr p, std::vector<std::uint32_t> pts, std::uint32_t k) { return make_arc(p, pts, k); });
  m.def("regular_hyperoval", [](PlanePtr p) { return regular_hyperoval(p); });
  m.def(
      "load_arc",
      [](const std::string& text, PlanePtr p, std::uint32_t k, std::optional<std::uint32_t> base) {
        std::istringstream in(text);
        return load_arc(in, p, k, base);
      },
      py::arg("text"), py::arg("plane"), py::arg("k"), py::arg("index_base") = py::none());
  m.def("dual_arc", [](const Arc& a) { return dual_arc(a); });

  py::class_<Design>(m, "Design")
      .def(py::init([](std::uint32_t v, std::uint32_t k, std::uint32_t lambda,
                       std::vector<std::vector<std::uint32_t>> blocks) {
             return Design(derive_params(v, k, lambda), std::move(blocks));
           }),
           py::arg("v"), py::arg("k"), py::arg("lam"), py::arg("blocks"))
      .def_property_readonly("params", [](const Design& d) { return params_dict(d.params()); })
      .def_property_readonly("blocks", &Design::blocks);

  m.def("extract_design", &extract_design);
  m.def("derive_params", [](std::uint32_t v, std::uint32_t k, std::uint32_t l) { return params_dict(derive_params(v, k, l)); });
  m.def("validate_design", [](const Design& d) { return report_dict(validate_design(d)); });
  m.def("rank2", [](const Design& d) { return rank2(incidence_matrix(d)); }, "2-rank of the incidence matrix");
  m.def("check_rank_conjecture", [](const Design& d, unsigned t) {
    auto r = check_rank_conjecture(d, t);
    py::dict out;
    out["t"] = r.t;
    out["rank"] = r.rank;
    out["bound"] = r.bound;
    out["holds"] = r.holds();
    out["equality"] = r.equality();
    return out;
  });

  m.def(
      "enumerate_cliques",
      [](std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, std::uint32_t size,
         unsigned jobs) { return enumerate_cliques(graph_from_edges(n, edges), size, {jobs}); },
      py::arg("n"), py::arg("edges"), py::arg("size"), py::arg("jobs") = 1);
  m.def(
      "count_cliques",
      [](std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, std::uint32_t size,
         unsigned jobs) { return count_cliques(graph_from_edges(n, edges), size, {jobs}); },
      py::arg("n"), py::arg("edges"), py::arg("size"), py::arg("jobs") = 1);

  py::class_<ParallelClass>(m, "ParallelClass").def_readonly("blocks", &ParallelClass::blocks);
  py::class_<Resolution>(m, "Resolution").def_readonly("classes", &Resolution::classes);
  py::class_<CompatibleSet>(m, "CompatibleSet").def_readonly("resolutions", &CompatibleSet::resolutions);

  m.def("parallel_classes", [](const Design& d, unsigned jobs) { return parallel_classes(d, {jobs}); },
        py::arg("design"), py::arg("jobs") = 1);
  m.def(
      "resolutions",
      [](const Design& d, const std::vector<ParallelClass>& c, unsigned jobs) { return resolutions(d, c, {jobs}); },
      py::arg("design"), py::arg("classes"), py::arg("jobs") = 1);
  m.def("compatible", &compatible, py::arg("a"), py::arg("b"), py::arg("classes"));
  m.def(
      "max_compatible_sets",
      [](const Design& d, const std::vector<ParallelClass>& c, const std::vector<Resolution>& r, unsigned jobs) {
        return max_compatible_sets(d, c, r, {jobs});
      },
      py::arg("design"), py::arg("classes"), py::arg("resolutions"), py::arg("jobs") = 1);
  m.def(
      "embed",
      [](const Design& d, const CompatibleSet& s, const std::vector<Resolution>& r, const std::vector<ParallelClass>& c) {
        return std::make_shared<ProjectivePlane>(embed(d, s, r, c).plane);
      },
      py::arg("design"), py::arg("compatible_set"), py::arg("resolutions"), py::arg("classes"));

  m.def(
      "run_pipeline",
      [](const Arc& hyperoval, const std::string& id, unsigned jobs) {
        return row_dict(run_pipeline(hyperoval, {id, jobs}).row);
      },
      py::arg("hyperoval"), py::arg("hyperoval_id") = "regular", py::arg("jobs") = 1,
      "Report row for the dual-arc design of a hyperoval");
}
