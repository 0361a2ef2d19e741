#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hilbertkit/errors.hpp"
#include "hilbertkit/intersection.hpp"
#include "hilbertkit/io.hpp"
#include "hilbertkit/metric.hpp"
#include "hilbertkit/rigidity.hpp"
#include "hilbertkit/surface_group.hpp"

namespace py = pybind11;
using namespace hilbert;

namespace {

io::json to_json(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return io::json::parse(obj.cast<std::string>());
  const auto dumps = py::module_::import("json").attr("dumps");
  return io::json::parse(dumps(obj).cast<std::string>());
}

py::object from_json(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(hilbertkit, m) {
  m.doc() = "Hilbert geometry of convex projective domains";

  py::register_exception<Error>(m, "HilbertError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const io::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<ConvexDomain>(m, "Domain")
      .def_static("ellipse", &ConvexDomain::ellipse, py::arg("center"), py::arg("form"))
      .def_static("unit_ball", &ConvexDomain::unit_ball, py::arg("dim"))
      .def_static("pball", &ConvexDomain::pball, py::arg("p"), py::arg("center"), py::arg("radius") = 1.0)
      .def_static("transformed", &ConvexDomain::transformed, py::arg("base"), py::arg("map"))
      .def_static("from_json", [](const py::object& j) { return io::domain_from_json(to_json(j)); })
      .def("to_json", [](const ConvexDomain& d) { return from_json(io::domain_to_json(d)); })
      .def_property_readonly("dim", &ConvexDomain::dim)
      .def("center", &ConvexDomain::center)
      .def("contains", &ConvexDomain::contains)
      .def("boundary_residual", &ConvexDomain::boundary_residual)
      .def("chord", [](const ConvexDomain& d, const Vec& x, const Vec& y) {
        const Chord c = d.boundary_intersections(x, y);
        return py::make_tuple(c.a, c.b);
      })
      .def("boundary_samples", &ConvexDomain::boundary_samples)
      .def("random_interior_point", &ConvexDomain::random_interior_point, py::arg("seed"));

  py::class_<ProjectiveMap>(m, "ProjectiveMap")
      .def(py::init<const Mat&>())
      .def_static("identity", &ProjectiveMap::identity)
      .def_property_readonly("matrix", &ProjectiveMap::matrix)
      .def("__call__", &ProjectiveMap::apply_affine)
      .def("inverse", &ProjectiveMap::inverse)
      .def("__mul__", &ProjectiveMap::operator*)
      .def("distance_to", &ProjectiveMap::distance_to);

  m.def("cross_ratio", &cross_ratio);
  m.def("collinearity_defect", &collinearity_defect);
  m.def("distance", &hilbert_distance, py::arg("domain"), py::arg("x"), py::arg("y"));
  m.def("geodesic_point", &geodesic_point, py::arg("domain"), py::arg("x"), py::arg("y"), py::arg("t"));
  m.def("ball_boundary", &ball_boundary_sample, py::arg("domain"), py::arg("center"), py::arg("radius"),
        py::arg("k") = 64);
  m.def("metric_axioms", [](const ConvexDomain& d, int samples, std::uint64_t seed) {
    const auto r = metric_axiom_suite(d, samples, seed);
    py::dict out;
    out["samples"] = r.samples;
    out["symmetry_defect"] = r.symmetry_defect;
    out["triangle_defect"] = r.triangle_defect;
    out["additivity_defect"] = r.additivity_defect;
    return out;
  }, py::arg("domain"), py::arg("samples"), py::arg("seed"));

  m.def("fit_projective_map", [](const std::vector<Vec>& inputs, const std::vector<Vec>& outputs) {
    const FitResult r = fit_projective_map(inputs, outputs);
    return py::make_tuple(r.map, r.residual);
  });
  m.def("verify_isometry", &verify_isometry, py::arg("map"), py::arg("domain"), py::arg("pairs") = 100,
        py::arg("seed") = 0);

  py::class_<SurfaceGroup>(m, "SurfaceGroup")
      .def_static("genus2_octagon", &standard_genus2_group)
      .def_static("from_json", [](const py::object& j) { return io::group_from_json(to_json(j)); })
      .def("to_json", [](const SurfaceGroup& g) { return from_json(io::group_to_json(g)); })
      .def_property_readonly("genus", &SurfaceGroup::genus)
      .def_property_readonly("generators", &SurfaceGroup::generators)
      .def_property_readonly("domain", &SurfaceGroup::domain)
      .def("evaluate", [](const SurfaceGroup& g, const std::string& w) { return g.evaluate(GroupWord::parse(w)); })
      .def("act", [](const SurfaceGroup& g, const std::string& w, const Vec& p) {
        return g.act(GroupWord::parse(w), p);
      });

  py::class_<ClosedGeodesic>(m, "ClosedGeodesic")
      .def_property_readonly("word", [](const ClosedGeodesic& c) { return c.word.str(); })
      .def_readonly("length", &ClosedGeodesic::length)
      .def_readonly("power", &ClosedGeodesic::power)
      .def_readonly("repelling", &ClosedGeodesic::repelling)
      .def_readonly("attracting", &ClosedGeodesic::attracting)
      .def("__repr__", [](const ClosedGeodesic& c) {
        return "<ClosedGeodesic " + c.word.str() + " length=" + std::to_string(c.length) + ">";
      });

  m.def("canonical_word", [](const std::string& w) { return GroupWord::parse(w).canonical().str(); });
  m.def("closed_geodesic", [](const SurfaceGroup& g, const std::string& w) {
    return make_closed_geodesic(g, GroupWord::parse(w));
  });
  m.def("enumerate", &enumerate_closed_geodesics, py::arg("group"), py::arg("max_len"));

  m.def("intersection_count", [](const SurfaceGroup& g, const std::string& a, const std::string& b, int cutoff) {
    const auto ga = make_closed_geodesic(g, GroupWord::parse(a));
    const auto gb = make_closed_geodesic(g, GroupWord::parse(b));
    if (ga.word == gb.word) return static_cast<int>(self_intersections(g, ga, cutoff).size());
    return static_cast<int>(intersection_points(g, ga, gb, cutoff).size());
  }, py::arg("group"), py::arg("a"), py::arg("b"), py::arg("cutoff") = 6);
  m.def("is_simple", [](const SurfaceGroup& g, const std::string& w, int cutoff) {
    return is_simple(g, make_closed_geodesic(g, GroupWord::parse(w)), cutoff).simple;
  }, py::arg("group"), py::arg("word"), py::arg("cutoff") = 6);
  m.def("is_filling", [](const SurfaceGroup& g, const std::vector<std::string>& words, int cutoff) {
    const auto v = is_filling(g, GeodesicCollection::from_words(g, words), cutoff);
    py::dict out;
    out["filling"] = v.filling;
    out["V"] = v.V;
    out["E"] = v.E;
    out["F"] = v.F;
    out["euler"] = v.euler;
    out["target"] = v.target;
    out["reason"] = v.reason;
    return out;
  }, py::arg("group"), py::arg("words"), py::arg("cutoff") = 6);
}
