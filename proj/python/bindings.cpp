#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcactus/block_cut.hpp"
#include "gcactus/diagnostics.hpp"
#include "gcactus/embedder.hpp"
#include "gcactus/error.hpp"
#include "gcactus/experiment.hpp"
#include "gcactus/families.hpp"
#include "gcactus/io.hpp"
#include "gcactus/optimizer.hpp"
#include "gcactus/svg.hpp"
#include "gcactus/verify.hpp"

namespace py = pybind11;
using namespace gcactus;

namespace {

using array2 = py::array_t<double, py::array::c_style | py::array::forcecast>;

array2 to_array(const embedding& e) {
    array2 a({static_cast<py::ssize_t>(e.points.size()), py::ssize_t{2}});
    auto m = a.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < m.shape(0); ++i) {
        m(i, 0) = e.points[i].x;
        m(i, 1) = e.points[i].y;
    }
    return a;
}

embedding from_array(const array2& a) {
    if (a.ndim() != 2 || a.shape(1) != 2) throw geometry_error("expected an array of shape (n, 2)");
    auto m = a.unchecked<2>();
    embedding e;
    for (py::ssize_t i = 0; i < m.shape(0); ++i) e.points.push_back({m(i, 0), m(i, 1)});
    return e;
}

}  // namespace

PYBIND11_MODULE(_gcactus, m) {
    m.doc() = "Greedy embeddings of Christmas cactus graphs";

    auto base = py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<graph_error>(m, "GraphError", base.ptr());
    py::register_exception<geometry_error>(m, "GeometryError", base.ptr());
    py::register_exception<embed_error>(m, "EmbedError", base.ptr());
    py::register_exception<parse_error>(m, "ParseError", base.ptr());

    py::class_<graph>(m, "Graph")
        .def(py::init([](int n, const std::vector<edge>& edges, std::vector<std::string> labels) {
                 return build_graph(n, edges, std::move(labels));
             }),
             py::arg("vertex_count"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_readonly("vertex_count", &graph::vertex_count)
        .def_readonly("edges", &graph::edges)
        .def_readonly("labels", &graph::labels)
        .def("has_edge", &graph::has_edge)
        .def("__eq__", [](const graph& a, const graph& b) { return a == b; })
        .def("__repr__", [](const graph& g) {
            return "Graph(vertex_count=" + std::to_string(g.vertex_count) + ", edges=" +
                   std::to_string(g.edges.size()) + ")";
        });

    py::class_<family_instance>(m, "Family")
        .def_readonly("graph", &family_instance::g)
        .def_readonly("k", &family_instance::k)
        .def_property_readonly("kind", [](const family_instance& f) { return to_string(f.kind); })
        .def_readonly("cycle_vertices", &family_instance::cycle_vertices)
        .def_readonly("roots", &family_instance::roots)
        .def_property_readonly("copies",
                               [](const family_instance& f) {
                                   py::list out;
                                   for (const auto& c : f.copies)
                                       out.append(py::dict(py::arg("u") = c.u, py::arg("v") = c.v, py::arg("w") = c.w));
                                   return out;
                               })
        .def("default_root", &family_instance::default_root);

    m.def("gen_gk", &gen_gk, py::arg("k"));
    m.def("gen_fk", &gen_fk, py::arg("k"));
    m.def("random_christmas_cactus", &random_christmas_cactus, py::arg("n"), py::arg("seed"));
    m.def("is_christmas_cactus", [](const graph& g) {
        auto r = is_christmas_cactus(g);
        return py::make_tuple(r.ok, r.reason);
    });

    py::class_<greedy_certificate>(m, "Certificate")
        .def_property_readonly("verdict", [](const greedy_certificate& c) { return to_string(c.result); })
        .def_property_readonly("greedy", &greedy_certificate::greedy)
        .def_readonly("min_relative_margin", &greedy_certificate::min_relative_margin)
        .def_readonly("worst_pair", &greedy_certificate::worst_pair)
        .def_readonly("aspect_ratio", &greedy_certificate::aspect_ratio)
        .def("margin", &greedy_certificate::margin);

    m.def(
        "verify_greedy",
        [](const graph& g, const array2& pts, double tol, int threads) {
            return verify_greedy(g, from_array(pts), tol, threads);
        },
        py::arg("graph"), py::arg("points"), py::arg("tolerance") = default_tolerance, py::arg("threads") = 1);
    m.def(
        "verify_greedy_oracle",
        [](const graph& g, const array2& pts) { return to_string(verify_greedy_oracle(g, from_array(pts))); },
        py::arg("graph"), py::arg("points"));
    m.def(
        "aspect_ratio", [](const graph& g, const array2& pts) { return aspect_ratio(g, from_array(pts)); },
        py::arg("graph"), py::arg("points"));

    m.def(
        "embed",
        [](const graph& g, int root, double tol) {
            embedder_params p;
            p.tolerance = tol;
            auto r = embed_christmas_cactus(g, p, root);
            return py::make_tuple(to_array(r.points), r.aspect_ratio, r.min_relative_margin);
        },
        py::arg("graph"), py::arg("root") = auto_root, py::arg("tolerance") = default_tolerance,
        "Certified constructive layout; root=-1 searches for a suitable root. Returns (points, ratio, margin).");

    m.def(
        "optimize",
        [](const graph& g, std::optional<array2> init, int restarts, int iterations, std::uint64_t seed,
           int threads) {
            optimizer_config cfg;
            cfg.restarts = restarts;
            cfg.iterations = iterations;
            cfg.seed = seed;
            cfg.threads = threads;
            std::optional<embedding> start;
            if (init) start = from_array(*init);
            optimization_trace t;
            {
                py::gil_scoped_release release;
                t = minimize_aspect_ratio(g, start, cfg);
            }
            py::object pts = py::none();
            if (t.best) pts = to_array(*t.best);
            return py::make_tuple(pts, t.best_ratio);
        },
        py::arg("graph"), py::arg("init") = py::none(), py::arg("restarts") = 8, py::arg("iterations") = 600,
        py::arg("seed") = 1, py::arg("threads") = 1,
        "Returns (points or None, best certified ratio).");

    m.def(
        "narrow_copies",
        [](const family_instance& f, const array2& pts) { return narrow_copies(f, from_array(pts)).narrow_copies; },
        py::arg("family"), py::arg("points"));
    m.def("lemma_constants", [] {
        py::list out;
        for (const auto& r : lemma_constants_check())
            out.append(py::dict(py::arg("expression") = r.expression, py::arg("value") = r.value,
                                py::arg("stated") = r.stated, py::arg("bound") = r.bound,
                                py::arg("below_bound") = r.below_bound));
        return out;
    });

    m.def("serialize_graph", py::overload_cast<const graph&>(&serialize_graph));
    m.def("serialize_family", py::overload_cast<const family_instance&>(&serialize_graph));
    m.def("parse_graph", [](const std::string& text) {
        auto doc = parse_graph(text);
        if (doc.family) return py::cast(*doc.family);
        return py::cast(doc.g);
    });
    m.def("serialize_embedding", [](const array2& pts) { return serialize_embedding(from_array(pts)); });
    m.def("parse_embedding", [](const std::string& text) { return to_array(parse_embedding(text)); });
    m.def(
        "render_svg",
        [](const graph& g, const array2& pts, const family_instance* family, bool zoom_panels) {
            svg_options opt;
            opt.family = family;
            opt.zoom_panels = zoom_panels;
            return render_svg(g, from_array(pts), opt);
        },
        py::arg("graph"), py::arg("points"), py::arg("family") = nullptr, py::arg("zoom_panels") = true);
}
