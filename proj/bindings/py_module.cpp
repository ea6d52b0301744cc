#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "girthwright/engine.hpp"
#include "girthwright/generator.hpp"
#include "girthwright/json_io.hpp"
#include "girthwright/oracle.hpp"
#include "girthwright/wheels.hpp"

namespace py = pybind11;
using namespace girthwright;

namespace {

ListAssignment lists_from_py(const PlaneGraph& g, const std::vector<std::vector<Colour>>& raw) {
  if (static_cast<int>(raw.size()) != g.n())
    fail(ErrorKind::InvalidInput, "lists must cover every vertex");
  ListAssignment l(g.n());
  for (VertexId v = 0; v < g.n(); ++v)
    for (Colour c : raw[v]) l[v].insert(c);
  return l;
}

py::dict colouring_to_py(const Colouring& phi) {
  py::dict out;
  for (VertexId v = 0; v < static_cast<int>(phi.value.size()); ++v)
    if (phi.coloured(v)) out[py::int_(v)] = phi[v];
  return out;
}

py::dict wheel_to_py(const WheelCertificate& w) {
  py::dict out;
  switch (w.kind) {
    case WheelCertificate::Kind::BrokenWheel: out["kind"] = "broken_wheel"; break;
    case WheelCertificate::Kind::Wheel: out["kind"] = "wheel"; break;
    case WheelCertificate::Kind::Composite: out["kind"] = "composite"; break;
  }
  out["principal_path"] = w.principal;
  out["outer_cycle"] = w.outer_cycle;
  out["hubs"] = w.hubs;
  out["edges"] = w.edges;
  return out;
}

py::object cert_to_py(const std::optional<ExceptionCertificate>& cert) {
  if (!cert) return py::none();
  py::dict out;
  switch (cert->kind) {
    case ExceptionCertificate::Kind::TypeI: out["type"] = "i"; break;
    case ExceptionCertificate::Kind::TypeII: out["type"] = "ii"; break;
    case ExceptionCertificate::Kind::TypeIII: out["type"] = "iii"; break;
  }
  if (cert->u >= 0) out["u"] = cert->u;
  if (cert->w >= 0) out["w"] = cert->w;
  if (cert->wheel) out["wheel"] = wheel_to_py(*cert->wheel);
  return out;
}

Canvas canvas_from_py(const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
                      const std::vector<VertexId>& s, const std::vector<VertexId>& a,
                      bool s_is_cycle) {
  Canvas k;
  k.g = g;
  k.l = lists_from_py(g, lists);
  k.s = BoundarySubgraph{s, s_is_cycle};
  k.a = a;
  std::sort(k.a.begin(), k.a.end());
  return k;
}

}  // namespace

PYBIND11_MODULE(_girthwright, m) {
  m.doc() = "local girth list colouring of plane graphs";

  py::register_exception<Error>(m, "GirthwrightError");

  py::class_<PlaneGraph>(m, "PlaneGraph")
      .def(py::init([](int n, std::vector<std::vector<VertexId>> rot,
                       std::optional<std::pair<VertexId, VertexId>> outer) {
             std::optional<Arc> arc;
             if (outer) arc = Arc{outer->first, outer->second};
             return PlaneGraph(n, std::move(rot), arc);
           }),
           py::arg("n"), py::arg("rotations"), py::arg("outer_edge") = std::nullopt)
      .def_property_readonly("n", &PlaneGraph::n)
      .def_property_readonly("rotations", &PlaneGraph::rotations)
      .def_property_readonly("outer_edge",
                             [](const PlaneGraph& g) -> py::object {
                               auto e = g.outer_edge();
                               if (!e) return py::none();
                               return py::make_tuple(e->from, e->to);
                             })
      .def("edges", &PlaneGraph::edges)
      .def("faces", [](const PlaneGraph& g) { return g.faces(); })
      .def("outer_boundary",
           [](const PlaneGraph& g) { return g.outer_boundary().vertices; })
      .def("degree", &PlaneGraph::degree)
      .def("has_edge", &PlaneGraph::has_edge)
      .def("is_2_connected", &PlaneGraph::is_2_connected)
      .def("cut_vertices", &PlaneGraph::cut_vertices)
      .def("__repr__", [](const PlaneGraph& g) {
        return "PlaneGraph(n=" + std::to_string(g.n()) +
               ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def(
      "vertex_girth",
      [](const PlaneGraph& g, VertexId v) -> py::object {
        Girth gv = vertex_girth(g, v);
        if (!gv.is_finite()) return py::none();
        return py::int_(gv.length());
      },
      py::arg("g"), py::arg("v"), "shortest cycle length through v, None if acyclic");

  m.def(
      "girth_profile",
      [](const PlaneGraph& g) {
        py::list out;
        GirthProfile p = girth_profile(g);
        for (VertexId v = 0; v < g.n(); ++v) {
          if (p[v].is_finite()) out.append(p[v].length());
          else out.append(py::none());
        }
        return out;
      },
      py::arg("g"));

  m.def(
      "colour",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists, bool strict) {
        engine::Options opt;
        opt.strict = strict;
        return colouring_to_py(engine::colour(g, lists_from_py(g, lists), opt));
      },
      py::arg("g"), py::arg("lists"), py::arg("strict") = true,
      "proper list colouring from a local girth list assignment");

  m.def(
      "extend",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
         const std::vector<VertexId>& s, const std::vector<VertexId>& a,
         const std::map<VertexId, Colour>& phi, bool s_is_cycle, bool strict) {
        Canvas k = canvas_from_py(g, lists, s, a, s_is_cycle);
        Colouring p(g.n());
        for (auto [v, c] : phi) p.set(v, c);
        engine::Options opt;
        opt.strict = strict;
        engine::ExtendResult r = engine::extend(k, p, opt);
        py::dict out;
        out["colouring"] = r.colouring ? py::object(colouring_to_py(*r.colouring)) : py::none();
        out["exception"] = cert_to_py(r.exception);
        return out;
      },
      py::arg("g"), py::arg("lists"), py::arg("s"), py::arg("a"), py::arg("phi"),
      py::arg("s_is_cycle") = false, py::arg("strict") = true,
      "extend a precolouring of S; exceptional canvases yield a certificate");

  m.def(
      "classify",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
         const std::vector<VertexId>& s, const std::vector<VertexId>& a, bool s_is_cycle) {
        Canvas k = canvas_from_py(g, lists, s, a, s_is_cycle);
        return cert_to_py(classify_exception(k, girth_profile(g)));
      },
      py::arg("g"), py::arg("lists"), py::arg("s"), py::arg("a") = std::vector<VertexId>{},
      py::arg("s_is_cycle") = false);

  m.def(
      "validate_canvas",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
         const std::vector<VertexId>& s, const std::vector<VertexId>& a, bool s_is_cycle) {
        Canvas k = canvas_from_py(g, lists, s, a, s_is_cycle);
        py::list out;
        for (const Violation& v : validate_canvas(k, girth_profile(g))) out.append(v.what);
        return out;
      },
      py::arg("g"), py::arg("lists"), py::arg("s"), py::arg("a") = std::vector<VertexId>{},
      py::arg("s_is_cycle") = false);

  m.def(
      "find_colouring",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
         const std::map<VertexId, Colour>& partial) -> py::object {
        Colouring p(g.n());
        for (auto [v, c] : partial) p.set(v, c);
        auto r = oracle::find_colouring(g, lists_from_py(g, lists), p);
        if (r.status == oracle::SearchStatus::BudgetExceeded)
          fail(ErrorKind::BudgetExceeded, "find_colouring");
        if (r.status != oracle::SearchStatus::Found) return py::none();
        return colouring_to_py(*r.colouring);
      },
      py::arg("g"), py::arg("lists"), py::arg("partial") = std::map<VertexId, Colour>{},
      "exhaustive list-colouring search (ground truth)");

  m.def(
      "blocked_colourings_of_s",
      [](const PlaneGraph& g, const std::vector<std::vector<Colour>>& lists,
         const std::vector<VertexId>& s) {
        Canvas k = canvas_from_py(g, lists, s, {}, false);
        return oracle::blocked_colourings_of_S(k);
      },
      py::arg("g"), py::arg("lists"), py::arg("s"));

  m.def("all_connected_planar", &gen::all_connected_planar, py::arg("n"),
        "one embedded representative per isomorphism class");

  m.def(
      "make_wheel",
      [](int q) {
        auto w = gen::make_wheel(q);
        return py::make_tuple(w.graph, w.principal, w.outer_cycle);
      },
      py::arg("q"));

  m.def(
      "make_broken_wheel",
      [](int q) {
        auto w = gen::make_broken_wheel(q);
        return py::make_tuple(w.graph, w.principal, w.outer_cycle);
      },
      py::arg("q"));

  m.def(
      "random_canvas",
      [](int n, uint64_t seed) {
        Canvas k = gen::random_canvas(n, seed);
        py::dict out;
        out["g"] = k.g;
        py::list lists;
        for (VertexId v = 0; v < k.g.n(); ++v) lists.append(k.l[v].to_vector());
        out["lists"] = lists;
        out["s"] = k.s.vertices;
        out["a"] = k.a;
        return out;
      },
      py::arg("n"), py::arg("seed"));

  m.def(
      "load_instance",
      [](const std::string& text) {
        io::Instance inst = io::load_instance(text);
        py::dict out;
        out["g"] = inst.g;
        if (inst.lists) {
          py::list lists;
          for (VertexId v = 0; v < inst.g.n(); ++v) lists.append((*inst.lists)[v].to_vector());
          out["lists"] = lists;
        } else {
          out["lists"] = py::none();
        }
        out["s"] = inst.s.vertices;
        out["s_is_cycle"] = inst.s.is_cycle;
        out["a"] = inst.a;
        out["phi"] = inst.phi ? py::object(colouring_to_py(*inst.phi)) : py::none();
        return out;
      },
      py::arg("text"));

  m.def(
      "dump_instance",
      [](const PlaneGraph& g, py::object lists, const std::vector<VertexId>& s,
         const std::vector<VertexId>& a, bool s_is_cycle, const std::map<VertexId, Colour>& phi) {
        io::Instance inst;
        inst.g = g;
        if (!lists.is_none())
          inst.lists = lists_from_py(g, lists.cast<std::vector<std::vector<Colour>>>());
        inst.s = BoundarySubgraph{s, s_is_cycle};
        inst.a = a;
        std::sort(inst.a.begin(), inst.a.end());
        if (!phi.empty()) {
          Colouring p(g.n());
          for (auto [v, c] : phi) p.set(v, c);
          inst.phi = p;
        }
        return io::store_instance(inst);
      },
      py::arg("g"), py::arg("lists") = py::none(), py::arg("s") = std::vector<VertexId>{},
      py::arg("a") = std::vector<VertexId>{}, py::arg("s_is_cycle") = false,
      py::arg("phi") = std::map<VertexId, Colour>{});
}
