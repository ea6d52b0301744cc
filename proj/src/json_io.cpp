#include "girthwright/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace girthwright {
namespace io {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorKind::InvalidInput, msg); }

int as_vertex(const ordered_json& j, int n, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  int v = j.get<int>();
  if (v < 0 || v >= n) bad(std::string(what) + " out of range: " + std::to_string(v));
  return v;
}

}  // namespace

Instance load_instance(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  if (!j.is_object()) bad("instance must be a JSON object");
  static const std::set<std::string> known = {"n",     "rotations",  "outer_edge", "lists",
                                              "S",     "S_is_cycle", "A",          "phi"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) bad("unknown key \"" + it.key() + "\"");
  if (!j.contains("n") || !j["n"].is_number_integer()) bad("missing integer \"n\"");
  int n = j["n"].get<int>();
  if (n < 0) bad("negative n");
  if (!j.contains("rotations") || !j["rotations"].is_array() ||
      static_cast<int>(j["rotations"].size()) != n)
    bad("\"rotations\" must list one rotation per vertex");
  std::vector<std::vector<VertexId>> rot(n);
  for (int v = 0; v < n; ++v) {
    if (!j["rotations"][v].is_array()) bad("rotation must be an array");
    for (const auto& u : j["rotations"][v]) rot[v].push_back(as_vertex(u, n, "neighbour"));
  }
  std::optional<Arc> outer;
  if (j.contains("outer_edge") && !j["outer_edge"].is_null()) {
    if (!j["outer_edge"].is_array() || j["outer_edge"].size() != 2)
      bad("\"outer_edge\" must be [u, v]");
    outer = Arc{as_vertex(j["outer_edge"][0], n, "outer_edge"),
                as_vertex(j["outer_edge"][1], n, "outer_edge")};
  }
  Instance inst;
  inst.g = PlaneGraph(n, rot, outer);  // throws EmbeddingInvalid on bad input
  if (j.contains("lists")) {
    if (!j["lists"].is_object()) bad("\"lists\" must be an object");
    ListAssignment l(n);
    std::vector<char> seen(n, 0);
    for (auto it = j["lists"].begin(); it != j["lists"].end(); ++it) {
      int v;
      try {
        v = std::stoi(it.key());
      } catch (...) {
        bad("list key is not a vertex id");
        return inst;
      }
      if (v < 0 || v >= n) bad("list key out of range");
      if (!it.value().is_array()) bad("list must be an array of colours");
      for (const auto& c : it.value()) {
        if (!c.is_number_integer() || c.get<int>() < 0 ||
            c.get<int>() > ColourSet::kMaxColour)
          bad("colour out of range");
        l[v].insert(c.get<int>());
      }
      seen[v] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) bad("lists must cover every vertex");
    inst.lists = std::move(l);
  }
  if (j.contains("S")) {
    if (!j["S"].is_array()) bad("\"S\" must be an array");
    for (const auto& v : j["S"]) inst.s.vertices.push_back(as_vertex(v, n, "S vertex"));
  }
  inst.s.is_cycle = j.value("S_is_cycle", false);
  if (j.contains("A")) {
    if (!j["A"].is_array()) bad("\"A\" must be an array");
    for (const auto& v : j["A"]) inst.a.push_back(as_vertex(v, n, "A vertex"));
    std::sort(inst.a.begin(), inst.a.end());
  }
  if (j.contains("phi")) {
    if (!j["phi"].is_object()) bad("\"phi\" must be an object");
    Colouring phi(n);
    for (auto it = j["phi"].begin(); it != j["phi"].end(); ++it) {
      int v;
      try {
        v = std::stoi(it.key());
      } catch (...) {
        bad("phi key is not a vertex id");
        return inst;
      }
      if (v < 0 || v >= n) bad("phi key out of range");
      if (!it.value().is_number_integer() || it.value().get<int>() < 0)
        bad("phi colour must be a non-negative integer");
      phi.set(v, it.value().get<int>());
    }
    inst.phi = std::move(phi);
  }
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

std::string store_instance(const Instance& inst) {
  ordered_json j;
  j["n"] = inst.g.n();
  j["rotations"] = ordered_json::array();
  for (VertexId v = 0; v < inst.g.n(); ++v) j["rotations"].push_back(inst.g.neighbours(v));
  if (auto outer = inst.g.outer_edge())
    j["outer_edge"] = {outer->from, outer->to};
  else
    j["outer_edge"] = nullptr;
  if (inst.lists) {
    ordered_json lists = ordered_json::object();
    for (VertexId v = 0; v < inst.g.n(); ++v)
      lists[std::to_string(v)] = (*inst.lists)[v].to_vector();
    j["lists"] = std::move(lists);
  }
  j["S"] = inst.s.vertices;
  j["S_is_cycle"] = inst.s.is_cycle;
  j["A"] = inst.a;
  if (inst.phi) {
    ordered_json phi = ordered_json::object();
    for (VertexId v = 0; v < inst.g.n(); ++v)
      if (inst.phi->coloured(v)) phi[std::to_string(v)] = (*inst.phi)[v];
    j["phi"] = std::move(phi);
  }
  return j.dump(2) + "\n";
}

void store_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << store_instance(inst);
}

Canvas to_canvas(const Instance& inst) {
  if (!inst.lists) bad("instance carries no lists");
  return Canvas{inst.g, *inst.lists, inst.s, inst.a};
}

Instance from_canvas(const Canvas& k) {
  Instance inst;
  inst.g = k.g;
  inst.lists = k.l;
  inst.s = k.s;
  inst.a = k.a;
  return inst;
}

std::string colouring_json(const Colouring& phi) {
  ordered_json j;
  j["status"] = "coloured";
  ordered_json c = ordered_json::object();
  for (VertexId v = 0; v < static_cast<int>(phi.value.size()); ++v)
    if (phi.coloured(v)) c[std::to_string(v)] = phi[v];
  j["colouring"] = std::move(c);
  return j.dump(2) + "\n";
}

namespace {

ordered_json wheel_json(const WheelCertificate& w) {
  ordered_json j;
  switch (w.kind) {
    case WheelCertificate::Kind::BrokenWheel: j["kind"] = "broken_wheel"; break;
    case WheelCertificate::Kind::Wheel: j["kind"] = "wheel"; break;
    case WheelCertificate::Kind::Composite: j["kind"] = "composite"; break;
  }
  j["principal_path"] = w.principal;
  j["outer_cycle"] = w.outer_cycle;
  j["hubs"] = w.hubs;
  ordered_json es = ordered_json::array();
  for (auto [u, v] : w.edges) es.push_back(ordered_json::array({u, v}));
  j["edges"] = std::move(es);
  if (w.kind == WheelCertificate::Kind::Composite) {
    j["identified_edge"] = {w.identified_edge.first, w.identified_edge.second};
    j["left"] = wheel_json(*w.left);
    j["right"] = wheel_json(*w.right);
  }
  return j;
}

}  // namespace

std::string certificate_json(const ExceptionCertificate& cert) {
  ordered_json j;
  j["status"] = "exception";
  switch (cert.kind) {
    case ExceptionCertificate::Kind::TypeI: j["type"] = "i"; break;
    case ExceptionCertificate::Kind::TypeII: j["type"] = "ii"; break;
    case ExceptionCertificate::Kind::TypeIII: j["type"] = "iii"; break;
  }
  if (cert.u >= 0) j["u"] = cert.u;
  if (cert.w >= 0) j["w"] = cert.w;
  if (cert.kind == ExceptionCertificate::Kind::TypeII) j["s_reversed"] = cert.s_reversed;
  if (cert.wheel) j["wheel"] = wheel_json(*cert.wheel);
  return j.dump(2) + "\n";
}

std::string girth_profile_json(const GirthProfile& profile) {
  ordered_json j = ordered_json::object();
  for (size_t v = 0; v < profile.values.size(); ++v) {
    const Girth& g = profile.values[v];
    if (g.is_finite()) j[std::to_string(v)] = g.length();
    else j[std::to_string(v)] = "inf";
  }
  return j.dump(2) + "\n";
}

std::string to_dot(const Instance& inst) {
  GirthProfile profile = girth_profile(inst.g);
  std::set<VertexId> sset(inst.s.vertices.begin(), inst.s.vertices.end());
  std::set<VertexId> aset(inst.a.begin(), inst.a.end());
  std::ostringstream out;
  out << "graph girthwright {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < inst.g.n(); ++v) {
    out << "  v" << v << " [label=\"v" << v << " g=";
    if (profile[v].is_finite()) out << profile[v].length();
    else out << "inf";
    out << " L={";
    if (inst.lists) {
      bool first = true;
      for (Colour c : (*inst.lists)[v].to_vector()) {
        if (!first) out << ",";
        out << c;
        first = false;
      }
    }
    out << "}\"";
    if (sset.count(v)) out << ", style=filled, fillcolor=black, fontcolor=white";
    else if (aset.count(v)) out << ", shape=diamond";
    out << "];\n";
  }
  for (auto [u, v] : inst.g.edges()) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace io
}  // namespace girthwright
