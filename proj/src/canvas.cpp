#include "girthwright/canvas.hpp"

#include <algorithm>
#include <set>

namespace girthwright {

bool colouring_proper(const PlaneGraph& g, const Colouring& phi) {
  for (auto [u, v] : g.edges())
    if (phi.coloured(u) && phi.coloured(v) && phi[u] == phi[v]) return false;
  return true;
}

bool colouring_respects(const ListAssignment& l, const Colouring& phi) {
  for (VertexId v = 0; v < static_cast<int>(phi.value.size()); ++v)
    if (phi.coloured(v) && !l[v].contains(phi[v])) return false;
  return true;
}

AssignmentCheck is_local_girth_assignment(const PlaneGraph& g, const GirthProfile& profile,
                                          const ListAssignment& l) {
  AssignmentCheck r;
  if (static_cast<int>(l.size()) != g.n() ||
      static_cast<int>(profile.values.size()) != g.n()) {
    r.ok = false;
    r.what = "assignment/profile size mismatch";
    return r;
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    int need = list_threshold(girth_class(profile, v));
    if (l[v].size() < need) {
      r.ok = false;
      r.witness = v;
      r.what = "list of size " + std::to_string(l[v].size()) + " at vertex " +
               std::to_string(v) + ", needs " + std::to_string(need);
      return r;
    }
  }
  return r;
}

bool is_acceptable_path(const PlaneGraph& g, const GirthProfile& profile, const PathInGraph& s) {
  if (!g.is_path(s)) fail(ErrorKind::NotAPath, "is_acceptable_path");
  size_t k = s.vertices.size();
  if (k <= 3) return true;
  if (k > 4) return false;
  const Girth& g2 = profile[s.vertices[1]];
  const Girth& g3 = profile[s.vertices[2]];
  if (g2.at_least(4) && g3.at_least(4)) return true;
  return g2.at_least(5) || g3.at_least(5);
}

bool is_acceptable_cycle(const PlaneGraph& g, const GirthProfile& profile, const CycleInGraph& s) {
  if (!g.is_cycle(s)) fail(ErrorKind::NotACycle, "is_acceptable_cycle");
  size_t q = s.vertices.size();
  for (size_t drop = 0; drop < q; ++drop) {
    PathInGraph p;
    for (size_t i = 1; i <= q; ++i) p.vertices.push_back(s.vertices[(drop + i) % q]);
    if (is_acceptable_path(g, profile, p)) return true;
  }
  return false;
}

PathInGraph open_acceptable_cycle(const PlaneGraph& g, const GirthProfile& profile,
                                  const CycleInGraph& s) {
  if (!g.is_cycle(s)) fail(ErrorKind::NotACycle, "open_acceptable_cycle");
  size_t q = s.vertices.size();
  for (size_t drop = 0; drop < q; ++drop) {
    PathInGraph p;
    for (size_t i = 1; i <= q; ++i) p.vertices.push_back(s.vertices[(drop + i) % q]);
    if (is_acceptable_path(g, profile, p)) return p;
  }
  fail(ErrorKind::NotACycle, "cycle is not acceptable");
}

std::vector<Violation> validate_canvas(const Canvas& k, const GirthProfile& profile) {
  std::vector<Violation> out;
  auto bad = [&](const std::string& w) { out.push_back(Violation{w}); };
  const PlaneGraph& g = k.g;
  if (static_cast<int>(k.l.size()) != g.n()) {
    bad("list assignment does not cover V(G)");
    return out;
  }
  // S on the outer boundary, its edges boundary edges
  const auto& sv = k.s.vertices;
  std::set<VertexId> sset(sv.begin(), sv.end());
  if (sset.size() != sv.size()) bad("S has repeated vertices");
  for (VertexId v : sv)
    if (!g.has_vertex(v) || !g.on_outer_boundary(v))
      bad("S vertex " + std::to_string(v) + " not on the outer boundary");
  size_t limit = k.s.is_cycle ? sv.size() : (sv.empty() ? 0 : sv.size() - 1);
  for (size_t i = 0; i < limit; ++i) {
    VertexId a = sv[i], b = sv[(i + 1) % sv.size()];
    if (!g.has_edge(a, b) || !g.boundary_edge(a, b))
      bad("S edge " + std::to_string(a) + "-" + std::to_string(b) + " not a boundary edge");
  }
  if (k.s.is_cycle && sv.size() < 3) bad("cycle S too short");
  // A \ V(S): independent, on boundary off S, girth >= 5 on all of A
  std::set<VertexId> aset(k.a.begin(), k.a.end());
  for (VertexId v : k.a) {
    if (!g.has_vertex(v)) {
      bad("A vertex out of range");
      continue;
    }
    if (!profile[v].at_least(5)) bad("A vertex " + std::to_string(v) + " has girth below 5");
    if (sset.count(v)) continue;
    if (!g.on_outer_boundary(v)) bad("A vertex " + std::to_string(v) + " off the boundary");
  }
  for (VertexId v : k.a) {
    if (sset.count(v)) continue;
    for (VertexId u : g.neighbours(v))
      if (aset.count(u) && !sset.count(u) && u > v)
        bad("A not independent: " + std::to_string(v) + "-" + std::to_string(u));
  }
  // list sizes
  for (VertexId v = 0; v < g.n(); ++v) {
    int sz = k.l[v].size();
    if (sset.count(v)) {
      if (sz < 1) bad("empty list on S vertex " + std::to_string(v));
      continue;
    }
    if (aset.count(v)) {
      if (sz != 2) bad("A vertex " + std::to_string(v) + " has list size " + std::to_string(sz));
      continue;
    }
    if (sz < 3) bad("list below 3 at vertex " + std::to_string(v));
    if (!g.on_outer_boundary(v)) {
      GirthClass c = girth_class(profile, v);
      if (c == GirthClass::G4 && sz < 4) bad("interior 4-girth vertex " + std::to_string(v) + " below 4");
      if (c == GirthClass::G3 && sz < 5) bad("interior 3-girth vertex " + std::to_string(v) + " below 5");
    }
  }
  return out;
}

bool canvas_ok(const Canvas& k, const GirthProfile& profile) {
  return validate_canvas(k, profile).empty();
}

Canvas subcanvas(const Canvas& k, const Subgraph& h) {
  if (h.from_parent.size() != static_cast<size_t>(k.g.n()))
    fail(ErrorKind::NotASubgraph, "subgraph map does not match the canvas graph");
  Canvas out;
  out.g = h.graph;
  out.l.resize(h.graph.n());
  for (VertexId v = 0; v < h.graph.n(); ++v) out.l[v] = k.l[h.to_parent[v]];
  // S ∩ H must again be a path (or the full cycle); engine splits ensure it.
  std::vector<char> present(k.g.n(), 0);
  for (VertexId v = 0; v < k.g.n(); ++v) present[v] = h.from_parent[v] >= 0;
  const auto& sv = k.s.vertices;
  if (k.s.is_cycle) {
    bool all = !sv.empty();
    for (VertexId v : sv)
      if (!present[v]) all = false;
    if (all) {
      out.s.is_cycle = true;
      for (VertexId v : sv) out.s.vertices.push_back(h.from_parent[v]);
    } else {
      // the kept vertices must form one contiguous cyclic arc
      size_t n = sv.size();
      size_t start = n;
      for (size_t i = 0; i < n && start == n; ++i)
        if (present[sv[i]] && !present[sv[(i + n - 1) % n]]) start = i;
      std::vector<VertexId> run;
      for (size_t i = 0; i < n; ++i) {
        VertexId v = sv[(start + i) % n];
        if (!present[v]) break;
        run.push_back(h.from_parent[v]);
      }
      size_t kept = 0;
      for (VertexId v : sv) kept += present[v] ? 1 : 0;
      if (run.size() != kept) fail(ErrorKind::NotASubgraph, "S ∩ H is not a path");
      out.s.vertices = run;
    }
  } else {
    // the kept vertices must form a contiguous run of S
    std::vector<int> kept_pos;
    for (size_t i = 0; i < sv.size(); ++i)
      if (present[sv[i]]) kept_pos.push_back(static_cast<int>(i));
    for (size_t i = 1; i < kept_pos.size(); ++i)
      if (kept_pos[i] != kept_pos[i - 1] + 1)
        fail(ErrorKind::NotASubgraph, "S ∩ H is not a path");
    for (int i : kept_pos) out.s.vertices.push_back(h.from_parent[sv[i]]);
    // edges must survive as well
    for (size_t i = 1; i < out.s.vertices.size(); ++i)
      if (!out.g.has_edge(out.s.vertices[i - 1], out.s.vertices[i]))
        fail(ErrorKind::NotASubgraph, "S ∩ H lost an edge");
  }
  for (VertexId v : k.a)
    if (present[v]) out.a.push_back(h.from_parent[v]);
  std::sort(out.a.begin(), out.a.end());
  return out;
}

Canvas trim_lists(const Canvas& k, const GirthProfile& profile) {
  Canvas out = k;
  std::set<VertexId> sset(k.s.vertices.begin(), k.s.vertices.end());
  std::set<VertexId> aset(k.a.begin(), k.a.end());
  for (VertexId v = 0; v < k.g.n(); ++v) {
    int target;
    if (sset.count(v)) target = 1;
    else if (aset.count(v)) target = 2;
    else if (k.g.on_outer_boundary(v)) target = 3;
    else target = list_threshold(girth_class(profile, v));
    if (out.l[v].size() > target) out.l[v] = out.l[v].smallest_subset(target);
  }
  return out;
}

Reduced delete_and_subtract(const Canvas& k, const Colouring& coloured,
                            const std::vector<VertexId>& doomed,
                            const std::vector<VertexId>& keep_lists) {
  for (VertexId v : doomed)
    if (!coloured.coloured(v))
      fail(ErrorKind::PreconditionViolated, "doomed vertex without a colour");
  std::vector<char> keep(k.g.n(), 1), keep_list(k.g.n(), 0);
  for (VertexId v : doomed) keep[v] = 0;
  for (VertexId v : keep_lists) keep_list[v] = 1;

  Subgraph h = k.g.induced_subgraph(keep);
  Reduced r;
  r.to_parent = h.to_parent;
  r.from_parent = h.from_parent;
  r.canvas.g = h.graph;
  r.canvas.l.resize(h.graph.n());
  for (VertexId nv = 0; nv < h.graph.n(); ++nv) {
    VertexId v = h.to_parent[nv];
    ColourSet l = k.l[v];
    if (!keep_list[v]) {
      for (VertexId u : k.g.neighbours(v))
        if (!keep[u]) l = l.minus(coloured[u]);
    }
    if (l.empty()) fail(ErrorKind::ListExhausted, "list emptied at vertex " + std::to_string(v));
    r.canvas.l[nv] = l;
  }
  // S survives minus the doomed (must stay contiguous)
  std::vector<int> kept_pos;
  const auto& sv = k.s.vertices;
  for (size_t i = 0; i < sv.size(); ++i)
    if (keep[sv[i]]) kept_pos.push_back(static_cast<int>(i));
  for (size_t i = 1; i < kept_pos.size(); ++i)
    if (kept_pos[i] != kept_pos[i - 1] + 1)
      fail(ErrorKind::PreconditionViolated, "deletion cuts S apart");
  for (int i : kept_pos) r.canvas.s.vertices.push_back(h.from_parent[sv[i]]);
  r.canvas.s.is_cycle = k.s.is_cycle && kept_pos.size() == sv.size();
  // A' = boundary vertices outside S with lists of size <= 2
  std::set<VertexId> new_s(r.canvas.s.vertices.begin(), r.canvas.s.vertices.end());
  for (VertexId nv = 0; nv < h.graph.n(); ++nv) {
    if (new_s.count(nv) || !h.graph.on_outer_boundary(nv)) continue;
    if (r.canvas.l[nv].size() <= 2) r.canvas.a.push_back(nv);
  }
  return r;
}

}  // namespace girthwright
