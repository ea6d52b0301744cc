#include "girthwright/plane_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace girthwright {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PlaneGraph::PlaneGraph(int n, std::vector<std::vector<VertexId>> rotations,
                       std::optional<Arc> outer)
    : n_(n), rot_(std::move(rotations)), outer_(outer) {
  if (n_ < 0 || static_cast<int>(rot_.size()) != n_)
    fail(ErrorKind::EmbeddingInvalid, "rotation table size mismatch");
  for (VertexId v = 0; v < n_; ++v) {
    std::vector<VertexId> seen = rot_[v];
    std::sort(seen.begin(), seen.end());
    for (size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] < 0 || seen[i] >= n_)
        fail(ErrorKind::EmbeddingInvalid, "neighbour out of range");
      if (seen[i] == v) fail(ErrorKind::EmbeddingInvalid, "loop at vertex " + std::to_string(v));
      if (i > 0 && seen[i] == seen[i - 1])
        fail(ErrorKind::EmbeddingInvalid, "repeated neighbour in rotation of " + std::to_string(v));
    }
  }
  arc_base_.assign(n_ + 1, 0);
  for (VertexId v = 0; v < n_; ++v) arc_base_[v + 1] = arc_base_[v] + degree(v);
  arc_count_ = arc_base_[n_];
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v])
      if (rotation_index(u, v) < 0)
        fail(ErrorKind::EmbeddingInvalid, "asymmetric adjacency " + std::to_string(v) + "-" + std::to_string(u));
  if (arc_count_ == 0) {
    if (outer_) fail(ErrorKind::EmbeddingInvalid, "outer edge on edgeless graph");
  } else {
    if (!outer_) fail(ErrorKind::EmbeddingInvalid, "missing outer edge");
    if (!has_vertex(outer_->from) || rotation_index(outer_->from, outer_->to) < 0)
      fail(ErrorKind::EmbeddingInvalid, "outer edge not in graph");
  }
  build_faces({});
}

PlaneGraph::PlaneGraph(int n, std::vector<std::vector<VertexId>> rotations,
                       std::vector<Arc> outers)
    : PlaneGraph(n, std::move(rotations),
                 outers.empty() ? std::nullopt : std::optional<Arc>(outers.front())) {
  if (outers.size() > 1) build_faces({outers.begin() + 1, outers.end()});
}

int PlaneGraph::rotation_index(VertexId u, VertexId v) const {
  const auto& r = rot_[u];
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i] == v) return static_cast<int>(i);
  return -1;
}

void PlaneGraph::check_vertex(VertexId v) const {
  if (!has_vertex(v)) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
}

bool PlaneGraph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return rotation_index(u, v) >= 0;
}

int PlaneGraph::arc_id(VertexId u, VertexId v) const {
  int i = rotation_index(u, v);
  if (i < 0) fail(ErrorKind::EmbeddingInvalid, "no arc " + std::to_string(u) + "->" + std::to_string(v));
  return arc_base_[u] + i;
}

void PlaneGraph::build_faces(const std::vector<Arc>& extra_outers) {
  face_walks_.clear();
  arc_face_.assign(arc_count_, -1);
  for (VertexId u = 0; u < n_; ++u) {
    for (int i = 0; i < degree(u); ++i) {
      if (arc_face_[arc_base_[u] + i] >= 0) continue;
      int fid = static_cast<int>(face_walks_.size());
      std::vector<VertexId> walk;
      VertexId a = u, b = rot_[u][i];
      while (true) {
        int id = arc_id(a, b);
        if (arc_face_[id] >= 0) break;
        arc_face_[id] = fid;
        walk.push_back(a);
        int j = rotation_index(b, a);
        VertexId c = rot_[b][(j + 1) % degree(b)];
        a = b;
        b = c;
      }
      face_walks_.push_back(std::move(walk));
    }
  }
  // Euler per connected component (isolated vertices trivially fine).
  UnionFind comp(std::max(1, n_));
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) comp.unite(v, u);
  std::vector<int> verts(std::max(1, n_), 0), edges(std::max(1, n_), 0),
      faces(std::max(1, n_), 0);
  for (VertexId v = 0; v < n_; ++v) {
    verts[comp.find(v)]++;
    edges[comp.find(v)] += degree(v);
  }
  for (int f = 0; f < face_count(); ++f)
    if (!face_walks_[f].empty()) faces[comp.find(face_walks_[f][0])]++;
  for (VertexId v = 0; v < n_; ++v) {
    if (comp.find(v) != v || edges[v] == 0) continue;
    int V = verts[v], E = edges[v] / 2, F = faces[v];
    if (V - E + F != 2)
      fail(ErrorKind::EmbeddingInvalid,
           "Euler check failed: V=" + std::to_string(V) + " E=" + std::to_string(E) +
               " F=" + std::to_string(F));
  }
  on_outer_.assign(n_, 0);
  outer_mask_.assign(face_count(), 0);
  if (outer_) {
    outer_face_ = arc_face_[arc_id(outer_->from, outer_->to)];
    outer_mask_[outer_face_] = 1;
    // designate the remaining components: explicit arcs first, then the
    // largest face of any still-undesignated component
    std::vector<char> comp_done(std::max(1, n_), 0);
    comp_done[comp.find(outer_->from)] = 1;
    for (const Arc& a : extra_outers) {
      if (!has_vertex(a.from) || rotation_index(a.from, a.to) < 0)
        fail(ErrorKind::EmbeddingInvalid, "outer arc not in graph");
      int c = comp.find(a.from);
      if (comp_done[c]) fail(ErrorKind::EmbeddingInvalid, "two outer arcs in one component");
      comp_done[c] = 1;
      outer_mask_[arc_face_[arc_id(a.from, a.to)]] = 1;
    }
    std::vector<int> best_face(std::max(1, n_), -1);
    for (int f = 0; f < face_count(); ++f) {
      int c = comp.find(face_walks_[f][0]);
      if (comp_done[c]) continue;
      if (best_face[c] < 0 || face_walks_[f].size() > face_walks_[best_face[c]].size())
        best_face[c] = f;
    }
    for (int c = 0; c < std::max(1, n_); ++c)
      if (best_face[c] >= 0) outer_mask_[best_face[c]] = 1;
    for (int f = 0; f < face_count(); ++f)
      if (outer_mask_[f])
        for (VertexId v : face_walks_[f]) on_outer_[v] = 1;
  }
  // isolated vertices sit on their (only) face
  for (VertexId v = 0; v < n_; ++v)
    if (degree(v) == 0) on_outer_[v] = 1;
}

int PlaneGraph::face_left_of(VertexId u, VertexId v) const { return arc_face_[arc_id(u, v)]; }

BoundaryWalk PlaneGraph::outer_boundary() const {
  BoundaryWalk w;
  if (outer_face_ >= 0) w.vertices = face_walks_[outer_face_];
  else if (n_ == 1) w.vertices = {0};
  return w;
}

bool PlaneGraph::boundary_edge(VertexId u, VertexId v) const {
  if (!has_edge(u, v)) return false;
  return outer_mask_[arc_face_[arc_id(u, v)]] || outer_mask_[arc_face_[arc_id(v, u)]];
}

std::vector<VertexId> PlaneGraph::boundary_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n_; ++v)
    if (on_outer_boundary(v)) out.push_back(v);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> PlaneGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v])
      if (v < u) out.emplace_back(v, u);
  return out;
}

bool PlaneGraph::is_path(const PathInGraph& p) const {
  const auto& vs = p.vertices;
  std::set<VertexId> seen;
  for (VertexId v : vs) {
    if (!has_vertex(v) || !seen.insert(v).second) return false;
  }
  for (size_t i = 0; i + 1 < vs.size(); ++i)
    if (!has_edge(vs[i], vs[i + 1])) return false;
  return true;
}

bool PlaneGraph::is_cycle(const CycleInGraph& c) const {
  const auto& vs = c.vertices;
  if (vs.size() < 3) return false;
  std::set<VertexId> seen;
  for (VertexId v : vs)
    if (!has_vertex(v) || !seen.insert(v).second) return false;
  for (size_t i = 0; i < vs.size(); ++i)
    if (!has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
  return true;
}

std::vector<std::pair<VertexId, VertexId>> PlaneGraph::chords_of(const CycleInGraph& c) const {
  if (!is_cycle(c)) fail(ErrorKind::NotACycle, "chords_of");
  const auto& vs = c.vertices;
  std::vector<int> pos(n_, -1);
  for (size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
  int q = static_cast<int>(vs.size());
  std::vector<std::pair<VertexId, VertexId>> out;
  for (auto [u, v] : edges()) {
    if (pos[u] < 0 || pos[v] < 0) continue;
    int d = std::abs(pos[u] - pos[v]);
    if (d != 1 && d != q - 1) out.emplace_back(u, v);
  }
  return out;
}

Subgraph PlaneGraph::subgraph(const std::vector<char>& keep_vertex,
                              const std::vector<char>* edge_kept_by_arc) const {
  auto arc_kept = [&](VertexId u, VertexId v) {
    if (!keep_vertex[u] || !keep_vertex[v]) return false;
    if (!edge_kept_by_arc) return true;
    return static_cast<bool>((*edge_kept_by_arc)[arc_id(u, v)]);
  };
  Subgraph s;
  s.from_parent.assign(n_, -1);
  for (VertexId v = 0; v < n_; ++v)
    if (keep_vertex[v]) {
      s.from_parent[v] = static_cast<int>(s.to_parent.size());
      s.to_parent.push_back(v);
    }
  int m = static_cast<int>(s.to_parent.size());
  std::vector<std::vector<VertexId>> rot(m);
  for (int i = 0; i < m; ++i) {
    VertexId v = s.to_parent[i];
    for (VertexId u : rot_[v])
      if (arc_kept(v, u)) rot[i].push_back(s.from_parent[u]);
  }
  // Merge parent faces that fuse when an arc disappears, then hand every
  // component of the result the face class that encloses it: start from the
  // unbounded region (classes of the parent's outer faces) and descend
  // through the nesting order.
  UnionFind uf(std::max(1, face_count()));
  bool any_edge = false;
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) {
      if (arc_kept(v, u)) {
        any_edge = true;
        continue;
      }
      uf.unite(arc_face_[arc_id(v, u)], arc_face_[arc_id(u, v)]);
    }
  std::vector<Arc> outers;
  if (any_edge) {
    if (outer_face_ < 0) fail(ErrorKind::EmbeddingInvalid, "subgraph of invalid host");
    // result components
    UnionFind rcomp(std::max(1, m));
    for (int i = 0; i < m; ++i)
      for (VertexId u : rot[i]) rcomp.unite(i, u);
    // component -> (class -> one arc bordering it)
    std::map<std::pair<int, int>, std::pair<VertexId, VertexId>> border;
    for (VertexId v = 0; v < n_; ++v)
      for (VertexId u : rot_[v]) {
        if (!arc_kept(v, u)) continue;
        int c = rcomp.find(s.from_parent[v]);
        int cls = uf.find(arc_face_[arc_id(v, u)]);
        border.emplace(std::pair{c, cls}, std::pair{s.from_parent[v], s.from_parent[u]});
      }
    std::vector<int> comp_outer(std::max(1, m), -1);
    std::vector<int> class_queue;
    std::set<int> queued;
    for (int f = 0; f < face_count(); ++f)
      if (outer_mask_[f] && queued.insert(uf.find(f)).second)
        class_queue.push_back(uf.find(f));
    std::vector<std::pair<VertexId, VertexId>> comp_arc(std::max(1, m));
    for (size_t qi = 0; qi < class_queue.size(); ++qi) {
      int cls = class_queue[qi];
      for (const auto& [key, arc] : border) {
        auto [c, bcls] = key;
        if (bcls != cls || comp_outer[c] >= 0) continue;
        comp_outer[c] = cls;
        comp_arc[c] = arc;
        // the component's other face classes are regions nested inside it
        for (const auto& [key2, arc2] : border) {
          if (key2.first != c || key2.second == cls) continue;
          if (queued.insert(key2.second).second) class_queue.push_back(key2.second);
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      if (rcomp.find(i) != i || rot[i].empty()) continue;
      if (comp_outer[i] < 0)
        fail(ErrorKind::EmbeddingInvalid, "subgraph component lost its outer face");
      outers.push_back(Arc{comp_arc[i].first, comp_arc[i].second});
    }
  }
  s.graph = PlaneGraph(m, std::move(rot), std::move(outers));
  return s;
}

std::vector<Subgraph> PlaneGraph::split_components() const {
  std::vector<Subgraph> out;
  for (const auto& comp : components()) {
    std::vector<char> keep(n_, 0);
    for (VertexId v : comp) keep[v] = 1;
    out.push_back(subgraph(keep, nullptr));
  }
  return out;
}

Subgraph PlaneGraph::induced_subgraph(const std::vector<char>& keep_vertex) const {
  return subgraph(keep_vertex, nullptr);
}

Subgraph PlaneGraph::induced_subgraph(const std::vector<VertexId>& vertices) const {
  std::vector<char> keep(n_, 0);
  for (VertexId v : vertices) {
    check_vertex(v);
    keep[v] = 1;
  }
  return induced_subgraph(keep);
}

std::vector<VertexId> PlaneGraph::interior_vertices(const CycleInGraph& c) const {
  if (!is_cycle(c)) fail(ErrorKind::NotACycle, "interior");
  const auto& vs = c.vertices;
  std::vector<char> on_c(n_, 0);
  for (VertexId v : vs) on_c[v] = 1;
  std::vector<char> cycle_arc(arc_count_, 0);
  for (size_t i = 0; i < vs.size(); ++i) {
    VertexId a = vs[i], b = vs[(i + 1) % vs.size()];
    cycle_arc[arc_id(a, b)] = 1;
    cycle_arc[arc_id(b, a)] = 1;
  }
  // Faces reachable from the outer face without crossing c are outside.
  std::vector<char> outside(face_count(), 0);
  std::queue<int> bfs;
  outside[outer_face_] = 1;
  bfs.push(outer_face_);
  // face adjacency via arcs not on c
  std::vector<std::vector<int>> face_arcs(face_count());
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) face_arcs[arc_face_[arc_id(v, u)]].push_back(arc_id(v, u));
  auto arc_to = [&](int id) {
    // recover (v,u) from id
    int v = static_cast<int>(std::upper_bound(arc_base_.begin(), arc_base_.end(), id) -
                             arc_base_.begin()) - 1;
    return std::pair<int, int>{v, rot_[v][id - arc_base_[v]]};
  };
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop();
    for (int id : face_arcs[f]) {
      if (cycle_arc[id]) continue;
      auto [v, u] = arc_to(id);
      int g = arc_face_[arc_id(u, v)];
      if (!outside[g]) {
        outside[g] = 1;
        bfs.push(g);
      }
    }
  }
  std::vector<VertexId> open;
  for (VertexId v = 0; v < n_; ++v) {
    if (on_c[v]) continue;
    bool inside = false;
    for (VertexId u : rot_[v])
      if (!outside[arc_face_[arc_id(v, u)]]) inside = true;
    if (degree(v) == 0) continue;  // isolated vertices live in the outer face
    if (inside) open.push_back(v);
  }
  return open;
}

std::pair<std::vector<VertexId>, Subgraph> PlaneGraph::interior(const CycleInGraph& c) const {
  std::vector<VertexId> open = interior_vertices(c);
  const auto& vs = c.vertices;
  std::vector<char> keep(n_, 0);
  for (VertexId v : open) keep[v] = 1;
  for (VertexId v : vs) keep[v] = 1;
  // Keep an edge iff some side of it is an inside face, or it is a c-edge.
  std::vector<char> on_c(n_, 0);
  for (VertexId v : vs) on_c[v] = 1;
  std::vector<char> open_mask(n_, 0);
  for (VertexId v : open) open_mask[v] = 1;
  std::vector<char> cycle_edge_arc(arc_count_, 0);
  for (size_t i = 0; i < vs.size(); ++i) {
    VertexId a = vs[i], b = vs[(i + 1) % vs.size()];
    cycle_edge_arc[arc_id(a, b)] = cycle_edge_arc[arc_id(b, a)] = 1;
  }
  std::vector<char> arc_keep(arc_count_, 0);
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) {
      if (!keep[v] || !keep[u]) continue;
      int id = arc_id(v, u);
      if (cycle_edge_arc[id] || open_mask[v] || open_mask[u]) {
        arc_keep[id] = 1;
        continue;
      }
      // chord between c-vertices: inside iff not drawn in the outside region;
      // reuse interior test via a cheap trick: a chord is inside iff both its
      // endpoints' shared faces on this edge are not outside. Recompute the
      // outside face set with another BFS would repeat work; instead mark via
      // interior faces of open vertices: a chord with no open vertex is inside
      // iff the face on either side is an inside face. Compute lazily below.
      arc_keep[id] = 2;  // undecided
    }
  bool has_undecided = false;
  for (char f : arc_keep)
    if (f == 2) has_undecided = true;
  if (has_undecided) {
    // recompute the outside set as in interior_vertices
    std::vector<char> outside(face_count(), 0);
    std::queue<int> bfs;
    outside[outer_face_] = 1;
    bfs.push(outer_face_);
    std::vector<std::vector<int>> face_arcs(face_count());
    for (VertexId v = 0; v < n_; ++v)
      for (VertexId u : rot_[v]) face_arcs[arc_face_[arc_id(v, u)]].push_back(arc_id(v, u));
    auto arc_to = [&](int id) {
      int v = static_cast<int>(std::upper_bound(arc_base_.begin(), arc_base_.end(), id) -
                               arc_base_.begin()) - 1;
      return std::pair<int, int>{v, rot_[v][id - arc_base_[v]]};
    };
    while (!bfs.empty()) {
      int f = bfs.front();
      bfs.pop();
      for (int id : face_arcs[f]) {
        if (cycle_edge_arc[id]) continue;
        auto [v, u] = arc_to(id);
        int g = arc_face_[arc_id(u, v)];
        if (!outside[g]) {
          outside[g] = 1;
          bfs.push(g);
        }
      }
    }
    for (VertexId v = 0; v < n_; ++v)
      for (VertexId u : rot_[v]) {
        int id = arc_id(v, u);
        if (arc_keep[id] != 2) continue;
        arc_keep[id] = (!outside[arc_face_[id]] || !outside[arc_face_[arc_id(u, v)]]) ? 1 : 0;
      }
  }
  Subgraph s = subgraph(keep, &arc_keep);
  return {std::move(open), std::move(s)};
}

std::vector<std::vector<VertexId>> PlaneGraph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<VertexId> q;
    q.push(s);
    comp[s] = id;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      out[id].push_back(v);
      for (VertexId u : rot_[v])
        if (comp[u] < 0) {
          comp[u] = id;
          q.push(u);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool PlaneGraph::is_connected() const { return components().size() <= 1; }

std::vector<VertexId> PlaneGraph::cut_vertices() const {
  std::vector<int> disc(n_, -1), low(n_, 0);
  std::vector<char> cut(n_, 0);
  int timer = 0;
  // iterative DFS with parent tracking
  for (VertexId root = 0; root < n_; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<std::tuple<VertexId, VertexId, size_t>> stack;  // (v, parent, next idx)
    stack.emplace_back(root, -1, 0);
    disc[root] = low[root] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
      auto& [v, parent, idx] = stack.back();
      if (idx < rot_[v].size()) {
        VertexId u = rot_[v][idx++];
        if (u == parent) continue;
        if (disc[u] < 0) {
          disc[u] = low[u] = timer++;
          if (v == root) root_children++;
          stack.emplace_back(u, v, 0);
        } else {
          low[v] = std::min(low[v], disc[u]);
        }
      } else {
        VertexId vv = v;
        VertexId p = parent;
        stack.pop_back();
        if (p >= 0) {
          low[p] = std::min(low[p], low[vv]);
          if (p != root && low[vv] >= disc[p]) cut[p] = 1;
        }
      }
    }
    if (root_children > 1) cut[root] = 1;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n_; ++v)
    if (cut[v]) out.push_back(v);
  return out;
}

bool PlaneGraph::is_2_connected() const {
  return n_ >= 3 && is_connected() && cut_vertices().empty();
}

std::pair<Subgraph, Subgraph> PlaneGraph::split_along_path(const PathInGraph& p) const {
  const auto& pv = p.vertices;
  if (pv.empty() || !is_path(p)) fail(ErrorKind::NotSeparating, "not a path of the graph");
  std::vector<char> on_p(n_, 0);
  for (VertexId v : pv) on_p[v] = 1;

  if (pv.size() == 1) {
    // cut-vertex split
    VertexId u = pv[0];
    std::vector<char> removed(n_, 0);
    removed[u] = 1;
    std::vector<int> comp(n_, -1);
    int ncomp = 0;
    for (VertexId s = 0; s < n_; ++s) {
      if (removed[s] || comp[s] >= 0) continue;
      std::queue<VertexId> q;
      q.push(s);
      comp[s] = ncomp;
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (VertexId w : rot_[v])
          if (!removed[w] && comp[w] < 0) {
            comp[w] = ncomp;
            q.push(w);
          }
      }
      ncomp++;
    }
    if (ncomp < 2) fail(ErrorKind::NotSeparating, "vertex is not a cut vertex");
    std::vector<char> keep1(n_, 0), keep2(n_, 0);
    keep1[u] = keep2[u] = 1;
    for (VertexId v = 0; v < n_; ++v) {
      if (v == u) continue;
      (comp[v] == 0 ? keep1 : keep2)[v] = 1;
    }
    return {induced_subgraph(keep1), induced_subgraph(keep2)};
  }

  if (!on_outer_boundary(pv.front()) || !on_outer_boundary(pv.back()))
    fail(ErrorKind::NotSeparating, "endpoints must lie on the outer boundary");
  for (size_t i = 1; i + 1 < pv.size(); ++i)
    if (on_outer_boundary(pv[i]))
      fail(ErrorKind::NotSeparating, "interior path vertex on the outer boundary");

  std::vector<char> path_arc(arc_count_, 0);
  for (size_t i = 0; i + 1 < pv.size(); ++i) {
    path_arc[arc_id(pv[i], pv[i + 1])] = 1;
    path_arc[arc_id(pv[i + 1], pv[i])] = 1;
  }
  for (size_t i = 0; i + 1 < pv.size(); ++i)
    if (arc_face_[arc_id(pv[i], pv[i + 1])] == outer_face_ ||
        arc_face_[arc_id(pv[i + 1], pv[i])] == outer_face_)
      fail(ErrorKind::NotSeparating, "path runs along the outer boundary");

  // Grow the two inner-face regions flanking the path; the outer face is a
  // wall. Meeting regions means the path does not separate.
  std::vector<int> side(face_count(), 0);  // 0 unknown, 1, 2
  int f1 = arc_face_[arc_id(pv[0], pv[1])];
  int f2 = arc_face_[arc_id(pv[1], pv[0])];
  if (f1 == f2 || f1 == outer_face_ || f2 == outer_face_)
    fail(ErrorKind::NotSeparating, "degenerate face structure at the path");
  std::vector<std::vector<int>> face_arcs(face_count());
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) face_arcs[arc_face_[arc_id(v, u)]].push_back(arc_id(v, u));
  auto arc_to = [&](int id) {
    int v = static_cast<int>(std::upper_bound(arc_base_.begin(), arc_base_.end(), id) -
                             arc_base_.begin()) - 1;
    return std::pair<int, int>{v, rot_[v][id - arc_base_[v]]};
  };
  for (int which = 1; which <= 2; ++which) {
    std::queue<int> q;
    int start = which == 1 ? f1 : f2;
    if (side[start] != 0) fail(ErrorKind::NotSeparating, "path does not separate");
    side[start] = which;
    q.push(start);
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      for (int id : face_arcs[f]) {
        if (path_arc[id]) continue;
        auto [v, u] = arc_to(id);
        int g = arc_face_[arc_id(u, v)];
        if (g == outer_face_) continue;
        if (side[g] == 0) {
          side[g] = which;
          q.push(g);
        } else if (side[g] != which) {
          fail(ErrorKind::NotSeparating, "path does not separate");
        }
      }
    }
  }
  // Assign vertices and edges by region; path itself goes to both.
  std::vector<char> keep1(n_, 0), keep2(n_, 0);
  std::vector<char> arcs1(arc_count_, 0), arcs2(arc_count_, 0);
  for (VertexId v : pv) keep1[v] = keep2[v] = 1;
  for (size_t i = 0; i + 1 < pv.size(); ++i) {
    arcs1[arc_id(pv[i], pv[i + 1])] = arcs1[arc_id(pv[i + 1], pv[i])] = 1;
    arcs2[arc_id(pv[i], pv[i + 1])] = arcs2[arc_id(pv[i + 1], pv[i])] = 1;
  }
  std::vector<int> vertex_side(n_, 0);
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) {
      int id = arc_id(v, u);
      if (path_arc[id]) continue;
      int s1 = side[arc_face_[id]];
      int s2 = side[arc_face_[arc_id(u, v)]];
      int s = s1 != 0 ? s1 : s2;
      if (s1 != 0 && s2 != 0 && s1 != s2) fail(ErrorKind::NotSeparating, "edge between regions");
      if (s == 0) continue;  // both sides outer: pendant matter, resolved below
      (s == 1 ? arcs1 : arcs2)[id] = 1;
      if (!on_p[v]) {
        if (vertex_side[v] != 0 && vertex_side[v] != s)
          fail(ErrorKind::NotSeparating, "vertex straddles regions");
        vertex_side[v] = s;
        (s == 1 ? keep1 : keep2)[v] = 1;
      }
    }
  // Pendant components living entirely in the outer face attach to whichever
  // assigned vertex they touch; if they touch only the path, side 1.
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < n_; ++v) {
      if (on_p[v] || vertex_side[v] != 0 || degree(v) == 0) continue;
      for (VertexId u : rot_[v]) {
        int s = on_p[u] ? 0 : vertex_side[u];
        if (s != 0) {
          vertex_side[v] = s;
          (s == 1 ? keep1 : keep2)[v] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  for (VertexId v = 0; v < n_; ++v) {
    if (on_p[v] || degree(v) == 0) continue;
    if (vertex_side[v] == 0) {
      vertex_side[v] = 1;
      keep1[v] = 1;
    }
  }
  for (VertexId v = 0; v < n_; ++v)
    for (VertexId u : rot_[v]) {
      int id = arc_id(v, u);
      if (arcs1[id] || arcs2[id] || path_arc[id]) continue;
      int s = !on_p[v] ? vertex_side[v] : (!on_p[u] ? vertex_side[u] : 1);
      (s == 2 ? arcs2 : arcs1)[id] = 1;
    }
  // isolated vertices (degree 0) go to side 1
  for (VertexId v = 0; v < n_; ++v)
    if (degree(v) == 0 && !on_p[v]) keep1[v] = 1;

  Subgraph g1 = subgraph(keep1, &arcs1);
  Subgraph g2 = subgraph(keep2, &arcs2);
  auto proper = [&](const Subgraph& s) { return s.graph.n() < n_; };
  if (!proper(g1) || !proper(g2) || !g1.graph.is_connected() || !g2.graph.is_connected())
    fail(ErrorKind::NotSeparating, "split sides not both proper connected subgraphs");
  for (VertexId v : pv) {
    if (!g1.graph.on_outer_boundary(g1.from_parent[v]) ||
        !g2.graph.on_outer_boundary(g2.from_parent[v]))
      fail(ErrorKind::NotSeparating, "path not on both outer boundaries");
  }
  return {std::move(g1), std::move(g2)};
}

IdentifyResult PlaneGraph::identify_fan_ends(VertexId wj, VertexId wj1, VertexId wj2) const {
  check_vertex(wj);
  check_vertex(wj1);
  check_vertex(wj2);
  if (wj == wj1 || wj1 == wj2 || wj == wj2)
    fail(ErrorKind::PreconditionViolated, "identify_fan_ends needs three distinct vertices");
  if (!has_edge(wj, wj1) || !has_edge(wj1, wj2))
    fail(ErrorKind::PreconditionViolated, "wj,wj1,wj2 must be a path");
  if (has_edge(wj, wj2))
    fail(ErrorKind::PreconditionViolated, "fan ends already adjacent");
  // hub: common neighbour completing both face triangles
  VertexId hub = -1;
  for (VertexId w : rot_[wj1]) {
    if (w == wj || w == wj2) continue;
    if (!has_edge(w, wj) || !has_edge(w, wj2)) continue;
    auto triangle_is_face = [&](VertexId a, VertexId b, VertexId c) {
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        int f = arc_face_[arc_id(x, y)];
        if (face_walks_[f].size() == 3) {
          const auto& fw = face_walks_[f];
          std::vector<VertexId> t = {a, b, c};
          std::vector<VertexId> u = fw;
          std::sort(t.begin(), t.end());
          std::sort(u.begin(), u.end());
          if (t == u) return true;
        }
      }
      return false;
    };
    if (triangle_is_face(w, wj, wj1) && triangle_is_face(w, wj1, wj2)) {
      hub = w;
      break;
    }
  }
  if (hub < 0) fail(ErrorKind::PreconditionViolated, "hub triangles are not faces");
  if (degree(wj1) != 3)
    fail(ErrorKind::PreconditionViolated, "middle fan vertex has extra neighbours");

  // Rotation splice: z inherits both stars, glued across the collapsed region.
  auto rotated_from = [&](VertexId v, VertexId anchor) {
    std::vector<VertexId> r = rot_[v];
    int i = rotation_index(v, anchor);
    std::rotate(r.begin(), r.begin() + i, r.end());
    r.erase(r.begin());  // drop the anchor (wj1)
    return r;            // neighbours of v, in order, starting after wj1
  };
  std::vector<VertexId> part_a = rotated_from(wj, wj1);
  std::vector<VertexId> part_b = rotated_from(wj2, wj1);

  auto try_build = [&](const std::vector<VertexId>& za,
                       const std::vector<VertexId>& zb) -> std::optional<IdentifyResult> {
    std::vector<VertexId> zrot;
    zrot.insert(zrot.end(), za.begin(), za.end());
    zrot.insert(zrot.end(), zb.begin(), zb.end());
    // collapse cyclically adjacent duplicates (merged parallel edges)
    for (bool again = true; again && zrot.size() > 1;) {
      again = false;
      for (size_t i = 0; i < zrot.size(); ++i) {
        size_t j = (i + 1) % zrot.size();
        if (zrot[i] == zrot[j]) {
          zrot.erase(zrot.begin() + static_cast<long>(j > i ? j : i));
          again = true;
          break;
        }
      }
    }
    {
      std::vector<VertexId> sorted = zrot;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return std::nullopt;  // non-adjacent duplicate: no planar merge
    }
    // old -> new ids: wj becomes z, wj1 removed, wj2 removed (merged)
    std::vector<VertexId> old_to_new(n_, -1);
    int m = 0;
    for (VertexId v = 0; v < n_; ++v) {
      if (v == wj1 || v == wj2) continue;
      old_to_new[v] = m++;
    }
    old_to_new[wj2] = old_to_new[wj];
    int z = old_to_new[wj];
    std::vector<std::vector<VertexId>> rot(m);
    for (VertexId v = 0; v < n_; ++v) {
      if (v == wj || v == wj1 || v == wj2) continue;
      std::vector<VertexId> r;
      for (VertexId u : rot_[v]) {
        if (u == wj1) continue;
        r.push_back(old_to_new[u]);
      }
      // collapse cyclically adjacent duplicate z entries
      for (bool again = true; again && r.size() > 1;) {
        again = false;
        for (size_t i = 0; i < r.size(); ++i) {
          size_t j = (i + 1) % r.size();
          if (r[i] == r[j]) {
            r.erase(r.begin() + static_cast<long>(j > i ? j : i));
            again = true;
            break;
          }
        }
      }
      std::vector<VertexId> sorted = r;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return std::nullopt;
      rot[old_to_new[v]] = std::move(r);
    }
    std::vector<VertexId> zr;
    for (VertexId u : zrot) zr.push_back(old_to_new[u]);
    rot[z] = std::move(zr);
    std::optional<Arc> outer;
    if (outer_) {
      VertexId a = old_to_new[outer_->from], b = old_to_new[outer_->to];
      if (a >= 0 && b >= 0 && a != b) {
        bool present = false;
        for (VertexId u : rot[a])
          if (u == b) present = true;
        if (present) outer = Arc{a, b};
      }
    }
    if (!outer) {
      // fall back to any arc on the former outer face that survived
      if (outer_face_ >= 0) {
        const auto& walk = face_walks_[outer_face_];
        for (size_t i = 0; i < walk.size() && !outer; ++i) {
          VertexId a = old_to_new[walk[i]], b = old_to_new[walk[(i + 1) % walk.size()]];
          if (a < 0 || b < 0 || a == b) continue;
          for (VertexId u : rot[a])
            if (u == b) {
              outer = Arc{a, b};
              break;
            }
        }
      }
    }
    bool any_edge = false;
    for (auto& r : rot)
      if (!r.empty()) any_edge = true;
    if (any_edge && !outer) return std::nullopt;
    try {
      IdentifyResult res{PlaneGraph(m, std::move(rot), any_edge ? outer : std::nullopt), z,
                         old_to_new};
      return res;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (auto r = try_build(part_a, part_b)) return std::move(*r);
  if (auto r = try_build(part_b, part_a)) return std::move(*r);
  fail(ErrorKind::PreconditionViolated, "identification does not embed");
}

}  // namespace girthwright
