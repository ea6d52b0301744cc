#include "girthwright/generator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace girthwright {
namespace gen {

int AbstractGraph::edge_count() const {
  int m = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) m += adj[u][v];
  return m;
}

bool AbstractGraph::connected() const {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u = 0; u < n; ++u)
      if (adj[v][u] && !seen[u]) {
        seen[u] = 1;
        cnt++;
        q.push(u);
      }
  }
  return cnt == n;
}

namespace {

// Upper-triangle bitmask of the adjacency matrix under a vertex relabelling.
uint64_t key_under(const AbstractGraph& g, const std::vector<int>& perm) {
  uint64_t key = 0;
  int bit = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j, ++bit)
      if (g.adj[perm[i]][perm[j]]) key |= uint64_t{1} << bit;
  return key;
}

// Minimum key over degree-class-respecting permutations.
uint64_t canonical_key(const AbstractGraph& g) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(g.n, 0);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) deg[u] += g.adj[u][v];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return deg[a] != deg[b] ? deg[a] < deg[b] : a < b;
  });
  uint64_t best = ~uint64_t{0};
  // permute within equal-degree blocks only
  std::vector<std::pair<int, int>> blocks;  // [begin, end)
  for (int i = 0; i < g.n;) {
    int j = i;
    while (j < g.n && deg[order[j]] == deg[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::vector<int> perm = order;
  auto rec = [&](auto&& self, size_t bi) -> void {
    if (bi == blocks.size()) {
      best = std::min(best, key_under(g, perm));
      return;
    }
    auto [b, e] = blocks[bi];
    std::sort(perm.begin() + b, perm.begin() + e);
    do {
      self(self, bi + 1);
    } while (std::next_permutation(perm.begin() + b, perm.begin() + e));
  };
  rec(rec, 0);
  return best;
}

}  // namespace

std::vector<AbstractGraph> all_connected_graphs(int n) {
  if (n <= 0) return {};
  if (n == 1) return {AbstractGraph(1)};
  std::vector<AbstractGraph> prev = all_connected_graphs(n - 1);
  std::map<uint64_t, AbstractGraph> dedup;
  for (const AbstractGraph& p : prev) {
    for (int subset = 1; subset < (1 << (n - 1)); ++subset) {
      AbstractGraph g(n);
      for (int u = 0; u < n - 1; ++u)
        for (int v = u + 1; v < n - 1; ++v)
          if (p.adj[u][v]) g.add_edge(u, v);
      for (int u = 0; u < n - 1; ++u)
        if (subset & (1 << u)) g.add_edge(u, n - 1);
      uint64_t key = canonical_key(g);
      dedup.emplace(key, std::move(g));
    }
  }
  std::vector<AbstractGraph> out;
  out.reserve(dedup.size());
  for (auto& [k, g] : dedup) out.push_back(std::move(g));
  return out;
}

namespace {

// Biconnected components as edge lists (plus single-edge blocks).
std::vector<std::vector<std::pair<int, int>>> blocks_of(const AbstractGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> blocks;
  std::vector<int> disc(g.n, -1), low(g.n, 0);
  std::vector<std::pair<int, int>> estack;
  int timer = 0;
  auto dfs = [&](auto&& self, int v, int parent) -> void {
    disc[v] = low[v] = timer++;
    for (int u = 0; u < g.n; ++u) {
      if (!g.adj[v][u] || u == parent) continue;
      if (disc[u] < 0) {
        estack.emplace_back(v, u);
        self(self, u, v);
        low[v] = std::min(low[v], low[u]);
        if (low[u] >= disc[v]) {
          std::vector<std::pair<int, int>> blk;
          while (true) {
            auto e = estack.back();
            estack.pop_back();
            blk.push_back(e);
            if (e == std::make_pair(v, u)) break;
          }
          blocks.push_back(std::move(blk));
        }
      } else if (disc[u] < disc[v]) {
        estack.emplace_back(v, u);
        low[v] = std::min(low[v], disc[u]);
      }
    }
  };
  for (int v = 0; v < g.n; ++v)
    if (disc[v] < 0) dfs(dfs, v, -1);
  return blocks;
}

// DMP on a 2-connected block (vertices relabelled into the block).
// Returns faces as simple vertex cycles, or nullopt when non-planar.
std::optional<std::vector<std::vector<int>>> dmp_faces(const AbstractGraph& g) {
  int n = g.n;
  // find any cycle via DFS
  std::vector<int> parent(n, -1), state(n, 0);
  std::vector<int> cyc;
  {
    std::vector<int> stack = {0};
    parent[0] = 0;
    int cu = -1, cv = -1;
    while (!stack.empty() && cyc.empty()) {
      int v = stack.back();
      if (state[v] == 0) state[v] = 1;
      bool advanced = false;
      for (int u = 0; u < n && !advanced; ++u) {
        if (!g.adj[v][u] || u == parent[v]) continue;
        if (state[u] == 1) {
          cu = v;
          cv = u;
          advanced = true;
          break;
        }
        if (state[u] == 0) {
          parent[u] = v;
          stack.push_back(u);
          advanced = true;
        }
      }
      if (cu >= 0) {
        int x = cu;
        while (x != cv) {
          cyc.push_back(x);
          x = parent[x];
        }
        cyc.push_back(cv);
        break;
      }
      if (!advanced) {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  if (cyc.empty()) return std::nullopt;  // acyclic: block must be a single edge
  std::vector<char> emb_v(n, 0);
  std::vector<std::vector<char>> emb_e(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < cyc.size(); ++i) {
    emb_v[cyc[i]] = 1;
    int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    emb_e[a][b] = emb_e[b][a] = 1;
  }
  std::vector<std::vector<int>> faces;
  faces.push_back(cyc);
  faces.emplace_back(cyc.rbegin(), cyc.rend());

  while (true) {
    // fragments
    struct Fragment {
      std::vector<int> verts;        // interior vertices (may be empty)
      std::vector<int> attachments;  // embedded vertices
      std::pair<int, int> lone_edge{-1, -1};
    };
    std::vector<Fragment> frags;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (g.adj[u][v] && !emb_e[u][v] && emb_v[u] && emb_v[v]) {
          Fragment f;
          f.attachments = {u, v};
          f.lone_edge = {u, v};
          frags.push_back(std::move(f));
        }
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      if (emb_v[s] || seen[s]) continue;
      Fragment f;
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      std::set<int> att;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        f.verts.push_back(v);
        for (int u = 0; u < n; ++u) {
          if (!g.adj[v][u]) continue;
          if (emb_v[u]) att.insert(u);
          else if (!seen[u]) {
            seen[u] = 1;
            q.push(u);
          }
        }
      }
      f.attachments.assign(att.begin(), att.end());
      frags.push_back(std::move(f));
    }
    if (frags.empty()) break;
    // admissible faces per fragment
    int pick = -1, pick_face = -1, pick_count = 1 << 20;
    for (size_t fi = 0; fi < frags.size(); ++fi) {
      int count = 0, first = -1;
      for (size_t j = 0; j < faces.size(); ++j) {
        std::set<int> fv(faces[j].begin(), faces[j].end());
        bool all = true;
        for (int a : frags[fi].attachments)
          if (!fv.count(a)) all = false;
        if (all) {
          count++;
          if (first < 0) first = static_cast<int>(j);
        }
      }
      if (count == 0) return std::nullopt;  // non-planar
      if (count < pick_count) {
        pick_count = count;
        pick = static_cast<int>(fi);
        pick_face = first;
      }
    }
    // a path through the chosen fragment between two attachments
    Fragment& f = frags[pick];
    std::vector<int> path;
    if (f.lone_edge.first >= 0) {
      path = {f.lone_edge.first, f.lone_edge.second};
    } else {
      int a = f.attachments[0], b = f.attachments[1];
      // BFS from a through fragment interior to b
      std::vector<int> pred(n, -1);
      std::queue<int> q;
      std::vector<char> inside(n, 0);
      for (int v : f.verts) inside[v] = 1;
      for (int v : f.verts)
        if (g.adj[a][v] && pred[v] < 0) {
          pred[v] = a;
          q.push(v);
        }
      int hit = -1;
      while (!q.empty() && hit < 0) {
        int v = q.front();
        q.pop();
        if (g.adj[v][b]) {
          hit = v;
          break;
        }
        for (int u = 0; u < n; ++u)
          if (inside[u] && g.adj[v][u] && pred[u] < 0) {
            pred[u] = v;
            q.push(u);
          }
      }
      assert(hit >= 0);
      path.push_back(b);
      for (int x = hit; x != a; x = pred[x]) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
    }
    // embed path into pick_face, splitting it
    std::vector<int>& fc = faces[pick_face];
    int ia = -1, ib = -1;
    for (size_t i = 0; i < fc.size(); ++i) {
      if (fc[i] == path.front()) ia = static_cast<int>(i);
      if (fc[i] == path.back()) ib = static_cast<int>(i);
    }
    assert(ia >= 0 && ib >= 0 && ia != ib);
    std::vector<int> f1, f2;
    // f1: path forward, then face from path.back() around to path.front()
    f1.insert(f1.end(), path.begin(), path.end() - 1);
    for (int i = ib; i != ia; i = (i + 1) % static_cast<int>(fc.size())) f1.push_back(fc[i]);
    // f2: path backward, then face from path.front() around to path.back()
    f2.insert(f2.end(), path.rbegin(), path.rend() - 1);
    for (int i = ia; i != ib; i = (i + 1) % static_cast<int>(fc.size())) f2.push_back(fc[i]);
    faces[pick_face] = std::move(f1);
    faces.push_back(std::move(f2));
    for (int v : path) emb_v[v] = 1;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      emb_e[path[i]][path[i + 1]] = emb_e[path[i + 1]][path[i]] = 1;
  }
  return faces;
}

// Rotation system from a consistently oriented face set of one block.
// succ[v][u] = w whenever a face contains the subwalk u -> v -> w.
std::optional<std::vector<std::vector<int>>> faces_to_rotations(
    int n, const std::vector<std::vector<int>>& faces) {
  std::vector<std::map<int, int>> succ(n);
  for (const auto& f : faces) {
    int m = static_cast<int>(f.size());
    for (int i = 0; i < m; ++i) {
      int u = f[i], v = f[(i + 1) % m], w = f[(i + 2) % m];
      if (succ[v].count(u)) return std::nullopt;
      succ[v][u] = w;
    }
  }
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) {
    if (succ[v].empty()) continue;
    int start = succ[v].begin()->first;
    int x = start;
    do {
      rot[v].push_back(x);
      auto it = succ[v].find(x);
      if (it == succ[v].end()) return std::nullopt;
      x = it->second;
    } while (x != start && rot[v].size() <= succ[v].size());
    if (rot[v].size() != succ[v].size()) return std::nullopt;
  }
  return rot;
}

}  // namespace

std::optional<std::vector<std::vector<VertexId>>> embed_rotations(const AbstractGraph& g) {
  if (!g.connected()) fail(ErrorKind::PreconditionViolated, "embed_rotations needs a connected graph");
  std::vector<std::vector<VertexId>> rot(g.n);
  for (const auto& blk : blocks_of(g)) {
    std::set<int> vs;
    for (auto [u, v] : blk) {
      vs.insert(u);
      vs.insert(v);
    }
    std::vector<int> verts(vs.begin(), vs.end());
    std::map<int, int> local;
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    AbstractGraph bg(static_cast<int>(verts.size()));
    for (auto [u, v] : blk) bg.add_edge(local[u], local[v]);
    std::vector<std::vector<int>> brot;
    if (bg.edge_count() == 1) {
      brot = {{1}, {0}};
    } else {
      auto faces = dmp_faces(bg);
      if (!faces) return std::nullopt;
      auto r = faces_to_rotations(bg.n, *faces);
      if (!r) return std::nullopt;
      brot = *r;
    }
    // concatenate block rotations at shared (cut) vertices
    for (size_t i = 0; i < verts.size(); ++i)
      for (int u : brot[i]) rot[verts[i]].push_back(verts[u]);
  }
  return rot;
}

PlaneGraph plane_graph_from_faces(int n, const std::vector<std::vector<VertexId>>& faces,
                                  size_t outer_index) {
  std::vector<std::vector<int>> walks;
  walks.reserve(faces.size());
  for (const auto& f : faces) walks.emplace_back(f.begin(), f.end());
  auto rot = faces_to_rotations(n, walks);
  if (!rot || outer_index >= faces.size())
    fail(ErrorKind::EmbeddingInvalid, "face list does not close up");
  const auto& of = faces[outer_index];
  std::optional<Arc> outer;
  if (of.size() >= 2) outer = Arc{of[0], of[1]};
  return PlaneGraph(n, *rot, outer);
}

std::optional<PlaneGraph> embed_planar(const AbstractGraph& g) {
  auto rot = embed_rotations(g);
  if (!rot) return std::nullopt;
  std::optional<Arc> outer;
  for (int v = 0; v < g.n && !outer; ++v)
    if (!(*rot)[v].empty()) outer = Arc{v, (*rot)[v][0]};
  PlaneGraph pg(g.n, *rot, outer);
  if (!outer) return pg;
  // re-designate: largest face (first traced wins ties)
  int best = -1;
  size_t best_sz = 0;
  for (int f = 0; f < pg.face_count(); ++f)
    if (pg.faces()[f].size() > best_sz) {
      best_sz = pg.faces()[f].size();
      best = f;
    }
  const auto& walk = pg.faces()[best];
  Arc a{walk[0], walk[1]};
  return PlaneGraph(g.n, *rot, a);
}

std::vector<PlaneGraph> all_connected_planar(int n) {
  std::vector<PlaneGraph> out;
  for (const AbstractGraph& g : all_connected_graphs(n))
    if (auto pg = embed_planar(g)) out.push_back(std::move(*pg));
  return out;
}

namespace {

PlaneGraph embedded_or_die(const AbstractGraph& g) {
  auto pg = embed_planar(g);
  if (!pg) fail(ErrorKind::PreconditionViolated, "constructed wheel failed to embed");
  return *pg;
}

PlaneGraph with_outer_cycle(const PlaneGraph& g, const std::vector<VertexId>& cyc) {
  // pick the outer arc so that the designated outer face walk is exactly cyc
  std::set<VertexId> want(cyc.begin(), cyc.end());
  for (int f = 0; f < g.face_count(); ++f) {
    const auto& w = g.faces()[f];
    if (w.size() != cyc.size()) continue;
    std::set<VertexId> got(w.begin(), w.end());
    if (got == want) return PlaneGraph(g.n(), g.rotations(), Arc{w[0], w[1]});
  }
  fail(ErrorKind::PreconditionViolated, "requested outer cycle is not a face");
}

}  // namespace

MadeWheel make_wheel(int q) {
  if (q < 3) fail(ErrorKind::PreconditionViolated, "wheel needs rim length >= 3");
  AbstractGraph g(q + 1);
  for (int i = 0; i < q; ++i) {
    g.add_edge(i, (i + 1) % q);
    g.add_edge(i, q);
  }
  PlaneGraph pg = embedded_or_die(g);
  std::vector<VertexId> rim(q);
  std::iota(rim.begin(), rim.end(), 0);
  MadeWheel w{with_outer_cycle(pg, rim), {0, 1, 2}, rim};
  return w;
}

MadeWheel make_broken_wheel(int q) {
  if (q < 3) fail(ErrorKind::PreconditionViolated, "broken wheel needs q >= 3");
  AbstractGraph g(q);
  for (int i = 0; i < q; ++i) g.add_edge(i, (i + 1) % q);
  for (int i = 3; i < q; ++i) g.add_edge(1, i);
  PlaneGraph pg = embedded_or_die(g);
  std::vector<VertexId> cyc(q);
  std::iota(cyc.begin(), cyc.end(), 0);
  return MadeWheel{with_outer_cycle(pg, cyc), {0, 1, 2}, cyc};
}

MadeWheel make_generalized(const std::vector<WheelSegmentSpec>& segments) {
  if (segments.empty()) fail(ErrorKind::PreconditionViolated, "empty generalized wheel spec");
  // Chain of fans and wheels around the middle vertex b; the canonical
  // embedding is written down face by face, then turned into rotations.
  const int a = 0, b = 1, c = 2;
  int next_id = 3;
  struct Built {
    bool wheel;
    int from, to, hub;
    std::vector<int> rim;  // intermediate/far vertices in a->c direction
  };
  std::vector<Built> built;
  for (size_t si = 0; si < segments.size(); ++si) {
    const WheelSegmentSpec& seg = segments[si];
    Built bs;
    bs.wheel = seg.wheel;
    bs.from = built.empty() ? a : built.back().to;
    bs.hub = -1;
    int inner = seg.wheel ? std::max(0, seg.size) : std::max(1, seg.size) - 1;
    for (int i = 0; i < inner; ++i) bs.rim.push_back(next_id++);
    bs.to = (si + 1 == segments.size()) ? c : next_id++;
    if (seg.wheel) bs.hub = next_id++;
    built.push_back(std::move(bs));
  }
  int n = next_id;
  // faces, outer first; inner triangles oriented against the outer walk
  std::vector<std::vector<int>> faces;
  std::vector<int> outer = {a, b, c};
  for (auto it = built.rbegin(); it != built.rend(); ++it) {
    for (auto r = it->rim.rbegin(); r != it->rim.rend(); ++r) outer.push_back(*r);
    if (it->from != a) outer.push_back(it->from);
  }
  faces.push_back(outer);
  for (const Built& s : built) {
    std::vector<int> chain = {s.from};
    chain.insert(chain.end(), s.rim.begin(), s.rim.end());
    chain.push_back(s.to);
    if (!s.wheel) {
      for (size_t i = 0; i + 1 < chain.size(); ++i)
        faces.push_back({b, chain[i], chain[i + 1]});
    } else {
      for (size_t i = 0; i + 1 < chain.size(); ++i)
        faces.push_back({s.hub, chain[i], chain[i + 1]});
      faces.push_back({s.hub, s.to, b});
      faces.push_back({s.hub, b, s.from});
    }
  }
  auto rot = faces_to_rotations(n, faces);
  if (!rot) fail(ErrorKind::PreconditionViolated, "generalized wheel faces do not close up");
  PlaneGraph out(n, *rot, Arc{a, b});
  std::vector<VertexId> cyc(outer.begin(), outer.end());
  return MadeWheel{std::move(out), {a, b, c}, std::move(cyc)};
}

PlaneGraph random_planar(int n, uint64_t seed, GirthTarget target) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 400; ++attempt) {
    AbstractGraph g(n);
    // random spanning tree
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
    int extra = n <= 2 ? 0 : static_cast<int>(rng() % (2 * n));
    for (int t = 0; t < extra; ++t) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v || g.has(u, v)) continue;
      g.add_edge(u, v);
      bool ok = true;
      if (target != GirthTarget::Any) {
        // cheap cycle-length guard: check girth of the abstract graph
        // via BFS from u avoiding the new edge
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[u] = 0;
        q.push(u);
        while (!q.empty()) {
          int x = q.front();
          q.pop();
          for (int y = 0; y < n; ++y) {
            if (!g.adj[x][y] || dist[y] >= 0) continue;
            if ((x == u && y == v) || (x == v && y == u)) continue;
            dist[y] = dist[x] + 1;
            q.push(y);
          }
        }
        int cyc = dist[v] < 0 ? -1 : dist[v] + 1;
        int minlen = target == GirthTarget::TriangleFree ? 4 : 5;
        if (cyc >= 0 && cyc < minlen) ok = false;
      }
      if (ok && !embed_rotations(g)) ok = false;
      if (!ok) {
        g.adj[u][v] = g.adj[v][u] = 0;
      }
    }
    auto pg = embed_planar(g);
    if (pg) return *pg;
  }
  fail(ErrorKind::PreconditionViolated, "random_planar failed to produce a graph");
}

Canvas random_canvas(int n, uint64_t seed, GirthTarget target, int universe) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 200; ++attempt) {
    PlaneGraph g = random_planar(n, rng(), target);
    GirthProfile profile = girth_profile(g);
    BoundaryWalk bw = g.outer_boundary();
    if (bw.vertices.empty()) continue;
    // pick S: contiguous distinct arc of the boundary walk
    int want = static_cast<int>(rng() % 5);  // 0..4 vertices
    std::vector<VertexId> s;
    if (want > 0 && !bw.vertices.empty()) {
      size_t start = rng() % bw.vertices.size();
      std::set<VertexId> used;
      for (size_t i = 0; i < bw.vertices.size() && static_cast<int>(s.size()) < want; ++i) {
        VertexId v = bw.vertices[(start + i) % bw.vertices.size()];
        if (used.count(v)) break;
        used.insert(v);
        s.push_back(v);
      }
    }
    PathInGraph sp{s};
    if (!g.is_path(sp) || !is_acceptable_path(g, profile, sp)) {
      // retry with a shorter prefix
      while (s.size() > 3) s.pop_back();
      sp.vertices = s;
      if (!g.is_path(sp) || !is_acceptable_path(g, profile, sp)) continue;
    }
    std::set<VertexId> sset(s.begin(), s.end());
    // A: independent girth>=5 boundary vertices off S
    std::vector<VertexId> a;
    std::set<VertexId> ablock;
    for (VertexId v : g.boundary_vertices()) {
      if (sset.count(v) || ablock.count(v) || !profile[v].at_least(5)) continue;
      if (rng() % 2 == 0) continue;
      a.push_back(v);
      for (VertexId u : g.neighbours(v)) ablock.insert(u);
    }
    std::sort(a.begin(), a.end());
    std::set<VertexId> aset(a.begin(), a.end());
    // lists
    ListAssignment l(g.n());
    auto draw = [&](int k) {
      ColourSet cs;
      std::vector<Colour> pool(universe);
      std::iota(pool.begin(), pool.end(), 0);
      for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
        cs.insert(pool[i]);
      }
      return cs;
    };
    for (VertexId v = 0; v < g.n(); ++v) {
      int k;
      if (sset.count(v)) k = 1 + static_cast<int>(rng() % 2);
      else if (aset.count(v)) k = 2;
      else if (g.on_outer_boundary(v)) k = 3;
      else k = list_threshold(girth_class(profile, v));
      l[v] = draw(k);
    }
    Canvas k{g, l, BoundarySubgraph{s, false}, a};
    if (canvas_ok(k, profile)) return k;
  }
  fail(ErrorKind::PreconditionViolated, "random_canvas failed to produce a canvas");
}

}  // namespace gen
}  // namespace girthwright
