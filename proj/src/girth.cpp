#include "girthwright/girth.hpp"

#include <queue>

namespace girthwright {

// Shortest cycle through v = min over neighbour pairs {a,b} of
// 2 + dist_{G-v}(a,b). One BFS in G-v per neighbour of v.
Girth vertex_girth(const PlaneGraph& g, VertexId v) {
  if (!g.has_vertex(v)) fail(ErrorKind::UnknownVertex, "vertex_girth");
  const auto& nb = g.neighbours(v);
  if (nb.size() < 2) return Girth::infinite();
  int best = -1;
  std::vector<int> dist(g.n());
  for (size_t i = 0; i < nb.size(); ++i) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[nb[i]] = 0;
    std::queue<VertexId> q;
    q.push(nb[i]);
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      if (best >= 0 && dist[x] + 2 >= best) continue;  // cannot improve
      for (VertexId y : g.neighbours(x)) {
        if (y == v || dist[y] >= 0) continue;
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
    for (size_t j = i + 1; j < nb.size(); ++j) {
      if (dist[nb[j]] < 0) continue;
      int len = dist[nb[j]] + 2;
      if (best < 0 || len < best) best = len;
    }
  }
  return best < 0 ? Girth::infinite() : Girth::finite(best);
}

GirthProfile girth_profile(const PlaneGraph& g) {
  GirthProfile p;
  p.values.reserve(g.n());
  for (VertexId v = 0; v < g.n(); ++v) p.values.push_back(vertex_girth(g, v));
  return p;
}

GirthClass girth_class(const GirthProfile& p, VertexId v) {
  const Girth& gv = p.values.at(v);
  if (!gv.is_finite()) return GirthClass::Acyclic;
  if (gv.length() == 3) return GirthClass::G3;
  if (gv.length() == 4) return GirthClass::G4;
  return GirthClass::G5plus;
}

int list_threshold(GirthClass c) {
  switch (c) {
    case GirthClass::G3: return 5;
    case GirthClass::G4: return 4;
    default: return 3;
  }
}

}  // namespace girthwright
