#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "girthwright/generator.hpp"
#include "girthwright/plane_graph.hpp"

namespace gwt {

using namespace girthwright;

inline PlaneGraph cycle_graph(int q) {
  std::vector<std::vector<VertexId>> rot(q);
  for (int i = 0; i < q; ++i) rot[i] = {(i + q - 1) % q, (i + 1) % q};
  return PlaneGraph(q, rot, Arc{0, 1});
}

inline PlaneGraph path_graph(int n) {
  std::vector<std::vector<VertexId>> rot(n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) rot[i].push_back(i - 1);
    if (i + 1 < n) rot[i].push_back(i + 1);
  }
  return PlaneGraph(n, rot, n >= 2 ? std::optional<Arc>(Arc{0, 1}) : std::nullopt);
}

// K4 with outer triangle 0,1,2 and hub 3.
inline PlaneGraph k4_graph() {
  gen::AbstractGraph g(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
  return *gen::embed_planar(g);
}

// Two triangles sharing vertex 0: 0-1-2, 0-3-4.
inline PlaneGraph bowtie_graph() {
  gen::AbstractGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(0, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 0);
  return *gen::embed_planar(g);
}

}  // namespace gwt
