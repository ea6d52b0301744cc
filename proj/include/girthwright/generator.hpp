#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "girthwright/canvas.hpp"
#include "girthwright/plane_graph.hpp"

namespace girthwright {
namespace gen {

// Abstract simple graph used by the enumerator/embedder.
struct AbstractGraph {
  int n = 0;
  std::vector<std::vector<char>> adj;
  explicit AbstractGraph(int n_ = 0) : n(n_), adj(n_, std::vector<char>(n_, 0)) {}
  void add_edge(int u, int v) { adj[u][v] = adj[v][u] = 1; }
  bool has(int u, int v) const { return adj[u][v]; }
  int edge_count() const;
  bool connected() const;
};

// One representative per isomorphism class of connected graphs on n vertices.
std::vector<AbstractGraph> all_connected_graphs(int n);

// DMP-style incremental embedding. Returns rotations (no outer face chosen)
// or nullopt when the graph is non-planar. The input must be connected.
std::optional<std::vector<std::vector<VertexId>>> embed_rotations(const AbstractGraph& g);

// Embedding with the outer face set to the largest face (ties: first traced).
std::optional<PlaneGraph> embed_planar(const AbstractGraph& g);

// Build a plane graph from an explicit consistently-oriented face list; the
// face at `outer_index` becomes the outer face.
PlaneGraph plane_graph_from_faces(int n, const std::vector<std::vector<VertexId>>& faces,
                                  size_t outer_index = 0);

// Connected planar graphs on n vertices, one per isomorphism class, embedded.
std::vector<PlaneGraph> all_connected_planar(int n);

// Canonical wheel families. Vertex ids: principal path first.
struct WheelSegmentSpec {
  bool wheel = false;  // false: fan of `size` triangles; true: wheel segment
  int size = 1;        // fan: #triangles >= 1; wheel: #extra far-rim vertices >= 0
};

struct MadeWheel {
  PlaneGraph graph;
  std::vector<VertexId> principal;    // v1, v2, v3
  std::vector<VertexId> outer_cycle;  // starts v1, v2, v3, then far rim
};

MadeWheel make_wheel(int q);         // rim length q >= 3, hub inside
MadeWheel make_broken_wheel(int q);  // outer cycle length q >= 3
MadeWheel make_generalized(const std::vector<WheelSegmentSpec>& segments);

enum class GirthTarget { Any, TriangleFree, GirthFive };

Canvas random_canvas(int n, uint64_t seed, GirthTarget target = GirthTarget::Any,
                     int universe = 6);

// Random connected plane graph (used by random_canvas and the stress tool).
PlaneGraph random_planar(int n, uint64_t seed, GirthTarget target = GirthTarget::Any);

}  // namespace gen
}  // namespace girthwright
