#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "girthwright/error.hpp"

namespace girthwright {

using VertexId = int;

// Directed edge (arc). The face "owned" by an arc is the one traced by
// next(u,v) = (v, successor of u in the rotation of v).
struct Arc {
  VertexId from = -1;
  VertexId to = -1;
  bool operator==(const Arc&) const = default;
};

struct BoundaryWalk {
  // Closed walk; vertices.size() == number of arcs in the walk.
  // vertices[i] -- vertices[(i+1) % size] is an edge of the graph.
  std::vector<VertexId> vertices;
};

struct PathInGraph {
  std::vector<VertexId> vertices;  // pairwise distinct; may be empty
};

struct CycleInGraph {
  std::vector<VertexId> vertices;  // cyclic, pairwise distinct, length >= 3
};

struct Subgraph;
struct IdentifyResult;

// Combinatorial plane embedding: simple graph + rotations of one fixed
// chirality + a designated outer face (one arc whose traced face walk is the
// outer face). Immutable after construction.
class PlaneGraph {
 public:
  PlaneGraph() = default;
  // Validates simplicity, symmetry and the Euler formula per component.
  // outer may be omitted only when the graph has no edges. Components other
  // than the designated one default their outer face to their largest face;
  // subgraph extraction assigns them from the parent embedding instead.
  PlaneGraph(int n, std::vector<std::vector<VertexId>> rotations,
             std::optional<Arc> outer);
  // One outer arc per edge-bearing component (order irrelevant).
  PlaneGraph(int n, std::vector<std::vector<VertexId>> rotations, std::vector<Arc> outers);

  int n() const { return n_; }
  int edge_count() const { return arc_count_ / 2; }
  int degree(VertexId v) const { return static_cast<int>(rot_[v].size()); }
  const std::vector<VertexId>& neighbours(VertexId v) const { return rot_[v]; }
  const std::vector<std::vector<VertexId>>& rotations() const { return rot_; }
  std::optional<Arc> outer_edge() const { return outer_; }

  bool has_vertex(VertexId v) const { return v >= 0 && v < n_; }
  bool has_edge(VertexId u, VertexId v) const;

  // Face structure (computed at construction).
  int face_count() const { return static_cast<int>(face_walks_.size()); }
  const std::vector<std::vector<VertexId>>& faces() const { return face_walks_; }
  int face_left_of(VertexId u, VertexId v) const;  // face id of arc (u,v)
  int outer_face_id() const { return outer_face_; }
  bool is_outer_face(int fid) const { return outer_mask_.empty() ? false : outer_mask_[fid]; }

  BoundaryWalk outer_boundary() const;
  bool on_outer_boundary(VertexId v) const { return n_ > 0 && on_outer_[v]; }
  // True when uv is an edge appearing on the outer face walk.
  bool boundary_edge(VertexId u, VertexId v) const;
  std::vector<VertexId> boundary_vertices() const;  // sorted

  std::vector<std::pair<VertexId, VertexId>> edges() const;  // u < v

  bool is_path(const PathInGraph& p) const;
  bool is_cycle(const CycleInGraph& c) const;

  // Chords: edges with both endpoints on c that are not edges of c.
  std::vector<std::pair<VertexId, VertexId>> chords_of(const CycleInGraph& c) const;

  // Open interior Int(C): vertices strictly inside c.
  std::vector<VertexId> interior_vertices(const CycleInGraph& c) const;
  // (Int(C), Int[C]); the closed graph's outer face is c itself.
  std::pair<std::vector<VertexId>, Subgraph> interior(const CycleInGraph& c) const;

  // Generic subgraph extraction with inherited embedding. keep_vertex[v]
  // selects vertices; edges are kept when both ends survive and edge_kept
  // (nullptr = all) accepts them. The inherited outer face is the face of the
  // subgraph whose territory contains the outer face of this graph.
  Subgraph subgraph(const std::vector<char>& keep_vertex,
                    const std::vector<char>* edge_kept_by_arc) const;
  Subgraph induced_subgraph(const std::vector<char>& keep_vertex) const;
  Subgraph induced_subgraph(const std::vector<VertexId>& vertices) const;

  // Splits along a path whose endpoints lie on the outer boundary and whose
  // interior vertices do not. Single-vertex paths split at a cut vertex.
  std::pair<Subgraph, Subgraph> split_along_path(const PathInGraph& p) const;

  std::vector<VertexId> cut_vertices() const;  // sorted
  bool is_2_connected() const;
  bool is_connected() const;
  std::vector<std::vector<VertexId>> components() const;
  // Connected components as subgraphs, each with its inherited outer face.
  std::vector<Subgraph> split_components() const;

  // Fan closing: identify the fan ends wj and wj2 into a new vertex z and
  // delete wj1. Requires the two hub triangles to be faces, deg(wj1) == 3
  // and wj, wj2 non-adjacent.
  IdentifyResult identify_fan_ends(VertexId wj, VertexId wj1, VertexId wj2) const;

  // Arc ids: each directed edge has a dense id; (u,v) and (v,u) differ.
  int arc_id(VertexId u, VertexId v) const;
  int arc_count() const { return arc_count_; }

  bool operator==(const PlaneGraph& o) const {
    return n_ == o.n_ && rot_ == o.rot_ && outer_pair() == o.outer_pair();
  }

 private:
  std::pair<int, int> outer_pair() const {
    return outer_ ? std::pair<int, int>{outer_->from, outer_->to}
                  : std::pair<int, int>{-1, -1};
  }
  int rotation_index(VertexId u, VertexId v) const;  // index of v in rot_[u]
  void build_faces(const std::vector<Arc>& extra_outers);
  void check_vertex(VertexId v) const;

  int n_ = 0;
  int arc_count_ = 0;
  std::vector<std::vector<VertexId>> rot_;
  std::optional<Arc> outer_;
  std::vector<int> arc_base_;  // arc id of (v, rot_[v][0])
  std::vector<std::vector<VertexId>> face_walks_;
  std::vector<int> arc_face_;  // arc id -> face id
  int outer_face_ = -1;        // outer face of the designated component
  std::vector<char> outer_mask_;  // per-face: outer face of some component
  std::vector<char> on_outer_;
};

struct Subgraph {
  PlaneGraph graph;
  std::vector<VertexId> to_parent;    // size = graph.n()
  std::vector<VertexId> from_parent;  // size = parent n, -1 where dropped
};

struct IdentifyResult {
  PlaneGraph graph;
  VertexId z = -1;                   // merged vertex in the new graph
  std::vector<VertexId> old_to_new;  // size = old n; -1 for deleted wj1
};

}  // namespace girthwright
