#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "girthwright/girth.hpp"
#include "girthwright/plane_graph.hpp"

namespace girthwright {

using Colour = int;

// Small set of colours over the universe 0..63.
class ColourSet {
 public:
  static constexpr Colour kMaxColour = 63;
  ColourSet() = default;
  static ColourSet of(std::initializer_list<Colour> cs) {
    ColourSet s;
    for (Colour c : cs) s.insert(c);
    return s;
  }
  static ColourSet range(int k) {
    ColourSet s;
    for (Colour c = 0; c < k; ++c) s.insert(c);
    return s;
  }
  void insert(Colour c) {
    check(c);
    bits_ |= (uint64_t{1} << c);
  }
  void erase(Colour c) {
    check(c);
    bits_ &= ~(uint64_t{1} << c);
  }
  bool contains(Colour c) const { return c >= 0 && c <= kMaxColour && (bits_ >> c) & 1; }
  int size() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  Colour smallest() const {
    if (empty()) fail(ErrorKind::ListExhausted, "smallest of empty colour set");
    return __builtin_ctzll(bits_);
  }
  bool subset_of(const ColourSet& o) const { return (bits_ & ~o.bits_) == 0; }
  ColourSet minus(const ColourSet& o) const { return ColourSet(bits_ & ~o.bits_); }
  ColourSet minus(Colour c) const {
    ColourSet s = *this;
    if (c >= 0 && c <= kMaxColour) s.erase(c);
    return s;
  }
  ColourSet unite(const ColourSet& o) const { return ColourSet(bits_ | o.bits_); }
  ColourSet intersect(const ColourSet& o) const { return ColourSet(bits_ & o.bits_); }
  // Lexicographically smallest subset of the given size.
  ColourSet smallest_subset(int k) const {
    ColourSet s;
    uint64_t b = bits_;
    while (k-- > 0 && b) {
      int c = __builtin_ctzll(b);
      s.insert(c);
      b &= b - 1;
    }
    return s;
  }
  std::vector<Colour> to_vector() const {
    std::vector<Colour> out;
    uint64_t b = bits_;
    while (b) {
      out.push_back(__builtin_ctzll(b));
      b &= b - 1;
    }
    return out;
  }
  bool operator==(const ColourSet&) const = default;
  uint64_t bits() const { return bits_; }

 private:
  explicit ColourSet(uint64_t b) : bits_(b) {}
  static void check(Colour c) {
    if (c < 0 || c > kMaxColour) fail(ErrorKind::InvalidInput, "colour out of range");
  }
  uint64_t bits_ = 0;
};

using ListAssignment = std::vector<ColourSet>;  // indexed by VertexId

// Partial map vertex -> colour; -1 means uncoloured.
struct Colouring {
  std::vector<Colour> value;
  explicit Colouring(int n = 0) : value(n, -1) {}
  bool coloured(VertexId v) const { return value[v] >= 0; }
  Colour operator[](VertexId v) const { return value[v]; }
  void set(VertexId v, Colour c) { value[v] = c; }
  bool total() const {
    for (Colour c : value)
      if (c < 0) return false;
    return true;
  }
};

bool colouring_proper(const PlaneGraph& g, const Colouring& phi);
bool colouring_respects(const ListAssignment& l, const Colouring& phi);

// Precoloured boundary subgraph: a path (possibly empty) or a cycle.
struct BoundarySubgraph {
  std::vector<VertexId> vertices;  // in path/cycle order
  bool is_cycle = false;
};

// The canvas (G, L, S, A).
struct Canvas {
  PlaneGraph g;
  ListAssignment l;
  BoundarySubgraph s;
  std::vector<VertexId> a;  // sorted
};

struct Violation {
  std::string what;
};

// First-violation witness for the local girth assignment thresholds.
struct AssignmentCheck {
  bool ok = true;
  VertexId witness = -1;
  std::string what;
};

AssignmentCheck is_local_girth_assignment(const PlaneGraph& g, const GirthProfile& profile,
                                          const ListAssignment& l);

bool is_acceptable_path(const PlaneGraph& g, const GirthProfile& profile, const PathInGraph& s);
bool is_acceptable_cycle(const PlaneGraph& g, const GirthProfile& profile, const CycleInGraph& s);
// Edge of an acceptable cycle whose removal leaves an acceptable path; the
// returned path starts right after the removed edge.
PathInGraph open_acceptable_cycle(const PlaneGraph& g, const GirthProfile& profile,
                                  const CycleInGraph& s);

std::vector<Violation> validate_canvas(const Canvas& k, const GirthProfile& profile);
bool canvas_ok(const Canvas& k, const GirthProfile& profile);

// Restriction (H, L, S ∩ H, A ∩ V(H)) of a canvas to a subgraph.
Canvas subcanvas(const Canvas& k, const Subgraph& h);

// Deterministic truncation: 1 on S, 2 on A, 3 on other boundary vertices,
// local-girth thresholds off-boundary; keeps the smallest colours.
Canvas trim_lists(const Canvas& k, const GirthProfile& profile);

// Delete the doomed vertices and subtract their colours from surviving
// neighbour lists (vertices in `keep_lists` keep their full list). A is
// recomputed as the boundary vertices outside S whose lists have size <= 2.
struct Reduced {
  Canvas canvas;
  std::vector<VertexId> to_parent;
  std::vector<VertexId> from_parent;
};
Reduced delete_and_subtract(const Canvas& k, const Colouring& coloured,
                            const std::vector<VertexId>& doomed,
                            const std::vector<VertexId>& keep_lists = {});

}  // namespace girthwright
