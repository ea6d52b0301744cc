#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "girthwright/canvas.hpp"

namespace girthwright {

// Certificate for a generalized wheel subgraph with a designated principal
// path. Composite certificates carry the two glued halves and the identified
// principal edge (middle vertex, shared anchor).
struct WheelCertificate {
  enum class Kind { BrokenWheel, Wheel, Composite };
  Kind kind = Kind::BrokenWheel;
  std::vector<VertexId> principal;    // v1, v2, v3
  std::vector<VertexId> outer_cycle;  // cyclic, begins v1, v2, v3
  std::vector<VertexId> hubs;         // wheel hubs strictly inside W
  std::vector<std::pair<VertexId, VertexId>> edges;  // all edges of W
  std::shared_ptr<WheelCertificate> left, right;     // Composite only
  std::pair<VertexId, VertexId> identified_edge{-1, -1};

  std::vector<VertexId> vertices() const;  // sorted, unique
};

// Witness for the three exceptional canvas types.
struct ExceptionCertificate {
  enum class Kind { TypeI, TypeII, TypeIII };
  Kind kind;
  VertexId u = -1;                       // types (i) and (ii)
  VertexId w = -1;                       // type (ii)
  std::optional<WheelCertificate> wheel; // types (ii) and (iii)
  bool s_reversed = false;               // type (ii): names of S reversed
};

// All generalized wheels with the given principal path whose outer-cycle
// vertices lie in `boundary`, smallest first; `accept` filters candidates
// (return true to keep searching after recording). Deterministic order.
std::vector<WheelCertificate> enumerate_generalized_wheels(
    const PlaneGraph& g, const PathInGraph& principal, const std::vector<char>& boundary,
    size_t limit = 4096);

// A maximal (most vertices) generalized wheel with the given principal path,
// or nullopt.
std::optional<WheelCertificate> recognize_generalized_wheel(
    const PlaneGraph& g, const PathInGraph& principal, const std::vector<char>& boundary);

// First matching clause among (i), (ii), (iii); none when unexceptional.
std::optional<ExceptionCertificate> classify_exception(const Canvas& k,
                                                       const GirthProfile& profile);

// Exact set of list-colourings of the principal path that do not extend to
// an L-colouring of W. Requires interior 5-lists and outer 3-lists off the
// principal path.
std::vector<std::vector<Colour>> blocked_principal_colourings(const WheelCertificate& w,
                                                              const ListAssignment& l);

// Structural checks used by tests and the engine's invariants.
bool wheel_certificate_valid(const PlaneGraph& g, const WheelCertificate& w);

}  // namespace girthwright
