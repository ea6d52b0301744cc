#pragma once

#include <vector>

#include "girthwright/plane_graph.hpp"

namespace girthwright {

// Length of the shortest cycle through a vertex; infinite when the vertex
// lies on no cycle. Arithmetic is deliberately unavailable.
class Girth {
 public:
  static Girth infinite() { return Girth(kInf); }
  static Girth finite(int k) {
    if (k < 3) fail(ErrorKind::PreconditionViolated, "cycle length below 3");
    return Girth(k);
  }
  bool is_finite() const { return v_ != kInf; }
  int length() const {
    if (!is_finite()) fail(ErrorKind::PreconditionViolated, "length of infinite girth");
    return v_;
  }
  bool at_least(int k) const { return v_ >= k; }
  bool equals(int k) const { return is_finite() && v_ == k; }
  bool operator==(const Girth&) const = default;
  auto operator<=>(const Girth&) const = default;  // kInf compares above all

 private:
  explicit Girth(int v) : v_(v) {}
  static constexpr int kInf = 1 << 29;
  int v_;
};

enum class GirthClass { G3, G4, G5plus, Acyclic };

struct GirthProfile {
  std::vector<Girth> values;
  const Girth& operator[](VertexId v) const { return values[v]; }
};

Girth vertex_girth(const PlaneGraph& g, VertexId v);
GirthProfile girth_profile(const PlaneGraph& g);
GirthClass girth_class(const GirthProfile& p, VertexId v);

// List-size threshold of the local girth assignment: 5 / 4 / 3 by class
// (Acyclic counts as G5plus).
int list_threshold(GirthClass c);

}  // namespace girthwright
