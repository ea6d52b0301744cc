#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "girthwright/canvas.hpp"
#include "girthwright/wheels.hpp"

namespace girthwright {
namespace engine {

struct Options {
  bool strict = true;  // forbid the diagnostic backtracking fallback
  long long oracle_node_limit = 50'000'000;
};

// Audit log: applied reductions with instance sizes, plus any oracle-backed
// wheel extensions and fallback invocations.
struct Trace {
  struct Step {
    std::string tag;
    int n;
    int sum_lists;
  };
  std::vector<Step> steps;
  std::vector<std::string> flags;
  int fallback_count = 0;
};

struct ExtendResult {
  std::optional<Colouring> colouring;
  std::optional<ExceptionCertificate> exception;
};

// Extends a proper list colouring of G[V(S)] to all of G, or reports the
// exceptional-canvas witness.
ExtendResult extend(const Canvas& k, const Colouring& phi, const Options& opt = {},
                    Trace* trace = nullptr);

// Top-level entry: colours any plane graph from a local girth list assignment.
Colouring colour(const PlaneGraph& g, const ListAssignment& l, const Options& opt = {},
                 Trace* trace = nullptr);

}  // namespace engine
}  // namespace girthwright
