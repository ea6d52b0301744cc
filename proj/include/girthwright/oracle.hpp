#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "girthwright/canvas.hpp"

namespace girthwright {
namespace oracle {

struct SearchBudget {
  long long node_limit = 50'000'000;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchResult {
  SearchStatus status;
  std::optional<Colouring> colouring;
};

// Backtracking with forward checking; smallest-remaining-list vertex order,
// ascending colour order.
SearchResult find_colouring(const PlaneGraph& g, const ListAssignment& l,
                            const Colouring& partial, const SearchBudget& budget = {});

// Proper L-colourings of G[V(S)] that do not extend to G.
std::vector<std::vector<Colour>> blocked_colourings_of_S(const Canvas& k,
                                                         const SearchBudget& budget = {});
// All proper L-colourings of the induced subgraph on the given vertices.
std::vector<std::vector<Colour>> proper_colourings_of(const PlaneGraph& g,
                                                      const ListAssignment& l,
                                                      const std::vector<VertexId>& vs);

struct ChoosabilityVerdict {
  bool ok = true;
  bool budget_exceeded = false;
  long long assignments_checked = 0;
  // a failing local girth assignment, when one exists (must never happen)
  std::optional<ListAssignment> counterexample;
};

// Exhaustive mode enumerates threshold-size assignments over the universe up
// to colour permutation; sampled mode draws `count` random assignments.
ChoosabilityVerdict check_local_girth_choosable_exhaustive(const PlaneGraph& g, int universe,
                                                           const SearchBudget& budget = {});
ChoosabilityVerdict check_local_girth_choosable_sampled(const PlaneGraph& g, int universe,
                                                        int count, uint64_t seed,
                                                        const SearchBudget& budget = {});

}  // namespace oracle
}  // namespace girthwright
