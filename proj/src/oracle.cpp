#include "girthwright/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace girthwright {
namespace oracle {

namespace {

struct Searcher {
  const PlaneGraph& g;
  std::vector<ColourSet> avail;
  std::vector<char> fixed;
  long long nodes = 0;
  long long limit;
  bool exceeded = false;

  Searcher(const PlaneGraph& g_, const ListAssignment& l, const Colouring& partial,
           long long node_limit)
      : g(g_), avail(l), fixed(g_.n(), 0), limit(node_limit) {
    for (VertexId v = 0; v < g.n(); ++v)
      if (partial.coloured(v)) {
        avail[v] = ColourSet::of({partial[v]});
        fixed[v] = 1;
      }
  }

  bool propagate_fixed(Colouring& phi) {
    // assign all singletons created by the partial colouring up front
    for (VertexId v = 0; v < g.n(); ++v)
      if (fixed[v]) {
        Colour c = avail[v].smallest();
        phi.set(v, c);
        for (VertexId u : g.neighbours(v)) {
          if (fixed[u]) {
            if (phi.coloured(u) && phi[u] == c) return false;
            continue;
          }
          avail[u] = avail[u].minus(c);
        }
      }
    for (VertexId v = 0; v < g.n(); ++v)
      if (fixed[v])
        for (VertexId u : g.neighbours(v))
          if (fixed[u] && phi[u] == phi[v]) return false;
    return true;
  }

  bool solve(Colouring& phi) {
    if (++nodes > limit) {
      exceeded = true;
      return false;
    }
    VertexId best = -1;
    int best_sz = 1 << 20;
    for (VertexId v = 0; v < g.n(); ++v) {
      if (phi.coloured(v)) continue;
      int sz = avail[v].size();
      if (sz == 0) return false;
      if (sz < best_sz) {
        best_sz = sz;
        best = v;
      }
    }
    if (best < 0) return true;
    for (Colour c : avail[best].to_vector()) {
      phi.set(best, c);
      std::vector<std::pair<VertexId, ColourSet>> undo;
      bool dead = false;
      for (VertexId u : g.neighbours(best)) {
        if (phi.coloured(u)) {
          if (phi[u] == c) dead = true;
          continue;
        }
        if (avail[u].contains(c)) {
          undo.emplace_back(u, avail[u]);
          avail[u] = avail[u].minus(c);
          if (avail[u].empty()) dead = true;
        }
      }
      if (!dead && solve(phi)) return true;
      for (auto& [u, s] : undo) avail[u] = s;
      phi.set(best, -1);
      if (exceeded) return false;
    }
    return false;
  }
};

}  // namespace

SearchResult find_colouring(const PlaneGraph& g, const ListAssignment& l,
                            const Colouring& partial, const SearchBudget& budget) {
  if (static_cast<int>(l.size()) != g.n())
    fail(ErrorKind::AssignmentInvalid, "list assignment does not cover V(G)");
  Colouring phi(g.n());
  Searcher s(g, l, partial, budget.node_limit);
  if (!s.propagate_fixed(phi)) return {SearchStatus::Exhausted, std::nullopt};
  if (s.solve(phi)) return {SearchStatus::Found, phi};
  return {s.exceeded ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted, std::nullopt};
}

std::vector<std::vector<Colour>> proper_colourings_of(const PlaneGraph& g,
                                                      const ListAssignment& l,
                                                      const std::vector<VertexId>& vs) {
  std::vector<std::vector<Colour>> out;
  std::vector<Colour> cur(vs.size(), -1);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == vs.size()) {
      out.push_back(cur);
      return;
    }
    for (Colour c : l[vs[i]].to_vector()) {
      bool ok = true;
      for (size_t j = 0; j < i; ++j)
        if (g.has_edge(vs[i], vs[j]) && cur[j] == c) ok = false;
      if (!ok) continue;
      cur[i] = c;
      self(self, i + 1);
      cur[i] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::vector<Colour>> blocked_colourings_of_S(const Canvas& k,
                                                         const SearchBudget& budget) {
  std::vector<std::vector<Colour>> blocked;
  for (const auto& phi_s : proper_colourings_of(k.g, k.l, k.s.vertices)) {
    Colouring partial(k.g.n());
    for (size_t i = 0; i < phi_s.size(); ++i) partial.set(k.s.vertices[i], phi_s[i]);
    SearchResult r = find_colouring(k.g, k.l, partial, budget);
    if (r.status == SearchStatus::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, "blocked_colourings_of_S");
    if (r.status == SearchStatus::Exhausted) blocked.push_back(phi_s);
  }
  return blocked;
}

namespace {

// Canonical form of a list assignment under colour permutation: relabel
// colours by first appearance over the vertex-major, colour-minor scan.
std::vector<uint64_t> canonical_assignment(const ListAssignment& l) {
  std::vector<int> relabel(ColourSet::kMaxColour + 1, -1);
  int next = 0;
  std::vector<uint64_t> out;
  for (const ColourSet& s : l)
    for (Colour c : s.to_vector())
      if (relabel[c] < 0) relabel[c] = next++;
  for (const ColourSet& s : l) {
    uint64_t bits = 0;
    for (Colour c : s.to_vector()) bits |= uint64_t{1} << relabel[c];
    out.push_back(bits);
  }
  return out;
}

ChoosabilityVerdict run_assignments(const PlaneGraph& g,
                                    const std::vector<ListAssignment>& assignments,
                                    const SearchBudget& budget) {
  ChoosabilityVerdict v;
  for (const ListAssignment& l : assignments) {
    v.assignments_checked++;
    SearchResult r = find_colouring(g, l, Colouring(g.n()), budget);
    if (r.status == SearchStatus::BudgetExceeded) {
      v.budget_exceeded = true;
      return v;
    }
    if (r.status == SearchStatus::Exhausted) {
      v.ok = false;
      v.counterexample = l;
      return v;
    }
  }
  return v;
}

}  // namespace

ChoosabilityVerdict check_local_girth_choosable_exhaustive(const PlaneGraph& g, int universe,
                                                           const SearchBudget& budget) {
  GirthProfile profile = girth_profile(g);
  std::vector<int> need(g.n());
  for (VertexId v = 0; v < g.n(); ++v) need[v] = list_threshold(girth_class(profile, v));
  // subsets of the required size per vertex
  std::vector<std::vector<ColourSet>> choices(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    std::vector<int> idx(need[v]);
    for (int i = 0; i < need[v]; ++i) idx[i] = i;
    while (true) {
      ColourSet s;
      for (int i : idx) s.insert(i);
      choices[v].push_back(s);
      int i = need[v] - 1;
      while (i >= 0 && idx[i] == universe - need[v] + i) --i;
      if (i < 0) break;
      idx[i]++;
      for (int j = i + 1; j < need[v]; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  ChoosabilityVerdict verdict;
  std::set<std::vector<uint64_t>> seen;
  ListAssignment cur(g.n());
  long long searched = 0;
  auto rec = [&](auto&& self, VertexId v) -> bool {  // false = stop
    if (v == g.n()) {
      if (!seen.insert(canonical_assignment(cur)).second) return true;
      verdict.assignments_checked++;
      SearchResult r = find_colouring(g, cur, Colouring(g.n()), budget);
      if (r.status == SearchStatus::BudgetExceeded) {
        verdict.budget_exceeded = true;
        return false;
      }
      if (r.status == SearchStatus::Exhausted) {
        verdict.ok = false;
        verdict.counterexample = cur;
        return false;
      }
      return true;
    }
    for (const ColourSet& s : choices[v]) {
      if (++searched > budget.node_limit) {
        verdict.budget_exceeded = true;
        return false;
      }
      cur[v] = s;
      if (!self(self, v + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
  return verdict;
}

ChoosabilityVerdict check_local_girth_choosable_sampled(const PlaneGraph& g, int universe,
                                                        int count, uint64_t seed,
                                                        const SearchBudget& budget) {
  GirthProfile profile = girth_profile(g);
  std::mt19937_64 rng(seed);
  std::vector<ListAssignment> assignments;
  for (int t = 0; t < count; ++t) {
    ListAssignment l(g.n());
    for (VertexId v = 0; v < g.n(); ++v) {
      int need = list_threshold(girth_class(profile, v));
      std::vector<Colour> pool(universe);
      for (int c = 0; c < universe; ++c) pool[c] = c;
      for (int i = 0; i < need; ++i) {
        int j = i + static_cast<int>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
        l[v].insert(pool[i]);
      }
    }
    assignments.push_back(std::move(l));
  }
  return run_assignments(g, assignments, budget);
}

}  // namespace oracle
}  // namespace girthwright
