#include <set>

#include "doctest.h"
#include "girthwright/generator.hpp"
#include "girthwright/girth.hpp"
#include "test_helpers.hpp"

using namespace girthwright;
using gwt::cycle_graph;
using gwt::k4_graph;
using gwt::path_graph;

namespace {

// independent oracle: enumerate all cycles through v (DFS, small n only)
int brute_girth(const PlaneGraph& g, VertexId v) {
  int best = -1;
  std::vector<char> used(g.n(), 0);
  std::vector<VertexId> stack = {v};
  used[v] = 1;
  auto rec = [&](auto&& self) -> void {
    VertexId cur = stack.back();
    for (VertexId u : g.neighbours(cur)) {
      if (u == v && stack.size() >= 3) {
        int len = static_cast<int>(stack.size());
        if (best < 0 || len < best) best = len;
        continue;
      }
      if (used[u]) continue;
      used[u] = 1;
      stack.push_back(u);
      self(self);
      stack.pop_back();
      used[u] = 0;
    }
  };
  rec(rec);
  return best;  // -1 = no cycle
}

}  // namespace

TEST_CASE("vertex girth basics") {
  PlaneGraph c5 = cycle_graph(5);
  for (VertexId v = 0; v < 5; ++v) CHECK(vertex_girth(c5, v).equals(5));

  PlaneGraph k4 = k4_graph();
  for (VertexId v = 0; v < 4; ++v) CHECK(vertex_girth(k4, v).equals(3));

  PlaneGraph p4 = path_graph(4);
  for (VertexId v = 0; v < 4; ++v) CHECK(!vertex_girth(p4, v).is_finite());

  CHECK_THROWS_AS(vertex_girth(c5, 9), Error);
}

TEST_CASE("girth profile and classes") {
  auto w = gen::make_wheel(5);
  GirthProfile p = girth_profile(w.graph);
  for (VertexId v = 0; v < w.graph.n(); ++v) CHECK(girth_class(p, v) == GirthClass::G3);

  // C4 with a pendant vertex
  gen::AbstractGraph a(5);
  a.add_edge(0, 1);
  a.add_edge(1, 2);
  a.add_edge(2, 3);
  a.add_edge(3, 0);
  a.add_edge(0, 4);
  PlaneGraph g = *gen::embed_planar(a);
  GirthProfile p2 = girth_profile(g);
  for (VertexId v = 0; v < 4; ++v) CHECK(p2[v].equals(4));
  CHECK(!p2[4].is_finite());
  CHECK(girth_class(p2, 0) == GirthClass::G4);
  CHECK(girth_class(p2, 4) == GirthClass::Acyclic);

  PlaneGraph c7 = cycle_graph(7);
  CHECK(girth_class(girth_profile(c7), 0) == GirthClass::G5plus);
}

TEST_CASE("every generalized wheel vertex has girth three") {
  auto gw = gen::make_generalized({{false, 2}, {true, 2}, {false, 1}});
  GirthProfile p = girth_profile(gw.graph);
  for (VertexId v = 0; v < gw.graph.n(); ++v) CHECK(p[v].equals(3));
}

TEST_CASE("girth agrees with exhaustive cycle enumeration on small graphs") {
  for (int n = 3; n <= 6; ++n) {
    for (const PlaneGraph& g : gen::all_connected_planar(n)) {
      for (VertexId v = 0; v < g.n(); ++v) {
        int b = brute_girth(g, v);
        Girth got = vertex_girth(g, v);
        if (b < 0) CHECK(!got.is_finite());
        else CHECK(got.equals(b));
      }
    }
  }
}

TEST_CASE("subgraph monotonicity on random subgraph pairs") {
  uint64_t seed = 12345;
  for (int trial = 0; trial < 60; ++trial) {
    PlaneGraph g = gen::random_planar(6, seed + trial);
    GirthProfile pg = girth_profile(g);
    std::vector<char> keep(g.n(), 1);
    keep[trial % g.n()] = 0;
    Subgraph s = g.induced_subgraph(keep);
    GirthProfile ps = girth_profile(s.graph);
    for (VertexId v = 0; v < s.graph.n(); ++v) {
      CHECK(ps[v] >= pg[s.to_parent[v]]);
    }
  }
}

TEST_CASE("list thresholds by class") {
  CHECK(list_threshold(GirthClass::G3) == 5);
  CHECK(list_threshold(GirthClass::G4) == 4);
  CHECK(list_threshold(GirthClass::G5plus) == 3);
  CHECK(list_threshold(GirthClass::Acyclic) == 3);
}
