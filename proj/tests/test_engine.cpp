#include <random>

#include "doctest.h"
#include "girthwright/engine.hpp"
#include "girthwright/generator.hpp"
#include "girthwright/oracle.hpp"
#include "test_helpers.hpp"

using namespace girthwright;
using gwt::cycle_graph;
using gwt::k4_graph;

namespace {

Canvas figure1_left() {
  Canvas k;
  k.g = cycle_graph(5);
  k.l = {ColourSet::of({1, 2}), ColourSet::of({2}), ColourSet::of({1}), ColourSet::of({2}),
         ColourSet::of({1})};
  k.s = BoundarySubgraph{{1, 2, 3, 4}, false};
  k.a = {0};
  return k;
}

}  // namespace

TEST_CASE("colour K4 from 5-lists") {
  PlaneGraph k4 = k4_graph();
  ListAssignment l(4, ColourSet::range(5));
  Colouring phi = engine::colour(k4, l);
  CHECK(phi.total());
  CHECK(colouring_proper(k4, phi));
  CHECK(colouring_respects(l, phi));
}

TEST_CASE("colour C5 from 3-lists") {
  PlaneGraph c5 = cycle_graph(5);
  ListAssignment l(5, ColourSet::of({0, 1, 2}));
  Colouring phi = engine::colour(c5, l);
  CHECK(colouring_proper(c5, phi));
  CHECK(colouring_respects(l, phi));
}

TEST_CASE("colour rejects invalid assignments") {
  PlaneGraph k4 = k4_graph();
  ListAssignment l(4, ColourSet::range(4));
  CHECK_THROWS_AS(engine::colour(k4, l), Error);
}

TEST_CASE("extend: K3 with a 2-path precoloured") {
  PlaneGraph c3 = cycle_graph(3);
  Canvas k;
  k.g = c3;
  k.l = {ColourSet::of({1}), ColourSet::of({2}), ColourSet::of({1, 2, 3})};
  k.s = BoundarySubgraph{{0, 1}, false};
  Colouring phi(3);
  phi.set(0, 1);
  phi.set(1, 2);
  auto r = engine::extend(k, phi);
  REQUIRE(r.colouring.has_value());
  CHECK((*r.colouring)[2] == 3);
}

TEST_CASE("extend: figure-left instance returns a TypeI certificate") {
  Canvas k = figure1_left();
  Colouring phi(5);
  phi.set(1, 2);
  phi.set(2, 1);
  phi.set(3, 2);
  phi.set(4, 1);
  auto r = engine::extend(k, phi);
  REQUIRE(r.exception.has_value());
  CHECK(r.exception->kind == ExceptionCertificate::Kind::TypeI);
}

TEST_CASE("extend: broken-wheel TypeIII vs the recolourable phi") {
  auto bw = gen::make_broken_wheel(4);
  Canvas k;
  k.g = bw.graph;
  k.l = {ColourSet::of({1, 2, 3}), ColourSet::of({1, 2, 3}), ColourSet::of({1, 2, 3}),
         ColourSet::of({1, 2, 3})};
  k.s = BoundarySubgraph{{0, 1, 2}, false};
  Colouring phi(4);
  phi.set(0, 1);
  phi.set(1, 2);
  phi.set(2, 3);
  auto r = engine::extend(k, phi);
  REQUIRE(r.exception.has_value());
  CHECK(r.exception->kind == ExceptionCertificate::Kind::TypeIII);

  Colouring phi2(4);
  phi2.set(0, 1);
  phi2.set(1, 2);
  phi2.set(2, 1);
  auto r2 = engine::extend(k, phi2);
  REQUIRE(r2.colouring.has_value());
  CHECK((*r2.colouring)[3] == 3);
}

TEST_CASE("extend: improper phi rejected") {
  PlaneGraph c4 = cycle_graph(4);
  Canvas k;
  k.g = c4;
  k.l = ListAssignment(4, ColourSet::range(3));
  k.s = BoundarySubgraph{{0, 1}, false};
  Colouring phi(4);
  phi.set(0, 1);
  phi.set(1, 1);
  CHECK_THROWS_AS(engine::extend(k, phi), Error);
}

TEST_CASE("engine agrees with the oracle on exhaustive small graphs") {
  engine::Options opt;
  opt.strict = true;
  for (int n = 1; n <= 6; ++n) {
    for (const PlaneGraph& g : gen::all_connected_planar(n)) {
      auto verdict = oracle::check_local_girth_choosable_sampled(g, 6, 4, 17);
      REQUIRE(verdict.ok);
      GirthProfile prof = girth_profile(g);
      for (uint64_t seed = 0; seed < 4; ++seed) {
        // threshold-size lists, deterministic per seed
        ListAssignment l(g.n());
        std::mt19937_64 rng(seed * 977 + n);
        for (VertexId v = 0; v < g.n(); ++v) {
          int need = list_threshold(girth_class(prof, v));
          std::vector<Colour> pool = {0, 1, 2, 3, 4, 5};
          for (int i = 0; i < need; ++i) {
            int j = i + static_cast<int>(rng() % (pool.size() - i));
            std::swap(pool[i], pool[j]);
            l[v].insert(pool[i]);
          }
        }
        engine::Trace trace;
        Colouring phi = engine::colour(g, l, opt, &trace);
        CHECK(colouring_proper(g, phi));
        CHECK(colouring_respects(l, phi));
        CHECK(trace.fallback_count == 0);
      }
    }
  }
}

TEST_CASE("extend agrees with the oracle on random canvases") {
  engine::Options opt;
  opt.strict = true;
  int checked = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Canvas k = gen::random_canvas(6, seed);
    GirthProfile prof = girth_profile(k.g);
    if (classify_exception(k, prof)) continue;
    for (const auto& phis : oracle::proper_colourings_of(k.g, k.l, k.s.vertices)) {
      Colouring phi(k.g.n());
      for (size_t i = 0; i < phis.size(); ++i) phi.set(k.s.vertices[i], phis[i]);
      auto r = engine::extend(k, phi, opt);
      auto o = oracle::find_colouring(k.g, k.l, phi);
      if (r.colouring) {
        CHECK(o.status == oracle::SearchStatus::Found);
        CHECK(colouring_proper(k.g, *r.colouring));
        checked++;
      } else {
        // certificate returned: the restricted canvas really is exceptional;
        // the oracle may or may not extend (types (ii)/(iii) can still colour)
        CHECK(r.exception.has_value());
      }
    }
  }
  CHECK(checked > 50);
}

namespace {

// decagon with two interior fan hubs; hub 10 rides the S edge so deleting the
// path can cost it three colours
PlaneGraph two_hub_ring() {
  std::vector<std::vector<VertexId>> faces = {
      {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
      {0, 9, 8, 11, 4, 10},
      {1, 0, 10},
      {2, 1, 10},
      {3, 2, 10},
      {4, 3, 10},
      {5, 4, 11},
      {6, 5, 11},
      {7, 6, 11},
      {8, 7, 11},
  };
  return gen::plane_graph_from_faces(12, faces, 0);
}

engine::Trace run_two_hub(const ColourSet& l2, Colouring* out = nullptr) {
  PlaneGraph g = two_hub_ring();
  Canvas k;
  k.g = g;
  k.l.assign(12, ColourSet::of({0, 1, 2}));
  k.l[8] = ColourSet::of({5});
  k.l[9] = ColourSet::of({4});
  k.l[0] = ColourSet::of({5});
  k.l[1] = ColourSet::of({3});
  k.l[2] = l2;
  k.l[6] = ColourSet::of({0, 1, 4});
  k.l[7] = ColourSet::of({0, 1, 5});
  k.l[10] = ColourSet::of({0, 1, 2, 3, 4});
  k.l[11] = ColourSet::of({0, 1, 2, 3, 4});
  k.s = BoundarySubgraph{{8, 9, 0, 1}, false};
  REQUIRE(validate_canvas(k, girth_profile(g)).empty());
  Colouring phi(12);
  phi.set(8, 5);
  phi.set(9, 4);
  phi.set(0, 5);
  phi.set(1, 3);
  engine::Options opt;
  opt.strict = true;
  engine::Trace trace;
  auto r = engine::extend(k, phi, opt, &trace);
  REQUIRE(r.colouring.has_value());
  CHECK(colouring_proper(g, *r.colouring));
  CHECK(colouring_respects(k.l, *r.colouring));
  CHECK(oracle::find_colouring(g, k.l, phi).status == oracle::SearchStatus::Found);
  CHECK(trace.fallback_count == 0);
  if (out) *out = *r.colouring;
  return trace;
}

bool has_tag(const engine::Trace& t, const std::string& tag) {
  for (const auto& s : t.steps)
    if (s.tag == tag) return true;
  return false;
}

}  // namespace

TEST_CASE("deletable path: plain deletion when the hub keeps three colours") {
  engine::Trace t = run_two_hub(ColourSet::of({0, 2, 3}));
  CHECK(has_tag(t, "delete_path"));
}

TEST_CASE("deletable path: fan ends identified when the hub loses three") {
  engine::Trace t = run_two_hub(ColourSet::of({1, 2, 3}));
  CHECK(has_tag(t, "identify_path_ends"));
}

TEST_CASE("hooked endgame on the drum") {
  // inner C5 + outer C10 with alternating spokes: the interior pair hooks
  // onto the deletable path's endpoints and the endgame deletion fires
  gen::AbstractGraph a(15);
  for (int i = 0; i < 5; ++i) a.add_edge(i, (i + 1) % 5);
  for (int i = 0; i < 10; ++i) a.add_edge(5 + i, 5 + (i + 1) % 10);
  for (int i = 0; i < 5; ++i) a.add_edge(i, 5 + 2 * i);
  PlaneGraph g = *gen::embed_planar(a);
  REQUIRE(g.outer_boundary().vertices.size() == 10);
  GirthProfile prof = girth_profile(g);
  Canvas k;
  k.g = g;
  k.l.assign(15, ColourSet::of({0, 1, 2}));
  k.s = BoundarySubgraph{{7, 6, 5, 14}, false};
  k.l[7] = ColourSet::of({1});
  k.l[6] = ColourSet::of({2});
  k.l[5] = ColourSet::of({1});
  k.l[14] = ColourSet::of({2});
  for (VertexId v : {8, 10, 12}) {
    k.a.push_back(v);
    k.l[v] = ColourSet::of({0, 1});
  }
  REQUIRE(validate_canvas(k, prof).empty());
  Colouring phi(15);
  phi.set(7, 1);
  phi.set(6, 2);
  phi.set(5, 1);
  phi.set(14, 2);
  engine::Options opt;
  opt.strict = true;
  engine::Trace trace;
  auto r = engine::extend(k, phi, opt, &trace);
  REQUIRE(r.colouring.has_value());
  CHECK(colouring_proper(g, *r.colouring));
  CHECK(colouring_respects(k.l, *r.colouring));
  CHECK(trace.fallback_count == 0);
  bool endgame = false;
  for (const auto& s : trace.steps)
    if (s.tag == "endgame_delete") endgame = true;
  CHECK(endgame);
}

TEST_CASE("icosahedron canvases walk the separating-triangle machinery") {
  static const int E[30][2] = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
      {1, 6}, {2, 6}, {2, 7}, {3, 7}, {3, 8}, {4, 8}, {4, 9}, {5, 9}, {5, 10}, {1, 10},
      {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 6}, {6, 11}, {7, 11}, {8, 11}, {9, 11}, {10, 11}};
  gen::AbstractGraph a(12);
  for (auto& e : E) a.add_edge(e[0], e[1]);
  PlaneGraph g = *gen::embed_planar(a);
  REQUIRE(g.outer_boundary().vertices.size() == 3);
  GirthProfile prof = girth_profile(g);
  engine::Options opt;
  opt.strict = true;
  // full colouring from 5-lists
  ListAssignment l(12, ColourSet::range(5));
  engine::Trace trace;
  Colouring phi = engine::colour(g, l, opt, &trace);
  CHECK(colouring_proper(g, phi));
  CHECK(trace.fallback_count == 0);
  // extension with a 2-vertex precoloured boundary path and trimmed lists
  BoundaryWalk bw = g.outer_boundary();
  Canvas k;
  k.g = g;
  k.l.assign(12, ColourSet());
  std::vector<VertexId> s = {bw.vertices[0], bw.vertices[1]};
  for (VertexId v = 0; v < 12; ++v) {
    bool in_s = (v == s[0] || v == s[1]);
    k.l[v] = ColourSet::range(in_s ? 1 : (g.on_outer_boundary(v) ? 3 : 5));
  }
  k.l[s[1]] = ColourSet::of({1});
  k.s = BoundarySubgraph{s, false};
  REQUIRE(validate_canvas(k, prof).empty());
  Colouring pre(12);
  pre.set(s[0], 0);
  pre.set(s[1], 1);
  engine::Trace trace2;
  auto r = engine::extend(k, pre, opt, &trace2);
  REQUIRE(r.colouring.has_value());
  CHECK(colouring_proper(g, *r.colouring));
  bool sep = false;
  for (const auto& st : trace2.steps)
    if (st.tag == "sep_triangle") sep = true;
  CHECK(sep);
  CHECK(trace2.fallback_count == 0);
}

TEST_CASE("colour handles trivial and disconnected graphs") {
  PlaneGraph lone(1, {{}}, std::nullopt);
  Colouring phi = engine::colour(lone, {ColourSet::of({4, 5, 6})});
  CHECK(phi[0] == 4);

  // two disjoint triangles
  PlaneGraph two(6, {{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}}, Arc{0, 1});
  ListAssignment l(6, ColourSet::range(5));
  Colouring phi2 = engine::colour(two, l);
  CHECK(colouring_proper(two, phi2));
  CHECK(phi2.total());
}
