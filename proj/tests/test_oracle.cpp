#include "doctest.h"
#include "girthwright/generator.hpp"
#include "girthwright/oracle.hpp"
#include "test_helpers.hpp"

using namespace girthwright;
using namespace girthwright::oracle;
using gwt::cycle_graph;
using gwt::k4_graph;
using gwt::path_graph;

TEST_CASE("find_colouring basics") {
  PlaneGraph k4 = k4_graph();
  ListAssignment l3(4, ColourSet::range(3));
  CHECK(find_colouring(k4, l3, Colouring(4)).status == SearchStatus::Exhausted);

  ListAssignment l4(4, ColourSet::range(4));
  auto r = find_colouring(k4, l4, Colouring(4));
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(colouring_proper(k4, *r.colouring));
  CHECK(colouring_respects(l4, *r.colouring));

  PlaneGraph c5 = cycle_graph(5);
  ListAssignment l2(5, ColourSet::range(2));
  CHECK(find_colouring(c5, l2, Colouring(5)).status == SearchStatus::Exhausted);
}

TEST_CASE("find_colouring respects partial assignments") {
  PlaneGraph c4 = cycle_graph(4);
  ListAssignment l(4, ColourSet::range(2));
  Colouring partial(4);
  partial.set(0, 1);
  auto r = find_colouring(c4, l, partial);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK((*r.colouring)[0] == 1);
  CHECK(colouring_proper(c4, *r.colouring));
}

TEST_CASE("blocked colourings of S") {
  // broken wheel on 4 vertices: K4 minus one edge, S = principal path
  auto bw = gen::make_broken_wheel(4);
  Canvas k;
  k.g = bw.graph;
  k.l = {ColourSet::of({1}), ColourSet::of({2}), ColourSet::of({3}),
         ColourSet::of({1, 2, 3})};
  k.s = BoundarySubgraph{{0, 1, 2}, false};
  auto blocked = blocked_colourings_of_S(k);
  REQUIRE(blocked.size() == 1);
  CHECK(blocked[0] == std::vector<Colour>{1, 2, 3});

  // changing v4's list unblocks it
  k.l[3] = ColourSet::of({1, 2, 4});
  CHECK(blocked_colourings_of_S(k).empty());

  // single-vertex S never blocks on an unexceptional canvas
  Canvas k1;
  k1.g = cycle_graph(4);
  k1.l = ListAssignment(4, ColourSet::range(3));
  k1.s = BoundarySubgraph{{0}, false};
  CHECK(blocked_colourings_of_S(k1).empty());
}

TEST_CASE("choosability check on small graphs") {
  PlaneGraph c5 = cycle_graph(5);
  auto v = check_local_girth_choosable_exhaustive(c5, 6);
  CHECK(v.ok);
  CHECK(!v.budget_exceeded);
  CHECK(v.assignments_checked > 0);

  PlaneGraph k4 = k4_graph();
  auto vs = check_local_girth_choosable_sampled(k4, 6, 100, 42);
  CHECK(vs.ok);
  CHECK(vs.assignments_checked == 100);

  // determinism
  auto vs2 = check_local_girth_choosable_sampled(k4, 6, 100, 42);
  CHECK(vs2.assignments_checked == vs.assignments_checked);

  PlaneGraph tree = path_graph(5);
  auto vt = check_local_girth_choosable_sampled(tree, 6, 50, 7);
  CHECK(vt.ok);
}
