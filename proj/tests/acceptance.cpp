// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected runtime: a few minutes.

#include <atomic>
#include <cstdio>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "girthwright/engine.hpp"
#include "girthwright/generator.hpp"
#include "girthwright/json_io.hpp"
#include "girthwright/oracle.hpp"
#include "girthwright/wheels.hpp"

using namespace girthwright;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  printf("criterion %d: %-4s %s%s%s\n", idx, ok ? "PASS" : "FAIL", name,
         detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) failures++;
  fflush(stdout);
}

ListAssignment seeded_local_lists(const PlaneGraph& g, const GirthProfile& prof, int universe,
                                  uint64_t seed) {
  std::mt19937_64 rng(seed);
  ListAssignment l(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    int need = list_threshold(girth_class(prof, v));
    std::vector<Colour> pool(universe);
    for (int c = 0; c < universe; ++c) pool[c] = c;
    for (int i = 0; i < need; ++i) {
      int j = i + static_cast<int>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
      l[v].insert(pool[i]);
    }
  }
  return l;
}

ListAssignment seeded_uniform_lists(const PlaneGraph& g, int size, int universe,
                                    uint64_t seed) {
  std::mt19937_64 rng(seed);
  ListAssignment l(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    std::vector<Colour> pool(universe);
    for (int c = 0; c < universe; ++c) pool[c] = c;
    for (int i = 0; i < size; ++i) {
      int j = i + static_cast<int>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
      l[v].insert(pool[i]);
    }
  }
  return l;
}

// 1. Local girth choosability at desk scale: exhaustive planar n <= 7,
// >= 50 seeded local girth assignments each, strict mode, zero failures and
// fallbacks.
void criterion1() {
  const int kAssignments = 50;
  std::vector<PlaneGraph> corpus;
  for (int n = 1; n <= 7; ++n)
    for (PlaneGraph& g : gen::all_connected_planar(n)) corpus.push_back(std::move(g));
  std::atomic<size_t> next{0};
  std::atomic<long long> bad{0}, fallbacks{0}, runs{0};
  auto work = [&]() {
    engine::Options opt;
    opt.strict = true;
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      const PlaneGraph& g = corpus[i];
      GirthProfile prof = girth_profile(g);
      for (int t = 0; t < kAssignments; ++t) {
        ListAssignment l = seeded_local_lists(g, prof, 6, i * 1009 + t);
        engine::Trace trace;
        try {
          Colouring phi = engine::colour(g, l, opt, &trace);
          if (!colouring_proper(g, phi) || !colouring_respects(l, phi)) bad++;
        } catch (const Error&) {
          bad++;
        }
        fallbacks += trace.fallback_count;
        runs++;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  report(1, "local girth choosability, exhaustive n<=7 x 50 assignments", bad == 0 && fallbacks == 0,
         std::to_string(runs.load()) + " colourings, " + std::to_string(bad.load()) +
             " failures, " + std::to_string(fallbacks.load()) + " fallbacks");
}

// 2. Precolouring extension: generated canvases n <= 7 with classify =
// none; every proper phi on S extends, in exact agreement with the oracle.
void criterion2() {
  long long canvases = 0, phis = 0, disagreements = 0, engine_failures = 0;
  engine::Options opt;
  opt.strict = true;
  for (uint64_t seed = 1; seed <= 150 && canvases < 120; ++seed) {
    for (int n = 4; n <= 7; n += 3) {
      Canvas k;
      try {
        k = gen::random_canvas(n, seed * 31 + n);
      } catch (const Error&) {
        continue;
      }
      GirthProfile prof = girth_profile(k.g);
      if (classify_exception(k, prof)) continue;
      canvases++;
      for (const auto& phi_s : oracle::proper_colourings_of(k.g, k.l, k.s.vertices)) {
        Colouring phi(k.g.n());
        for (size_t i = 0; i < phi_s.size(); ++i) phi.set(k.s.vertices[i], phi_s[i]);
        phis++;
        engine::ExtendResult r;
        try {
          r = engine::extend(k, phi, opt);
        } catch (const Error&) {
          engine_failures++;
          continue;
        }
        auto o = oracle::find_colouring(k.g, k.l, phi);
        bool oracle_found = o.status == oracle::SearchStatus::Found;
        bool engine_found = r.colouring.has_value();
        if (engine_found != oracle_found) disagreements++;
        if (engine_found && !colouring_proper(k.g, *r.colouring)) engine_failures++;
      }
    }
  }
  report(2, "precolouring extension on generated canvases",
         disagreements == 0 && engine_failures == 0 && canvases >= 100,
         std::to_string(canvases) + " canvases, " + std::to_string(phis) +
             " precolourings, " + std::to_string(disagreements) + " disagreements");
}

// 3. Figure vectors: the three instances classify as (i)/(ii)/(iii); the
// blocked sets of the (i) and (iii) instances contain the listed phi.
void criterion3() {
  struct Want {
    const char* file;
    ExceptionCertificate::Kind kind;
    bool blocked_nonempty;
  };
  const Want wants[] = {
      {"figure1_type_i.json", ExceptionCertificate::Kind::TypeI, true},
      {"figure1_type_ii.json", ExceptionCertificate::Kind::TypeII, false},
      {"figure1_type_iii.json", ExceptionCertificate::Kind::TypeIII, true},
  };
  bool ok = true;
  std::string detail;
  for (const Want& w : wants) {
    io::Instance inst;
    try {
      inst = io::load_instance_file(std::string(GW_DATA_DIR) + "/" + w.file);
    } catch (const Error& e) {
      ok = false;
      detail += std::string(w.file) + " unreadable; ";
      continue;
    }
    Canvas k = io::to_canvas(inst);
    GirthProfile prof = girth_profile(k.g);
    if (!validate_canvas(k, prof).empty()) {
      ok = false;
      detail += std::string(w.file) + " invalid; ";
      continue;
    }
    auto cert = classify_exception(k, prof);
    if (!cert || cert->kind != w.kind) {
      ok = false;
      detail += std::string(w.file) + " misclassified; ";
      continue;
    }
    if (cert->wheel && !wheel_certificate_valid(k.g, *cert->wheel)) {
      ok = false;
      detail += std::string(w.file) + " bad wheel witness; ";
    }
    auto blocked = oracle::blocked_colourings_of_S(k);
    bool has_phi = false;
    for (const auto& b : blocked) {
      bool same = true;
      for (size_t i = 0; i < k.s.vertices.size(); ++i)
        if (!inst.phi || (*inst.phi)[k.s.vertices[i]] != b[i]) same = false;
      if (same) has_phi = true;
    }
    if (w.blocked_nonempty && !has_phi) {
      ok = false;
      detail += std::string(w.file) + " phi not blocked; ";
    }
  }
  report(3, "figure vectors classify as (i)/(ii)/(iii)", ok, detail);
}

// 4. Blocked-colouring uniqueness: >= 200 generated generalized wheels that
// are not broken wheels block at most one principal colouring. The bound
// lives in a world where every triangle has an empty interior, so the sample
// is restricted to such wheels (rim-3 wheel pieces put a hub inside a
// triangle and genuinely block more).
void criterion4() {
  std::mt19937_64 rng(4242);
  int checked = 0, violations = 0;
  while (checked < 200) {
    int segs = 1 + static_cast<int>(rng() % 3);
    std::vector<gen::WheelSegmentSpec> spec;
    bool has_wheel = false;
    for (int i = 0; i < segs; ++i) {
      bool wheel = rng() % 2 == 0;
      has_wheel |= wheel;
      spec.push_back({wheel, wheel ? static_cast<int>(rng() % 3)
                                   : 1 + static_cast<int>(rng() % 3)});
    }
    if (!has_wheel) {
      spec[rng() % spec.size()] = {true, static_cast<int>(rng() % 3)};
    }
    gen::MadeWheel made = gen::make_generalized(spec);
    bool clean = true;
    for (int a = 0; a < made.graph.n() && clean; ++a)
      for (int b = a + 1; b < made.graph.n() && clean; ++b)
        for (int c = b + 1; c < made.graph.n() && clean; ++c) {
          if (!made.graph.has_edge(a, b) || !made.graph.has_edge(b, c) ||
              !made.graph.has_edge(a, c))
            continue;
          if (!made.graph.interior_vertices(CycleInGraph{{a, b, c}}).empty()) clean = false;
        }
    if (!clean) continue;
    std::vector<char> bmask(made.graph.n(), 0);
    for (VertexId v : made.graph.boundary_vertices()) bmask[v] = 1;
    auto cert = recognize_generalized_wheel(made.graph, PathInGraph{made.principal}, bmask);
    if (!cert || cert->kind == WheelCertificate::Kind::BrokenWheel) continue;
    ListAssignment l(made.graph.n());
    std::set<VertexId> outer(cert->outer_cycle.begin(), cert->outer_cycle.end());
    for (VertexId v = 0; v < made.graph.n(); ++v) {
      bool principal = v == made.principal[0] || v == made.principal[1] || v == made.principal[2];
      int need = principal ? 6 : outer.count(v) ? 3 : 5;
      std::vector<Colour> pool = {0, 1, 2, 3, 4, 5};
      for (int i = 0; i < need; ++i) {
        int j = i + static_cast<int>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
        l[v].insert(pool[i]);
      }
    }
    auto blocked = blocked_principal_colourings(*cert, l);
    if (blocked.size() > 1) violations++;
    checked++;
  }
  report(4, "at most one blocked principal colouring on 200 wheels", violations == 0,
         std::to_string(checked) + " wheels, " + std::to_string(violations) + " violations");
}

// 5. Girth identification contract over >= 200 broken-wheel configurations.
// The contract presumes the surrounding graph has already shed its short
// separating cycles (5-cycles with interior are all-girth-3, 6-cycles with
// interior carry no girth-5 vertex), so generated configurations are filtered
// to that shape first.
void criterion5() {
  std::mt19937_64 rng(5151);
  int checked = 0, violations = 0;
  auto cycles_with_interior_ok = [](const PlaneGraph& g, const GirthProfile& prof) {
    std::vector<VertexId> cur;
    std::vector<char> used(g.n(), 0);
    bool ok = true;
    auto rec = [&](auto&& self, VertexId start) -> void {
      if (!ok) return;
      VertexId cv = cur.back();
      for (VertexId nxt : g.neighbours(cv)) {
        if (!ok) return;
        size_t len = cur.size();
        if (nxt == start && len >= 5 && len <= 6) {
          CycleInGraph c{cur};
          if (!g.interior_vertices(c).empty()) {
            for (VertexId v : cur) {
              if (len == 5 && !prof[v].equals(3)) ok = false;
              if (len == 6 && prof[v].at_least(5)) ok = false;
            }
          }
        }
        if (len >= 6 || used[nxt] || nxt < start) continue;
        used[nxt] = 1;
        cur.push_back(nxt);
        self(self, start);
        cur.pop_back();
        used[nxt] = 0;
      }
    };
    for (VertexId s = 0; s < g.n() && ok; ++s) {
      cur = {s};
      std::fill(used.begin(), used.end(), 0);
      used[s] = 1;
      rec(rec, s);
    }
    return ok;
  };
  while (checked < 200) {
    // fan hub inside a ring with a tail; optional pendant square and leaf for
    // girth-4 and acyclic vertices
    int t = 3 + static_cast<int>(rng() % 3);
    int ring = t + 4 + static_cast<int>(rng() % 4);
    int n = ring + 1;
    int square_at = rng() % 2 ? t + 1 : -1;
    int leaf_at = rng() % 2 ? ring - 1 : -1;
    if (square_at >= 0) n += 3;
    if (leaf_at >= 0) n += 1;
    gen::AbstractGraph a(n);
    for (int i = 0; i < ring; ++i) a.add_edge(i, (i + 1) % ring);
    for (int i = 0; i < t; ++i) a.add_edge(ring, i);
    int next = ring + 1;
    if (square_at >= 0) {
      a.add_edge(square_at, next);
      a.add_edge(next, next + 1);
      a.add_edge(next + 1, next + 2);
      a.add_edge(next + 2, square_at);
      next += 3;
    }
    if (leaf_at >= 0) a.add_edge(leaf_at, next);
    auto pg = gen::embed_planar(a);
    if (!pg) continue;
    PlaneGraph g = *pg;
    GirthProfile before = girth_profile(g);
    if (!cycles_with_interior_ok(g, before)) continue;
    int j = static_cast<int>(rng() % (t - 2));
    IdentifyResult idr;
    try {
      idr = g.identify_fan_ends(j, j + 1, j + 2);
    } catch (const Error&) {
      continue;
    }
    GirthProfile after = girth_profile(idr.graph);
    for (VertexId v = 0; v < g.n(); ++v) {
      VertexId nv = idr.old_to_new[v];
      if (nv < 0 || nv == idr.z) continue;
      if (before[v].at_least(5) && !after[nv].at_least(5)) violations++;
      if (before[v].equals(4) && !after[nv].at_least(4)) violations++;
    }
    checked++;
  }
  report(5, "fan identification preserves girth classes (200 runs)", violations == 0,
         std::to_string(checked) + " identifications, " + std::to_string(violations) +
             " violations");
}

// 6. Girth monotonicity over >= 500 random (G, G' ⊆ G, v) triples.
void criterion6() {
  std::mt19937_64 rng(6001);
  int checked = 0, violations = 0;
  while (checked < 500) {
    int n = 5 + static_cast<int>(rng() % 4);
    PlaneGraph g = gen::random_planar(n, rng());
    GirthProfile pg = girth_profile(g);
    std::vector<char> keep(g.n(), 1);
    int drops = 1 + static_cast<int>(rng() % 2);
    for (int d = 0; d < drops; ++d) keep[rng() % g.n()] = 0;
    Subgraph s = g.induced_subgraph(keep);
    GirthProfile ps = girth_profile(s.graph);
    for (VertexId v = 0; v < s.graph.n(); ++v) {
      checked++;
      if (ps[v] < pg[s.to_parent[v]]) violations++;
    }
  }
  report(6, "girth monotonicity on 500+ subgraph triples", violations == 0,
         std::to_string(checked) + " triples, " + std::to_string(violations) + " violations");
}

// 7. Corollaries: 5-choosability on all planar n <= 7 and 3-choosability on
// girth >= 5 graphs, from sampled lists.
void criterion7() {
  long long bad = 0, runs = 0;
  engine::Options opt;
  opt.strict = true;
  for (int n = 1; n <= 7; ++n)
    for (const PlaneGraph& g : gen::all_connected_planar(n)) {
      for (uint64_t t = 0; t < 3; ++t) {
        ListAssignment l = seeded_uniform_lists(g, 5, 7, n * 131 + t);
        try {
          Colouring phi = engine::colour(g, l, opt);
          if (!colouring_proper(g, phi) || !colouring_respects(l, phi)) bad++;
        } catch (const Error&) {
          bad++;
        }
        runs++;
      }
      // 3-lists when every vertex avoids short cycles
      GirthProfile prof = girth_profile(g);
      bool girth5 = true;
      for (VertexId v = 0; v < g.n(); ++v)
        if (!prof[v].at_least(5)) girth5 = false;
      if (!girth5) continue;
      for (uint64_t t = 0; t < 3; ++t) {
        ListAssignment l = seeded_uniform_lists(g, 3, 6, n * 733 + t);
        try {
          Colouring phi = engine::colour(g, l, opt);
          if (!colouring_proper(g, phi) || !colouring_respects(l, phi)) bad++;
        } catch (const Error&) {
          bad++;
        }
        runs++;
      }
    }
  report(7, "5-choosability and girth-5 3-choosability corollaries", bad == 0,
         std::to_string(runs) + " colourings, " + std::to_string(bad) + " failures");
}

// 8. Serialization round-trip, bit exact, over the generated corpus.
void criterion8() {
  long long checked = 0, bad = 0;
  for (int n = 2; n <= 6; ++n)
    for (const PlaneGraph& g : gen::all_connected_planar(n)) {
      io::Instance inst;
      inst.g = g;
      std::string one = io::store_instance(inst);
      std::string two = io::store_instance(io::load_instance(one));
      if (one != two) bad++;
      checked++;
    }
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Canvas k;
    try {
      k = gen::random_canvas(6, seed);
    } catch (const Error&) {
      continue;
    }
    io::Instance inst = io::from_canvas(k);
    Colouring phi(k.g.n());
    for (VertexId v : k.s.vertices) phi.set(v, k.l[v].smallest());
    inst.phi = phi;
    std::string one = io::store_instance(inst);
    io::Instance back = io::load_instance(one);
    std::string two = io::store_instance(back);
    if (one != two || !(back.g == k.g) || back.lists != k.l ||
        back.s.vertices != k.s.vertices || back.a != k.a)
      bad++;
    checked++;
  }
  report(8, "bit-exact serialization round-trip", bad == 0,
         std::to_string(checked) + " instances, " + std::to_string(bad) + " mismatches");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures) {
    printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  printf("all criteria passed\n");
  return 0;
}
