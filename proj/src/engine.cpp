#include "girthwright/engine.hpp"

#include <algorithm>
#include <set>

#include "girthwright/oracle.hpp"

namespace girthwright {
namespace engine {

namespace {

int sum_lists(const Canvas& k) {
  int s = 0;
  for (const ColourSet& cs : k.l) s += cs.size();
  return s;
}

struct Measure {
  int n;
  int lists;
  bool operator<(const Measure& o) const { return n != o.n ? n < o.n : lists < o.lists; }
};

// The outer cycle aligned with S: cyc[0..k-1] are the S vertices in order.
struct Frame {
  std::vector<VertexId> cyc;
  int k;
  int q() const { return static_cast<int>(cyc.size()); }
};

class Solver {
 public:
  Solver(const Options& opt, Trace* trace) : opt_(opt), trace_(trace) {}

  Colouring solve(Canvas k);

 private:
  const Options& opt_;
  Trace* trace_;
  std::vector<Measure> stack_;

  [[noreturn]] void incomplete(const std::string& msg) {
    fail(ErrorKind::EngineIncomplete, msg);
  }

  Colouring invariant_fail(const Canvas& k, const std::string& msg) {
    if (trace_) trace_->flags.push_back("invariant: " + msg);
    if (opt_.strict) incomplete(msg);
    auto r =
        oracle::find_colouring(k.g, k.l, Colouring(k.g.n()), {opt_.oracle_node_limit});
    if (r.status != oracle::SearchStatus::Found) incomplete(msg + " (fallback failed)");
    if (trace_) trace_->fallback_count++;
    return *r.colouring;
  }

  void note(const Canvas& k, const char* tag) {
    if (trace_) trace_->steps.push_back({tag, k.g.n(), sum_lists(k)});
  }

  void flag(const std::string& f) {
    if (trace_) trace_->flags.push_back(f);
  }

  // --- small helpers --------------------------------------------------------

  static bool in_s(const Canvas& k, VertexId v) {
    for (VertexId s : k.s.vertices)
      if (s == v) return true;
    return false;
  }

  static bool in_a(const Canvas& k, VertexId v) {
    return std::binary_search(k.a.begin(), k.a.end(), v);
  }

  static void drop_a_in_s(Canvas& k) {
    std::vector<VertexId> a2;
    for (VertexId v : k.a)
      if (!in_s(k, v)) a2.push_back(v);
    k.a = std::move(a2);
  }

  Canvas restrict_canvas(const Canvas& k, const Subgraph& h) {
    Canvas sub = subcanvas(k, h);
    drop_a_in_s(sub);
    return sub;
  }

  // Restriction that replaces S outright (parent ids); the inherited S may be
  // scattered across a split side, the caller's new S supersedes it.
  Canvas restrict_with_s(const Canvas& k, const Subgraph& h,
                         const std::vector<VertexId>& new_s_parent) {
    Canvas sub;
    sub.g = h.graph;
    sub.l.resize(h.graph.n());
    for (VertexId nv = 0; nv < h.graph.n(); ++nv) sub.l[nv] = k.l[h.to_parent[nv]];
    for (VertexId v : new_s_parent) sub.s.vertices.push_back(h.from_parent[v]);
    for (VertexId v : k.a)
      if (h.from_parent[v] >= 0) sub.a.push_back(h.from_parent[v]);
    std::sort(sub.a.begin(), sub.a.end());
    drop_a_in_s(sub);
    return sub;
  }

  // Solve a sub-canvas and lift the colouring back to parent vertex ids.
  Colouring sub_solve(const Canvas& parent, Canvas sub, const std::vector<VertexId>& to_parent,
                      const char* tag) {
    note(sub, tag);
    Colouring phi = solve(std::move(sub));
    Colouring out(parent.g.n());
    for (size_t i = 0; i < to_parent.size(); ++i)
      if (phi.coloured(static_cast<int>(i))) out.set(to_parent[i], phi[static_cast<int>(i)]);
    return out;
  }

  static void merge_into(Colouring& base, const Colouring& extra) {
    for (VertexId v = 0; v < static_cast<int>(extra.value.size()); ++v)
      if (extra.coloured(v)) base.set(v, extra[v]);
  }

  Frame make_frame(const Canvas& k) {
    BoundaryWalk bw = k.g.outer_boundary();
    Frame f;
    f.cyc = bw.vertices;
    f.k = static_cast<int>(k.s.vertices.size());
    std::set<VertexId> distinct(f.cyc.begin(), f.cyc.end());
    if (distinct.size() != f.cyc.size())
      fail(ErrorKind::PreconditionViolated, "boundary walk is not a cycle");
    const auto& sv = k.s.vertices;
    int q = f.q();
    int pos = -1;
    for (int i = 0; i < q; ++i)
      if (f.cyc[i] == sv[0]) pos = i;
    if (pos < 0) fail(ErrorKind::PreconditionViolated, "S not on the outer cycle");
    if (f.k >= 2 && f.cyc[(pos + 1) % q] != sv[1]) {
      std::reverse(f.cyc.begin(), f.cyc.end());
      pos = q - 1 - pos;
    }
    std::rotate(f.cyc.begin(), f.cyc.begin() + pos, f.cyc.end());
    for (int i = 0; i < f.k; ++i)
      if (f.cyc[i] != sv[i]) fail(ErrorKind::PreconditionViolated, "S not contiguous on C");
    return f;
  }

  // Proper list colouring of a chordless cycle with positions 0..k-1 fixed.
  std::optional<std::vector<Colour>> colour_cycle(const std::vector<ColourSet>& lists, int k) {
    int q = static_cast<int>(lists.size());
    std::vector<Colour> out(q, -1);
    for (int i = 0; i < k; ++i) out[i] = lists[i].smallest();
    if (k == q) return out;
    std::vector<std::vector<char>> feas(q, std::vector<char>(ColourSet::kMaxColour + 1, 0));
    for (Colour c : lists[q - 1].to_vector())
      if (c != out[0]) feas[q - 1][c] = 1;
    for (int p = q - 2; p >= k; --p)
      for (Colour c : lists[p].to_vector())
        for (Colour d : lists[p + 1].to_vector())
          if (d != c && feas[p + 1][d]) {
            feas[p][c] = 1;
            break;
          }
    Colour prev = out[k - 1];
    for (int p = k; p < q; ++p) {
      Colour chosen = -1;
      for (Colour c : lists[p].to_vector()) {
        if (c == prev || !feas[p][c]) continue;
        chosen = c;
        break;
      }
      if (chosen < 0) return std::nullopt;
      out[p] = chosen;
      prev = chosen;
    }
    return out;
  }

  // --- reductions -----------------------------------------------------------

  std::optional<Colouring> base_all_coloured(const Canvas& k) {
    if (static_cast<int>(k.s.vertices.size()) != k.g.n()) return std::nullopt;
    Colouring phi(k.g.n());
    for (VertexId v : k.s.vertices) phi.set(v, k.l[v].smallest());
    if (!colouring_proper(k.g, phi)) return invariant_fail(k, "improper singleton base");
    return phi;
  }

  std::optional<Colouring> r_components(const Canvas& k) {
    auto comps = k.g.components();
    if (comps.size() <= 1) return std::nullopt;
    Colouring out(k.g.n());
    for (const auto& comp : comps) {
      Subgraph h = k.g.induced_subgraph(comp);
      Canvas sub = restrict_canvas(k, h);
      merge_into(out, sub_solve(k, std::move(sub), h.to_parent, "components"));
    }
    return out;
  }

  std::optional<Colouring> r_grow_s(const Canvas& k) {
    if (k.s.vertices.size() >= 2) return std::nullopt;
    Canvas k2 = k;
    if (k.s.vertices.empty()) {
      BoundaryWalk bw = k.g.outer_boundary();
      VertexId v = bw.vertices.empty() ? 0 : bw.vertices[0];
      k2.s.vertices = {v};
      k2.l[v] = ColourSet::of({k.l[v].smallest()});
    } else {
      VertexId v1 = k.s.vertices[0];
      BoundaryWalk bw = k.g.outer_boundary();
      VertexId u = -1;
      for (size_t i = 0; i < bw.vertices.size(); ++i)
        if (bw.vertices[i] == v1) {
          u = bw.vertices[(i + 1) % bw.vertices.size()];
          break;
        }
      if (u < 0 || u == v1) return invariant_fail(k, "cannot grow S along the boundary");
      ColourSet avail = k.l[u].minus(k.l[v1].smallest());
      if (avail.empty()) return invariant_fail(k, "no colour to grow S");
      k2.s.vertices = {v1, u};
      k2.l[u] = ColourSet::of({avail.smallest()});
    }
    drop_a_in_s(k2);
    note(k2, "grow_s");
    return solve(std::move(k2));
  }

  std::optional<Colouring> r_degenerate(const Canvas& k) {
    for (VertexId v = 0; v < k.g.n(); ++v) {
      if (in_s(k, v) || k.g.degree(v) >= k.l[v].size()) continue;
      std::vector<char> keep(k.g.n(), 1);
      keep[v] = 0;
      Subgraph h = k.g.induced_subgraph(keep);
      Canvas sub = restrict_canvas(k, h);
      Colouring phi = sub_solve(k, std::move(sub), h.to_parent, "degen_delete");
      ColourSet avail = k.l[v];
      for (VertexId u : k.g.neighbours(v)) avail = avail.minus(phi[u]);
      if (avail.empty()) return invariant_fail(k, "degenerate vertex lost its spare colour");
      phi.set(v, avail.smallest());
      return phi;
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_cut_vertex(const Canvas& k) {
    auto cuts = k.g.cut_vertices();
    if (cuts.empty()) return std::nullopt;
    VertexId u = cuts[0];
    std::vector<int> comp(k.g.n(), -1);
    int ncomp = 0;
    for (VertexId s = 0; s < k.g.n(); ++s) {
      if (s == u || comp[s] >= 0) continue;
      std::vector<VertexId> bfs = {s};
      comp[s] = ncomp;
      for (size_t i = 0; i < bfs.size(); ++i)
        for (VertexId x : k.g.neighbours(bfs[i]))
          if (x != u && comp[x] < 0) {
            comp[x] = ncomp;
            bfs.push_back(x);
          }
      ncomp++;
    }
    std::vector<std::vector<VertexId>> pieces;
    std::vector<VertexId> run;
    for (VertexId v : k.s.vertices) {
      if (v == u) {
        if (!run.empty()) pieces.push_back(run);
        run.clear();
      } else {
        run.push_back(v);
      }
    }
    if (!run.empty()) pieces.push_back(run);
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    int main_comp = pieces.empty() ? (comp[0] >= 0 ? comp[0] : 0) : comp[pieces[0][0]];
    int minor_comp = -1;
    if (pieces.size() >= 2 && comp[pieces[1][0]] != main_comp) minor_comp = comp[pieces[1][0]];
    if (minor_comp < 0)
      for (int cnum = 0; cnum < ncomp && minor_comp < 0; ++cnum)
        if (cnum != main_comp) minor_comp = cnum;
    std::vector<char> keep1(k.g.n(), 0), keep2(k.g.n(), 0);
    keep1[u] = keep2[u] = 1;
    for (VertexId v = 0; v < k.g.n(); ++v) {
      if (v == u) continue;
      (comp[v] == minor_comp ? keep2 : keep1)[v] = 1;
    }
    Subgraph h1 = k.g.induced_subgraph(keep1);
    Canvas k1 = restrict_canvas(k, h1);
    Colouring phi1 = sub_solve(k, std::move(k1), h1.to_parent, "cut_split_major");

    Subgraph h2 = k.g.induced_subgraph(keep2);
    Canvas k2 = restrict_canvas(k, h2);
    VertexId u2 = h2.from_parent[u];
    if (!in_s(k2, u2)) {
      if (!k2.s.vertices.empty())
        return invariant_fail(k, "cut vertex split left S on both sides");
      k2.s.vertices = {u2};
    }
    k2.l[u2] = ColourSet::of({phi1[u]});
    drop_a_in_s(k2);
    Colouring phi2 = sub_solve(k, std::move(k2), h2.to_parent, "cut_split_minor");
    merge_into(phi1, phi2);
    return phi1;
  }

  std::optional<Colouring> r_chord(const Canvas& k) {
    BoundaryWalk bw = k.g.outer_boundary();
    auto chords = k.g.chords_of(CycleInGraph{bw.vertices});
    if (chords.empty()) return std::nullopt;
    auto [x, y] = chords[0];
    auto [h1raw, h2raw] = k.g.split_along_path(PathInGraph{{x, y}});
    auto holds_all_s = [&](const Subgraph& h) {
      for (VertexId v : k.s.vertices)
        if (h.from_parent[v] < 0) return false;
      return true;
    };
    bool s1 = holds_all_s(h1raw), s2 = holds_all_s(h2raw);
    if (s1 || s2) {
      const Subgraph& hs = s1 ? h1raw : h2raw;
      const Subgraph& ho = s1 ? h2raw : h1raw;
      Canvas ks = restrict_canvas(k, hs);
      Colouring phi1 = sub_solve(k, std::move(ks), hs.to_parent, "chord_s_side");
      Canvas ko = restrict_with_s(k, ho, {x, y});
      ko.l[ho.from_parent[x]] = ColourSet::of({phi1[x]});
      ko.l[ho.from_parent[y]] = ColourSet::of({phi1[y]});
      Colouring phi2 = sub_solve(k, std::move(ko), ho.to_parent, "chord_far_side");
      merge_into(phi1, phi2);
      return phi1;
    }
    const auto& sv = k.s.vertices;
    auto internal_pos = [&](VertexId v) {
      for (size_t i = 1; i + 1 < sv.size(); ++i)
        if (sv[i] == v) return static_cast<int>(i);
      return -1;
    };
    VertexId w = x, u = y;
    if (internal_pos(w) < 0) std::swap(w, u);
    int wp = internal_pos(w);
    if (wp < 0) return invariant_fail(k, "crossing chord without an internal S endpoint");
    if (in_s(k, u)) return invariant_fail(k, "chord with both endpoints in S");
    std::vector<VertexId> s_pre(sv.begin(), sv.begin() + wp + 1);
    std::vector<VertexId> s_suf(sv.begin() + wp, sv.end());
    if (s_pre.size() > s_suf.size()) std::swap(s_pre, s_suf);
    auto side_of = [&](const std::vector<VertexId>& piece) -> const Subgraph* {
      for (const Subgraph* h : {&h1raw, &h2raw}) {
        bool all = true;
        for (VertexId v : piece)
          if (h->from_parent[v] < 0) all = false;
        if (all) return h;
      }
      return nullptr;
    };
    const Subgraph* h1 = side_of(s_pre);
    const Subgraph* h2 = side_of(s_suf);
    if (!h1 || !h2 || h1 == h2) return invariant_fail(k, "chord split sides mismatch S");
    if (k.l[u].size() >= 4) {
      Canvas ka = restrict_canvas(k, *h1);
      Colouring phi1 = sub_solve(k, std::move(ka), h1->to_parent, "chord_big_first");
      Canvas kb = restrict_canvas(k, *h1);
      VertexId ub = h1->from_parent[u];
      kb.l[ub] = kb.l[ub].minus(phi1[u]);
      Colouring phi2 = sub_solve(k, std::move(kb), h1->to_parent, "chord_big_second");
      Canvas kc = restrict_canvas(k, *h2);
      VertexId uc = h2->from_parent[u];
      ColourSet tri;
      tri.insert(phi1[u]);
      tri.insert(phi2[u]);
      tri.insert(phi1[w]);
      kc.l[uc] = tri;
      GirthProfile pc = girth_profile(kc.g);
      if (classify_exception(kc, pc))
        return invariant_fail(k, "chord big-list far side exceptional");
      Colouring phif = sub_solve(k, std::move(kc), h2->to_parent, "chord_big_far");
      if (phif[u] == phi1[u]) {
        merge_into(phi1, phif);
        return phi1;
      }
      if (phif[u] != phi2[u]) return invariant_fail(k, "chord far side escaped its 3-list");
      merge_into(phi2, phif);
      return phi2;
    }
    Canvas k1full = restrict_canvas(k, *h1);
    Colouring phia = sub_solve(k, std::move(k1full), h1->to_parent, "chord_small_a");
    Canvas k2full = restrict_canvas(k, *h2);
    Colouring phib = sub_solve(k, std::move(k2full), h2->to_parent, "chord_small_b");
    struct Attempt {
      const Subgraph* h;
      const Colouring* other;
    };
    for (const Attempt& at : {Attempt{h1, &phib}, Attempt{h2, &phia}}) {
      Canvas ki = restrict_canvas(k, *at.h);
      VertexId ui = at.h->from_parent[u];
      VertexId wi = at.h->from_parent[w];
      std::vector<VertexId> si = ki.s.vertices;
      if (!si.empty() && si.front() == wi) si.insert(si.begin(), ui);
      else if (!si.empty() && si.back() == wi) si.push_back(ui);
      else return invariant_fail(k, "w not an endpoint of the side S");
      ki.s.vertices = si;
      ki.l[ui] = ColourSet::of({(*at.other)[u]});
      drop_a_in_s(ki);
      GirthProfile pi = girth_profile(ki.g);
      PathInGraph sp{ki.s.vertices};
      if (!ki.g.is_path(sp) || !is_acceptable_path(ki.g, pi, sp)) continue;
      if (!validate_canvas(ki, pi).empty()) continue;
      if (classify_exception(ki, pi)) continue;
      Colouring phic = sub_solve(k, std::move(ki), at.h->to_parent, "chord_small_retry");
      Colouring out = *at.other;
      merge_into(out, phic);
      return out;
    }
    return invariant_fail(k, "chord small-list retries exhausted");
  }

  // Shared tail of the separating-cycle reductions: colour the outside, then
  // delete the doomed cycle vertices inside Int[cyc] with the kept arc as S'.
  Colouring separating_cycle_reduce(const Canvas& k, const std::vector<VertexId>& cyc,
                                    const std::vector<VertexId>& new_s,
                                    const std::vector<VertexId>& doomed, const char* tag) {
    auto open = k.g.interior_vertices(CycleInGraph{cyc});
    std::vector<char> keep(k.g.n(), 1);
    for (VertexId v : open) keep[v] = 0;
    Subgraph hout = k.g.induced_subgraph(keep);
    Canvas kout = restrict_canvas(k, hout);
    Colouring phi_out = sub_solve(k, std::move(kout), hout.to_parent, tag);

    auto inpair = k.g.interior(CycleInGraph{cyc});
    const Subgraph& hin = inpair.second;
    Canvas kin;
    kin.g = hin.graph;
    kin.l.resize(hin.graph.n());
    for (VertexId nv = 0; nv < hin.graph.n(); ++nv) kin.l[nv] = k.l[hin.to_parent[nv]];
    std::vector<VertexId> s_in;
    for (VertexId v : new_s) {
      VertexId nv = hin.from_parent[v];
      kin.l[nv] = ColourSet::of({phi_out[v]});
      s_in.push_back(nv);
    }
    kin.s = BoundarySubgraph{s_in, false};
    Colouring dead(hin.graph.n());
    std::vector<VertexId> doomed_in;
    for (VertexId v : doomed) {
      VertexId nv = hin.from_parent[v];
      dead.set(nv, phi_out[v]);
      doomed_in.push_back(nv);
    }
    Reduced red = delete_and_subtract(kin, dead, doomed_in);
    GirthProfile pp = girth_profile(red.canvas.g);
    if (!validate_canvas(red.canvas, pp).empty())
      return invariant_fail(k, std::string(tag) + ": residue is not a canvas");
    if (classify_exception(red.canvas, pp))
      return invariant_fail(k, std::string(tag) + ": residue exceptional");
    Colouring phi_in = sub_solve(kin, std::move(red.canvas), red.to_parent, tag);
    for (VertexId nv = 0; nv < hin.graph.n(); ++nv)
      if (phi_in.coloured(nv)) phi_out.set(hin.to_parent[nv], phi_in[nv]);
    return phi_out;
  }

  std::vector<std::vector<VertexId>> cycles_of_length(const PlaneGraph& g, int len) {
    std::vector<std::vector<VertexId>> out;
    std::set<std::vector<VertexId>> seen;
    std::vector<VertexId> cur;
    std::vector<char> used(g.n(), 0);
    auto canon = [&](std::vector<VertexId> c) {
      std::vector<VertexId> best;
      for (int rev = 0; rev < 2; ++rev) {
        for (size_t r = 0; r < c.size(); ++r) {
          std::vector<VertexId> t(c.begin() + r, c.end());
          t.insert(t.end(), c.begin(), c.begin() + r);
          if (best.empty() || t < best) best = t;
        }
        std::reverse(c.begin(), c.end());
      }
      return best;
    };
    auto rec = [&](auto&& self, VertexId start) -> void {
      VertexId cur_v = cur.back();
      for (VertexId nxt : g.neighbours(cur_v)) {
        if (static_cast<int>(cur.size()) == len) {
          if (nxt == start) {
            auto key = canon(cur);
            if (seen.insert(key).second) out.push_back(key);
          }
          continue;
        }
        if (used[nxt] || nxt < start) continue;
        used[nxt] = 1;
        cur.push_back(nxt);
        self(self, start);
        cur.pop_back();
        used[nxt] = 0;
      }
    };
    for (VertexId s = 0; s < g.n(); ++s) {
      cur = {s};
      std::fill(used.begin(), used.end(), 0);
      used[s] = 1;
      rec(rec, s);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Colouring> r_sep_triangle(const Canvas& k) {
    for (const auto& t : cycles_of_length(k.g, 3)) {
      if (k.g.interior_vertices(CycleInGraph{t}).empty()) continue;
      std::vector<VertexId> sorted = t;
      std::sort(sorted.begin(), sorted.end());
      return separating_cycle_reduce(k, t, {sorted[0], sorted[1]}, {sorted[2]},
                                     "sep_triangle");
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_sep_quad(const Canvas& k) {
    for (const auto& t : cycles_of_length(k.g, 4)) {
      if (k.g.interior_vertices(CycleInGraph{t}).empty()) continue;
      return separating_cycle_reduce(k, t, {t[0], t[1]}, {t[2], t[3]}, "sep_quad");
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_trim(const Canvas& k, const Frame& f, const GirthProfile& prof) {
    for (int p = f.k; p < f.q(); ++p) {
      VertexId v = f.cyc[p];
      if (in_a(k, v) || k.l[v].size() <= 3) continue;
      Canvas k2 = k;
      auto colours = k.l[v].to_vector();
      k2.l[v].erase(colours.back());
      if (classify_exception(k2, prof))
        return invariant_fail(k, "list trim created an exception");
      note(k2, "trim");
      return solve(std::move(k2));
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_all_on_cycle(const Canvas& k, const Frame& f) {
    if (k.g.n() != f.q()) return std::nullopt;
    if (k.g.edge_count() != f.q())
      return invariant_fail(k, "chords remain on an all-boundary graph");
    std::vector<ColourSet> lists;
    for (VertexId v : f.cyc) lists.push_back(k.l[v]);
    auto col = colour_cycle(lists, f.k);
    if (!col) return invariant_fail(k, "chordless cycle refused its colouring");
    Colouring phi(k.g.n());
    for (int p = 0; p < f.q(); ++p) phi.set(f.cyc[p], (*col)[p]);
    note(k, "cycle_direct");
    return phi;
  }

  std::optional<Colouring> r_grow_s3(const Canvas& k, const Frame& f,
                                     const GirthProfile& prof) {
    if (f.k != 2) return std::nullopt;
    if (f.q() < 5) return invariant_fail(k, "short boundary survived to the S-growth step");
    VertexId v2 = f.cyc[1], v3 = f.cyc[2], v4 = f.cyc[3];
    ColourSet fresh = k.l[v3].minus(k.l[v2]);
    if (fresh.empty()) return invariant_fail(k, "no colour distinguishes v3 from v2");
    Canvas k2 = k;
    k2.l[v3] = ColourSet::of({fresh.smallest()});
    k2.s.vertices = {f.cyc[0], v2, v3};
    drop_a_in_s(k2);
    auto cert = classify_exception(k2, prof);
    if (!cert) {
      note(k2, "grow_s3");
      return solve(std::move(k2));
    }
    if (cert->kind != ExceptionCertificate::Kind::TypeIII)
      return invariant_fail(k, "3-vertex S classified as type (i)/(ii)");
    auto open = k.g.interior_vertices(CycleInGraph{f.cyc});
    if (open.size() != 1) return invariant_fail(k, "S-growth wheel case without a unique hub");
    VertexId w = open[0];
    std::set<VertexId> nv3(k.g.neighbours(v3).begin(), k.g.neighbours(v3).end());
    if (nv3 != std::set<VertexId>{v2, v4, w})
      return invariant_fail(k, "S-growth wheel case with stray v3 neighbours");
    if (fresh.size() < 2) return invariant_fail(k, "wheel case lacks two spare colours");
    ColourSet x = fresh.smallest_subset(2);
    std::vector<char> keep(k.g.n(), 1);
    keep[v3] = 0;
    Subgraph h = k.g.induced_subgraph(keep);
    Canvas k3 = restrict_canvas(k, h);
    VertexId wh = h.from_parent[w];
    k3.l[wh] = k3.l[wh].minus(x);
    if (k3.l[wh].size() < 3) return invariant_fail(k, "hub list fell below three");
    Colouring phi = sub_solve(k, std::move(k3), h.to_parent, "grow_s3_wheel");
    ColourSet left = x.minus(phi[v4]);
    if (left.empty()) return invariant_fail(k, "wheel case left no colour for v3");
    phi.set(v3, left.smallest());
    return phi;
  }

  std::optional<Colouring> r_sep_5cycle(const Canvas& k, const GirthProfile& prof) {
    for (const auto& t : cycles_of_length(k.g, 5)) {
      if (k.g.interior_vertices(CycleInGraph{t}).empty()) continue;
      int pos = -1;
      for (int i = 0; i < 5 && pos < 0; ++i)
        if (prof[t[i]].at_least(4)) pos = i;
      if (pos < 0) continue;
      auto at = [&](int d) { return t[((pos + d) % 5 + 5) % 5]; };
      return separating_cycle_reduce(k, t, {at(-2), at(-1), at(0)}, {at(1), at(2)},
                                     "sep_5cycle");
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_sep_6cycle(const Canvas& k, const GirthProfile& prof) {
    for (const auto& t : cycles_of_length(k.g, 6)) {
      auto open = k.g.interior_vertices(CycleInGraph{t});
      if (open.empty()) continue;
      int pos = -1;
      for (int i = 0; i < 6 && pos < 0; ++i)
        if (prof[t[i]].at_least(5)) pos = i;
      if (pos < 0) continue;
      auto at = [&](int d) { return t[((pos + d) % 6 + 6) % 6]; };
      VertexId u1 = at(-2), u2 = at(-1), u3 = at(0), u4 = at(1), u5 = at(2), u6 = at(3);
      std::set<VertexId> inside(open.begin(), open.end());
      VertexId w_all = -1;
      bool case1 = false;
      for (VertexId w : open) {
        if (k.g.has_edge(w, u4) && k.g.has_edge(w, u5) && k.g.has_edge(w, u6) && w_all < 0)
          w_all = w;
        if (prof[w].equals(4) && k.g.has_edge(w, u4) && k.g.has_edge(w, u6)) case1 = true;
      }
      if (!case1)
        for (VertexId w1 : open) {
          if (!prof[w1].at_least(5) || !k.g.has_edge(w1, u4)) continue;
          for (VertexId w2 : k.g.neighbours(w1))
            if (inside.count(w2) && prof[w2].at_least(5) && k.g.has_edge(w2, u6)) case1 = true;
        }
      if (!case1 && w_all < 0)
        return separating_cycle_reduce(k, t, {u1, u2, u3}, {u4, u5, u6}, "sep_6cycle");
      if (case1)
        return separating_cycle_reduce(k, t, {u2, u3, u4}, {u1, u5, u6}, "sep_6cycle_case1");
      VertexId w = w_all;
      if (!k.g.has_edge(w, u1))
        return separating_cycle_reduce(k, t, {u2, u3, u4}, {u1, u5, u6}, "sep_6cycle_case2a");
      if (open.size() != 1)
        return invariant_fail(k, "6-cycle case 2 with extra interior vertices");
      std::vector<char> keep(k.g.n(), 1);
      keep[w] = 0;
      Subgraph h = k.g.induced_subgraph(keep);
      Canvas sub = restrict_canvas(k, h);
      Colouring phi = sub_solve(k, std::move(sub), h.to_parent, "sep_6cycle_case2b");
      ColourSet avail = k.l[w];
      for (VertexId x : k.g.neighbours(w)) avail = avail.minus(phi[x]);
      if (avail.empty()) return invariant_fail(k, "6-cycle hub lost all colours");
      phi.set(w, avail.smallest());
      return phi;
    }
    return std::nullopt;
  }

  // Boundary vertices that may serve as separating-path endpoints: everything
  // on C except the internal vertices of S.
  std::vector<char> allowed_endpoints(const Canvas& k, const Frame& f) {
    std::vector<char> allowed(k.g.n(), 0);
    for (int p = 0; p < f.q(); ++p) allowed[f.cyc[p]] = 1;
    for (int i = 1; i + 1 < f.k; ++i) allowed[f.cyc[i]] = 0;
    return allowed;
  }

  Colouring split_and_finish(const Canvas& k, const std::vector<VertexId>& path,
                             const char* tag) {
    auto [h1, h2] = k.g.split_along_path(PathInGraph{path});
    auto holds_all_s = [&](const Subgraph& h) {
      for (VertexId v : k.s.vertices)
        if (h.from_parent[v] < 0) return false;
      return true;
    };
    const Subgraph& hs = holds_all_s(h1) ? h1 : h2;
    const Subgraph& ho = holds_all_s(h1) ? h2 : h1;
    if (!holds_all_s(hs)) return invariant_fail(k, std::string(tag) + ": S split apart");
    Canvas ks = restrict_canvas(k, hs);
    Colouring phi1 = sub_solve(k, std::move(ks), hs.to_parent, tag);
    Canvas ko = restrict_with_s(k, ho, path);
    for (VertexId v : path) ko.l[ho.from_parent[v]] = ColourSet::of({phi1[v]});
    GirthProfile po = girth_profile(ko.g);
    if (classify_exception(ko, po))
      return invariant_fail(k, std::string(tag) + ": far side exceptional");
    Colouring phi2 = sub_solve(k, std::move(ko), ho.to_parent, tag);
    merge_into(phi1, phi2);
    return phi1;
  }

  std::optional<Colouring> r_tripod_split(const Canvas& k, const Frame& f,
                                    const GirthProfile& prof) {
    std::vector<char> allowed = allowed_endpoints(k, f);
    for (VertexId v = 0; v < k.g.n(); ++v) {
      if (k.g.on_outer_boundary(v)) continue;
      std::vector<VertexId> cns;
      for (VertexId u : k.g.neighbours(v))
        if (allowed[u]) cns.push_back(u);
      std::sort(cns.begin(), cns.end());
      for (size_t i = 0; i < cns.size(); ++i)
        for (size_t j = i + 1; j < cns.size(); ++j) {
          VertexId a = cns[i], b = cns[j];
          if (prof[a].equals(3) && prof[v].equals(3) && prof[b].equals(3)) continue;
          return split_and_finish(k, {a, v, b}, "tripod_split");
        }
    }
    return std::nullopt;
  }

  std::optional<Colouring> r_guarded_quad_split(const Canvas& k, const Frame& f, const GirthProfile& prof) {
    std::vector<char> allowed = allowed_endpoints(k, f);
    for (VertexId v = 0; v < k.g.n(); ++v) {
      if (k.g.on_outer_boundary(v) || !prof[v].at_least(5)) continue;
      for (VertexId w : k.g.neighbours(v)) {
        if (k.g.on_outer_boundary(w) || !prof[w].at_least(5)) continue;
        for (VertexId vp : k.g.neighbours(v)) {
          if (!allowed[vp]) continue;
          for (VertexId wp : k.g.neighbours(w)) {
            if (!allowed[wp] || wp == vp) continue;
            bool guarded = false;
            for (VertexId x : k.a)
              if (k.g.has_edge(x, vp) && k.g.has_edge(x, wp)) guarded = true;
            if (guarded) continue;
            return split_and_finish(k, {wp, w, v, vp}, "quad_path_split");
          }
        }
      }
    }
    return std::nullopt;
  }

  // Arc index along C from v_k to v_1 through the non-S side.
  int arc_index(const Frame& f, int pos) const {
    if (pos == f.k - 1) return 0;
    if (pos >= f.k) return pos - f.k + 1;
    if (pos == 0) return f.q() - f.k + 1;
    return -1;
  }

  VertexId vertex_at_arc(const Frame& f, int ai) const {
    if (ai == 0) return f.cyc[f.k - 1];
    if (ai <= f.q() - f.k) return f.cyc[f.k + ai - 1];
    return f.cyc[0];
  }

  std::optional<Colouring> r_fan_gap(const Canvas& k, const Frame& f) {
    std::vector<int> posof(k.g.n(), -1);
    for (int p = 0; p < f.q(); ++p) posof[f.cyc[p]] = p;
    for (VertexId u = 0; u < k.g.n(); ++u) {
      if (k.g.on_outer_boundary(u)) continue;
      std::vector<int> idx;
      for (VertexId x : k.g.neighbours(u)) {
        int p = posof[x];
        if (p < 0) continue;
        int ai = arc_index(f, p);
        if (ai >= 0) idx.push_back(ai);
      }
      std::sort(idx.begin(), idx.end());
      for (size_t i = 0; i + 1 < idx.size(); ++i) {
        if (idx[i + 1] == idx[i] + 1) continue;
        return fan_gap_reduce(k, vertex_at_arc(f, idx[i]), u,
                                  vertex_at_arc(f, idx[i + 1]));
      }
    }
    return std::nullopt;
  }

  Colouring fan_gap_reduce(const Canvas& k, VertexId vi, VertexId u, VertexId vj) {
    auto [h1, h2] = k.g.split_along_path(PathInGraph{{vi, u, vj}});
    auto holds_all_s = [&](const Subgraph& h) {
      for (VertexId v : k.s.vertices)
        if (h.from_parent[v] < 0) return false;
      return true;
    };
    const Subgraph& hs = holds_all_s(h1) ? h1 : h2;
    const Subgraph& ho = holds_all_s(h1) ? h2 : h1;
    if (!holds_all_s(hs)) return invariant_fail(k, "fan gap: S split apart");
    Canvas ks = restrict_canvas(k, hs);
    Colouring phi1 = sub_solve(k, std::move(ks), hs.to_parent, "fan_gap_s_side");

    auto far_canvas = [&](const Colouring& phi) {
      Canvas ko = restrict_with_s(k, ho, {vi, u, vj});
      for (VertexId v : {vi, u, vj}) ko.l[ho.from_parent[v]] = ColourSet::of({phi[v]});
      return ko;
    };
    Canvas ko = far_canvas(phi1);
    GirthProfile po = girth_profile(ko.g);
    auto cert = classify_exception(ko, po);
    if (!cert) {
      Colouring phi2 = sub_solve(k, std::move(ko), ho.to_parent, "fan_gap_far");
      merge_into(phi1, phi2);
      return phi1;
    }
    if (cert->kind != ExceptionCertificate::Kind::TypeIII)
      return invariant_fail(k, "fan gap: 3-vertex far side typed (i)/(ii)");
    // The far side is a generalized wheel that is not a broken wheel, so at
    // most one colouring of the triple fails on it; extend by search and, if
    // the triple is the bad one, recolour the S side without it.
    auto oracle_extend = [&](const Canvas& kk) -> std::optional<Colouring> {
      auto r =
          oracle::find_colouring(kk.g, kk.l, Colouring(kk.g.n()), {opt_.oracle_node_limit});
      if (r.status != oracle::SearchStatus::Found) return std::nullopt;
      Colouring out(k.g.n());
      for (VertexId nv = 0; nv < kk.g.n(); ++nv) out.set(ho.to_parent[nv], (*r.colouring)[nv]);
      return out;
    };
    flag("wheel_oracle: fan-gap far side");
    if (auto ext = oracle_extend(ko)) {
      merge_into(phi1, *ext);
      return phi1;
    }
    if (k.l[u].size() < 5)
      return invariant_fail(k, "fan-gap retry with a thin interior list");
    Canvas ks2 = restrict_canvas(k, hs);
    VertexId us = hs.from_parent[u];
    ks2.l[us] = ks2.l[us].minus(phi1[u]);
    GirthProfile ps2 = girth_profile(ks2.g);
    if (classify_exception(ks2, ps2))
      return invariant_fail(k, "fan-gap retry side exceptional");
    Colouring phi1b = sub_solve(k, std::move(ks2), hs.to_parent, "fan_gap_retry");
    Canvas ko2 = far_canvas(phi1b);
    flag("wheel_oracle: fan-gap retry");
    if (auto ext = oracle_extend(ko2)) {
      merge_into(phi1b, *ext);
      return phi1b;
    }
    return invariant_fail(k, "fan gap: two blocked triples on a non-broken wheel");
  }

  std::optional<Colouring> r_equal_list_fan(const Canvas& k, const Frame& f) {
    std::vector<int> posof(k.g.n(), -1);
    for (int p = 0; p < f.q(); ++p) posof[f.cyc[p]] = p;
    for (VertexId w = 0; w < k.g.n(); ++w) {
      if (k.g.on_outer_boundary(w)) continue;
      std::vector<int> ps;
      for (VertexId x : k.g.neighbours(w)) {
        int p = posof[x];
        if (p >= f.k) ps.push_back(p);
      }
      std::sort(ps.begin(), ps.end());
      size_t i = 0;
      while (i < ps.size()) {
        size_t j = i;
        while (j + 1 < ps.size() && ps[j + 1] == ps[j] + 1) ++j;
        int t = static_cast<int>(j - i + 1);
        if (t >= 3)
          for (int a = 0; a + 2 < t; ++a) {
            VertexId wj = f.cyc[ps[i + a]];
            VertexId wj2 = f.cyc[ps[i + a] + 2];
            if (!(k.l[wj] == k.l[wj2])) continue;
            return equal_list_fan_reduce(k, w, wj, f.cyc[ps[i + a] + 1], wj2);
          }
        i = j + 1;
      }
    }
    return std::nullopt;
  }

  Colouring equal_list_fan_reduce(const Canvas& k, VertexId hub, VertexId wj, VertexId wj1,
                             VertexId wj2) {
    IdentifyResult idr = k.g.identify_fan_ends(wj, wj1, wj2);
    Canvas k2;
    k2.g = idr.graph;
    k2.l.resize(idr.graph.n());
    for (VertexId v = 0; v < k.g.n(); ++v)
      if (idr.old_to_new[v] >= 0) k2.l[idr.old_to_new[v]] = k.l[v];
    for (VertexId v : k.s.vertices) k2.s.vertices.push_back(idr.old_to_new[v]);
    for (VertexId v : k.a)
      if (v != wj && v != wj1 && v != wj2 && idr.old_to_new[v] >= 0)
        k2.a.push_back(idr.old_to_new[v]);
    std::sort(k2.a.begin(), k2.a.end());
    GirthProfile p2 = girth_profile(k2.g);
    if (!validate_canvas(k2, p2).empty())
      return invariant_fail(k, "fan identification broke the canvas");
    if (!is_acceptable_path(k2.g, p2, PathInGraph{k2.s.vertices}))
      return invariant_fail(k, "fan identification broke S");
    if (classify_exception(k2, p2))
      return invariant_fail(k, "fan identification created an exception");
    note(k2, "close_fan");
    Colouring phi2 = solve(std::move(k2));
    Colouring out(k.g.n());
    for (VertexId v = 0; v < k.g.n(); ++v)
      if (idr.old_to_new[v] >= 0) out.set(v, phi2[idr.old_to_new[v]]);
    ColourSet mid = k.l[wj1].minus(out[wj]).minus(out[hub]);
    if (mid.empty()) return invariant_fail(k, "fan middle vertex lost all colours");
    out.set(wj1, mid.smallest());
    if (!colouring_proper(k.g, out)) return invariant_fail(k, "fan lift improper");
    return out;
  }

  std::optional<Colouring> r_prefix(const Canvas& k, const Frame& f) {
    VertexId vk = f.cyc[f.k - 1], vk1 = f.cyc[f.k];
    if (k.l[vk].subset_of(k.l[vk1])) return std::nullopt;
    Colouring phi(k.g.n());
    phi.set(vk, k.l[vk].smallest());
    Reduced red = delete_and_subtract(k, phi, {vk});
    GirthProfile p2 = girth_profile(red.canvas.g);
    if (!validate_canvas(red.canvas, p2).empty())
      return invariant_fail(k, "prefix deletion broke the canvas");
    if (classify_exception(red.canvas, p2))
      return invariant_fail(k, "prefix deletion exceptional");
    Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "prefix_delete");
    out.set(vk, phi[vk]);
    return out;
  }

  std::optional<Colouring> r_hub_over_tail(const Canvas& k, const Frame& f,
                                       const GirthProfile& prof) {
    if (f.k != 3 || f.q() < 5) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      if (!prof[f.cyc[i]].equals(3)) return std::nullopt;
    VertexId v3 = f.cyc[2], v4 = f.cyc[3], v5 = f.cyc[4];
    VertexId w = -1;
    for (VertexId v = 0; v < k.g.n() && w < 0; ++v) {
      if (k.g.on_outer_boundary(v)) continue;
      if (k.g.has_edge(v, v3) && k.g.has_edge(v, v4) && k.g.has_edge(v, v5)) w = v;
    }
    if (w < 0) return std::nullopt;
    if (!k.l[v3].subset_of(k.l[v4]))
      return invariant_fail(k, "hub-over-tail reached before the prefix reduction");
    if (k.l[v4].size() != 3) return invariant_fail(k, "untrimmed v4 at the hub-over-tail step");
    ColourSet bc = k.l[v4].minus(k.l[v3]);
    if (bc.size() != 2) return invariant_fail(k, "hub-over-tail spare colours missing");
    std::vector<char> keep(k.g.n(), 1);
    keep[v4] = 0;
    Subgraph h = k.g.induced_subgraph(keep);
    Canvas k2 = restrict_canvas(k, h);
    VertexId wh = h.from_parent[w];
    k2.l[wh] = k2.l[wh].minus(bc);
    if (k2.l[wh].size() < 3) return invariant_fail(k, "hub-over-tail hub list too small");
    GirthProfile p2 = girth_profile(k2.g);
    if (!validate_canvas(k2, p2).empty()) return invariant_fail(k, "hub-over-tail canvas broke");
    auto cert = classify_exception(k2, p2);
    if (!cert) {
      Colouring phi = sub_solve(k, std::move(k2), h.to_parent, "hub_over_tail");
      ColourSet left = bc.minus(phi[v5]);
      if (left.empty()) return invariant_fail(k, "hub-over-tail left no colour for v4");
      phi.set(v4, left.smallest());
      return phi;
    }
    // The graph is a near-triangulation assembled from generalized wheels;
    // extend by exhaustive search, as with blocked principal colourings.
    flag("nt_wheel_oracle: hub-over-tail, n=" + std::to_string(k.g.n()));
    auto r = oracle::find_colouring(k.g, k.l, Colouring(k.g.n()), {opt_.oracle_node_limit});
    if (r.status != oracle::SearchStatus::Found)
      return invariant_fail(k, "hub-over-tail near-triangulation refused to colour");
    return *r.colouring;
  }

  std::optional<Colouring> r_short_tail(const Canvas& k, const Frame& f) {
    int q = f.q(), kk = f.k;
    if (q >= kk + 4) return std::nullopt;
    if (q <= kk + 1)
      return invariant_fail(k, "boundary shorter than S+2 survived the cascade");
    if (q == kk + 2) {
      if (kk == 2) return invariant_fail(k, "4-boundary with interior at the short-tail step");
      std::vector<ColourSet> lists;
      for (VertexId v : f.cyc) lists.push_back(k.l[v]);
      auto col = colour_cycle(lists, kk);
      if (!col) return invariant_fail(k, "short-tail cycle colouring failed");
      Colouring phiC(k.g.n());
      for (int p = 0; p < q; ++p) phiC.set(f.cyc[p], (*col)[p]);
      Colouring dead(k.g.n());
      dead.set(f.cyc[kk], phiC[f.cyc[kk]]);
      dead.set(f.cyc[kk + 1], phiC[f.cyc[kk + 1]]);
      Reduced red = delete_and_subtract(k, dead, {f.cyc[kk], f.cyc[kk + 1]});
      GirthProfile p2 = girth_profile(red.canvas.g);
      if (!validate_canvas(red.canvas, p2).empty())
        return invariant_fail(k, "short-tail canvas broke");
      if (classify_exception(red.canvas, p2))
        return invariant_fail(k, "short-tail residue exceptional");
      Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "short_tail");
      merge_into(out, dead);
      return out;
    }
    VertexId vk1 = f.cyc[kk];
    if (!in_a(k, vk1)) return std::nullopt;
    if (kk != 4) return invariant_fail(k, "short-tail A-case with short S");
    VertexId vk2 = f.cyc[kk + 1], vk3 = f.cyc[kk + 2];
    if (in_a(k, vk3)) {
      std::vector<ColourSet> lists;
      for (VertexId v : f.cyc) lists.push_back(k.l[v]);
      auto col = colour_cycle(lists, kk);
      if (!col) return invariant_fail(k, "short-tail A-case cycle colouring failed");
      Colouring dead(k.g.n());
      for (int d = 0; d < 3; ++d) dead.set(f.cyc[kk + d], (*col)[kk + d]);
      Reduced red = delete_and_subtract(k, dead, {vk1, vk2, vk3});
      GirthProfile p2 = girth_profile(red.canvas.g);
      if (!validate_canvas(red.canvas, p2).empty())
        return invariant_fail(k, "short-tail A-case-1 canvas broke");
      if (classify_exception(red.canvas, p2))
        return invariant_fail(k, "short-tail A-case-1 exceptional");
      Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "short_tail_a");
      merge_into(out, dead);
      return out;
    }
    ColourSet fresh = k.l[vk2].minus(k.l[vk1]);
    if (fresh.empty()) return invariant_fail(k, "short-tail A-case-2 has no fresh colour");
    Colouring dead(k.g.n());
    dead.set(vk2, fresh.smallest());
    ColourSet last = k.l[vk3].minus(dead[vk2]).minus(k.l[f.cyc[0]]);
    if (last.empty()) return invariant_fail(k, "short-tail A-case-2 has no colour for v_k+3");
    dead.set(vk3, last.smallest());
    Reduced red = delete_and_subtract(k, dead, {vk2, vk3});
    GirthProfile p2 = girth_profile(red.canvas.g);
    if (!validate_canvas(red.canvas, p2).empty())
      return invariant_fail(k, "short-tail A-case-2 canvas broke");
    if (classify_exception(red.canvas, p2))
      return invariant_fail(k, "short-tail A-case-2 exceptional");
    Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "short_tail_b");
    merge_into(out, dead);
    return out;
  }

  struct PrimedIndex {
    int pk;  // frame position of v_{k'}
    Colour c;
  };
  std::optional<PrimedIndex> primed(const Canvas& k, const Frame& f) {
    VertexId vk = f.cyc[f.k - 1];
    VertexId vk1 = f.cyc[f.k % f.q()];
    if (in_a(k, vk1)) {
      ColourSet avail = k.l[vk1].minus(k.l[vk]);
      if (avail.size() != 1) return std::nullopt;
      return PrimedIndex{f.k, avail.smallest()};
    }
    return PrimedIndex{f.k - 1, k.l[vk].smallest()};
  }

  std::optional<Colouring> r_nested_lists(const Canvas& k, const Frame& f) {
    auto pr = primed(k, f);
    if (!pr) return invariant_fail(k, "available colour is not unique");
    int pk = pr->pk;
    Colour c = pr->c;
    if (pk + 3 >= f.q()) return invariant_fail(k, "missing boundary room after v_k'");
    VertexId p1 = f.cyc[pk + 1], p2 = f.cyc[pk + 2], p3 = f.cyc[pk + 3];
    ColourSet extra2 = k.l[p1].minus(c).minus(k.l[p2]);
    if (!extra2.empty()) {
      Colouring phi(k.g.n());
      phi.set(p1, extra2.smallest());
      Reduced red = delete_and_subtract(k, phi, {p1}, {f.cyc[pk]});
      GirthProfile pp = girth_profile(red.canvas.g);
      if (!validate_canvas(red.canvas, pp).empty())
        return invariant_fail(k, "nested-list step (2) canvas broke");
      if (classify_exception(red.canvas, pp))
        return invariant_fail(k, "nested-list step (2) exceptional");
      Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "nested_list2");
      if (pk == f.k && out[f.cyc[pk]] != c)
        return invariant_fail(k, "v_k' refused its available colour");
      merge_into(out, phi);
      return out;
    }
    ColourSet extra3 = k.l[p2].minus(k.l[p3]);
    if (!extra3.empty()) {
      if (k.l[p1].size() != 3) return invariant_fail(k, "nested-list step (3) with |L(v_k'+1)| != 3");
      Colouring phi(k.g.n());
      phi.set(p2, extra3.smallest());
      ColourSet first = k.l[p1].minus(c).minus(phi[p2]);
      if (first.empty()) return invariant_fail(k, "nested-list step (3) has no colour for v_k'+1");
      phi.set(p1, first.smallest());
      Reduced red = delete_and_subtract(k, phi, {p1, p2}, {f.cyc[pk]});
      GirthProfile pp = girth_profile(red.canvas.g);
      if (!validate_canvas(red.canvas, pp).empty())
        return invariant_fail(k, "nested-list step (3) canvas broke");
      if (classify_exception(red.canvas, pp))
        return invariant_fail(k, "nested-list step (3) exceptional");
      Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "nested_list3");
      merge_into(out, phi);
      return out;
    }
    return std::nullopt;
  }

  // ---- the deletable-path endgame ------------------------------------------

  Colouring r_deletable_path(const Canvas& k, const Frame& f, const GirthProfile& prof) {
    auto pr = primed(k, f);
    if (!pr) return invariant_fail(k, "available colour is not unique");
    int pk = pr->pk;
    Colour c = pr->c;
    int q = f.q();
    if (pk + 3 >= q) return invariant_fail(k, "no room for a deletable path");
    int jpos = pk + 3;
    while (true) {
      VertexId vj = f.cyc[jpos];
      VertexId vn = f.cyc[(jpos + 1) % q];
      if (!k.l[vj].subset_of(k.l[vn])) break;
      if (jpos + 1 >= q) return invariant_fail(k, "deletable path ran past the boundary");
      ++jpos;
    }
    for (int p = pk + 3; p <= jpos; ++p) {
      if (in_a(k, f.cyc[p])) return invariant_fail(k, "A vertex inside the deletable tail");
      if (k.l[f.cyc[p]].size() != 3)
        return invariant_fail(k, "untrimmed vertex in the deletable tail");
      if (!(k.l[f.cyc[p]] == k.l[f.cyc[pk + 3]]))
        return invariant_fail(k, "deletable tail lists not constant");
    }
    VertexId p1 = f.cyc[pk + 1], p3 = f.cyc[pk + 3];
    VertexId u1 = -1, u2 = -1;
    if (in_a(k, f.cyc[pk + 2])) {
      for (VertexId x = 0; x < k.g.n() && u1 < 0; ++x) {
        if (k.g.on_outer_boundary(x) || !prof[x].at_least(5) || !k.g.has_edge(x, p1)) continue;
        for (VertexId y : k.g.neighbours(x)) {
          if (y == x || k.g.on_outer_boundary(y) || !prof[y].at_least(5)) continue;
          if (!k.g.has_edge(y, p3)) continue;
          u1 = x;
          u2 = y;
          break;
        }
      }
    }
    if (u1 < 0) return delete_path_reduce(k, f, prof, pk, c, jpos);
    return hooked_path_reduce(k, f, prof, pk, c, jpos, u1, u2);
  }

  // Colour the deletable path: 2-colouring of the constant tail with the bad
  // colour at v_j, then the A vertex (if any) and v_{k'+1}.
  Colouring colour_path(const Canvas& k, const Frame& f, int pk, Colour c, int jpos,
                        bool& ok) {
    ok = true;
    int q = f.q();
    Colouring phi(k.g.n());
    ColourSet tail = k.l[f.cyc[pk + 3]];
    ColourSet bad = tail.minus(k.l[f.cyc[(jpos + 1) % q]]);
    if (bad.empty()) {
      ok = false;
      return phi;
    }
    Colour t_bad = bad.smallest();
    Colour t2 = tail.minus(t_bad).smallest();
    Colour cur = t_bad;
    for (int p = jpos; p >= pk + 3; --p) {
      phi.set(f.cyc[p], cur);
      cur = (cur == t_bad) ? t2 : t_bad;
    }
    VertexId p2 = f.cyc[pk + 2], p1 = f.cyc[pk + 1];
    if (in_a(k, p2)) {
      ColourSet avail = k.l[p2].minus(phi[f.cyc[pk + 3]]);
      if (avail.empty()) {
        ok = false;
        return phi;
      }
      phi.set(p2, avail.smallest());
    } else {
      phi.set(p2, cur);  // the 2-colouring continues through v_{k'+2}
    }
    ColourSet avail1 = k.l[p1].minus(c).minus(phi[p2]);
    if (avail1.empty()) {
      ok = false;
      return phi;
    }
    phi.set(p1, avail1.smallest());
    return phi;
  }

  Colouring delete_path_reduce(const Canvas& k, const Frame& f, const GirthProfile& prof, int pk,
                           Colour c, int jpos) {
    bool ok = true;
    Colouring phi = colour_path(k, f, pk, c, jpos, ok);
    if (!ok) return invariant_fail(k, "deletable path refused its colouring");
    std::vector<VertexId> doomed;
    for (int p = pk + 1; p <= jpos; ++p) doomed.push_back(f.cyc[p]);
    bool claim_failed = false;
    std::optional<Reduced> red;
    try {
      red = delete_and_subtract(k, phi, doomed, {f.cyc[pk]});
    } catch (const Error& e) {
      if (e.kind != ErrorKind::ListExhausted) throw;
      claim_failed = true;
    }
    GirthProfile pp;
    if (!claim_failed) {
      pp = girth_profile(red->canvas.g);
      if (!validate_canvas(red->canvas, pp).empty()) claim_failed = true;
    }
    if (!claim_failed) {
      if (classify_exception(red->canvas, pp))
        return invariant_fail(k, "deletable-path residue exceptional");
      Colouring out = sub_solve(k, std::move(red->canvas), red->to_parent, "delete_path");
      merge_into(out, phi);
      return out;
    }
    // Claim `canvas` failure: a girth-3 interior vertex saw three path
    // colours, so it sits on v_{k'+1}, v_{k'+2}, v_{k'+3}; close the fan.
    VertexId p1 = f.cyc[pk + 1], p2 = f.cyc[pk + 2], p3 = f.cyc[pk + 3];
    VertexId hub = -1;
    for (VertexId v = 0; v < k.g.n() && hub < 0; ++v) {
      if (k.g.on_outer_boundary(v) || !prof[v].equals(3)) continue;
      if (k.g.has_edge(v, p1) && k.g.has_edge(v, p2) && k.g.has_edge(v, p3)) hub = v;
    }
    if (hub < 0) return invariant_fail(k, "deletable-path residue broke without a fan hub");
    if (in_a(k, p2)) return invariant_fail(k, "fan middle vertex unexpectedly in A");
    IdentifyResult idr = k.g.identify_fan_ends(p1, p2, p3);
    Canvas k2;
    k2.g = idr.graph;
    k2.l.resize(idr.graph.n());
    for (VertexId v = 0; v < k.g.n(); ++v)
      if (idr.old_to_new[v] >= 0) k2.l[idr.old_to_new[v]] = k.l[v];
    k2.l[idr.z] = k.l[p1];
    for (VertexId v : k.s.vertices) k2.s.vertices.push_back(idr.old_to_new[v]);
    for (VertexId v : k.a)
      if (v != p1 && v != p2 && v != p3 && idr.old_to_new[v] >= 0)
        k2.a.push_back(idr.old_to_new[v]);
    std::sort(k2.a.begin(), k2.a.end());
    GirthProfile p2g = girth_profile(k2.g);
    if (!validate_canvas(k2, p2g).empty())
      return invariant_fail(k, "path identification broke the canvas");
    if (!is_acceptable_path(k2.g, p2g, PathInGraph{k2.s.vertices}))
      return invariant_fail(k, "path identification broke S");
    if (classify_exception(k2, p2g))
      return invariant_fail(k, "path identification exceptional");
    note(k2, "identify_path_ends");
    Colouring phi2 = solve(std::move(k2));
    Colour zc = phi2[idr.z];
    if (zc == c) return invariant_fail(k, "identified vertex took the available colour");
    if (!k.l[p3].contains(zc))
      return invariant_fail(k, "identified colour missing from v_{k'+3}");
    Colouring out(k.g.n());
    for (VertexId v = 0; v < k.g.n(); ++v)
      if (idr.old_to_new[v] >= 0) out.set(v, phi2[idr.old_to_new[v]]);
    out.set(p1, zc);
    out.set(p3, zc);
    ColourSet mid = k.l[p2].minus(zc).minus(out[hub]);
    if (mid.empty()) return invariant_fail(k, "identified middle vertex lost all colours");
    out.set(p2, mid.smallest());
    if (!colouring_proper(k.g, out)) return invariant_fail(k, "path identification improper");
    return out;
  }

  Colouring hooked_path_reduce(const Canvas& k, const Frame& f, const GirthProfile& prof, int pk,
                          Colour c, int jpos, VertexId u1, VertexId u2) {
    int q = f.q();
    VertexId p1 = f.cyc[pk + 1], p2 = f.cyc[pk + 2], p3 = f.cyc[pk + 3];
    {
      std::vector<VertexId> nbhd = k.g.neighbours(p2);
      std::set<VertexId> got(nbhd.begin(), nbhd.end());
      if (got != std::set<VertexId>{p1, p3})
        return invariant_fail(k, "v_{k'+2} grew extra neighbours");
    }
    std::vector<int> posof(k.g.n(), -1);
    for (int p = 0; p < q; ++p) posof[f.cyc[p]] = p;
    auto max_p_neighbour = [&](VertexId v) {
      int best = -1;
      for (VertexId x : k.g.neighbours(v)) {
        int p = posof[x];
        if (p >= pk + 1 && p <= jpos) best = std::max(best, p);
      }
      return best;
    };
    for (VertexId v = 0; v < k.g.n(); ++v) {
      if (v == u1 || v == u2 || k.g.on_outer_boundary(v)) continue;
      int mp = max_p_neighbour(v);
      if (mp < 0) continue;
      if (k.g.has_edge(v, u1)) {
        if (mp < pk + 4) return invariant_fail(k, "path-hook index too small (u1)");
        return split_and_finish(k, {p1, u1, v, f.cyc[mp]}, "path_hook_u1");
      }
      if (k.g.has_edge(v, u2)) {
        if (mp < pk + 5) return invariant_fail(k, "path-hook index too small (u2)");
        return split_and_finish(k, {p3, u2, v, f.cyc[mp]}, "path_hook_u2");
      }
    }
    for (VertexId vv = 0; vv < k.g.n(); ++vv) {
      if (vv == u1 || vv == u2 || k.g.on_outer_boundary(vv) || !prof[vv].at_least(5)) continue;
      bool v_adj_u1 = k.g.has_edge(vv, u1), v_adj_u2 = k.g.has_edge(vv, u2);
      if (!v_adj_u1 && !v_adj_u2) continue;
      for (VertexId ww : k.g.neighbours(vv)) {
        if (ww == u1 || ww == u2 || k.g.on_outer_boundary(ww) || !prof[ww].at_least(5))
          continue;
        int ip = max_p_neighbour(ww);
        if (ip < 0) continue;
        if (ip <= pk + 4) {
          if (ip != pk + 4 || !v_adj_u2)
            return invariant_fail(k, "hooked-pair case-1 shape violated");
          return hooked_pair_case1(k, f, pk, c);
        }
        std::vector<VertexId> qpath = v_adj_u1
                                          ? std::vector<VertexId>{p1, u1, vv, ww, f.cyc[ip]}
                                          : std::vector<VertexId>{p3, u2, vv, ww, f.cyc[ip]};
        return hooked_pair_case2(k, f, qpath, posof);
      }
    }
    bool ok = true;
    Colouring phi = colour_path(k, f, pk, c, jpos, ok);
    if (!ok) return invariant_fail(k, "endgame path refused its colouring");
    std::set<VertexId> hset;
    for (int p = pk + 1; p <= jpos; ++p) hset.insert(f.cyc[p]);
    for (VertexId v : k.s.vertices) hset.insert(v);
    hset.insert(u1);
    hset.insert(u2);
    auto hdeg = [&](VertexId v) {
      int d = 0;
      for (VertexId x : k.g.neighbours(v))
        if (hset.count(x)) ++d;
      return d;
    };
    VertexId ua = hdeg(u1) <= 2 ? u1 : u2;  // coloured last
    VertexId ub = ua == u1 ? u2 : u1;
    if (hdeg(ua) > 2) return invariant_fail(k, "both endgame hooks have high degree");
    for (VertexId v : k.s.vertices) phi.set(v, k.l[v].smallest());
    auto greedy = [&](VertexId v) {
      ColourSet avail = k.l[v];
      for (VertexId x : k.g.neighbours(v))
        if (hset.count(x) && phi.coloured(x)) avail = avail.minus(phi[x]);
      if (avail.empty()) return false;
      phi.set(v, avail.smallest());
      return true;
    };
    if (!greedy(ub) || !greedy(ua))
      return invariant_fail(k, "endgame hooks lost their colours");
    std::vector<VertexId> doomed;
    for (int p = pk + 1; p <= jpos; ++p) doomed.push_back(f.cyc[p]);
    doomed.push_back(u1);
    doomed.push_back(u2);
    Colouring phi_del(k.g.n());
    for (VertexId v : doomed) phi_del.set(v, phi[v]);
    std::optional<Reduced> red;
    try {
      red = delete_and_subtract(k, phi_del, doomed, {f.cyc[pk]});
    } catch (const Error& e) {
      if (e.kind != ErrorKind::ListExhausted) throw;
      return invariant_fail(k, "endgame residue emptied a list");
    }
    GirthProfile pp = girth_profile(red->canvas.g);
    if (!validate_canvas(red->canvas, pp).empty())
      return invariant_fail(k, "endgame residue is not a canvas");
    auto cert = classify_exception(red->canvas, pp);
    if (!cert) {
      Colouring out = sub_solve(k, std::move(red->canvas), red->to_parent, "endgame_delete");
      merge_into(out, phi_del);
      if (!colouring_proper(k.g, out)) return invariant_fail(k, "endgame merge improper");
      return out;
    }
    if (cert->kind != ExceptionCertificate::Kind::TypeII)
      return invariant_fail(k, "endgame residue typed (i)/(iii)");
    VertexId uu = red->to_parent[cert->u];
    VertexId ww = red->to_parent[cert->w];
    if (in_a(k, uu)) return invariant_fail(k, "endgame type-(ii) witness already in A");
    if (max_p_neighbour(uu) >= 0)
      return invariant_fail(k, "endgame type-(ii) witness touches the path");
    if (k.g.has_edge(uu, u2)) return invariant_fail(k, "endgame type-(ii) witness on u2");
    if (!k.g.has_edge(uu, u1)) return invariant_fail(k, "endgame type-(ii) witness unattached");
    VertexId v4 = f.cyc[f.k - 1];
    if (!k.g.has_edge(uu, v4))
      return invariant_fail(k, "endgame type-(ii) witness misses the S endpoint");
    int ip = max_p_neighbour(ww);
    if (ip < 0) return invariant_fail(k, "endgame type-(ii) wheel root off the path");
    return split_and_finish(k, {v4, uu, ww, f.cyc[ip]}, "endgame_typeii");
  }

  Colouring hooked_pair_case1(const Canvas& k, const Frame& f, int pk, Colour c) {
    VertexId p1 = f.cyc[pk + 1], p2 = f.cyc[pk + 2];
    ColourSet a1 = k.l[p1].minus(c);
    if (a1.empty()) return invariant_fail(k, "hooked-pair case-1 has no colour at v_{k'+1}");
    Colouring phi(k.g.n());
    phi.set(p1, a1.smallest());
    ColourSet a2 = k.l[p2].minus(phi[p1]);
    if (a2.empty()) return invariant_fail(k, "hooked-pair case-1 has no colour at v_{k'+2}");
    phi.set(p2, a2.smallest());
    Reduced red = delete_and_subtract(k, phi, {p1, p2}, {f.cyc[pk]});
    GirthProfile pp = girth_profile(red.canvas.g);
    if (!validate_canvas(red.canvas, pp).empty())
      return invariant_fail(k, "hooked-pair case-1 canvas broke");
    if (classify_exception(red.canvas, pp))
      return invariant_fail(k, "hooked-pair case-1 exceptional");
    Colouring out = sub_solve(k, std::move(red.canvas), red.to_parent, "hooked_pair1");
    merge_into(out, phi);
    return out;
  }

  Colouring hooked_pair_case2(const Canvas& k, const Frame& f, const std::vector<VertexId>& Q,
                            const std::vector<int>& posof) {
    auto [h1, h2] = k.g.split_along_path(PathInGraph{Q});
    auto holds_all_s = [&](const Subgraph& h) {
      for (VertexId v : k.s.vertices)
        if (h.from_parent[v] < 0) return false;
      return true;
    };
    const Subgraph& hs = holds_all_s(h1) ? h1 : h2;
    const Subgraph& ho = holds_all_s(h1) ? h2 : h1;
    if (!holds_all_s(hs)) return invariant_fail(k, "hooked-pair case-2 S split apart");
    Canvas ks = restrict_canvas(k, hs);
    Colouring phi = sub_solve(k, std::move(ks), hs.to_parent, "hooked_pair2_s_side");
    int sp = posof[Q.front()], ip = posof[Q.back()];
    for (int p = sp + 1; p < ip; ++p) {
      VertexId v = f.cyc[p];
      ColourSet avail = k.l[v];
      for (VertexId x : k.g.neighbours(v))
        if (phi.coloured(x)) avail = avail.minus(phi[x]);
      if (avail.empty()) return invariant_fail(k, "hooked-pair case-2 arc stuck");
      phi.set(v, avail.smallest());
    }
    Canvas ko = restrict_with_s(k, ho, Q);
    for (VertexId v : Q) ko.l[ho.from_parent[v]] = ColourSet::of({phi[v]});
    Colouring dead(ko.g.n());
    std::vector<VertexId> doomed;
    for (int p = sp; p <= ip; ++p) {
      VertexId nv = ho.from_parent[f.cyc[p]];
      if (nv < 0) continue;
      dead.set(nv, phi[f.cyc[p]]);
      doomed.push_back(nv);
    }
    Reduced red = delete_and_subtract(ko, dead, doomed);
    GirthProfile pp = girth_profile(red.canvas.g);
    if (!validate_canvas(red.canvas, pp).empty())
      return invariant_fail(k, "hooked-pair case-2 residue is not a canvas");
    if (classify_exception(red.canvas, pp))
      return invariant_fail(k, "hooked-pair case-2 exceptional");
    Colouring phi_far = sub_solve(ko, std::move(red.canvas), red.to_parent, "hooked_pair2_far");
    for (VertexId nv = 0; nv < ko.g.n(); ++nv)
      if (phi_far.coloured(nv)) phi.set(ho.to_parent[nv], phi_far[nv]);
    if (!colouring_proper(k.g, phi)) return invariant_fail(k, "hooked-pair case-2 merge improper");
    return phi;
  }
};

Colouring Solver::solve(Canvas k) {
  Measure m{k.g.n(), sum_lists(k)};
  if (!stack_.empty() && !(m < stack_.back()))
    return invariant_fail(k, "recursion measure failed to decrease");
  stack_.push_back(m);
  struct Pop {
    std::vector<Measure>* s;
    ~Pop() { s->pop_back(); }
  } pop{&stack_};

  GirthProfile prof = girth_profile(k.g);
  for (VertexId v : k.s.vertices)
    if (k.l[v].size() != 1) return invariant_fail(k, "non-singleton S list");
  if (!validate_canvas(k, prof).empty()) return invariant_fail(k, "invalid canvas at entry");
  if (k.s.is_cycle) return invariant_fail(k, "cycle S inside the cascade");
  if (!is_acceptable_path(k.g, prof, PathInGraph{k.s.vertices}))
    return invariant_fail(k, "unacceptable S at entry");
  if (classify_exception(k, prof)) return invariant_fail(k, "exceptional canvas at entry");

  if (auto r = base_all_coloured(k)) return *r;
  if (auto r = r_components(k)) return *r;
  if (auto r = r_grow_s(k)) return *r;
  if (auto r = r_degenerate(k)) return *r;
  if (auto r = r_cut_vertex(k)) return *r;
  Frame f = make_frame(k);
  if (auto r = r_chord(k)) return *r;
  if (auto r = r_sep_triangle(k)) return *r;
  if (auto r = r_trim(k, f, prof)) return *r;
  if (auto r = r_sep_quad(k)) return *r;
  if (auto r = r_all_on_cycle(k, f)) return *r;
  if (auto r = r_grow_s3(k, f, prof)) return *r;
  if (auto r = r_sep_5cycle(k, prof)) return *r;
  if (auto r = r_sep_6cycle(k, prof)) return *r;
  if (auto r = r_tripod_split(k, f, prof)) return *r;
  if (auto r = r_guarded_quad_split(k, f, prof)) return *r;
  if (auto r = r_fan_gap(k, f)) return *r;
  if (auto r = r_equal_list_fan(k, f)) return *r;
  if (auto r = r_prefix(k, f)) return *r;
  if (auto r = r_hub_over_tail(k, f, prof)) return *r;
  if (auto r = r_short_tail(k, f)) return *r;
  if (auto r = r_nested_lists(k, f)) return *r;
  return r_deletable_path(k, f, prof);
}

}  // namespace

ExtendResult extend(const Canvas& k, const Colouring& phi, const Options& opt, Trace* trace) {
  GirthProfile prof = girth_profile(k.g);
  if (!validate_canvas(k, prof).empty()) fail(ErrorKind::InvalidInput, "extend: not a canvas");
  std::set<VertexId> sset(k.s.vertices.begin(), k.s.vertices.end());
  for (VertexId v = 0; v < k.g.n(); ++v) {
    bool has = phi.coloured(v);
    if (has != static_cast<bool>(sset.count(v)))
      fail(ErrorKind::PhiImproper, "phi domain is not V(S)");
    if (has && !k.l[v].contains(phi[v])) fail(ErrorKind::PhiImproper, "phi leaves the lists");
  }
  if (!colouring_proper(k.g, phi)) fail(ErrorKind::PhiImproper, "phi improper on G[V(S)]");

  Canvas k0 = k;
  if (k.s.is_cycle) {
    CycleInGraph cyc{k.s.vertices};
    if (!is_acceptable_cycle(k.g, prof, cyc))
      fail(ErrorKind::PreconditionViolated, "S is not an acceptable cycle");
    k0.s.vertices = open_acceptable_cycle(k.g, prof, cyc).vertices;
    k0.s.is_cycle = false;
  } else if (!is_acceptable_path(k.g, prof, PathInGraph{k.s.vertices})) {
    fail(ErrorKind::PreconditionViolated, "S is not an acceptable path");
  }
  for (VertexId v : k0.s.vertices) k0.l[v] = ColourSet::of({phi[v]});
  {
    std::vector<VertexId> a2;
    for (VertexId v : k0.a)
      if (!sset.count(v)) a2.push_back(v);
    k0.a = std::move(a2);
  }
  if (auto cert = classify_exception(k0, prof)) {
    // An exceptional canvas may still admit a colouring, depending on L; the
    // oracle answers that question. With no colouring, report the witness.
    auto r = oracle::find_colouring(k0.g, k0.l, Colouring(k0.g.n()), {opt.oracle_node_limit});
    if (r.status == oracle::SearchStatus::Found) {
      if (trace) trace->flags.push_back("exceptional canvas extended by search");
      return ExtendResult{r.colouring, cert};
    }
    return ExtendResult{std::nullopt, cert};
  }

  Solver solver(opt, trace);
  Colouring out = solver.solve(k0);
  if (!out.total() || !colouring_proper(k.g, out) || !colouring_respects(k.l, out))
    fail(ErrorKind::EngineIncomplete, "engine produced an invalid colouring");
  for (VertexId v : k.s.vertices)
    if (out[v] != phi[v]) fail(ErrorKind::EngineIncomplete, "engine moved a precoloured vertex");
  return ExtendResult{out, std::nullopt};
}

Colouring colour(const PlaneGraph& g, const ListAssignment& l, const Options& opt,
                 Trace* trace) {
  GirthProfile prof = girth_profile(g);
  auto chk = is_local_girth_assignment(g, prof, l);
  if (!chk.ok) fail(ErrorKind::AssignmentInvalid, chk.what);
  Canvas k{g, l, BoundarySubgraph{{}, false}, {}};
  ExtendResult r = extend(k, Colouring(g.n()), opt, trace);
  if (!r.colouring) fail(ErrorKind::EngineIncomplete, "empty-S canvas classified exceptional");
  return *r.colouring;
}

}  // namespace engine
}  // namespace girthwright
