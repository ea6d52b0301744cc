#include "girthwright/wheels.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "girthwright/generator.hpp"
#include "girthwright/oracle.hpp"

namespace girthwright {

std::vector<VertexId> WheelCertificate::vertices() const {
  std::set<VertexId> vs;
  for (auto [u, v] : edges) {
    vs.insert(u);
    vs.insert(v);
  }
  for (VertexId v : principal) vs.insert(v);
  return {vs.begin(), vs.end()};
}

namespace {

struct Segment {
  bool wheel = false;
  VertexId from = -1, to = -1;
  VertexId hub = -1;
  std::vector<VertexId> far;  // wheel: far rim in to->from walk order
};

// Chain search around the middle vertex b: a generalized wheel with principal
// path a-b-c is a chain of fans and wheels glued along edges b-m_i, so every
// anchor and hub is a neighbour of b. Backtracks over all chains.
struct ChainSearch {
  const PlaneGraph& g;
  VertexId a, b, c;
  const std::vector<char>& boundary;
  size_t limit;
  std::vector<char> used;
  std::vector<Segment> segs;
  std::vector<std::vector<Segment>> found;
  long long nodes = 0;

  ChainSearch(const PlaneGraph& g_, VertexId a_, VertexId b_, VertexId c_,
              const std::vector<char>& boundary_, size_t limit_)
      : g(g_), a(a_), b(b_), c(c_), boundary(boundary_), limit(limit_), used(g_.n(), 0) {
    used[a] = used[b] = used[c] = 1;
  }

  bool capped() const { return found.size() >= limit || nodes > 2'000'000; }

  void extend_from(VertexId m) {
    if (capped()) return;
    ++nodes;
    std::vector<VertexId> cand = g.neighbours(b);
    std::sort(cand.begin(), cand.end());
    // triangle step
    for (VertexId next : cand) {
      if (capped()) return;
      if (!g.has_edge(m, next)) continue;
      if (next == c) {
        segs.push_back(Segment{false, m, c, -1, {}});
        found.push_back(segs);
        segs.pop_back();
        continue;
      }
      if (used[next] || !boundary[next]) continue;
      used[next] = 1;
      segs.push_back(Segment{false, m, next, -1, {}});
      extend_from(next);
      segs.pop_back();
      used[next] = 0;
    }
    // wheel step
    for (VertexId hub : cand) {
      if (capped()) return;
      if (used[hub] || !g.has_edge(hub, m)) continue;
      used[hub] = 1;
      std::vector<VertexId> rim;
      rim_walk(m, hub, m, rim);
      used[hub] = 0;
    }
  }

  // Far rim growth from the anchor m; all rim vertices adjacent to the hub.
  // Closes whenever the walk reaches a fresh anchor adjacent to b (or c).
  void rim_walk(VertexId m, VertexId hub, VertexId cur, std::vector<VertexId>& rim) {
    if (capped()) return;
    ++nodes;
    std::vector<VertexId> cand = g.neighbours(cur);
    std::sort(cand.begin(), cand.end());
    for (VertexId next : cand) {
      if (capped()) return;
      if (next == b || !g.has_edge(hub, next)) continue;
      if (next == c || (!used[next] && boundary[next] && g.has_edge(b, next))) {
        Segment s{true, m, next, hub, {rim.rbegin(), rim.rend()}};
        segs.push_back(s);
        if (next == c) {
          found.push_back(segs);
        } else {
          used[next] = 1;
          extend_from(next);
          used[next] = 0;
        }
        segs.pop_back();
      }
      if (used[next] || !boundary[next]) continue;
      used[next] = 1;
      rim.push_back(next);
      rim_walk(m, hub, next, rim);
      rim.pop_back();
      used[next] = 0;
    }
  }
};

WheelCertificate leaf_from_run(VertexId b, const std::vector<Segment>& run) {
  WheelCertificate cert;
  const Segment& first = run.front();
  const Segment& last = run.back();
  cert.principal = {first.from, b, last.to};
  if (!first.wheel) {
    cert.kind = WheelCertificate::Kind::BrokenWheel;
    std::vector<VertexId> rim = {first.from};
    for (const Segment& s : run) rim.push_back(s.to);
    cert.outer_cycle = {first.from, b, last.to};
    for (size_t i = rim.size() - 1; i-- > 1;) cert.outer_cycle.push_back(rim[i]);
    for (size_t i = 0; i + 1 < rim.size(); ++i) cert.edges.emplace_back(rim[i], rim[i + 1]);
    for (VertexId v : rim) cert.edges.emplace_back(b, v);
  } else {
    const Segment& s = first;
    cert.kind = WheelCertificate::Kind::Wheel;
    cert.hubs = {s.hub};
    cert.outer_cycle = {s.from, b, s.to};
    for (VertexId v : s.far) cert.outer_cycle.push_back(v);
    for (size_t i = 0; i < cert.outer_cycle.size(); ++i) {
      VertexId u = cert.outer_cycle[i];
      cert.edges.emplace_back(u, cert.outer_cycle[(i + 1) % cert.outer_cycle.size()]);
      cert.edges.emplace_back(s.hub, u);
    }
  }
  return cert;
}

WheelCertificate glue(const WheelCertificate& left, const WheelCertificate& right) {
  WheelCertificate cert;
  cert.kind = WheelCertificate::Kind::Composite;
  VertexId b = left.principal[1];
  cert.principal = {left.principal[0], b, right.principal[2]};
  cert.identified_edge = {b, left.principal[2]};
  cert.left = std::make_shared<WheelCertificate>(left);
  cert.right = std::make_shared<WheelCertificate>(right);
  cert.outer_cycle = {cert.principal[0], b, cert.principal[2]};
  cert.outer_cycle.insert(cert.outer_cycle.end(), right.outer_cycle.begin() + 3,
                          right.outer_cycle.end());
  cert.outer_cycle.push_back(left.principal[2]);
  cert.outer_cycle.insert(cert.outer_cycle.end(), left.outer_cycle.begin() + 3,
                          left.outer_cycle.end());
  cert.hubs = left.hubs;
  cert.hubs.insert(cert.hubs.end(), right.hubs.begin(), right.hubs.end());
  std::set<std::pair<VertexId, VertexId>> es;
  for (auto [u, v] : left.edges) es.insert({std::min(u, v), std::max(u, v)});
  for (auto [u, v] : right.edges) es.insert({std::min(u, v), std::max(u, v)});
  cert.edges.assign(es.begin(), es.end());
  return cert;
}

WheelCertificate chain_to_certificate(VertexId b, const std::vector<Segment>& segs) {
  std::vector<WheelCertificate> leaves;
  size_t i = 0;
  while (i < segs.size()) {
    if (!segs[i].wheel) {
      size_t j = i;
      while (j + 1 < segs.size() && !segs[j + 1].wheel) ++j;
      leaves.push_back(leaf_from_run(b, {segs.begin() + i, segs.begin() + j + 1}));
      i = j + 1;
    } else {
      leaves.push_back(leaf_from_run(b, {segs[i]}));
      ++i;
    }
  }
  WheelCertificate cert = leaves[0];
  for (size_t j = 1; j < leaves.size(); ++j) cert = glue(cert, leaves[j]);
  std::set<std::pair<VertexId, VertexId>> es;
  for (auto [u, v] : cert.edges) es.insert({std::min(u, v), std::max(u, v)});
  cert.edges.assign(es.begin(), es.end());
  return cert;
}

std::vector<char> boundary_mask(const PlaneGraph& g) {
  std::vector<char> mask(g.n(), 0);
  for (VertexId v : g.boundary_vertices()) mask[v] = 1;
  return mask;
}

bool wheel_lists_ok(const WheelCertificate& w, const ListAssignment& l, int except_count) {
  for (size_t i = except_count; i < w.outer_cycle.size(); ++i)
    if (l[w.outer_cycle[i]].size() != 3) return false;
  return true;
}

}  // namespace

std::vector<WheelCertificate> enumerate_generalized_wheels(const PlaneGraph& g,
                                                           const PathInGraph& principal,
                                                           const std::vector<char>& boundary,
                                                           size_t limit) {
  if (principal.vertices.size() != 3 || !g.is_path(principal))
    fail(ErrorKind::NotAPath, "principal path must be a 3-vertex path");
  VertexId a = principal.vertices[0], b = principal.vertices[1], c = principal.vertices[2];
  std::vector<WheelCertificate> out;
  if (!boundary[a] || !boundary[b] || !boundary[c]) return out;
  ChainSearch search(g, a, b, c, boundary, limit);
  search.extend_from(a);
  out.reserve(search.found.size());
  for (const auto& segs : search.found) out.push_back(chain_to_certificate(b, segs));
  return out;
}

std::optional<WheelCertificate> recognize_generalized_wheel(const PlaneGraph& g,
                                                            const PathInGraph& principal,
                                                            const std::vector<char>& boundary) {
  auto all = enumerate_generalized_wheels(g, principal, boundary);
  if (all.empty()) return std::nullopt;
  size_t best = 0, best_sz = all[0].vertices().size();
  for (size_t i = 1; i < all.size(); ++i) {
    size_t sz = all[i].vertices().size();
    if (sz > best_sz) {
      best = i;
      best_sz = sz;
    }
  }
  return all[best];
}

std::optional<ExceptionCertificate> classify_exception(const Canvas& k,
                                                       const GirthProfile& profile) {
  (void)profile;
  if (k.s.is_cycle) fail(ErrorKind::NotAPath, "classify_exception needs a path S");
  const auto& sv = k.s.vertices;
  size_t sk = sv.size();
  if (sk != 3 && sk != 4) return std::nullopt;
  std::set<VertexId> sset(sv.begin(), sv.end());
  std::vector<VertexId> a_off;
  for (VertexId v : k.a)
    if (!sset.count(v)) a_off.push_back(v);
  std::vector<char> bmask = boundary_mask(k.g);

  if (sk == 4) {
    for (VertexId u : a_off) {
      if (!k.g.has_edge(u, sv[0]) || !k.g.has_edge(u, sv[3])) continue;
      if (k.l[u] == k.l[sv[0]].unite(k.l[sv[3]])) {
        ExceptionCertificate c;
        c.kind = ExceptionCertificate::Kind::TypeI;
        c.u = u;
        return c;
      }
    }
    for (bool rev : {false, true}) {
      VertexId v1 = rev ? sv[3] : sv[0];
      VertexId v2 = rev ? sv[2] : sv[1];
      VertexId v4 = rev ? sv[0] : sv[3];
      for (VertexId u : a_off) {
        if (!k.g.has_edge(u, v4)) continue;
        std::vector<VertexId> ws = k.g.neighbours(u);
        std::sort(ws.begin(), ws.end());
        for (VertexId w : ws) {
          if (sset.count(w) || !k.g.on_outer_boundary(w)) continue;
          if (!k.g.has_edge(v2, w)) continue;
          for (const auto& cand :
               enumerate_generalized_wheels(k.g, PathInGraph{{v1, v2, w}}, bmask)) {
            if (!wheel_lists_ok(cand, k.l, 2)) continue;
            ExceptionCertificate c;
            c.kind = ExceptionCertificate::Kind::TypeII;
            c.u = u;
            c.w = w;
            c.wheel = cand;
            c.s_reversed = rev;
            return c;
          }
        }
      }
    }
    return std::nullopt;
  }
  for (const auto& cand :
       enumerate_generalized_wheels(k.g, PathInGraph{{sv[0], sv[1], sv[2]}}, bmask)) {
    if (!wheel_lists_ok(cand, k.l, 3)) continue;
    ExceptionCertificate c;
    c.kind = ExceptionCertificate::Kind::TypeIII;
    c.wheel = cand;
    return c;
  }
  return std::nullopt;
}

std::vector<std::vector<Colour>> blocked_principal_colourings(const WheelCertificate& w,
                                                              const ListAssignment& l) {
  std::vector<VertexId> vs = w.vertices();
  std::set<VertexId> outer(w.outer_cycle.begin(), w.outer_cycle.end());
  std::set<VertexId> prin(w.principal.begin(), w.principal.end());
  for (VertexId v : vs) {
    if (prin.count(v)) continue;
    int need = outer.count(v) ? 3 : 5;
    if (l[v].size() < need)
      fail(ErrorKind::HypothesisViolated, "list of size " + std::to_string(l[v].size()) +
                                              " at wheel vertex " + std::to_string(v));
  }
  std::map<VertexId, int> local;
  for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
  gen::AbstractGraph ag(static_cast<int>(vs.size()));
  for (auto [u, v] : w.edges) ag.add_edge(local[u], local[v]);
  auto pg = gen::embed_planar(ag);
  if (!pg) fail(ErrorKind::PreconditionViolated, "wheel certificate does not embed");
  ListAssignment wl(pg->n());
  for (size_t i = 0; i < vs.size(); ++i) wl[i] = l[vs[i]];
  std::vector<VertexId> sp;
  for (VertexId v : w.principal) sp.push_back(local[v]);

  std::vector<std::vector<Colour>> blocked;
  for (const auto& triple : oracle::proper_colourings_of(*pg, wl, sp)) {
    Colouring partial(pg->n());
    for (size_t i = 0; i < 3; ++i) partial.set(sp[i], triple[i]);
    auto r = oracle::find_colouring(*pg, wl, partial);
    if (r.status == oracle::SearchStatus::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, "blocked_principal_colourings");
    if (r.status == oracle::SearchStatus::Exhausted) blocked.push_back(triple);
  }
  return blocked;
}

bool wheel_certificate_valid(const PlaneGraph& g, const WheelCertificate& w) {
  if (w.principal.size() != 3 || w.outer_cycle.size() < 3) return false;
  for (size_t i = 0; i + 1 < 3; ++i)
    if (!g.has_edge(w.principal[i], w.principal[i + 1])) return false;
  if (!std::equal(w.principal.begin(), w.principal.end(), w.outer_cycle.begin())) return false;
  std::set<VertexId> seen(w.outer_cycle.begin(), w.outer_cycle.end());
  if (seen.size() != w.outer_cycle.size()) return false;
  for (size_t i = 0; i < w.outer_cycle.size(); ++i)
    if (!g.has_edge(w.outer_cycle[i], w.outer_cycle[(i + 1) % w.outer_cycle.size()]))
      return false;
  for (auto [u, v] : w.edges)
    if (!g.has_edge(u, v)) return false;
  switch (w.kind) {
    case WheelCertificate::Kind::BrokenWheel: {
      if (!w.hubs.empty()) return false;
      std::set<std::pair<VertexId, VertexId>> want, got;
      auto norm = [](VertexId x, VertexId y) {
        return std::pair<VertexId, VertexId>{std::min(x, y), std::max(x, y)};
      };
      size_t q = w.outer_cycle.size();
      for (size_t i = 0; i < q; ++i)
        want.insert(norm(w.outer_cycle[i], w.outer_cycle[(i + 1) % q]));
      for (size_t i = 3; i < q; ++i) want.insert(norm(w.principal[1], w.outer_cycle[i]));
      for (auto [u, v] : w.edges) got.insert(norm(u, v));
      return got == want;
    }
    case WheelCertificate::Kind::Wheel: {
      if (w.hubs.size() != 1 || seen.count(w.hubs[0])) return false;
      for (VertexId v : w.outer_cycle)
        if (!g.has_edge(w.hubs[0], v)) return false;
      return true;
    }
    case WheelCertificate::Kind::Composite: {
      if (!w.left || !w.right) return false;
      if (!wheel_certificate_valid(g, *w.left) || !wheel_certificate_valid(g, *w.right))
        return false;
      if (w.left->principal[1] != w.principal[1] || w.right->principal[1] != w.principal[1])
        return false;
      if (w.identified_edge.first != w.principal[1]) return false;
      if (w.left->principal[2] != w.identified_edge.second ||
          w.right->principal[0] != w.identified_edge.second)
        return false;
      return w.principal[0] == w.left->principal[0] && w.principal[2] == w.right->principal[2];
    }
  }
  return false;
}

}  // namespace girthwright
