#include "mcp/heuristics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>

namespace mcp {

namespace {

using Int256 = boost::multiprecision::int256_t;

bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

// Sign of the in-circle determinant for CCW (a,b,c): positive iff d lies
// strictly inside their circumcircle. Exact; products of squared spans need
// more than 128 bits at the coordinate cap.
int in_circle(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto row = [&](const Point& p, Int256& x, Int256& y, Int256& w) {
    Coord dx = p.x - d.x, dy = p.y - d.y;
    x = dx;
    y = dy;
    w = Int256(dx) * dx + Int256(dy) * dy;
  };
  Int256 ax, ay, aw, bx, by, bw, cx, cy, cw;
  row(a, ax, ay, aw);
  row(b, bx, by, bw);
  row(c, cx, cy, cw);
  Int256 det = aw * (bx * cy - by * cx) - bw * (ax * cy - ay * cx) + cw * (ax * by - ay * bx);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace

Triangulation triangulation_from_edges(const PointSet& ps, std::vector<EdgeId> edges,
                                       const EmptyTriangleTable& table) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Triangulation t;
  t.edges = std::move(edges);
  t.triangles = extract_faces(ps, t.edges, table);
  for (const ConvexPolygon& f : t.triangles) {
    if (f.size() != 3) throw InvalidPartition("edge set is not a triangulation");
  }
  const int n = ps.size();
  std::map<int, std::array<int, 2>> by_edge;
  for (size_t f = 0; f < t.triangles.size(); ++f) {
    for (const EdgeId& e : t.triangles[f].edges()) {
      auto [it, fresh] = by_edge.try_emplace(edge_index(e, n), std::array<int, 2>{-1, -1});
      (*it).second[fresh ? 0 : 1] = static_cast<int>(f);
      if (!fresh) {
        assert((*it).second[0] != -1);
      }
    }
  }
  t.side.resize(t.edges.size());
  for (size_t e = 0; e < t.edges.size(); ++e) {
    t.side[e] = by_edge.at(edge_index(t.edges[e], n));
  }
#ifndef NDEBUG
  // Euler sanity: triangles = 2*interior + hull - 2
  size_t hull_n = convex_hull(ps).size();
  assert(t.triangles.size() == 2 * (static_cast<size_t>(n) - hull_n) + hull_n - 2);
#endif
  return t;
}

Triangulation delaunay(const PointSet& ps, const EmptyTriangleTable& table) {
  const int n = ps.size();

  // initial triangulation by lexicographic insertion: each new point lies
  // outside the running hull and is joined to every hull edge it sees
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(ps[a], ps[b]); });

  // triangle soup with a mutable edge->triangles map for Lawson flips
  struct Tri {
    std::array<int, 3> v;
    bool alive = true;
  };
  std::vector<Tri> tris;
  std::map<EdgeId, std::array<int, 2>> incident;
  auto attach = [&](int tid) {
    const Tri& t = tris[static_cast<size_t>(tid)];
    for (int s = 0; s < 3; ++s) {
      EdgeId e(t.v[static_cast<size_t>(s)], t.v[static_cast<size_t>((s + 1) % 3)]);
      auto [it, fresh] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
      (*it).second[fresh ? 0 : ((*it).second[0] == -1 ? 0 : 1)] = tid;
    }
  };
  auto detach = [&](int tid) {
    const Tri& t = tris[static_cast<size_t>(tid)];
    for (int s = 0; s < 3; ++s) {
      EdgeId e(t.v[static_cast<size_t>(s)], t.v[static_cast<size_t>((s + 1) % 3)]);
      auto it = incident.find(e);
      if (it->second[0] == tid) it->second[0] = it->second[1];
      it->second[1] = -1;
      if (it->second[0] == -1) incident.erase(it);
    }
  };
  auto make_tri = [&](int a, int b, int c) {
    if (!ccw(ps[a], ps[b], ps[c])) std::swap(b, c);
    tris.push_back(Tri{{a, b, c}, true});
    attach(static_cast<int>(tris.size()) - 1);
    return static_cast<int>(tris.size()) - 1;
  };

  std::vector<int> hull = {order[0], order[1], order[2]};
  if (!ccw(ps[hull[0]], ps[hull[1]], ps[hull[2]])) std::swap(hull[1], hull[2]);
  make_tri(hull[0], hull[1], hull[2]);
  for (int t = 3; t < n; ++t) {
    const int p = order[static_cast<size_t>(t)];
    const size_t h = hull.size();
    std::vector<char> sees(h, 0);
    for (size_t i = 0; i < h; ++i) {
      sees[i] = orientation(ps[hull[i]], ps[hull[(i + 1) % h]], ps[p]) == Orientation::Negative;
    }
    for (size_t i = 0; i < h; ++i) {
      if (sees[i]) make_tri(hull[i], hull[(i + 1) % h], p);
    }
    // splice: keep the invisible chain, insert p between its endpoints
    size_t first = 0;
    while (first < h && !(sees[first] && !sees[(first + h - 1) % h])) ++first;
    assert(first < h);
    std::vector<int> next_hull;
    next_hull.push_back(hull[first]);
    next_hull.push_back(p);
    size_t at = first;
    while (sees[at]) at = (at + 1) % h;
    while (at != first) {
      next_hull.push_back(hull[at]);
      at = (at + 1) % h;
    }
    hull = std::move(next_hull);
  }

  auto apex = [&](int tid, const EdgeId& e) {
    for (int v : tris[static_cast<size_t>(tid)].v) {
      if (v != e.a && v != e.b) return v;
    }
    assert(false);
    return -1;
  };

  std::deque<EdgeId> queue;
  for (const auto& [e, pair] : incident) {
    if (pair[1] != -1) queue.push_back(e);
  }
  long guard = 0;
  const long guard_limit = 64L * n * n + 1024;
  while (!queue.empty() && guard++ < guard_limit) {
    EdgeId e = queue.front();
    queue.pop_front();
    auto it = incident.find(e);
    if (it == incident.end() || it->second[1] == -1) continue;
    int t0 = it->second[0], t1 = it->second[1];
    int c = apex(t0, e), d = apex(t1, e);
    // flip when one apex is strictly inside the other triangle's circle
    int a = e.a, b = e.b;
    if (!ccw(ps[a], ps[b], ps[c])) std::swap(a, b);
    if (in_circle(ps[a], ps[b], ps[c], ps[d]) <= 0) continue;
    detach(t0);
    detach(t1);
    tris[static_cast<size_t>(t0)].alive = false;
    tris[static_cast<size_t>(t1)].alive = false;
    make_tri(c, d, a);
    make_tri(d, c, b);
    for (EdgeId f : {EdgeId(a, c), EdgeId(c, b), EdgeId(b, d), EdgeId(d, a)}) {
      queue.push_back(f);
    }
  }
  assert(guard < guard_limit);

  // deterministic resolution of exact cocircularity: prefer the diagonal
  // whose smaller endpoint index is least
  bool changed = true;
  long tie_guard = 4L * n * n + 64;
  while (changed && tie_guard-- > 0) {
    changed = false;
    std::vector<EdgeId> interior;
    for (const auto& [e, pair] : incident) {
      if (pair[1] != -1) interior.push_back(e);
    }
    std::sort(interior.begin(), interior.end());
    for (const EdgeId& e : interior) {
      auto it = incident.find(e);
      if (it == incident.end() || it->second[1] == -1) continue;
      int t0 = it->second[0], t1 = it->second[1];
      int c = apex(t0, e), d = apex(t1, e);
      int a = e.a, b = e.b;
      if (!ccw(ps[a], ps[b], ps[c])) std::swap(a, b);
      if (in_circle(ps[a], ps[b], ps[c], ps[d]) != 0) continue;
      EdgeId other(c, d);
      if (other.a < e.a) {
        detach(t0);
        detach(t1);
        tris[static_cast<size_t>(t0)].alive = false;
        tris[static_cast<size_t>(t1)].alive = false;
        make_tri(c, d, a);
        make_tri(d, c, b);
        changed = true;
      }
    }
  }

  std::vector<EdgeId> final_edges;
  final_edges.reserve(incident.size());
  for (const auto& kv : incident) final_edges.push_back(kv.first);
  return triangulation_from_edges(ps, std::move(final_edges), table);
}

Triangulation greedy_triangulation(const PointSet& ps, const std::vector<double>& edge_values,
                                   const CrossingIndex& crossings,
                                   const EmptyTriangleTable& table) {
  const int n = ps.size();
  const int m = edge_count(n);
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double va = edge_values[static_cast<size_t>(a)], vb = edge_values[static_cast<size_t>(b)];
    if (va != vb) return va > vb;
    return a < b;
  });
  std::vector<char> chosen(static_cast<size_t>(m), 0);
  std::vector<EdgeId> edges;
  for (int e : order) {
    bool ok = true;
    for (int f : crossings.crossings_of(e)) {
      if (chosen[static_cast<size_t>(f)]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen[static_cast<size_t>(e)] = 1;
    edges.push_back(edge_from_index(e, n));
  }
  return triangulation_from_edges(ps, std::move(edges), table);
}

std::vector<EdgeId> flip_edges(const PointSet& ps, const Triangulation& t) {
  std::vector<EdgeId> flips;
  for (size_t e = 0; e < t.edges.size(); ++e) {
    auto [f0, f1] = t.side[e];
    if (f0 < 0 || f1 < 0) continue;
    auto apex = [&](int f) {
      for (int v : t.triangles[static_cast<size_t>(f)].vertices) {
        if (v != t.edges[e].a && v != t.edges[e].b) return v;
      }
      return -1;
    };
    EdgeId diag(apex(f0), apex(f1));
    // the opposite diagonal exists iff the union of the two triangles is a
    // convex quadrilateral, i.e. the diagonals properly cross
    if (segments_cross(t.edges[e], diag, ps)) flips.push_back(diag);
  }
  std::sort(flips.begin(), flips.end());
  flips.erase(std::unique(flips.begin(), flips.end()), flips.end());
  return flips;
}

Incumbent restricted_mcpp(const PointSet& ps, const EmptyTriangleTable& table,
                          const std::vector<EdgeId>& allowed, const Triangulation& fallback,
                          double time_cap_seconds) {
  CompactSolver solver(ps, allowed, table);
  CompactResult res = solver.solve(time_cap_seconds, fallback.edges);
  Incumbent inc;
  if (res.status == CompactResult::Status::TimeCap && res.edges == fallback.edges) {
    inc.partition = fallback.triangles;
  } else {
    inc.partition = res.faces;
  }
  inc.value = static_cast<int>(inc.partition.size());
  return inc;
}

}  // namespace mcp
