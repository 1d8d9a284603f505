#include "mcp/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

#include "mcp/partition.hpp"

namespace mcp::oracle {

namespace {

using Words = std::vector<std::uint64_t>;

int popcount_words(const Words& w) {
  int c = 0;
  for (std::uint64_t v : w) c += __builtin_popcountll(v);
  return c;
}

bool disjoint(const Words& a, const Words& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

struct CoverSearch {
  const std::vector<Words>& cover;
  const std::vector<std::vector<int>>& by_wedge;
  int total_wedges;
  int max_cover;
  Words used;
  std::vector<int> chosen;
  int best = 1 << 20;
  std::vector<int> best_chosen;

  void dfs(int covered) {
    if (covered == total_wedges) {
      if (static_cast<int>(chosen.size()) < best) {
        best = static_cast<int>(chosen.size());
        best_chosen = chosen;
      }
      return;
    }
    int need = (total_wedges - covered + max_cover - 1) / max_cover;
    if (static_cast<int>(chosen.size()) + need >= best) return;
    int w = 0;
    while ((used[static_cast<size_t>(w) >> 6] >> (w & 63)) & 1) ++w;
    for (int p : by_wedge[static_cast<size_t>(w)]) {
      if (!disjoint(cover[static_cast<size_t>(p)], used)) continue;
      for (size_t i = 0; i < used.size(); ++i) used[i] |= cover[static_cast<size_t>(p)][i];
      chosen.push_back(p);
      dfs(covered + popcount_words(cover[static_cast<size_t>(p)]));
      chosen.pop_back();
      for (size_t i = 0; i < used.size(); ++i) used[i] &= ~cover[static_cast<size_t>(p)][i];
    }
  }
};

Rat rat_cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

RatPoint to_rat(const Point& p) { return RatPoint{Rat(p.x), Rat(p.y)}; }

}  // namespace

OracleResult brute_force_optimum(const PointSet& ps, int cap) {
  if (ps.size() > cap) throw CapExceeded("oracle size cap exceeded");
  WedgeIndex wi = WedgeIndex::build(ps);
  EmptyTriangleTable table = EmptyTriangleTable::build(ps);
  std::vector<ConvexPolygon> polys = enumerate_polyset(ps, table);

  const int W = wi.total();
  const size_t words = static_cast<size_t>((W + 63) / 64);
  std::vector<Words> cover(polys.size(), Words(words, 0));
  int max_cover = 1;
  for (size_t p = 0; p < polys.size(); ++p) {
    std::vector<int> ws = wi.wedges_of_polygon(polys[p].vertices);
    for (int w : ws) cover[p][static_cast<size_t>(w) >> 6] |= std::uint64_t{1} << (w & 63);
    max_cover = std::max(max_cover, static_cast<int>(ws.size()));
  }
  // try big polygons first
  std::vector<int> order(polys.size());
  for (size_t p = 0; p < polys.size(); ++p) order[p] = static_cast<int>(p);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = popcount_words(cover[static_cast<size_t>(a)]);
    int cb = popcount_words(cover[static_cast<size_t>(b)]);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  std::vector<std::vector<int>> by_wedge(static_cast<size_t>(W));
  for (int p : order) {
    for (int w = 0; w < W; ++w) {
      if ((cover[static_cast<size_t>(p)][static_cast<size_t>(w) >> 6] >> (w & 63)) & 1) {
        by_wedge[static_cast<size_t>(w)].push_back(p);
      }
    }
  }

  CoverSearch search{cover, by_wedge, W, max_cover, Words(words, 0), {}, 1 << 20, {}};
  search.dfs(0);
  assert(search.best < (1 << 20));

  OracleResult res;
  res.value = search.best;
  for (int p : search.best_chosen) res.partition.push_back(polys[static_cast<size_t>(p)]);
  std::sort(res.partition.begin(), res.partition.end(),
            [](const ConvexPolygon& a, const ConvexPolygon& b) { return a.vertices < b.vertices; });

  PartitionCheck pc = check_partition(ps, wi, table, res.partition);
  if (!pc.ok) throw std::logic_error("oracle produced an invalid partition: " + pc.error);
  return res;
}

Arrangement brute_force_arrangement_faces(const PointSet& ps, int cap) {
  const int n = ps.size();
  if (n > cap) throw CapExceeded("arrangement oracle size cap exceeded");

  std::map<std::pair<Rat, Rat>, int> vertex_id;
  std::vector<RatPoint> verts;
  auto vid = [&](const RatPoint& p) {
    auto [it, fresh] = vertex_id.try_emplace(std::make_pair(p.x, p.y),
                                             static_cast<int>(verts.size()));
    if (fresh) verts.push_back(p);
    return it->second;
  };
  for (int i = 0; i < n; ++i) vid(to_rat(ps[i]));  // ids 0..n-1 are the input points

  std::vector<EdgeId> segments;
  for (int e = 0; e < edge_count(n); ++e) segments.push_back(edge_from_index(e, n));

  // split every segment at its proper crossings
  std::set<std::pair<int, int>> sub_edges;
  for (const EdgeId& s : segments) {
    const Point &a = ps[s.a], &b = ps[s.b];
    std::vector<std::pair<Rat, int>> stops;  // (parameter along a->b, vertex)
    stops.emplace_back(Rat(0), s.a);
    stops.emplace_back(Rat(1), s.b);
    for (const EdgeId& t : segments) {
      if (!segments_cross(s, t, ps)) continue;
      const Point &c = ps[t.a], &d = ps[t.b];
      Rat denom = Rat(b.x - a.x) * (d.y - c.y) - Rat(b.y - a.y) * (d.x - c.x);
      Rat numer = Rat(c.x - a.x) * (d.y - c.y) - Rat(c.y - a.y) * (d.x - c.x);
      Rat tpar = numer / denom;
      RatPoint ip{Rat(a.x) + tpar * Rat(b.x - a.x), Rat(a.y) + tpar * Rat(b.y - a.y)};
      stops.emplace_back(tpar, vid(ip));
    }
    std::sort(stops.begin(), stops.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    for (size_t i = 0; i + 1 < stops.size(); ++i) {
      int u = stops[i].second, v = stops[i + 1].second;
      assert(u != v);
      sub_edges.insert({std::min(u, v), std::max(u, v)});
    }
  }

  const int V = static_cast<int>(verts.size());
  std::vector<std::vector<int>> nbr(static_cast<size_t>(V));
  for (const auto& [u, v] : sub_edges) {
    nbr[static_cast<size_t>(u)].push_back(v);
    nbr[static_cast<size_t>(v)].push_back(u);
  }
  auto angular_less = [&](int c, int a, int b) {
    const RatPoint& pc = verts[static_cast<size_t>(c)];
    const RatPoint& pa = verts[static_cast<size_t>(a)];
    const RatPoint& pb = verts[static_cast<size_t>(b)];
    auto klass = [&](const RatPoint& p) {
      if (p.x == pc.x) return p.y > pc.y ? 0 : 2;
      return p.x < pc.x ? 1 : 3;
    };
    int ka = klass(pa), kb = klass(pb);
    if (ka != kb) return ka < kb;
    return rat_cross(pc, pa, pb) > 0;
  };
  for (int v = 0; v < V; ++v) {
    std::sort(nbr[static_cast<size_t>(v)].begin(), nbr[static_cast<size_t>(v)].end(),
              [&](int a, int b) { return angular_less(v, a, b); });
  }

  std::map<std::pair<int, int>, int> arc_id;
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [u, v] : sub_edges) {
    arc_id[{u, v}] = static_cast<int>(arcs.size());
    arcs.emplace_back(u, v);
    arc_id[{v, u}] = static_cast<int>(arcs.size());
    arcs.emplace_back(v, u);
  }

  Arrangement res;
  res.num_vertices = V;
  res.num_edges = static_cast<long>(sub_edges.size());

  std::vector<char> seen(arcs.size(), 0);
  long faces_with_outer = 0;
  for (size_t start = 0; start < arcs.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int cur = static_cast<int>(start);
    while (!seen[static_cast<size_t>(cur)]) {
      seen[static_cast<size_t>(cur)] = 1;
      auto [u, v] = arcs[static_cast<size_t>(cur)];
      cycle.push_back(v);
      const std::vector<int>& ring = nbr[static_cast<size_t>(v)];
      auto it = std::find(ring.begin(), ring.end(), u);
      size_t at = static_cast<size_t>(it - ring.begin());
      int w = ring[(at + ring.size() - 1) % ring.size()];
      cur = arc_id.at({v, w});
    }
    ++faces_with_outer;
    Rat doubled = 0;
    for (size_t i = 0; i < cycle.size(); ++i) {
      const RatPoint& p = verts[static_cast<size_t>(cycle[i])];
      const RatPoint& q = verts[static_cast<size_t>(cycle[(i + 1) % cycle.size()])];
      doubled += p.x * q.y - p.y * q.x;
    }
    if (doubled <= 0) continue;

    ArrangementFace face;
    Rat sx = 0, sy = 0;
    for (int v : cycle) {
      face.cycle.push_back(verts[static_cast<size_t>(v)]);
      sx += verts[static_cast<size_t>(v)].x;
      sy += verts[static_cast<size_t>(v)].y;
      if (v < n) face.incident_points.push_back(v);
    }
    int sz = static_cast<int>(cycle.size());
    face.sample = RatPoint{sx / sz, sy / sz};
    std::sort(face.incident_points.begin(), face.incident_points.end());
    res.faces.push_back(std::move(face));
  }

  if (res.num_vertices - res.num_edges + faces_with_outer != 2) {
    throw std::logic_error("arrangement violates Euler's relation");
  }
  return res;
}

bool face_in_polygon(const RatPoint& sample, const std::vector<int>& cycle, const PointSet& ps) {
  const size_t t = cycle.size();
  for (size_t i = 0; i < t; ++i) {
    RatPoint a = to_rat(ps[cycle[i]]);
    RatPoint b = to_rat(ps[cycle[(i + 1) % t]]);
    if (rat_cross(a, b, sample) <= 0) return false;
  }
  return true;
}

int wedge_slot_of_sample(const WedgeIndex& wi, const PointSet& ps, int i, const RatPoint& sample) {
  const std::vector<int>& ring = wi.ccw_neighbors(i);
  const int m = static_cast<int>(ring.size());
  RatPoint c = to_rat(ps[i]);
  // the exterior sector at a hull point is the unique one wider than pi
  int reflex = -1;
  for (int g = 0; g < m; ++g) {
    RatPoint a = to_rat(ps[ring[static_cast<size_t>(g)]]);
    RatPoint b = to_rat(ps[ring[static_cast<size_t>((g + 1) % m)]]);
    if (rat_cross(c, a, b) < 0) reflex = g;
  }
  const int off = reflex >= 0 ? (reflex + 1) % m : 0;
  for (int g = 0; g < m; ++g) {
    if (g == reflex) continue;
    RatPoint a = to_rat(ps[ring[static_cast<size_t>(g)]]);
    RatPoint b = to_rat(ps[ring[static_cast<size_t>((g + 1) % m)]]);
    if (rat_cross(c, a, sample) > 0 && rat_cross(c, sample, b) > 0) {
      return (g - off + m) % m;
    }
  }
  return -1;
}

}  // namespace mcp::oracle
