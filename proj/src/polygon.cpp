#include "mcp/polygon.hpp"

#include <algorithm>
#include <cassert>

namespace mcp {

namespace {

bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

__int128 cross_from(const Point& c, const Point& u, const Point& w) {
  return static_cast<__int128>(u.x - c.x) * (w.y - c.y) -
         static_cast<__int128>(u.y - c.y) * (w.x - c.x);
}

}  // namespace

std::vector<EdgeId> ConvexPolygon::edges() const {
  std::vector<EdgeId> out;
  const size_t t = vertices.size();
  out.reserve(t);
  for (size_t i = 0; i < t; ++i) out.emplace_back(vertices[i], vertices[(i + 1) % t]);
  return out;
}

ConvexPolygon canonical_key(std::vector<int> vertices, const PointSet& ps) {
  if (twice_signed_area(vertices, ps) < 0) {
    std::reverse(vertices.begin(), vertices.end());
  }
  auto min_it = std::min_element(vertices.begin(), vertices.end());
  std::rotate(vertices.begin(), min_it, vertices.end());
  return ConvexPolygon{std::move(vertices)};
}

size_t EmptyTriangleTable::index(int i, int j, int k) const {
  auto c2 = [](size_t v) { return v * (v - 1) / 2; };
  auto c3 = [](size_t v) { return v * (v - 1) * (v - 2) / 6; };
  return c3(static_cast<size_t>(k)) + c2(static_cast<size_t>(j)) + static_cast<size_t>(i);
}

EmptyTriangleTable EmptyTriangleTable::build(const PointSet& ps) {
  const int n = ps.size();
  EmptyTriangleTable t;
  t.n_ = n;
  size_t triples = static_cast<size_t>(n) * (n - 1) * (n - 2) / 6;
  t.bits_.assign((triples + 63) / 64, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        bool empty = true;
        for (int p = 0; p < n && empty; ++p) {
          if (p == i || p == j || p == k) continue;
          if (point_in_triangle(ps[p], ps[i], ps[j], ps[k])) empty = false;
        }
        if (empty) {
          size_t idx = t.index(i, j, k);
          t.bits_[idx >> 6] |= (std::uint64_t{1} << (idx & 63));
        }
      }
  return t;
}

bool EmptyTriangleTable::is_empty(int k, int l, int m) const {
  int a = k, b = l, c = m;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  size_t idx = index(a, b, c);
  return (bits_[idx >> 6] >> (idx & 63)) & 1;
}

bool is_empty_convex(const std::vector<int>& vertices, const PointSet& ps,
                     const EmptyTriangleTable& table) {
  const size_t t = vertices.size();
  if (t < 3) return false;
  for (size_t i = 0; i < t; ++i) {
    const Point& a = ps[vertices[i]];
    const Point& b = ps[vertices[(i + 1) % t]];
    const Point& c = ps[vertices[(i + 2) % t]];
    if (orientation(a, b, c) != Orientation::Positive) return false;
  }
  // All-left-turn cycles can still wind more than once around their interior;
  // a simple convex cycle changes between upper and lower edge directions
  // exactly twice.
  int transitions = 0;
  auto upper = [&](size_t i) {
    const Point& a = ps[vertices[i]];
    const Point& b = ps[vertices[(i + 1) % t]];
    Coord dx = b.x - a.x, dy = b.y - a.y;
    return dy > 0 || (dy == 0 && dx < 0);
  };
  for (size_t i = 0; i < t; ++i) {
    if (upper(i) != upper((i + 1) % t)) ++transitions;
  }
  if (transitions != 2) return false;
  for (size_t i = 1; i + 1 < t; ++i) {
    if (!table.is_empty(vertices[0], vertices[i], vertices[i + 1])) return false;
  }
  return true;
}

namespace {

/// Shared chain-extension enumeration: polygons are grown as fans around
/// their lexicographically least vertex, visiting the other vertices in CCW
/// order, mirroring the states of the pricing recursion.
struct PolysetEnum {
  const PointSet& ps;
  const EmptyTriangleTable& table;
  size_t limit;
  std::vector<ConvexPolygon> out;
  int root = 0;
  std::vector<int> fan;  // point indices of the chain after root, CCW

  void emit() {
    if (out.size() >= limit) {
      throw CapExceeded("polygon enumeration cap exceeded");
    }
    std::vector<int> cycle;
    cycle.reserve(fan.size() + 1);
    cycle.push_back(root);
    cycle.insert(cycle.end(), fan.begin(), fan.end());
    out.push_back(canonical_key(std::move(cycle), ps));
  }

  void extend(const std::vector<int>& ring, size_t last_ring_pos) {
    const int l = fan[fan.size() - 1];
    const int o = fan.size() >= 2 ? fan[fan.size() - 2] : -1;
    for (size_t mp = last_ring_pos + 1; mp < ring.size(); ++mp) {
      const int m = ring[mp];
      if (!table.is_empty(root, l, m)) continue;
      if (o >= 0 && !ccw(ps[o], ps[l], ps[m])) continue;
      fan.push_back(m);
      emit();
      extend(ring, mp);
      fan.pop_back();
    }
  }
};

}  // namespace

std::vector<ConvexPolygon> enumerate_polyset(const PointSet& ps,
                                             const EmptyTriangleTable& table,
                                             std::size_t limit) {
  const int n = ps.size();
  PolysetEnum en{ps, table, limit, {}, 0, {}};
  for (int r = 0; r < n; ++r) {
    // Candidate vertices: points lexicographically after the root, sorted by
    // CCW angle across the closed right half-plane.
    std::vector<int> ring;
    for (int j = 0; j < n; ++j) {
      if (j != r && lex_less(ps[r], ps[j])) ring.push_back(j);
    }
    std::sort(ring.begin(), ring.end(), [&](int a, int b) {
      return cross_from(ps[r], ps[a], ps[b]) > 0;
    });
    en.root = r;
    for (size_t lp = 0; lp < ring.size(); ++lp) {
      en.fan.assign(1, ring[lp]);
      en.extend(ring, lp);
    }
  }
  return std::move(en.out);
}

std::vector<ConvexPolygon> enumerate_empty_triangles(const PointSet& ps,
                                                     const EmptyTriangleTable& table) {
  const int n = ps.size();
  std::vector<ConvexPolygon> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (table.is_empty(i, j, k)) {
          if (ccw(ps[i], ps[j], ps[k])) {
            out.push_back(ConvexPolygon{{i, j, k}});
          } else {
            out.push_back(ConvexPolygon{{i, k, j}});
          }
        }
  return out;
}

}  // namespace mcp
