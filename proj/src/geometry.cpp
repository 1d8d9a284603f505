#include "mcp/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mcp {

namespace {

Int128 cross128(Coord ux, Coord uy, Coord vx, Coord vy) {
  return static_cast<Int128>(ux) * vy - static_cast<Int128>(uy) * vx;
}

Int128 dot128(Coord ux, Coord uy, Coord vx, Coord vy) {
  return static_cast<Int128>(ux) * vx + static_cast<Int128>(uy) * vy;
}

int sign(Int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

}  // namespace

Orientation orientation(const Point& k, const Point& l, const Point& m) {
  Int128 c = cross128(l.x - k.x, l.y - k.y, m.x - l.x, m.y - l.y);
  return static_cast<Orientation>(sign(c));
}

std::optional<GeneralPositionIssue> validate_general_position(const PointSet& ps) {
  const int n = ps.size();
  if (n < 3) {
    return GeneralPositionIssue{GeneralPositionIssue::Kind::TooFewPoints, {0, 0, 0}};
  }
  for (int i = 0; i < n; ++i) {
    if (std::llabs(ps[i].x) > kCoordLimit || std::llabs(ps[i].y) > kCoordLimit) {
      return GeneralPositionIssue{GeneralPositionIssue::Kind::CoordinateOutOfRange, {i, 0, 0}};
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (ps[i] == ps[j]) {
        return GeneralPositionIssue{GeneralPositionIssue::Kind::DuplicatePoint, {i, j, 0}};
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orientation(ps[i], ps[j], ps[k]) == Orientation::Zero) {
          return GeneralPositionIssue{GeneralPositionIssue::Kind::CollinearTriple, {i, j, k}};
        }
  return std::nullopt;
}

std::vector<int> convex_hull(const PointSet& ps) {
  const int n = ps.size();
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return lex_less(ps[a], ps[b]); });

  // Monotone chain; lower then upper, output CCW from the lex-min point.
  std::vector<int> hull;
  hull.reserve(static_cast<size_t>(2 * n));
  auto build = [&](auto begin, auto end) {
    size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 &&
             orientation(ps[hull[hull.size() - 2]], ps[hull.back()], ps[*it]) !=
                 Orientation::Positive) {
        hull.pop_back();
      }
      hull.push_back(*it);
    }
  };
  build(idx.begin(), idx.end());
  hull.pop_back();
  build(idx.rbegin(), idx.rend());
  hull.pop_back();
  return hull;
}

std::vector<int> interior_points(const PointSet& ps) {
  std::vector<int> hull = convex_hull(ps);
  std::vector<char> on_hull(static_cast<size_t>(ps.size()), 0);
  for (int h : hull) on_hull[static_cast<size_t>(h)] = 1;
  std::vector<int> interior;
  for (int i = 0; i < ps.size(); ++i)
    if (!on_hull[static_cast<size_t>(i)]) interior.push_back(i);
  return interior;
}

CcwOrder ccw_order(int i, const Point& q, const PointSet& ps) {
  const Point c = ps[i];
  const Coord dx = q.x - c.x, dy = q.y - c.y;
  assert(dx != 0 || dy != 0);

  // Angular class counted CCW from the ray i->q:
  //   0 = on the ray, 1 = left half-plane, 2 = opposite ray, 3 = right.
  auto klass = [&](const Point& p) {
    Int128 cr = cross128(dx, dy, p.x - c.x, p.y - c.y);
    if (cr > 0) return 1;
    if (cr < 0) return 3;
    return dot128(dx, dy, p.x - c.x, p.y - c.y) > 0 ? 0 : 2;
  };

  std::vector<int> order;
  order.reserve(static_cast<size_t>(ps.size() - 1));
  for (int j = 0; j < ps.size(); ++j) {
    if (j == i || ps[j] == q) continue;
    order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ka = klass(ps[a]), kb = klass(ps[b]);
    if (ka != kb) return ka < kb;
    Int128 cr = cross128(ps[a].x - c.x, ps[a].y - c.y, ps[b].x - c.x, ps[b].y - c.y);
    if (cr != 0) return cr > 0;
    // Same direction from i is impossible in general position unless one of
    // the points equals q's direction class 0/2 twice; fall back to index.
    return a < b;
  });

  CcwOrder out;
  for (int j : order) {
    (klass(ps[j]) <= 2 ? out.plus : out.minus).push_back(j);
  }
  return out;
}

EdgeId edge_from_index(int idx, int n) {
  int a = 0;
  int row = n - 1;
  while (idx >= row) {
    idx -= row;
    --row;
    ++a;
  }
  return EdgeId(a, a + 1 + idx);
}

bool segments_cross(const EdgeId& e1, const EdgeId& e2, const PointSet& ps) {
  if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) return false;
  const Point &a = ps[e1.a], &b = ps[e1.b], &c = ps[e2.a], &d = ps[e2.b];
  int o1 = static_cast<int>(orientation(a, b, c));
  int o2 = static_cast<int>(orientation(a, b, d));
  int o3 = static_cast<int>(orientation(c, d, a));
  int o4 = static_cast<int>(orientation(c, d, b));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

std::vector<std::pair<EdgeId, EdgeId>> crossing_pairs(const PointSet& ps) {
  const int n = ps.size();
  std::vector<std::pair<EdgeId, EdgeId>> out;
  const int m = edge_count(n);
  for (int e = 0; e < m; ++e) {
    EdgeId e1 = edge_from_index(e, n);
    for (int f = e + 1; f < m; ++f) {
      EdgeId e2 = edge_from_index(f, n);
      if (segments_cross(e1, e2, ps)) out.emplace_back(e1, e2);
    }
  }
  return out;
}

CrossingIndex CrossingIndex::build(const PointSet& ps) {
  const int n = ps.size();
  CrossingIndex ci;
  ci.lists_.resize(static_cast<size_t>(edge_count(n)));
  // Each crossing pair comes from the two diagonals of a convex 4-subset,
  // so enumerating 4-subsets is cheaper than testing all edge pairs.
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = q + 1; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
          // Among the three pairings of {p,q,r,s} into two edges, at most
          // one crosses.
          const std::array<std::pair<EdgeId, EdgeId>, 3> pairings = {
              std::make_pair(EdgeId(p, q), EdgeId(r, s)),
              std::make_pair(EdgeId(p, r), EdgeId(q, s)),
              std::make_pair(EdgeId(p, s), EdgeId(q, r))};
          for (const auto& [e1, e2] : pairings) {
            if (segments_cross(e1, e2, ps)) {
              int i1 = edge_index(e1, n), i2 = edge_index(e2, n);
              ci.lists_[static_cast<size_t>(i1)].push_back(i2);
              ci.lists_[static_cast<size_t>(i2)].push_back(i1);
              break;
            }
          }
        }
  for (auto& l : ci.lists_) std::sort(l.begin(), l.end());
  return ci;
}

bool point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  int o = static_cast<int>(orientation(a, b, c));
  if (o == 0) return false;
  int s1 = static_cast<int>(orientation(a, b, p));
  int s2 = static_cast<int>(orientation(b, c, p));
  int s3 = static_cast<int>(orientation(c, a, p));
  return s1 == o && s2 == o && s3 == o;
}

Int128 twice_signed_area(const std::vector<int>& vertices, const PointSet& ps) {
  Int128 acc = 0;
  const size_t t = vertices.size();
  for (size_t i = 0; i < t; ++i) {
    const Point& p = ps[vertices[i]];
    const Point& q = ps[vertices[(i + 1) % t]];
    acc += cross128(p.x, p.y, q.x, q.y);
  }
  return acc;
}

}  // namespace mcp
