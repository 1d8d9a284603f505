#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mcp {

using Coord = std::int64_t;
using Int128 = __int128;

/// Coordinates are capped so that 3-point orientation determinants fit
/// comfortably in 128-bit signed intermediates.
inline constexpr Coord kCoordLimit = Coord{1} << 30;

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Orientation : int { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of the cross product (l-k) x (m-l), computed exactly.
Orientation orientation(const Point& k, const Point& l, const Point& m);

/// True iff (k,l,m) makes a strict left turn (positively oriented).
inline bool ccw(const Point& k, const Point& l, const Point& m) {
  return orientation(k, l, m) == Orientation::Positive;
}

/// An indexed set of distinct integer points, assumed (after validation)
/// to be in general position: no three points on a common line.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {}

  int size() const { return static_cast<int>(pts_.size()); }
  const Point& operator[](int i) const { return pts_[static_cast<size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

struct GeneralPositionIssue {
  enum class Kind { TooFewPoints, CoordinateOutOfRange, DuplicatePoint, CollinearTriple };
  Kind kind;
  // CoordinateOutOfRange uses indices[0]; DuplicatePoint uses indices[0..1];
  // CollinearTriple uses all three.
  std::array<int, 3> indices;
};

/// Returns the first issue found (duplicates first, then the lexicographically
/// smallest collinear index triple), or nullopt if the set is valid.
/// Also rejects n < 3 and out-of-range coordinates.
std::optional<GeneralPositionIssue> validate_general_position(const PointSet& ps);

/// Hull vertex indices in CCW order, starting at the lexicographically
/// least point (min x, then min y).
std::vector<int> convex_hull(const PointSet& ps);

/// Indices not on the convex hull.
std::vector<int> interior_points(const PointSet& ps);

/// The points of ps \ {i} sorted angularly counterclockwise around i,
/// starting at the ray i->q. `plus` holds the prefix that is non-negatively
/// oriented w.r.t. the oriented line i->q (on the ray first, then the left
/// half-plane, then the point diametrically opposite the ray if any);
/// `minus` holds the strictly right half-plane. If q coincides with a point
/// of the set, that point is excluded from the output.
struct CcwOrder {
  std::vector<int> plus;
  std::vector<int> minus;
};
CcwOrder ccw_order(int i, const Point& q, const PointSet& ps);

/// Unordered pair of point indices with a < b.
struct EdgeId {
  int a = -1;
  int b = -1;

  EdgeId() = default;
  EdgeId(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Dense index of edge (a,b), a < b, among the n(n-1)/2 edges.
inline int edge_index(const EdgeId& e, int n) {
  return e.a * n - e.a * (e.a + 1) / 2 + (e.b - e.a - 1);
}
EdgeId edge_from_index(int idx, int n);
inline int edge_count(int n) { return n * (n - 1) / 2; }

/// True iff the two open segments properly cross. Segments sharing an
/// endpoint never cross; under general position there is no other kind
/// of touching.
bool segments_cross(const EdgeId& e1, const EdgeId& e2, const PointSet& ps);

/// All unordered pairs of edges that properly cross.
std::vector<std::pair<EdgeId, EdgeId>> crossing_pairs(const PointSet& ps);

/// Per-edge crossing lists over the complete edge set of a point set.
class CrossingIndex {
 public:
  static CrossingIndex build(const PointSet& ps);

  const std::vector<int>& crossings_of(int edge_idx) const {
    return lists_[static_cast<size_t>(edge_idx)];
  }
  int count(int edge_idx) const {
    return static_cast<int>(lists_[static_cast<size_t>(edge_idx)].size());
  }
  int num_edges() const { return static_cast<int>(lists_.size()); }

 private:
  std::vector<std::vector<int>> lists_;
};

/// True iff p lies strictly inside the triangle (a,b,c) (any orientation).
bool point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c);

/// Twice the signed area of the polygon given by vertex indices.
Int128 twice_signed_area(const std::vector<int>& vertices, const PointSet& ps);

}  // namespace mcp
