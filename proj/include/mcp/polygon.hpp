#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mcp/geometry.hpp"

namespace mcp {

/// An empty convex polygon in canonical form: CCW vertex indices, rotated
/// so the smallest index comes first.
struct ConvexPolygon {
  std::vector<int> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
  std::vector<EdgeId> edges() const;

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

struct PolyKeyHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Normalizes any rotation/orientation of a valid convex polygon to the
/// canonical form above.
ConvexPolygon canonical_key(std::vector<int> vertices, const PointSet& ps);

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Bit-packed emptiness of every triangle over the point set; O(1) queries.
class EmptyTriangleTable {
 public:
  static EmptyTriangleTable build(const PointSet& ps);

  bool is_empty(int k, int l, int m) const;
  int n() const { return n_; }

 private:
  size_t index(int i, int j, int k) const;  // requires i < j < k
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// True iff the vertex list is a strictly convex CCW simple polygon that is
/// empty w.r.t. the point set. Indices must be distinct.
bool is_empty_convex(const std::vector<int>& vertices, const PointSet& ps,
                     const EmptyTriangleTable& table);

/// All empty convex polygons, canonical, each exactly once. Throws
/// CapExceeded when more than `limit` polygons exist.
std::vector<ConvexPolygon> enumerate_polyset(const PointSet& ps,
                                             const EmptyTriangleTable& table,
                                             std::size_t limit = 5'000'000);

/// All empty triangles, canonical.
std::vector<ConvexPolygon> enumerate_empty_triangles(const PointSet& ps,
                                                     const EmptyTriangleTable& table);

}  // namespace mcp
