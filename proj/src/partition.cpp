#include "mcp/partition.hpp"

#include <algorithm>

namespace mcp {

PartitionCheck check_partition(const PointSet& ps, const WedgeIndex& wi,
                               const EmptyTriangleTable& table,
                               const std::vector<ConvexPolygon>& polys) {
  if (polys.empty()) return {false, "empty partition"};

  std::vector<int> cover(static_cast<size_t>(wi.total()), 0);
  Int128 area = 0;
  for (const ConvexPolygon& p : polys) {
    if (!is_empty_convex(p.vertices, ps, table)) {
      return {false, "polygon is not empty-convex"};
    }
    if (canonical_key(p.vertices, ps).vertices != p.vertices) {
      return {false, "polygon is not canonical"};
    }
    for (int w : wi.wedges_of_polygon(p.vertices)) {
      ++cover[static_cast<size_t>(w)];
    }
    area += twice_signed_area(p.vertices, ps);
  }
  for (size_t w = 0; w < cover.size(); ++w) {
    if (cover[w] != 1) {
      return {false, "wedge " + std::to_string(w) + " covered " +
                         std::to_string(cover[w]) + " times"};
    }
  }
  Int128 hull_area = twice_signed_area(convex_hull(ps), ps);
  if (area != hull_area) {
    return {false, "area mismatch"};
  }
  return {true, ""};
}

std::vector<EdgeId> partition_edges(const std::vector<ConvexPolygon>& polys) {
  std::vector<EdgeId> out;
  for (const ConvexPolygon& p : polys) {
    std::vector<EdgeId> es = p.edges();
    out.insert(out.end(), es.begin(), es.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mcp
