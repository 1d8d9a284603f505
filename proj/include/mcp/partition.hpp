#pragma once

#include <string>
#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/polygon.hpp"
#include "mcp/wedge.hpp"

namespace mcp {

struct PartitionCheck {
  bool ok = false;
  std::string error;
};

/// Exact validity test for a claimed convex partition of the hull:
/// every polygon convex and empty, every wedge covered exactly once, and
/// the doubled areas summing to the doubled hull area (integer arithmetic).
PartitionCheck check_partition(const PointSet& ps, const WedgeIndex& wi,
                               const EmptyTriangleTable& table,
                               const std::vector<ConvexPolygon>& polys);

/// Union of the boundary edges of the given polygons, sorted, deduplicated.
std::vector<EdgeId> partition_edges(const std::vector<ConvexPolygon>& polys);

}  // namespace mcp
