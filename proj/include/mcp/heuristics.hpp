#pragma once

#include <array>
#include <string>
#include <vector>

#include "mcp/compact.hpp"
#include "mcp/geometry.hpp"
#include "mcp/polygon.hpp"

namespace mcp {

/// A maximal set of pairwise non-crossing edges with its triangle faces and
/// the two faces flanking each interior edge.
struct Triangulation {
  std::vector<EdgeId> edges;             // sorted
  std::vector<ConvexPolygon> triangles;  // canonical CCW triples
  // per edge (parallel to `edges`): indices into `triangles`, -1 on the hull side
  std::vector<std::array<int, 2>> side;
};

/// Rebuilds the face structure of a maximal non-crossing edge set.
Triangulation triangulation_from_edges(const PointSet& ps, std::vector<EdgeId> edges,
                                       const EmptyTriangleTable& table);

/// Delaunay triangulation: fan from the lexicographically least point, then
/// Lawson flips under the exact in-circle test. Exactly cocircular quads
/// keep the diagonal with the smaller least endpoint index.
Triangulation delaunay(const PointSet& ps, const EmptyTriangleTable& table);

/// Inserts edges by descending value (ties by edge id), skipping crossers;
/// the result is inclusion-maximal and hence a triangulation.
Triangulation greedy_triangulation(const PointSet& ps, const std::vector<double>& edge_values,
                                   const CrossingIndex& crossings,
                                   const EmptyTriangleTable& table);

/// For every interior edge whose two triangles form a convex quadrilateral,
/// the opposite diagonal.
std::vector<EdgeId> flip_edges(const PointSet& ps, const Triangulation& t);

struct Incumbent {
  std::vector<ConvexPolygon> partition;
  int value = 0;
  std::string source;
};

/// Exact minimum convex partition restricted to the allowed edge set (which
/// must contain the hull and a full triangulation); falls back to the
/// triangulation itself when the time cap is hit.
Incumbent restricted_mcpp(const PointSet& ps, const EmptyTriangleTable& table,
                          const std::vector<EdgeId>& allowed, const Triangulation& fallback,
                          double time_cap_seconds = 5.0);

}  // namespace mcp
