#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/polygon.hpp"
#include "mcp/wedge.hpp"

namespace mcp::oracle {

using Rat = boost::multiprecision::cpp_rational;

struct OracleResult {
  int value = 0;
  std::vector<ConvexPolygon> partition;
};

/// Ground-truth minimum convex partition by depth-first exact cover of the
/// wedge set with enumerated polygons (lowest-candidate wedge first, simple
/// counting bound). Exponential; guarded by the size cap.
OracleResult brute_force_optimum(const PointSet& ps, int cap = 14);

struct RatPoint {
  Rat x, y;
};

struct ArrangementFace {
  std::vector<RatPoint> cycle;       // CCW boundary
  RatPoint sample;                   // a point strictly inside (vertex centroid)
  std::vector<int> incident_points;  // input point ids appearing on the boundary
};

struct Arrangement {
  long num_vertices = 0;
  long num_edges = 0;
  std::vector<ArrangementFace> faces;  // bounded faces only
};

/// Exact arrangement of every segment between input points, traced in
/// rational arithmetic: the test oracle for wedge bookkeeping. Verifies
/// Euler's relation internally.
Arrangement brute_force_arrangement_faces(const PointSet& ps, int cap = 8);

/// True iff the (atomic) face with the given interior sample point lies
/// inside the CCW polygon `cycle`.
bool face_in_polygon(const RatPoint& sample, const std::vector<int>& cycle, const PointSet& ps);

/// The wedge (owner = point i) whose angular sector contains the sample.
int wedge_slot_of_sample(const WedgeIndex& wi, const PointSet& ps, int i, const RatPoint& sample);

}  // namespace mcp::oracle
