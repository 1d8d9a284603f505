#pragma once

#include <stdexcept>
#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/lp.hpp"
#include "mcp/polygon.hpp"

namespace mcp {

struct InvalidPartition : std::runtime_error {
  explicit InvalidPartition(const std::string& what) : std::runtime_error(what) {}
};

/// Bounded faces of the plane graph spanned by the given non-crossing edge
/// set, walked CCW (at each vertex, the next outgoing edge is the CCW
/// successor of the incoming one). Faces come back canonical. Throws
/// InvalidPartition when a face is not an empty convex polygon or the faces
/// do not tile the hull.
std::vector<ConvexPolygon> extract_faces(const PointSet& ps, const std::vector<EdgeId>& edges,
                                         const EmptyTriangleTable& table);

struct CompactResult {
  enum class Status { Optimal, TimeCap };
  Status status = Status::Optimal;
  std::vector<EdgeId> edges;          // best edge set found
  std::vector<ConvexPolygon> faces;   // its faces (empty when TimeCap hit with no improvement)
  double root_bound_faces = 0.0;      // root LP bound converted to a face count
  long nodes = 0;
};

/// The edge-based ILP: one binary variable per allowed edge, minimized edge
/// count, hull edges fixed, angular rows forcing convex angles at interior
/// points, degree-3 rows, and lazily separated crossing rows. Solved by its
/// own small branch-and-bound on LP relaxations (most fractional edge
/// first). Face counts relate to edge counts by faces = edges - n + 1 on
/// spanning plane graphs, so minimizing edges minimizes faces.
///
/// Angular rows are generated for every arc (i,j) with i interior, keeping
/// only allowed edges in their support; rows whose support would be empty
/// are omitted (they can only appear on restricted edge sets).
class CompactSolver {
 public:
  CompactSolver(const PointSet& ps, std::vector<EdgeId> allowed,
                const EmptyTriangleTable& table);

  /// `initial` seeds the incumbent (must be feasible, e.g. a triangulation).
  CompactResult solve(double time_cap_seconds, const std::vector<EdgeId>& initial);

  int num_angular_rows() const { return num_angular_rows_; }
  int num_crossing_rows() const { return num_crossing_rows_; }
  LpModel& lp() { return lp_; }

 private:
  bool separate_crossings(const std::vector<double>& x);
  void dfs(long& deadline_checked, int depth);

  const PointSet& ps_;
  const EmptyTriangleTable& table_;
  std::vector<EdgeId> allowed_;
  std::vector<int> allowed_idx_of_edge_;  // edge index -> column or -1
  std::vector<std::vector<int>> crossings_;  // per column: crossing columns
  LpModel lp_;
  int num_angular_rows_ = 0;
  int num_crossing_rows_ = 0;

  // search state
  double deadline_ = 0.0;
  bool timed_out_ = false;
  long nodes_ = 0;
  int best_count_ = 0;
  std::vector<EdgeId> best_edges_;
};

}  // namespace mcp
