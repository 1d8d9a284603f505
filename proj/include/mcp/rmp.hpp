#pragma once

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/lp.hpp"
#include "mcp/polygon.hpp"
#include "mcp/wedge.hpp"

namespace mcp {

/// Duals of the restricted master: one alpha per wedge row, one beta per
/// edge linking row, one gamma per active degree cut.
struct DualVector {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;  // parallel to RmpState::cut_vertices()
};

struct RelaxationResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  DualVector duals;
  std::vector<double> poly_values;  // parallel to RmpState::polygons()
  std::vector<double> edge_values;  // per edge index
  long iterations = 0;
};

struct MissingTriangles : std::runtime_error {
  MissingTriangles() : std::runtime_error("initial column set must contain every empty triangle") {}
};

/// Restricted master problem of the extended set-partition model: polygon
/// columns (cost 1) against wedge equality rows, plus an edge variable per
/// segment tied to its incident polygons by a linking row, plus separated
/// degree cuts. Hull edges are fixed to one up front.
///
/// A hull edge supports a single polygon, so its linking row is written
/// u-sum - x = 0; interior edges support one polygon per side, u-sum - 2x = 0.
class RmpState {
 public:
  RmpState(const PointSet& ps, const WedgeIndex& wi, const EmptyTriangleTable& table,
           const std::vector<ConvexPolygon>& initial_polygons);

  enum class AddColumn { Added, Duplicate };
  AddColumn add_polygon_column(const ConvexPolygon& p);

  RelaxationResult solve_relaxation();

  /// Adds one degree-cut row per interior point whose current edge-value sum
  /// is below 2.9; returns how many were added.
  int separate_degree_cuts(const std::vector<double>& edge_values);

  void fix_edge(const EdgeId& e, int value);
  void unfix_edge(const EdgeId& e);  // back to [0,1]; hull edges stay fixed

  const PointSet& points() const { return ps_; }
  const WedgeIndex& wedges() const { return wi_; }
  const std::vector<ConvexPolygon>& polygons() const { return polys_; }
  bool has_polygon(const std::vector<int>& key) const { return registry_.count(key) > 0; }
  const std::vector<int>& cut_vertices() const { return cut_vertices_; }
  const std::vector<char>& hull_edge_mask() const { return is_hull_edge_; }
  int num_edge_columns() const { return num_edges_; }
  int num_wedge_rows() const { return wi_.total(); }

  LpModel& lp() { return lp_; }

 private:
  int link_row(int edge_idx) const { return wi_.total() + edge_idx; }

  const PointSet& ps_;
  const WedgeIndex& wi_;
  const EmptyTriangleTable& table_;
  LpModel lp_;
  int num_edges_ = 0;
  std::vector<char> is_hull_edge_;
  std::vector<ConvexPolygon> polys_;
  std::vector<int> poly_col_;  // LP column per polygon
  std::unordered_map<std::vector<int>, int, PolyKeyHash> registry_;
  std::vector<int> cut_vertices_;
  std::vector<int> cut_rows_;
};

}  // namespace mcp
