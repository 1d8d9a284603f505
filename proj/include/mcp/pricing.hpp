#pragma once

#include <functional>
#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/polygon.hpp"
#include "mcp/rmp.hpp"
#include "mcp/wedge.hpp"

namespace mcp {

/// Per-vertex prefix sums over wedge duals; circular range sums in O(1).
/// Rebuilt whenever the duals change.
class DualRangeSummer {
 public:
  DualRangeSummer(const WedgeIndex& wi, const std::vector<double>& alpha);
  double range_sum(const WedgeRange& r) const;

 private:
  std::vector<std::vector<double>> prefix_;
};

struct PricedColumn {
  ConvexPolygon polygon;
  double reduced_cost;
};

struct PricingResult {
  std::vector<PricedColumn> columns;  // most negative first, capped, deduplicated
  double min_reduced_cost = 1.0;      // global minimum over every priced state
};

/// Minimum-reduced-cost empty convex polygons by dynamic programming over
/// "last triangles": polygons are fans around their lexicographically least
/// vertex, extended in CCW order; each state is (root k, second-to-last l,
/// last m). A two-pointer sweep around l keeps the whole round at O(n^3).
class Pricer {
 public:
  Pricer(const PointSet& ps, const WedgeIndex& wi, const EmptyTriangleTable& table);

  /// Marks edges whose use must be priced out (bound-fixed to zero at the
  /// current search node). The penalty is sized from the current duals so
  /// that it dominates any achievable reduced cost.
  void set_forbidden_edges(const std::vector<EdgeId>& edges, const DualVector& duals);
  void clear_forbidden_edges();
  double forbidden_penalty(const EdgeId& e) const;

  /// Reduced-cost contribution of the empty CCW triangle (k,l,m): negated
  /// dual coverage of its wedges minus its three edge duals, plus penalties
  /// of forbidden edges. The polygon reduced cost is 1 plus the chain sum.
  double triangle_delta(int k, int l, int m, const DualVector& duals) const;

  /// Independent verification path: 1 - alpha(covered wedges) - beta(edges).
  double reduced_cost(const ConvexPolygon& p, const DualVector& duals) const;

  PricingResult price(const DualVector& duals,
                      const std::function<bool(const std::vector<int>&)>& is_known = {},
                      int column_cap = 200, double threshold = -1e-6);

  /// Same sweep under a caller-supplied triangle cost with no edge terms;
  /// exercised by tests (a -1 surrogate turns the DP into a maximum-vertex
  /// empty polygon search).
  PricingResult price_with_surrogate(const std::function<double(int, int, int)>& delta,
                                     int column_cap = 200, double threshold = -1e-6);

 private:
  template <typename DeltaFn, typename RefundFn>
  PricingResult run(const DeltaFn& delta, const RefundFn& closing_refund,
                    const std::function<bool(const std::vector<int>&)>& is_known,
                    int column_cap, double threshold);

  const PointSet& ps_;
  const WedgeIndex& wi_;
  const EmptyTriangleTable& table_;
  int n_;
  std::vector<std::vector<int>> ring_;   // per root: candidate vertices, CCW
  std::vector<std::vector<int>> pos_;    // per root: point -> ring position or -1
  std::vector<double> penalty_;          // per edge index
  std::vector<int> penalized_;
  // scratch, reused across roots
  std::vector<double> b_;
  std::vector<int> bp_;
};

}  // namespace mcp
