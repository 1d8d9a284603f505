#pragma once

#include <array>
#include <vector>

#include "mcp/geometry.hpp"

namespace mcp {

/// One bounded face of the segment arrangement incident to `owner`,
/// identified by its angular slot in the CCW sweep around that point.
struct WedgeId {
  int owner = -1;
  int slot = -1;
  int global_id = -1;
};

/// A run of consecutive wedge slots at one vertex. The run is circular for
/// interior points (slots may wrap past the last one); at hull points it is
/// always a plain interval because every covered sector lies inside the
/// hull angle.
struct WedgeRange {
  int owner = -1;
  int first = 0;
  int len = 0;
};

/// Per-point angular decomposition of the arrangement faces touching each
/// point. An interior point of the hull owns n-1 wedges (one per angular
/// sector between consecutive rays to the other points); a hull point owns
/// n-2, the sector outside its hull angle being skipped. Global ids are
/// dense in (owner, slot) lexicographic order.
class WedgeIndex {
 public:
  static WedgeIndex build(const PointSet& ps);

  int total() const { return total_; }
  int num_points() const { return static_cast<int>(wedge_count_.size()); }
  int wedge_count(int i) const { return wedge_count_[static_cast<size_t>(i)]; }
  int global_id(int owner, int slot) const {
    return base_[static_cast<size_t>(owner)] + slot;
  }
  WedgeId wedge_from_global(int gid) const;
  bool is_hull_vertex(int i) const { return hull_vertex_[static_cast<size_t>(i)] != 0; }

  /// CCW circular order of the other points around i (sweep starts at the
  /// upward vertical ray, as used to number the slots of interior points).
  const std::vector<int>& ccw_neighbors(int i) const {
    return order_[static_cast<size_t>(i)];
  }
  /// Position of point j in ccw_neighbors(i).
  int position(int i, int j) const {
    return pos_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  /// Wedges of vertex i covered by a convex corner at i whose boundary rays
  /// point to a (first, CCW) and b (last). a and b must be distinct from i
  /// and from each other.
  WedgeRange corner_span(int i, int a, int b) const;

  /// The three per-vertex slot runs covered by the CCW empty triangle
  /// (k,l,m). Emptiness is the caller's responsibility; orientation is
  /// checked in debug builds.
  std::array<WedgeRange, 3> wedge_ranges_of_triangle(int k, int l, int m,
                                                     const PointSet& ps) const;

  /// All wedges contained in the CCW empty convex polygon given by
  /// `cycle`, as one range per vertex.
  std::vector<WedgeRange> ranges_of_polygon(const std::vector<int>& cycle) const;

  /// Same, expanded to sorted global wedge ids.
  std::vector<int> wedges_of_polygon(const std::vector<int>& cycle) const;

  /// Expand a range to global ids (appending to out).
  void expand(const WedgeRange& r, std::vector<int>& out) const;

 private:
  std::vector<std::vector<int>> order_;
  std::vector<std::vector<int>> pos_;
  std::vector<int> gap_offset_;
  std::vector<int> wedge_count_;
  std::vector<int> base_;
  std::vector<char> hull_vertex_;
  int total_ = 0;
};

}  // namespace mcp
