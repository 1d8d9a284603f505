#include "mcp/compact.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <map>

namespace mcp {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

__int128 cross_from(const Point& c, const Point& u, const Point& w) {
  return static_cast<__int128>(u.x - c.x) * (w.y - c.y) -
         static_cast<__int128>(u.y - c.y) * (w.x - c.x);
}

// CCW-from-north comparator for directions out of c.
bool angular_less(const Point& c, const Point& a, const Point& b) {
  auto klass = [&](const Point& p) {
    if (p.x == c.x) return p.y > c.y ? 0 : 2;
    return p.x < c.x ? 1 : 3;
  };
  int ka = klass(a), kb = klass(b);
  if (ka != kb) return ka < kb;
  return cross_from(c, a, b) > 0;
}

}  // namespace

std::vector<ConvexPolygon> extract_faces(const PointSet& ps, const std::vector<EdgeId>& edges,
                                         const EmptyTriangleTable& table) {
  const int n = ps.size();
  std::vector<std::vector<int>> nbr(static_cast<size_t>(n));
  for (const EdgeId& e : edges) {
    nbr[static_cast<size_t>(e.a)].push_back(e.b);
    nbr[static_cast<size_t>(e.b)].push_back(e.a);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(nbr[static_cast<size_t>(v)].begin(), nbr[static_cast<size_t>(v)].end(),
              [&](int a, int b) { return angular_less(ps[v], ps[a], ps[b]); });
  }

  std::map<std::pair<int, int>, int> arc_id;
  std::vector<std::pair<int, int>> arcs;
  for (const EdgeId& e : edges) {
    arc_id[{e.a, e.b}] = static_cast<int>(arcs.size());
    arcs.emplace_back(e.a, e.b);
    arc_id[{e.b, e.a}] = static_cast<int>(arcs.size());
    arcs.emplace_back(e.b, e.a);
  }

  std::vector<char> seen(arcs.size(), 0);
  std::vector<ConvexPolygon> faces;
  Int128 area_sum = 0;
  for (size_t start = 0; start < arcs.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int cur = static_cast<int>(start);
    while (!seen[static_cast<size_t>(cur)]) {
      seen[static_cast<size_t>(cur)] = 1;
      auto [u, v] = arcs[static_cast<size_t>(cur)];
      cycle.push_back(v);
      // keep the face on the left: continue with the CCW predecessor of u
      // around v (the first edge clockwise of the reversed arc)
      const std::vector<int>& ring = nbr[static_cast<size_t>(v)];
      auto it = std::find(ring.begin(), ring.end(), u);
      assert(it != ring.end());
      size_t at = static_cast<size_t>(it - ring.begin());
      int w = ring[(at + ring.size() - 1) % ring.size()];
      cur = arc_id.at({v, w});
    }
    if (cycle.size() < 3) {
      throw InvalidPartition("degenerate face walk");
    }
    Int128 doubled = twice_signed_area(cycle, ps);
    if (doubled <= 0) continue;  // the outer face
    area_sum += doubled;
    if (!is_empty_convex(cycle, ps, table)) {
      throw InvalidPartition("face is not an empty convex polygon");
    }
    faces.push_back(canonical_key(std::move(cycle), ps));
  }
  if (area_sum != twice_signed_area(convex_hull(ps), ps)) {
    throw InvalidPartition("faces do not tile the hull");
  }
  std::sort(faces.begin(), faces.end(),
            [](const ConvexPolygon& a, const ConvexPolygon& b) { return a.vertices < b.vertices; });
  return faces;
}

CompactSolver::CompactSolver(const PointSet& ps, std::vector<EdgeId> allowed,
                             const EmptyTriangleTable& table)
    : ps_(ps), table_(table), allowed_(std::move(allowed)) {
  const int n = ps.size();
  std::sort(allowed_.begin(), allowed_.end());
  allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
  allowed_idx_of_edge_.assign(static_cast<size_t>(edge_count(n)), -1);
  for (size_t c = 0; c < allowed_.size(); ++c) {
    allowed_idx_of_edge_[static_cast<size_t>(edge_index(allowed_[c], n))] = static_cast<int>(c);
  }

  std::vector<char> hull_edge(static_cast<size_t>(edge_count(n)), 0);
  std::vector<int> hull = convex_hull(ps);
  for (size_t h = 0; h < hull.size(); ++h) {
    hull_edge[static_cast<size_t>(
        edge_index(EdgeId(hull[h], hull[(h + 1) % hull.size()]), n))] = 1;
  }

  for (const EdgeId& e : allowed_) {
    LpColumnDef col;
    col.cost = 1.0;
    col.lo = hull_edge[static_cast<size_t>(edge_index(e, n))] ? 1.0 : 0.0;
    col.hi = 1.0;
    lp_.add_column(col);
  }

  // degree rows
  for (int i : interior_points(ps)) {
    LpRowDef row;
    row.rel = RowRelation::GreaterEqual;
    row.rhs = 3.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      int c = allowed_idx_of_edge_[static_cast<size_t>(edge_index(EdgeId(i, j), n))];
      if (c >= 0) row.entries.push_back({c, 1.0});
    }
    if (!row.entries.empty()) lp_.add_row(row);
  }

  // Angular rows for every arc (i,j) with i interior, in two families.
  // The unconditional family asks for a chosen edge weakly left of i->j;
  // rows whose restricted support vanishes are omitted. The conditional
  // family is what actually forces convex angles: a chosen arc needs
  // another chosen edge strictly to its left, so consecutive chosen
  // directions around an interior point stay within a half turn.
  for (int i : interior_points(ps)) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      LpRowDef row;
      row.rel = RowRelation::GreaterEqual;
      row.rhs = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        if (k != j && orientation(ps[i], ps[j], ps[k]) != Orientation::Positive) continue;
        int c = allowed_idx_of_edge_[static_cast<size_t>(edge_index(EdgeId(i, k), n))];
        if (c >= 0) row.entries.push_back({c, 1.0});
      }
      if (!row.entries.empty()) {
        lp_.add_row(row);
        ++num_angular_rows_;
      }

      int cj = allowed_idx_of_edge_[static_cast<size_t>(edge_index(EdgeId(i, j), n))];
      if (cj < 0) continue;
      LpRowDef cond;
      cond.rel = RowRelation::GreaterEqual;
      cond.rhs = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (orientation(ps[i], ps[j], ps[k]) != Orientation::Positive) continue;
        int c = allowed_idx_of_edge_[static_cast<size_t>(edge_index(EdgeId(i, k), n))];
        if (c >= 0) cond.entries.push_back({c, 1.0});
      }
      cond.entries.push_back({cj, -1.0});
      lp_.add_row(cond);
      ++num_angular_rows_;
    }
  }

  crossings_.assign(allowed_.size(), {});
  for (size_t a = 0; a < allowed_.size(); ++a) {
    for (size_t b = a + 1; b < allowed_.size(); ++b) {
      if (segments_cross(allowed_[a], allowed_[b], ps)) {
        crossings_[a].push_back(static_cast<int>(b));
        crossings_[b].push_back(static_cast<int>(a));
      }
    }
  }
}

bool CompactSolver::separate_crossings(const std::vector<double>& x) {
  static constexpr double kTol = 1e-6;
  bool added = false;
  for (size_t a = 0; a < allowed_.size(); ++a) {
    for (int b : crossings_[a]) {
      if (static_cast<int>(a) >= b) continue;
      if (x[a] + x[static_cast<size_t>(b)] <= 1.0 + kTol) continue;
      LpRowDef row;
      row.rel = RowRelation::LessEqual;
      row.rhs = 1.0;
      row.entries = {{static_cast<int>(a), 1.0}, {b, 1.0}};
      lp_.add_row(row);
      ++num_crossing_rows_;
      added = true;
    }
  }
  return added;
}

void CompactSolver::dfs(long& lp_solves, int depth) {
  if (timed_out_) return;
  ++nodes_;
  while (true) {
    if (now_seconds() > deadline_) {
      timed_out_ = true;
      return;
    }
    const LpSolution& s = lp_.solve();
    ++lp_solves;
    if (s.status == LpStatus::Infeasible) return;
    assert(s.status == LpStatus::Optimal);
    if (static_cast<int>(std::ceil(s.objective - 1e-6)) >= best_count_) return;
    if (separate_crossings(s.primal)) continue;

    int frac_col = -1;
    double frac_best = 0.5;
    for (size_t c = 0; c < allowed_.size(); ++c) {
      double v = s.primal[c];
      if (v < 1e-6 || v > 1.0 - 1e-6) continue;
      double f = std::abs(0.5 - v);
      if (f < frac_best - 1e-12) {
        frac_best = f;
        frac_col = static_cast<int>(c);
      }
    }
    if (frac_col < 0) {
      std::vector<EdgeId> chosen;
      for (size_t c = 0; c < allowed_.size(); ++c) {
        if (s.primal[c] > 0.5) chosen.push_back(allowed_[c]);
      }
      try {
        extract_faces(ps_, chosen, table_);
        if (static_cast<int>(chosen.size()) < best_count_) {
          best_count_ = static_cast<int>(chosen.size());
          best_edges_ = chosen;
        }
        return;
      } catch (const InvalidPartition&) {
        // exclude this exact selection and keep searching
        LpRowDef nogood;
        nogood.rel = RowRelation::LessEqual;
        nogood.rhs = static_cast<double>(chosen.size()) - 1.0;
        for (size_t c = 0; c < allowed_.size(); ++c) {
          nogood.entries.push_back({static_cast<int>(c), s.primal[c] > 0.5 ? 1.0 : -1.0});
        }
        lp_.add_row(nogood);
        continue;
      }
    }

    double v = s.primal[static_cast<size_t>(frac_col)];
    int first = v >= 0.5 ? 1 : 0;
    for (int side = 0; side < 2 && !timed_out_; ++side) {
      int val = side == 0 ? first : 1 - first;
      lp_.fix_column_bounds(frac_col, val, val);
      std::vector<int> auto_fixed;
      bool conflict = false;
      if (val == 1) {
        for (int b : crossings_[static_cast<size_t>(frac_col)]) {
          auto [lo, hi] = lp_.column_bounds(b);
          if (lo > 0.5) {
            conflict = true;
            break;
          }
          if (hi > 0.5) {
            lp_.fix_column_bounds(b, 0.0, 0.0);
            auto_fixed.push_back(b);
          }
        }
      }
      if (!conflict) dfs(lp_solves, depth + 1);
      for (int b : auto_fixed) lp_.fix_column_bounds(b, 0.0, 1.0);
    }
    lp_.fix_column_bounds(frac_col, 0.0, 1.0);
    return;
  }
}

CompactResult CompactSolver::solve(double time_cap_seconds, const std::vector<EdgeId>& initial) {
  CompactResult res;
  deadline_ = now_seconds() + time_cap_seconds;
  timed_out_ = false;
  nodes_ = 0;
  best_edges_ = initial;
  best_count_ = static_cast<int>(initial.size());

  const LpSolution& root = lp_.solve();
  if (root.status == LpStatus::Optimal) {
    res.root_bound_faces =
        std::ceil(root.objective - 1e-6) - static_cast<double>(ps_.size()) + 1.0;
  }

  long lp_solves = 0;
  dfs(lp_solves, 0);

  res.status = timed_out_ ? CompactResult::Status::TimeCap : CompactResult::Status::Optimal;
  res.edges = best_edges_;
  res.faces = extract_faces(ps_, best_edges_, table_);
  res.nodes = nodes_;
  return res;
}

}  // namespace mcp
