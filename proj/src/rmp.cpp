#include "mcp/rmp.hpp"

#include <algorithm>
#include <cassert>

namespace mcp {

RmpState::RmpState(const PointSet& ps, const WedgeIndex& wi, const EmptyTriangleTable& table,
                   const std::vector<ConvexPolygon>& initial_polygons)
    : ps_(ps), wi_(wi), table_(table) {
  const int n = ps.size();
  num_edges_ = edge_count(n);

  is_hull_edge_.assign(static_cast<size_t>(num_edges_), 0);
  std::vector<int> hull = convex_hull(ps);
  for (size_t h = 0; h < hull.size(); ++h) {
    EdgeId e(hull[h], hull[(h + 1) % hull.size()]);
    is_hull_edge_[static_cast<size_t>(edge_index(e, n))] = 1;
  }

  for (int w = 0; w < wi.total(); ++w) {
    lp_.add_row(LpRowDef{RowRelation::Equal, 1.0, {}});
  }
  for (int e = 0; e < num_edges_; ++e) {
    lp_.add_row(LpRowDef{RowRelation::Equal, 0.0, {}});
  }
  for (int e = 0; e < num_edges_; ++e) {
    LpColumnDef x;
    x.cost = 0.0;
    if (is_hull_edge_[static_cast<size_t>(e)]) {
      x.lo = 1.0;
      x.hi = 1.0;
      x.entries = {{link_row(e), -1.0}};
    } else {
      x.lo = 0.0;
      x.hi = 1.0;
      x.entries = {{link_row(e), -2.0}};
    }
    int col = lp_.add_column(x);
    assert(col == e);
    (void)col;
  }

  for (const ConvexPolygon& p : initial_polygons) add_polygon_column(p);

  // the seed must contain the full triangle catalogue
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (table.is_empty(i, j, k)) {
          std::vector<int> key =
              ccw(ps[i], ps[j], ps[k]) ? std::vector<int>{i, j, k} : std::vector<int>{i, k, j};
          if (!registry_.count(key)) throw MissingTriangles();
        }
}

RmpState::AddColumn RmpState::add_polygon_column(const ConvexPolygon& p) {
  if (registry_.count(p.vertices)) return AddColumn::Duplicate;
  LpColumnDef col;
  col.cost = 1.0;
  col.lo = 0.0;
  col.hi = kLpInfinity;  // <= 1 is implied by the wedge rows
  for (int w : wi_.wedges_of_polygon(p.vertices)) {
    col.entries.push_back({w, 1.0});
  }
  const int n = ps_.size();
  for (const EdgeId& e : p.edges()) {
    col.entries.push_back({link_row(edge_index(e, n)), 1.0});
  }
  int c = lp_.add_column(col);
  registry_.emplace(p.vertices, static_cast<int>(polys_.size()));
  polys_.push_back(p);
  poly_col_.push_back(c);
  return AddColumn::Added;
}

RelaxationResult RmpState::solve_relaxation() {
  const LpSolution& s = lp_.solve();
  RelaxationResult r;
  r.status = s.status;
  r.objective = s.objective;
  r.iterations = s.iterations;
  if (s.status != LpStatus::Optimal) return r;

  r.duals.alpha.assign(s.dual.begin(), s.dual.begin() + wi_.total());
  r.duals.beta.resize(static_cast<size_t>(num_edges_));
  for (int e = 0; e < num_edges_; ++e) {
    r.duals.beta[static_cast<size_t>(e)] = s.dual[static_cast<size_t>(link_row(e))];
  }
  r.duals.gamma.resize(cut_rows_.size());
  for (size_t c = 0; c < cut_rows_.size(); ++c) {
    r.duals.gamma[c] = s.dual[static_cast<size_t>(cut_rows_[c])];
  }
  r.poly_values.resize(polys_.size());
  for (size_t p = 0; p < polys_.size(); ++p) {
    r.poly_values[p] = s.primal[static_cast<size_t>(poly_col_[p])];
  }
  r.edge_values.assign(static_cast<size_t>(num_edges_), 0.0);
  for (int e = 0; e < num_edges_; ++e) {
    r.edge_values[static_cast<size_t>(e)] = s.primal[static_cast<size_t>(e)];
  }
  return r;
}

int RmpState::separate_degree_cuts(const std::vector<double>& edge_values) {
  const int n = ps_.size();
  std::vector<char> has_cut(static_cast<size_t>(n), 0);
  for (int v : cut_vertices_) has_cut[static_cast<size_t>(v)] = 1;

  int added = 0;
  for (int i : interior_points(ps_)) {
    if (has_cut[static_cast<size_t>(i)]) continue;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += edge_values[static_cast<size_t>(edge_index(EdgeId(i, j), n))];
    }
    if (s < 2.9) {
      LpRowDef row;
      row.rel = RowRelation::GreaterEqual;
      row.rhs = 3.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        row.entries.push_back({edge_index(EdgeId(i, j), n), 1.0});
      }
      cut_rows_.push_back(lp_.add_row(row));
      cut_vertices_.push_back(i);
      ++added;
    }
  }
  return added;
}

void RmpState::fix_edge(const EdgeId& e, int value) {
  int idx = edge_index(e, ps_.size());
  assert(!is_hull_edge_[static_cast<size_t>(idx)] || value == 1);
  lp_.fix_column_bounds(idx, value, value);
}

void RmpState::unfix_edge(const EdgeId& e) {
  int idx = edge_index(e, ps_.size());
  if (is_hull_edge_[static_cast<size_t>(idx)]) return;
  lp_.fix_column_bounds(idx, 0.0, 1.0);
}

}  // namespace mcp
