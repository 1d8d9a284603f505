#include "mcp/wedge.hpp"

#include <algorithm>
#include <cassert>

namespace mcp {

namespace {

__int128 cross_from(const Point& c, const Point& u, const Point& w) {
  return static_cast<__int128>(u.x - c.x) * (w.y - c.y) -
         static_cast<__int128>(u.y - c.y) * (w.x - c.x);
}

}  // namespace

WedgeIndex WedgeIndex::build(const PointSet& ps) {
  const int n = ps.size();
  WedgeIndex wi;
  wi.order_.resize(static_cast<size_t>(n));
  wi.pos_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
  wi.gap_offset_.assign(static_cast<size_t>(n), 0);
  wi.wedge_count_.assign(static_cast<size_t>(n), 0);
  wi.base_.assign(static_cast<size_t>(n), 0);
  wi.hull_vertex_.assign(static_cast<size_t>(n), 0);

  Coord y_max = ps[0].y;
  for (int i = 1; i < n; ++i) y_max = std::max(y_max, ps[i].y);

  for (int i = 0; i < n; ++i) {
    CcwOrder co = ccw_order(i, Point{ps[i].x, y_max + 1}, ps);
    std::vector<int>& order = wi.order_[static_cast<size_t>(i)];
    order = std::move(co.plus);
    order.insert(order.end(), co.minus.begin(), co.minus.end());
    const int m = static_cast<int>(order.size());
    assert(m == n - 1);
    for (int p = 0; p < m; ++p)
      wi.pos_[static_cast<size_t>(i)][static_cast<size_t>(order[static_cast<size_t>(p)])] = p;

    // A gap spanning more than a half turn exists iff i is a hull vertex;
    // that gap is the sector outside the hull and owns no wedge.
    int reflex = -1;
    for (int g = 0; g < m; ++g) {
      const Point& u = ps[order[static_cast<size_t>(g)]];
      const Point& w = ps[order[static_cast<size_t>((g + 1) % m)]];
      if (cross_from(ps[i], u, w) < 0) {
        assert(reflex == -1);
        reflex = g;
      }
    }
    if (reflex >= 0) {
      wi.hull_vertex_[static_cast<size_t>(i)] = 1;
      wi.gap_offset_[static_cast<size_t>(i)] = (reflex + 1) % m;
      wi.wedge_count_[static_cast<size_t>(i)] = m - 1;
    } else {
      wi.gap_offset_[static_cast<size_t>(i)] = 0;
      wi.wedge_count_[static_cast<size_t>(i)] = m;
    }
  }

  int acc = 0;
  for (int i = 0; i < n; ++i) {
    wi.base_[static_cast<size_t>(i)] = acc;
    acc += wi.wedge_count_[static_cast<size_t>(i)];
  }
  wi.total_ = acc;
  return wi;
}

WedgeId WedgeIndex::wedge_from_global(int gid) const {
  auto it = std::upper_bound(base_.begin(), base_.end(), gid);
  int owner = static_cast<int>(it - base_.begin()) - 1;
  return WedgeId{owner, gid - base_[static_cast<size_t>(owner)], gid};
}

WedgeRange WedgeIndex::corner_span(int i, int a, int b) const {
  const int m = static_cast<int>(order_[static_cast<size_t>(i)].size());
  const int pa = position(i, a);
  const int pb = position(i, b);
  assert(pa >= 0 && pb >= 0 && pa != pb);
  const int count = (pb - pa + m) % m;
  const int off = gap_offset_[static_cast<size_t>(i)];
  WedgeRange r;
  r.owner = i;
  r.first = (pa - off + m) % m;
  r.len = count;
  // At hull vertices a convex corner never reaches the exterior sector, so
  // the run cannot wrap.
  assert(r.first + r.len <= wedge_count_[static_cast<size_t>(i)] ||
         !hull_vertex_[static_cast<size_t>(i)]);
  assert(r.first < wedge_count_[static_cast<size_t>(i)]);
  return r;
}

std::array<WedgeRange, 3> WedgeIndex::wedge_ranges_of_triangle(int k, int l, int m,
                                                               const PointSet& ps) const {
  assert(ccw(ps[k], ps[l], ps[m]));
  (void)ps;
  return {corner_span(k, l, m), corner_span(l, m, k), corner_span(m, k, l)};
}

std::vector<WedgeRange> WedgeIndex::ranges_of_polygon(const std::vector<int>& cycle) const {
  const size_t t = cycle.size();
  std::vector<WedgeRange> out;
  out.reserve(t);
  for (size_t j = 0; j < t; ++j) {
    int i = cycle[j];
    int next = cycle[(j + 1) % t];
    int prev = cycle[(j + t - 1) % t];
    out.push_back(corner_span(i, next, prev));
  }
  return out;
}

void WedgeIndex::expand(const WedgeRange& r, std::vector<int>& out) const {
  const int wc = wedge_count_[static_cast<size_t>(r.owner)];
  for (int s = 0; s < r.len; ++s) {
    out.push_back(global_id(r.owner, (r.first + s) % wc));
  }
}

std::vector<int> WedgeIndex::wedges_of_polygon(const std::vector<int>& cycle) const {
  std::vector<int> out;
  for (const WedgeRange& r : ranges_of_polygon(cycle)) expand(r, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mcp
