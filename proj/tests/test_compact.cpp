#include "doctest.h"

#include <set>

#include "mcp/compact.hpp"
#include "testutil.hpp"

using namespace mcp;

namespace {

std::vector<EdgeId> all_edges(int n) {
  std::vector<EdgeId> out;
  for (int e = 0; e < edge_count(n); ++e) out.push_back(edge_from_index(e, n));
  return out;
}

std::vector<EdgeId> hull_edges(const PointSet& ps) {
  std::vector<int> hull = convex_hull(ps);
  std::vector<EdgeId> out;
  for (size_t h = 0; h < hull.size(); ++h) {
    out.emplace_back(hull[h], hull[(h + 1) % hull.size()]);
  }
  return out;
}

// reference optimum by exhaustive search over non-crossing edge supersets of
// the hull that satisfy the geometric definition directly
int exhaustive_min_edges(const PointSet& ps, const EmptyTriangleTable& table) {
  const int n = ps.size();
  const int m = edge_count(n);
  std::vector<EdgeId> hull = hull_edges(ps);
  std::set<int> forced;
  for (const EdgeId& e : hull) forced.insert(edge_index(e, n));
  int best = 1 << 20;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    bool has_hull = true;
    for (int f : forced)
      if (!(mask & (1u << f))) has_hull = false;
    if (!has_hull) continue;
    std::vector<EdgeId> edges;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) edges.push_back(edge_from_index(e, n));
    bool crossing = false;
    for (size_t a = 0; a < edges.size() && !crossing; ++a)
      for (size_t b = a + 1; b < edges.size() && !crossing; ++b)
        if (segments_cross(edges[a], edges[b], ps)) crossing = true;
    if (crossing) continue;
    try {
      extract_faces(ps, edges, table);
      best = std::min(best, static_cast<int>(edges.size()));
    } catch (const InvalidPartition&) {
    }
  }
  return best;
}

}  // namespace

TEST_CASE("extract_faces on simple graphs") {
  PointSet sq = testutil::square();
  EmptyTriangleTable t = EmptyTriangleTable::build(sq);
  std::vector<ConvexPolygon> faces = extract_faces(sq, hull_edges(sq), t);
  REQUIRE(faces.size() == 1);
  CHECK(faces[0].vertices == std::vector<int>{0, 1, 2, 3});

  PointSet ti = testutil::triangle_with_interior();
  EmptyTriangleTable tt = EmptyTriangleTable::build(ti);
  std::vector<EdgeId> spokes = hull_edges(ti);
  spokes.emplace_back(0, 3);
  spokes.emplace_back(1, 3);
  spokes.emplace_back(2, 3);
  std::vector<ConvexPolygon> faces2 = extract_faces(ti, spokes, tt);
  CHECK(faces2.size() == 3);

  // a triangulation yields 2i + h - 2 triangles
  PointSet sq2 = testutil::square();
  std::vector<EdgeId> tri_edges = hull_edges(sq2);
  tri_edges.emplace_back(0, 2);
  CHECK(extract_faces(sq2, tri_edges, t).size() == 2);
}

TEST_CASE("extract_faces rejects invalid partitions") {
  PointSet ti = testutil::triangle_with_interior();
  EmptyTriangleTable t = EmptyTriangleTable::build(ti);
  // hull only: single face but it contains point 3 -> not empty
  CHECK_THROWS_AS(extract_faces(ti, hull_edges(ti), t), InvalidPartition);
  // missing one spoke: a face with a reflex corner at 3
  std::vector<EdgeId> partial = hull_edges(ti);
  partial.emplace_back(0, 3);
  partial.emplace_back(1, 3);
  CHECK_THROWS_AS(extract_faces(ti, partial, t), InvalidPartition);
}

TEST_CASE("compact solver on worked instances") {
  SUBCASE("triangle") {
    PointSet ps = testutil::triangle();
    EmptyTriangleTable t = EmptyTriangleTable::build(ps);
    CompactSolver solver(ps, all_edges(3), t);
    CompactResult r = solver.solve(10.0, hull_edges(ps));
    CHECK(r.status == CompactResult::Status::Optimal);
    CHECK(r.edges.size() == 3);
    CHECK(r.faces.size() == 1);
  }
  SUBCASE("square keeps only the hull") {
    PointSet ps = testutil::square();
    EmptyTriangleTable t = EmptyTriangleTable::build(ps);
    CompactSolver solver(ps, all_edges(4), t);
    std::vector<EdgeId> seed = hull_edges(ps);
    seed.emplace_back(0, 2);  // a triangulation
    CompactResult r = solver.solve(10.0, seed);
    CHECK(r.status == CompactResult::Status::Optimal);
    CHECK(r.edges.size() == 4);
    CHECK(r.faces.size() == 1);
  }
  SUBCASE("interior point needs three spokes") {
    PointSet ps = testutil::triangle_with_interior();
    EmptyTriangleTable t = EmptyTriangleTable::build(ps);
    CompactSolver solver(ps, all_edges(4), t);
    std::vector<EdgeId> seed = hull_edges(ps);
    seed.emplace_back(0, 3);
    seed.emplace_back(1, 3);
    seed.emplace_back(2, 3);
    CompactResult r = solver.solve(10.0, seed);
    CHECK(r.status == CompactResult::Status::Optimal);
    CHECK(r.edges.size() == 6);
    CHECK(r.faces.size() == 3);
  }
}

TEST_CASE("compact optimum matches exhaustive search on tiny instances") {
  for (std::uint64_t seed = 1000; seed < 1004; ++seed) {
    PointSet ps = testutil::random_instance(seed, 6);
    EmptyTriangleTable t = EmptyTriangleTable::build(ps);
    int ref = exhaustive_min_edges(ps, t);

    // seed with a fan triangulation from the hull
    CompactSolver solver(ps, all_edges(6), t);
    std::vector<double> zeros(static_cast<size_t>(edge_count(6)), 0.0);
    CrossingIndex ci = CrossingIndex::build(ps);
    // greedy zero-value triangulation = lexicographic maximal non-crossing set
    std::vector<EdgeId> tri;
    {
      std::vector<char> chosen(static_cast<size_t>(edge_count(6)), 0);
      for (int e = 0; e < edge_count(6); ++e) {
        bool ok = true;
        for (int f : ci.crossings_of(e))
          if (chosen[static_cast<size_t>(f)]) ok = false;
        if (ok) {
          chosen[static_cast<size_t>(e)] = 1;
          tri.push_back(edge_from_index(e, 6));
        }
      }
    }
    CompactResult r = solver.solve(30.0, tri);
    CHECK(r.status == CompactResult::Status::Optimal);
    CHECK(static_cast<int>(r.edges.size()) == ref);
    CHECK(r.faces.size() == r.edges.size() - 6 + 1);
  }
}
