#include "doctest.h"

#include <cmath>

#include "mcp/rmp.hpp"
#include "testutil.hpp"

using namespace mcp;

namespace {

struct Fixture {
  PointSet ps;
  WedgeIndex wi;
  EmptyTriangleTable table;
  std::vector<ConvexPolygon> polyset;

  explicit Fixture(PointSet p)
      : ps(std::move(p)), wi(WedgeIndex::build(ps)), table(EmptyTriangleTable::build(ps)),
        polyset(enumerate_polyset(ps, table)) {}
};

}  // namespace

TEST_CASE("square master problem shape and optimum") {
  Fixture f(testutil::square());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  CHECK(rmp.polygons().size() == 5);
  CHECK(rmp.num_edge_columns() == 6);
  CHECK(rmp.lp().num_rows() == 8 + 6);
  CHECK(rmp.lp().num_cols() == 6 + 5);

  RelaxationResult r = rmp.solve_relaxation();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  for (double a : r.duals.alpha) CHECK(std::isfinite(a));
  for (double b : r.duals.beta) CHECK(std::isfinite(b));
}

TEST_CASE("triangle master problem") {
  Fixture f(testutil::triangle());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  CHECK(rmp.polygons().size() == 1);
  CHECK(rmp.lp().num_rows() == 3 + 3);
  RelaxationResult r = rmp.solve_relaxation();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  // the only polygon is selected and every edge is a hull edge at value 1
  CHECK(r.poly_values[0] == doctest::Approx(1.0));
  for (double x : r.edge_values) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("triangle-with-interior full LP equals 3") {
  Fixture f(testutil::triangle_with_interior());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  RelaxationResult r = rmp.solve_relaxation();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));
}

TEST_CASE("missing triangle seed is rejected") {
  Fixture f(testutil::square());
  std::vector<ConvexPolygon> partial(f.polyset.begin(), f.polyset.end() - 2);
  CHECK_THROWS_AS(RmpState(f.ps, f.wi, f.table, partial), MissingTriangles);
}

TEST_CASE("square with triangles only relaxes to 2, quadrilateral drops it to 1") {
  Fixture f(testutil::square());
  RmpState rmp(f.ps, f.wi, f.table, enumerate_empty_triangles(f.ps, f.table));
  RelaxationResult r0 = rmp.solve_relaxation();
  REQUIRE(r0.status == LpStatus::Optimal);
  CHECK(r0.objective == doctest::Approx(2.0));

  CHECK(rmp.add_polygon_column(ConvexPolygon{{0, 1, 2, 3}}) == RmpState::AddColumn::Added);
  CHECK(rmp.add_polygon_column(ConvexPolygon{{0, 1, 2, 3}}) == RmpState::AddColumn::Duplicate);
  RelaxationResult r1 = rmp.solve_relaxation();
  CHECK(r1.objective == doctest::Approx(1.0));
}

TEST_CASE("conflicting diagonal fixings are infeasible") {
  Fixture f(testutil::square());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  rmp.fix_edge(EdgeId(0, 2), 1);
  rmp.fix_edge(EdgeId(1, 3), 1);
  CHECK(rmp.solve_relaxation().status == LpStatus::Infeasible);
  rmp.unfix_edge(EdgeId(0, 2));
  rmp.unfix_edge(EdgeId(1, 3));
  CHECK(rmp.solve_relaxation().status == LpStatus::Optimal);
}

TEST_CASE("integer solutions relate edge values to shared polygon edges") {
  Fixture f(testutil::triangle_with_interior());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  RelaxationResult r = rmp.solve_relaxation();
  REQUIRE(r.status == LpStatus::Optimal);
  // unique optimum: the three spoke triangles; every edge is used
  const int n = f.ps.size();
  for (int e = 0; e < edge_count(n); ++e) {
    CHECK(r.edge_values[static_cast<size_t>(e)] == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("degree cut separation") {
  Fixture f(testutil::triangle_with_interior());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);

  const int n = f.ps.size();
  std::vector<double> fake(static_cast<size_t>(edge_count(n)), 0.0);
  // interior point 3 with edge-value sum 2.0 -> one cut
  fake[static_cast<size_t>(edge_index(EdgeId(0, 3), n))] = 1.0;
  fake[static_cast<size_t>(edge_index(EdgeId(1, 3), n))] = 1.0;
  CHECK(rmp.separate_degree_cuts(fake) == 1);
  CHECK(rmp.cut_vertices() == std::vector<int>{3});
  // never re-added for the same vertex
  CHECK(rmp.separate_degree_cuts(fake) == 0);

  RelaxationResult r = rmp.solve_relaxation();
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.duals.gamma.size() == 1);
}

TEST_CASE("degree cut respects the violation threshold") {
  Fixture f(testutil::triangle_with_interior());
  RmpState rmp(f.ps, f.wi, f.table, f.polyset);
  const int n = f.ps.size();
  std::vector<double> fake(static_cast<size_t>(edge_count(n)), 0.0);
  fake[static_cast<size_t>(edge_index(EdgeId(0, 3), n))] = 2.95;
  CHECK(rmp.separate_degree_cuts(fake) == 0);  // violation 0.05 < 0.1

  // convex position: no interior points, never a cut
  Fixture sq(testutil::square());
  RmpState rmp2(sq.ps, sq.wi, sq.table, sq.polyset);
  std::vector<double> zeros(static_cast<size_t>(edge_count(4)), 0.0);
  CHECK(rmp2.separate_degree_cuts(zeros) == 0);
}
