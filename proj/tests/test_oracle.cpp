#include "doctest.h"

#include <algorithm>
#include <set>

#include "mcp/oracle.hpp"
#include "mcp/partition.hpp"
#include "testutil.hpp"

using namespace mcp;

TEST_CASE("oracle optimum on worked instances") {
  CHECK(oracle::brute_force_optimum(testutil::triangle()).value == 1);
  CHECK(oracle::brute_force_optimum(testutil::square()).value == 1);
  CHECK(oracle::brute_force_optimum(testutil::triangle_with_interior()).value == 3);
}

TEST_CASE("oracle rejects oversized instances") {
  PointSet big = testutil::random_instance(3, 15);
  CHECK_THROWS_AS(oracle::brute_force_optimum(big, 14), CapExceeded);
}

TEST_CASE("oracle value is invariant under relabeling and rotation") {
  for (std::uint64_t seed = 1400; seed < 1403; ++seed) {
    PointSet ps = testutil::random_instance(seed, 8);
    int base = oracle::brute_force_optimum(ps).value;

    // reverse the labels
    std::vector<Point> rev(ps.points().rbegin(), ps.points().rend());
    CHECK(oracle::brute_force_optimum(PointSet(rev)).value == base);

    // rotate the plane a quarter turn: (x, y) -> (-y, x)
    std::vector<Point> rot;
    for (const Point& p : ps.points()) rot.push_back(Point{-p.y, p.x});
    CHECK(oracle::brute_force_optimum(PointSet(rot)).value == base);
  }
}

TEST_CASE("arrangement faces of the worked instances") {
  oracle::Arrangement tri = oracle::brute_force_arrangement_faces(testutil::triangle());
  CHECK(tri.faces.size() == 1);
  CHECK(tri.faces[0].incident_points == std::vector<int>{0, 1, 2});

  oracle::Arrangement sq = oracle::brute_force_arrangement_faces(testutil::square());
  CHECK(sq.faces.size() == 4);

  // the spoke arrangement of a triangle with one interior point has three
  // bounded faces (no two of its six segments cross)
  oracle::Arrangement ti =
      oracle::brute_force_arrangement_faces(testutil::triangle_with_interior());
  CHECK(ti.faces.size() == 3);
  CHECK(ti.num_vertices == 4);
  CHECK(ti.num_edges == 6);
}

TEST_CASE("wedge index agrees with the arrangement oracle") {
  for (std::uint64_t seed = 1500; seed < 1504; ++seed) {
    PointSet ps = testutil::random_instance(seed, 7);
    WedgeIndex wi = WedgeIndex::build(ps);
    oracle::Arrangement arr = oracle::brute_force_arrangement_faces(ps);

    // every face is one wedge of each incident input point, and the wedge
    // counts per owner match exactly
    std::vector<int> per_owner(static_cast<size_t>(ps.size()), 0);
    long tags = 0;
    std::set<std::pair<int, int>> seen;  // (owner, slot)
    for (const oracle::ArrangementFace& f : arr.faces) {
      for (int i : f.incident_points) {
        ++per_owner[static_cast<size_t>(i)];
        ++tags;
        int slot = oracle::wedge_slot_of_sample(wi, ps, i, f.sample);
        REQUIRE(slot >= 0);
        CHECK(slot < wi.wedge_count(i));
        CHECK(seen.insert({i, slot}).second);  // one face per slot
      }
    }
    CHECK(tags == wi.total());
    for (int i = 0; i < ps.size(); ++i) CHECK(per_owner[static_cast<size_t>(i)] == wi.wedge_count(i));
  }
}

TEST_CASE("triangle wedge ranges equal brute-force face containment") {
  for (std::uint64_t seed = 1600; seed < 1604; ++seed) {
    PointSet ps = testutil::random_instance(seed, 7);
    WedgeIndex wi = WedgeIndex::build(ps);
    EmptyTriangleTable table = EmptyTriangleTable::build(ps);
    oracle::Arrangement arr = oracle::brute_force_arrangement_faces(ps);

    for (const ConvexPolygon& t : enumerate_empty_triangles(ps, table)) {
      // containment by the range machinery
      std::set<std::pair<int, int>> by_ranges;
      for (const WedgeRange& r : wi.ranges_of_polygon(t.vertices)) {
        for (int s = 0; s < r.len; ++s) {
          by_ranges.insert({r.owner, (r.first + s) % wi.wedge_count(r.owner)});
        }
      }
      // containment by rational sampling of the arrangement
      std::set<std::pair<int, int>> by_faces;
      for (const oracle::ArrangementFace& f : arr.faces) {
        if (!oracle::face_in_polygon(f.sample, t.vertices, ps)) continue;
        for (int i : f.incident_points) {
          if (std::find(t.vertices.begin(), t.vertices.end(), i) == t.vertices.end()) continue;
          by_faces.insert({i, oracle::wedge_slot_of_sample(wi, ps, i, f.sample)});
        }
      }
      CHECK(by_ranges == by_faces);
    }
  }
}

TEST_CASE("polygon wedge cover equals brute-force face containment") {
  for (std::uint64_t seed = 1700; seed < 1703; ++seed) {
    PointSet ps = testutil::random_instance(seed, 7);
    WedgeIndex wi = WedgeIndex::build(ps);
    EmptyTriangleTable table = EmptyTriangleTable::build(ps);
    oracle::Arrangement arr = oracle::brute_force_arrangement_faces(ps);

    for (const ConvexPolygon& p : enumerate_polyset(ps, table)) {
      std::vector<int> cover = wi.wedges_of_polygon(p.vertices);
      std::set<int> direct(cover.begin(), cover.end());
      std::set<int> sampled;
      for (const oracle::ArrangementFace& f : arr.faces) {
        if (!oracle::face_in_polygon(f.sample, p.vertices, ps)) continue;
        for (int i : f.incident_points) {
          if (std::find(p.vertices.begin(), p.vertices.end(), i) == p.vertices.end()) continue;
          sampled.insert(wi.global_id(i, oracle::wedge_slot_of_sample(wi, ps, i, f.sample)));
        }
      }
      CHECK(direct == sampled);
    }
  }
}
