#include "doctest.h"

#include <algorithm>
#include <set>

#include "mcp/geometry.hpp"
#include "testutil.hpp"

using namespace mcp;

TEST_CASE("orientation basics") {
  CHECK(orientation({0, 0}, {1, 0}, {1, 1}) == Orientation::Positive);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == Orientation::Zero);
  CHECK(orientation({0, 0}, {1, 1}, {2, 0}) == Orientation::Negative);
}

TEST_CASE("orientation antisymmetry and cyclic invariance") {
  testutil::SplitMix64 rng(7);
  for (int it = 0; it < 200; ++it) {
    Point k{static_cast<Coord>(rng.below(2001)) - 1000,
            static_cast<Coord>(rng.below(2001)) - 1000};
    Point l{static_cast<Coord>(rng.below(2001)) - 1000,
            static_cast<Coord>(rng.below(2001)) - 1000};
    Point m{static_cast<Coord>(rng.below(2001)) - 1000,
            static_cast<Coord>(rng.below(2001)) - 1000};
    CHECK(static_cast<int>(orientation(k, l, m)) == -static_cast<int>(orientation(k, m, l)));
    CHECK(orientation(k, l, m) == orientation(l, m, k));
  }
}

TEST_CASE("orientation is exact at the coordinate cap") {
  const Coord c = kCoordLimit;
  // Slope mismatch of 1 ulp-like magnitude that double arithmetic misorders.
  CHECK(orientation({-c, -c}, {c - 1, c}, {c, c}) != Orientation::Zero);
  CHECK(orientation({-c, -c}, {0, 0}, {c, c}) == Orientation::Zero);
}

TEST_CASE("validate_general_position") {
  CHECK(!validate_general_position(PointSet({{0, 0}, {2, 0}, {1, 3}})).has_value());

  auto bad = validate_general_position(PointSet({{0, 0}, {1, 0}, {2, 0}, {0, 5}}));
  REQUIRE(bad.has_value());
  CHECK(bad->kind == GeneralPositionIssue::Kind::CollinearTriple);
  CHECK(bad->indices == std::array<int, 3>{0, 1, 2});

  auto dup = validate_general_position(PointSet({{0, 0}, {0, 0}, {1, 3}}));
  REQUIRE(dup.has_value());
  CHECK(dup->kind == GeneralPositionIssue::Kind::DuplicatePoint);

  auto few = validate_general_position(PointSet({{0, 0}, {1, 1}}));
  REQUIRE(few.has_value());
  CHECK(few->kind == GeneralPositionIssue::Kind::TooFewPoints);
}

TEST_CASE("convex hull examples") {
  CHECK(convex_hull(testutil::square()) == std::vector<int>{0, 1, 2, 3});
  CHECK(convex_hull(testutil::triangle_with_interior()) == std::vector<int>{0, 1, 2});
  CHECK(convex_hull(testutil::triangle()).size() == 3);
  CHECK(interior_points(testutil::triangle_with_interior()) == std::vector<int>{3});
}

TEST_CASE("convex hull starts at lexicographically least point") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PointSet ps = testutil::random_instance(seed, 12);
    std::vector<int> hull = convex_hull(ps);
    int lex = 0;
    for (int i = 1; i < ps.size(); ++i) {
      if (ps[i].x < ps[lex].x || (ps[i].x == ps[lex].x && ps[i].y < ps[lex].y)) lex = i;
    }
    CHECK(hull.front() == lex);
    for (size_t i = 0; i < hull.size(); ++i) {
      CHECK(ccw(ps[hull[i]], ps[hull[(i + 1) % hull.size()]],
                ps[hull[(i + 2) % hull.size()]]));
    }
  }
}

TEST_CASE("ccw_order splits around the reference ray") {
  PointSet ps({{0, 0}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}});
  CcwOrder co = ccw_order(0, Point{0, 100}, ps);
  CHECK(co.plus == std::vector<int>{1, 2});
  CHECK(co.minus == std::vector<int>{3, 4});
}

TEST_CASE("ccw_order on a ten point configuration") {
  // i at the origin; points 0..4 on or left of the upward ray, 5..8 right.
  PointSet ps({{0, 0},                                   // i = index 0
               {0, 4}, {-2, 3}, {-3, 0}, {-2, -2}, {-1, -3},  // 1..5
               {2, -4}, {3, -1}, {3, 1}, {2, 3}});            // 6..9
  REQUIRE(!validate_general_position(ps).has_value());
  CcwOrder co = ccw_order(0, Point{0, 100}, ps);
  CHECK(co.plus == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(co.minus == std::vector<int>{6, 7, 8, 9});
}

TEST_CASE("ccw_order is a permutation and n=3 works") {
  PointSet tri = testutil::triangle();
  CcwOrder co = ccw_order(1, Point{tri[1].x, 100}, tri);
  CHECK(co.plus.size() + co.minus.size() == 2);

  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    PointSet ps = testutil::random_instance(seed, 9);
    Coord ymax = 0;
    for (int i = 0; i < ps.size(); ++i) ymax = std::max(ymax, ps[i].y);
    for (int i = 0; i < ps.size(); ++i) {
      CcwOrder c = ccw_order(i, Point{ps[i].x, ymax + 1}, ps);
      std::set<int> seen(c.plus.begin(), c.plus.end());
      seen.insert(c.minus.begin(), c.minus.end());
      CHECK(static_cast<int>(seen.size()) == ps.size() - 1);
      CHECK(seen.count(i) == 0);
    }
  }
}

TEST_CASE("segments_cross") {
  PointSet sq = testutil::square();
  CHECK(segments_cross(EdgeId(0, 2), EdgeId(1, 3), sq));
  CHECK(!segments_cross(EdgeId(0, 1), EdgeId(1, 2), sq));
  CHECK(!segments_cross(EdgeId(0, 1), EdgeId(2, 3), sq));
}

TEST_CASE("crossing_pairs") {
  CHECK(crossing_pairs(testutil::square()).size() == 1);
  CHECK(crossing_pairs(testutil::triangle()).empty());
  CHECK(crossing_pairs(testutil::triangle_with_interior()).empty());

  SUBCASE("pairs never share endpoints and match the index") {
    for (std::uint64_t seed = 30; seed < 33; ++seed) {
      PointSet ps = testutil::random_instance(seed, 9);
      auto pairs = crossing_pairs(ps);
      for (const auto& [e, f] : pairs) {
        CHECK(e.a != f.a);
        CHECK(e.b != f.b);
        CHECK(e.a != f.b);
        CHECK(e.b != f.a);
      }
      CrossingIndex ci = CrossingIndex::build(ps);
      size_t total = 0;
      for (int e = 0; e < ci.num_edges(); ++e) total += static_cast<size_t>(ci.count(e));
      CHECK(total == 2 * pairs.size());
      for (const auto& [e, f] : pairs) {
        int ie = edge_index(e, ps.size()), fe = edge_index(f, ps.size());
        const auto& l = ci.crossings_of(ie);
        CHECK(std::find(l.begin(), l.end(), fe) != l.end());
      }
    }
  }
}

TEST_CASE("edge index round trip") {
  for (int n : {3, 4, 7, 12}) {
    for (int e = 0; e < edge_count(n); ++e) {
      EdgeId id = edge_from_index(e, n);
      CHECK(edge_index(id, n) == e);
      CHECK(id.a < id.b);
      CHECK(id.b < n);
    }
  }
}

TEST_CASE("twice_signed_area") {
  PointSet sq = testutil::square();
  CHECK(twice_signed_area({0, 1, 2, 3}, sq) == 200);
  CHECK(twice_signed_area({0, 3, 2, 1}, sq) == -200);
}
