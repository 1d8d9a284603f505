#include "doctest.h"

#include <cmath>
#include <sstream>

#include "mcp/bnp.hpp"
#include "mcp/oracle.hpp"
#include "mcp/partition.hpp"
#include "testutil.hpp"

using namespace mcp;

TEST_CASE("lagrangian bound formulas") {
  SUBCASE("converged pricing pins both bounds to z") {
    LagrangianBounds b = lagrangian_bounds(7.25, 0.0, 9);
    CHECK(b.kappa_bound == doctest::Approx(7.25));
    CHECK(b.unit_bound == doctest::Approx(7.25));
  }
  SUBCASE("worked triple") {
    LagrangianBounds b = lagrangian_bounds(10.0, -1.0, 12.0);
    CHECK(b.kappa_bound == doctest::Approx(-2.0));
    CHECK(b.unit_bound == doctest::Approx(5.0));
  }
  SUBCASE("early stop fires when the ceilings meet") {
    LagrangianBounds b = lagrangian_bounds(3.2, -0.05, 100.0);
    CHECK(b.unit_bound == doctest::Approx(3.2 / 1.05));
    CHECK(early_stop(3.2, b.unit_bound));       // both ceilings are 4
    CHECK(!early_stop(3.2, 2.9));               // 4 vs 3
    CHECK(early_stop(3.0, 3.0));
  }
}

TEST_CASE("dual smoothing") {
  DualVector cur;
  cur.alpha = {0.0, 2.0};
  cur.beta = {1.0};
  DualVector best;
  best.alpha = {1.0, 2.0};
  best.beta = {0.0};
  best.gamma = {};

  SUBCASE("lambda zero returns the current duals") {
    DualVector s = smooth_duals(cur, best, 0.0);
    CHECK(s.alpha == cur.alpha);
  }
  SUBCASE("convex combination per entry") {
    DualVector s = smooth_duals(cur, best, 0.55);
    CHECK(s.alpha[0] == doctest::Approx(0.55));
    CHECK(s.alpha[1] == doctest::Approx(2.0));
    CHECK(s.beta[0] == doctest::Approx(0.45));
  }
  SUBCASE("missing center passes the current duals through") {
    DualVector s = smooth_duals(cur, std::nullopt, 0.55);
    CHECK(s.alpha == cur.alpha);
    CHECK(s.beta == cur.beta);
  }
  SUBCASE("entries newer than the center are unchanged") {
    cur.gamma = {4.0};
    DualVector s = smooth_duals(cur, best, 0.5);
    CHECK(s.gamma[0] == doctest::Approx(4.0));
  }
}

TEST_CASE("branch edge selection") {
  PointSet ps = testutil::random_instance(42, 6);
  CrossingIndex ci = CrossingIndex::build(ps);
  const int m = edge_count(6);
  std::vector<char> branchable(static_cast<size_t>(m), 1);

  // two edges with different crossing counts
  int lo = -1, hi = -1;
  for (int e = 0; e < m; ++e) {
    if (lo == -1 || ci.count(e) < ci.count(lo)) lo = e;
    if (hi == -1 || ci.count(e) > ci.count(hi)) hi = e;
  }
  REQUIRE(ci.count(hi) > ci.count(lo));

  SUBCASE("only the clearly fractional edge qualifies") {
    std::vector<double> x(static_cast<size_t>(m), 0.0);
    x[static_cast<size_t>(lo)] = 0.5;
    x[static_cast<size_t>(hi)] = 0.9;
    CHECK(select_branch_edge(x, branchable, ci, 6) == edge_from_index(lo, 6));
  }
  SUBCASE("within the window, more crossings win") {
    std::vector<double> x(static_cast<size_t>(m), 0.0);
    x[static_cast<size_t>(lo)] = 0.52;
    x[static_cast<size_t>(hi)] = 0.45;
    CHECK(select_branch_edge(x, branchable, ci, 6) == edge_from_index(hi, 6));
  }
  SUBCASE("all integral throws") {
    std::vector<double> x(static_cast<size_t>(m), 1.0);
    CHECK_THROWS_AS(select_branch_edge(x, branchable, ci, 6), NoFractionalEdge);
  }
}

TEST_CASE("solver on the worked instances") {
  SolverConfig cfg;
  cfg.time_limit_seconds = 60.0;

  SUBCASE("triangle in one node") {
    SolveResult r = solve(testutil::triangle(), cfg);
    CHECK(r.status == ProofStatus::Optimal);
    CHECK(r.incumbent.value == 1);
    CHECK(r.stats.nodes == 1);
  }
  SUBCASE("square is one quadrilateral") {
    SolveResult r = solve(testutil::square(), cfg);
    CHECK(r.incumbent.value == 1);
  }
  SUBCASE("interior point forces three") {
    SolveResult r = solve(testutil::triangle_with_interior(), cfg);
    CHECK(r.incumbent.value == 3);
    CHECK(r.bound == doctest::Approx(3.0));
  }
  SUBCASE("convex position solves at the root") {
    PointSet base = testutil::random_instance(4242, 16);
    std::vector<int> hull = convex_hull(base);
    std::vector<Point> pts;
    for (int h : hull) pts.push_back(base[h]);
    PointSet conv(pts);
    SolveResult r = solve(conv, cfg);
    CHECK(r.incumbent.value == 1);
    CHECK(r.stats.nodes == 1);
  }
}

TEST_CASE("solver matches the oracle on random instances") {
  SolverConfig cfg;
  cfg.time_limit_seconds = 60.0;
  for (std::uint64_t seed = 2000; seed < 2012; ++seed) {
    int n = 5 + static_cast<int>(seed % 6);
    PointSet ps = testutil::random_instance(seed, n);
    SolveResult r = solve(ps, cfg);
    REQUIRE(r.status == ProofStatus::Optimal);
    int want = oracle::brute_force_optimum(ps).value;
    CHECK(r.incumbent.value == want);
    CHECK(r.stats.no_fractional_edge == 0);

    WedgeIndex wi = WedgeIndex::build(ps);
    EmptyTriangleTable table = EmptyTriangleTable::build(ps);
    CHECK(check_partition(ps, wi, table, r.incumbent.partition).ok);
    // global sanity bound
    CHECK(r.incumbent.value <= (10 * n - 18 + 6) / 7);
  }
}

TEST_CASE("modes agree") {
  for (std::uint64_t seed = 2100; seed < 2104; ++seed) {
    PointSet ps = testutil::random_instance(seed, 10);
    SolverConfig cfg;
    cfg.time_limit_seconds = 120.0;

    cfg.mode = SolverConfig::Mode::Cg;
    SolveResult cg = solve(ps, cfg);
    cfg.mode = SolverConfig::Mode::Full;
    SolveResult full = solve(ps, cfg);
    cfg.mode = SolverConfig::Mode::Compact;
    SolveResult compact = solve(ps, cfg);
    cfg.mode = SolverConfig::Mode::Oracle;
    SolveResult orc = solve(ps, cfg);

    CHECK(cg.incumbent.value == orc.incumbent.value);
    CHECK(full.incumbent.value == orc.incumbent.value);
    CHECK(compact.incumbent.value == orc.incumbent.value);
  }
}

TEST_CASE("determinism of repeated runs") {
  PointSet ps = testutil::random_instance(2200, 12);
  SolverConfig cfg;
  cfg.time_limit_seconds = 120.0;
  SolveResult a = solve(ps, cfg);
  SolveResult b = solve(ps, cfg);
  CHECK(a.incumbent.value == b.incumbent.value);
  CHECK(a.bound == b.bound);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.pricing_rounds == b.stats.pricing_rounds);
  CHECK(a.stats.columns_generated == b.stats.columns_generated);
  CHECK(a.incumbent.partition.size() == b.incumbent.partition.size());
  for (size_t i = 0; i < a.incumbent.partition.size(); ++i) {
    CHECK(a.incumbent.partition[i].vertices == b.incumbent.partition[i].vertices);
  }
}

TEST_CASE("audit log records one line per processed node") {
  PointSet ps = testutil::random_instance(2300, 9);
  std::ostringstream audit;
  SolverConfig cfg;
  cfg.time_limit_seconds = 60.0;
  cfg.audit = &audit;
  SolveResult r = solve(ps, cfg);
  (void)r;
  std::istringstream in(audit.str());
  std::string line;
  long lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.find("\"id\":") != std::string::npos);
    CHECK(line.find("\"status\":") != std::string::npos);
  }
  CHECK(lines >= r.stats.nodes);  // pruned-at-dequeue nodes also get a line
}

TEST_CASE("smoothing off still solves correctly") {
  PointSet ps = testutil::random_instance(2400, 10);
  SolverConfig cfg;
  cfg.time_limit_seconds = 60.0;
  cfg.smoothing_lambda = 0.0;
  SolveResult r = solve(ps, cfg);
  CHECK(r.incumbent.value == oracle::brute_force_optimum(ps).value);
}

TEST_CASE("degree cuts toggle keeps correctness") {
  PointSet ps = testutil::random_instance(2500, 10);
  SolverConfig with;
  with.time_limit_seconds = 60.0;
  SolverConfig without = with;
  without.degree_cuts = false;
  SolveResult a = solve(ps, with);
  SolveResult b = solve(ps, without);
  CHECK(a.incumbent.value == b.incumbent.value);
  CHECK(a.stats.root_bound >= b.stats.root_bound - 1e-6);
}
