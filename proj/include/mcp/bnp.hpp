#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/heuristics.hpp"
#include "mcp/rmp.hpp"

namespace mcp {

struct SolverConfig {
  enum class Mode { Cg, Full, Compact, Oracle };
  Mode mode = Mode::Cg;
  double time_limit_seconds = 900.0;
  double smoothing_lambda = 0.55;  // in [0,1)
  int column_cap_per_round = 200;
  std::uint64_t rng_seed = 0;  // carried for reporting; the search itself is deterministic
  std::size_t polygon_cap = 5'000'000;
  bool degree_cuts = true;
  std::ostream* audit = nullptr;  // JSON-lines node log
};

enum class ProofStatus { Optimal, TimeLimit };

struct SolveStats {
  long nodes = 0;
  long pricing_rounds = 0;
  long columns_generated = 0;
  long cuts_added = 0;
  long mispricings = 0;
  long no_fractional_edge = 0;
  double root_bound = 0.0;
  double seconds = 0.0;
};

struct SolveResult {
  Incumbent incumbent;
  ProofStatus status = ProofStatus::Optimal;
  double bound = 0.0;  // global lower bound at exit
  SolveStats stats;
};

/// Node bounds available before pricing converges: the incumbent-scaled
/// Lagrangian bound and the unit-cost dual bound.
struct LagrangianBounds {
  double kappa_bound;
  double unit_bound;
};
LagrangianBounds lagrangian_bounds(double z, double most_negative_rc, double kappa);

/// Column generation may halt once the integer ceilings of the master value
/// and the unit dual bound coincide.
bool early_stop(double z, double unit_bound);

/// Wentges smoothing towards the best-bound center; entries the center does
/// not have yet (fresh cut rows) pass through unchanged.
DualVector smooth_duals(const DualVector& current, const std::optional<DualVector>& center,
                        double lambda);

struct NoFractionalEdge : std::logic_error {
  explicit NoFractionalEdge(const std::string& what) : std::logic_error(what) {}
};

/// Among unfixed fractional edges within 0.1 of the most fractional one,
/// picks the edge crossing the most others (ties by smallest edge id).
/// Throws NoFractionalEdge when every edge value is integral.
EdgeId select_branch_edge(const std::vector<double>& edge_values,
                          const std::vector<char>& branchable, const CrossingIndex& crossings,
                          int n);

/// Exact minimum convex partition solver. The point set must already be
/// validated.
SolveResult solve(const PointSet& ps, const SolverConfig& config);

}  // namespace mcp
