#include "mcp/bnp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "mcp/compact.hpp"
#include "mcp/log.hpp"
#include "mcp/oracle.hpp"
#include "mcp/partition.hpp"
#include "mcp/pricing.hpp"

namespace mcp {

namespace {

constexpr double kIntTol = 1e-6;

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int value_ceil(double v) { return static_cast<int>(std::ceil(v - kIntTol)); }

struct TimeLimitReached {};

}  // namespace

LagrangianBounds lagrangian_bounds(double z, double most_negative_rc, double kappa) {
  assert(most_negative_rc <= 0.0);
  return LagrangianBounds{z + kappa * most_negative_rc, z / (1.0 - most_negative_rc)};
}

bool early_stop(double z, double unit_bound) {
  return value_ceil(z) == value_ceil(unit_bound);
}

DualVector smooth_duals(const DualVector& current, const std::optional<DualVector>& center,
                        double lambda) {
  if (!center || lambda == 0.0) return current;
  DualVector out = current;
  auto mix = [lambda](std::vector<double>& dst, const std::vector<double>& ctr) {
    size_t k = std::min(dst.size(), ctr.size());
    for (size_t i = 0; i < k; ++i) dst[i] += lambda * (ctr[i] - dst[i]);
  };
  mix(out.alpha, center->alpha);
  mix(out.beta, center->beta);
  mix(out.gamma, center->gamma);
  return out;
}

EdgeId select_branch_edge(const std::vector<double>& edge_values,
                          const std::vector<char>& branchable, const CrossingIndex& crossings,
                          int n) {
  double most = 0.5;
  for (int e = 0; e < edge_count(n); ++e) {
    if (!branchable[static_cast<size_t>(e)]) continue;
    double x = edge_values[static_cast<size_t>(e)];
    if (x <= kIntTol || x >= 1.0 - kIntTol) continue;
    most = std::min(most, std::abs(0.5 - x));
  }
  if (most >= 0.5) {
    throw NoFractionalEdge("no fractional edge variable although branching was requested");
  }
  int best = -1;
  int best_crossings = -1;
  for (int e = 0; e < edge_count(n); ++e) {
    if (!branchable[static_cast<size_t>(e)]) continue;
    double x = edge_values[static_cast<size_t>(e)];
    if (x <= kIntTol || x >= 1.0 - kIntTol) continue;
    if (std::abs(0.5 - x) > most + 0.1) continue;
    int c = crossings.count(e);
    if (c > best_crossings) {
      best_crossings = c;
      best = e;
    }
  }
  assert(best >= 0);
  return edge_from_index(best, n);
}

namespace {

struct Node {
  int id = 0;
  int parent = -1;
  int depth = 0;
  std::optional<std::pair<EdgeId, int>> label;  // branching decision, for the audit log
  std::vector<std::pair<EdgeId, int>> fixings;  // complete fixing set
  double bound = 0.0;
};

enum class NodeOutcome { Integral, Fractional, Pruned, Infeasible };

const char* outcome_name(NodeOutcome o) {
  switch (o) {
    case NodeOutcome::Integral: return "integral";
    case NodeOutcome::Fractional: return "fractional";
    case NodeOutcome::Pruned: return "pruned";
    case NodeOutcome::Infeasible: return "infeasible";
  }
  return "?";
}

class BnpSolver {
 public:
  BnpSolver(const PointSet& ps, const SolverConfig& config)
      : ps_(ps),
        config_(config),
        wi_(WedgeIndex::build(ps)),
        table_(EmptyTriangleTable::build(ps)),
        crossings_(CrossingIndex::build(ps)),
        pricer_(ps, wi_, table_),
        deadline_(now_seconds() + config.time_limit_seconds) {}

  SolveResult run() {
    const double t0 = now_seconds();
    SolveResult res;
    try {
      res = search();
      res.status = ProofStatus::Optimal;
    } catch (const TimeLimitReached&) {
      res.incumbent = incumbent_;
      res.status = ProofStatus::TimeLimit;
      res.bound = global_bound();
    }
    res.stats = stats_;
    res.stats.seconds = now_seconds() - t0;
    return res;
  }

 private:
  SolveResult search() {
    // initial primal solution from the Delaunay triangulation
    Triangulation del = delaunay(ps_, table_);
    {
      std::vector<EdgeId> allowed = del.edges;
      std::vector<EdgeId> flips = flip_edges(ps_, del);
      allowed.insert(allowed.end(), flips.begin(), flips.end());
      incumbent_ = restricted_mcpp(ps_, table_, allowed, del);
      incumbent_.source = "delaunay-heuristic";
    }

    std::vector<ConvexPolygon> seed = enumerate_empty_triangles(ps_, table_);
    if (config_.mode == SolverConfig::Mode::Full) {
      std::vector<ConvexPolygon> all = enumerate_polyset(ps_, table_, config_.polygon_cap);
      seed.insert(seed.end(), all.begin(), all.end());
    }
    seed.insert(seed.end(), incumbent_.partition.begin(), incumbent_.partition.end());
    rmp_.emplace(ps_, wi_, table_, seed);

    branchable_.assign(static_cast<size_t>(edge_count(ps_.size())), 1);
    for (int e = 0; e < edge_count(ps_.size()); ++e) {
      if (rmp_->hull_edge_mask()[static_cast<size_t>(e)]) branchable_[static_cast<size_t>(e)] = 0;
    }

    nodes_.push_back(Node{});
    open_.push({0.0, 0});

    while (true) {
      int id = next_node();
      if (id < 0) break;
      Node node = nodes_[static_cast<size_t>(id)];
      if (value_ceil(node.bound) >= incumbent_.value) {
        audit(node, NodeOutcome::Pruned, 0, 0);
        continue;
      }
      process(node);
      nodes_[static_cast<size_t>(id)].bound = node.bound;
      if (value_ceil(global_bound()) >= incumbent_.value) break;
    }

    SolveResult res;
    res.incumbent = incumbent_;
    res.bound = std::min(global_bound(), static_cast<double>(incumbent_.value));
    return res;
  }

  int next_node() {
    while (!plunge_.empty()) {
      int id = plunge_.back();
      plunge_.pop_back();
      if (nodes_[static_cast<size_t>(id)].bound < incumbent_.value - 1 + kIntTol) return id;
      open_.push({nodes_[static_cast<size_t>(id)].bound, id});
    }
    if (open_.empty()) return -1;
    int id = open_.top().second;
    open_.pop();
    return id;
  }

  double global_bound() const {
    double b = std::numeric_limits<double>::infinity();
    for (int id : plunge_) b = std::min(b, nodes_[static_cast<size_t>(id)].bound);
    auto copy = open_;
    while (!copy.empty()) {
      b = std::min(b, copy.top().first);
      copy.pop();
    }
    if (b == std::numeric_limits<double>::infinity()) b = incumbent_.value;
    return b;
  }

  void check_deadline() {
    if (now_seconds() > deadline_) throw TimeLimitReached{};
  }

  void apply_fixings(const Node& node) {
    for (int e = 0; e < edge_count(ps_.size()); ++e) {
      if (applied_[static_cast<size_t>(e)] != -1) {
        rmp_->unfix_edge(edge_from_index(e, ps_.size()));
        applied_[static_cast<size_t>(e)] = -1;
      }
    }
    forbidden_.clear();
    for (const auto& [e, v] : node.fixings) {
      rmp_->fix_edge(e, v);
      applied_[static_cast<size_t>(edge_index(e, ps_.size()))] = static_cast<char>(v);
      if (v == 0) forbidden_.push_back(e);
    }
  }

  void process(Node& node) {
    ++stats_.nodes;
    if (applied_.empty()) applied_.assign(static_cast<size_t>(edge_count(ps_.size())), -1);
    apply_fixings(node);

    long cols_here = 0, cuts_here = 0;
    RelaxationResult rel;
    bool pruned = false;

    while (true) {  // cut rounds
      while (true) {  // column generation
        check_deadline();
        rel = rmp_->solve_relaxation();
        if (rel.status == LpStatus::Infeasible) {
          audit(node, NodeOutcome::Infeasible, cols_here, cuts_here);
          return;
        }
        if (rel.status != LpStatus::Optimal) {
          throw std::runtime_error("master LP did not reach optimality");
        }
        ++stats_.pricing_rounds;

        if (config_.mode == SolverConfig::Mode::Full) {
          node.bound = std::max(node.bound, rel.objective);
          break;
        }

        pricer_.set_forbidden_edges(forbidden_, rel.duals);
        PricingResult exact = pricer_.price(
            rel.duals, [this](const std::vector<int>& key) { return rmp_->has_polygon(key); },
            config_.column_cap_per_round);
        double cbar = std::min(0.0, exact.min_reduced_cost);
        LagrangianBounds lb = lagrangian_bounds(rel.objective, cbar, incumbent_.value);
        node.bound = std::max(node.bound, std::max(lb.kappa_bound, lb.unit_bound));
        if (lb.unit_bound > best_center_bound_) {
          best_center_bound_ = lb.unit_bound;
          center_ = rel.duals;
        }
        if (value_ceil(node.bound) >= incumbent_.value) {
          pruned = true;
          break;
        }
        if (cbar >= -1e-6) break;  // pricing proves LP optimality
        if (early_stop(rel.objective, lb.unit_bound)) break;

        std::vector<PricedColumn> cols;
        if (config_.smoothing_lambda > 0.0 && center_) {
          DualVector stab = smooth_duals(rel.duals, center_, config_.smoothing_lambda);
          pricer_.set_forbidden_edges(forbidden_, stab);
          PricingResult smoothed = pricer_.price(
              stab, [this](const std::vector<int>& key) { return rmp_->has_polygon(key); },
              config_.column_cap_per_round);
          if (smoothed.columns.empty()) {
            ++stats_.mispricings;
            cols = std::move(exact.columns);
          } else {
            cols = std::move(smoothed.columns);
          }
        } else {
          cols = std::move(exact.columns);
        }

        long added = 0;
        for (const PricedColumn& c : cols) {
          if (rmp_->add_polygon_column(c.polygon) == RmpState::AddColumn::Added) ++added;
        }
        stats_.columns_generated += added;
        cols_here += added;
        if (added == 0) {
          // numerically possible when every candidate was already present;
          // the Lagrangian bound above remains valid
          log::debug("pricing round added no columns; stopping generation");
          break;
        }
      }
      if (pruned) break;

      int ncuts = 0;
      if (config_.degree_cuts && rel.status == LpStatus::Optimal) {
        ncuts = rmp_->separate_degree_cuts(rel.edge_values);
        stats_.cuts_added += ncuts;
        cuts_here += ncuts;
      }
      if (ncuts == 0) break;
    }

    if (node.id == 0) stats_.root_bound = node.bound;
    if (pruned) {
      audit(node, NodeOutcome::Pruned, cols_here, cuts_here);
      return;
    }

    bool integral = true;
    for (double u : rel.poly_values) {
      if (u > kIntTol && u < 1.0 - kIntTol) integral = false;
    }
    for (double x : rel.edge_values) {
      if (x > kIntTol && x < 1.0 - kIntTol) integral = false;
    }
    if (integral) {
      std::vector<ConvexPolygon> polys;
      for (size_t p = 0; p < rel.poly_values.size(); ++p) {
        if (rel.poly_values[p] > 0.5) polys.push_back(rmp_->polygons()[p]);
      }
      std::sort(polys.begin(), polys.end(), [](const ConvexPolygon& a, const ConvexPolygon& b) {
        return a.vertices < b.vertices;
      });
      PartitionCheck pc = check_partition(ps_, wi_, table_, polys);
      if (!pc.ok) {
        throw std::logic_error("integral master solution is not a valid partition: " + pc.error);
      }
      int value = static_cast<int>(polys.size());
      node.bound = std::max(node.bound, static_cast<double>(value));
      if (value < incumbent_.value) {
        incumbent_ = Incumbent{std::move(polys), value, "node-integral"};
        log::info("incumbent improved to " + std::to_string(value) + " (node-integral)");
      }
      audit(node, NodeOutcome::Integral, cols_here, cuts_here);
      return;
    }

    // primal heuristic from the fractional edge values
    {
      Triangulation greedy = greedy_triangulation(ps_, rel.edge_values, crossings_, table_);
      std::vector<EdgeId> allowed = greedy.edges;
      std::vector<EdgeId> flips = flip_edges(ps_, greedy);
      allowed.insert(allowed.end(), flips.begin(), flips.end());
      Incumbent cand = restricted_mcpp(ps_, table_, allowed, greedy);
      for (const ConvexPolygon& p : cand.partition) rmp_->add_polygon_column(p);
      if (cand.value < incumbent_.value) {
        cand.source = "lp-heuristic";
        incumbent_ = std::move(cand);
        log::info("incumbent improved to " + std::to_string(incumbent_.value) +
                  " (lp-heuristic)");
      }
      if (value_ceil(node.bound) >= incumbent_.value) {
        audit(node, NodeOutcome::Pruned, cols_here, cuts_here);
        return;
      }
    }

    EdgeId e = [&] {
      try {
        return select_branch_edge(rel.edge_values, branchable_node_mask(node), crossings_,
                                  ps_.size());
      } catch (const NoFractionalEdge&) {
        ++stats_.no_fractional_edge;
        std::ostringstream os;
        os << "node " << node.id << ": fractional polygons without a fractional edge";
        throw NoFractionalEdge(os.str());
      }
    }();

    audit(node, NodeOutcome::Fractional, cols_here, cuts_here, &e);

    // child with the edge forced in, crossings forced out
    {
      Node child;
      child.parent = node.id;
      child.depth = node.depth + 1;
      child.bound = node.bound;
      child.label = std::make_pair(e, 1);
      child.fixings = node.fixings;
      child.fixings.emplace_back(e, 1);
      bool conflict = false;
      for (int f : crossings_.crossings_of(edge_index(e, ps_.size()))) {
        EdgeId fe = edge_from_index(f, ps_.size());
        bool already_one = false, already_zero = false;
        for (const auto& [g, v] : node.fixings) {
          if (g == fe) ((v == 1) ? already_one : already_zero) = true;
        }
        if (rmp_->hull_edge_mask()[static_cast<size_t>(f)]) already_one = true;
        if (already_one) {
          conflict = true;
          break;
        }
        if (!already_zero) child.fixings.emplace_back(fe, 0);
      }
      child.id = static_cast<int>(nodes_.size());
      nodes_.push_back(std::move(child));
      if (conflict) {
        ++stats_.nodes;
        audit(nodes_.back(), NodeOutcome::Infeasible, 0, 0);
      } else {
        plunge_.push_back(nodes_.back().id);
      }
    }
    // child with the edge forbidden
    {
      Node child;
      child.parent = node.id;
      child.depth = node.depth + 1;
      child.bound = node.bound;
      child.label = std::make_pair(e, 0);
      child.fixings = node.fixings;
      child.fixings.emplace_back(e, 0);
      child.id = static_cast<int>(nodes_.size());
      nodes_.push_back(std::move(child));
      open_.push({nodes_.back().bound, nodes_.back().id});
    }
  }

  std::vector<char> branchable_node_mask(const Node& node) const {
    std::vector<char> mask = branchable_;
    for (const auto& [e, v] : node.fixings) {
      mask[static_cast<size_t>(edge_index(e, ps_.size()))] = 0;
    }
    return mask;
  }

  void audit(const Node& node, NodeOutcome outcome, long cols, long cuts,
             const EdgeId* branch = nullptr) {
    if (!config_.audit) return;
    std::ostream& os = *config_.audit;
    os << "{\"id\":" << node.id << ",\"parent\":" << node.parent << ",\"fixing\":";
    if (node.label) {
      os << "\"(" << node.label->first.a << "," << node.label->first.b << ")="
         << node.label->second << "\"";
    } else {
      os << "null";
    }
    os << ",\"bound\":" << node.bound << ",\"columns_added\":" << cols
       << ",\"cuts_added\":" << cuts << ",\"status\":\"" << outcome_name(outcome) << "\"";
    if (branch) {
      os << ",\"branch_edge\":\"(" << branch->a << "," << branch->b << ")\"";
    }
    os << "}\n";
  }

  const PointSet& ps_;
  SolverConfig config_;
  WedgeIndex wi_;
  EmptyTriangleTable table_;
  CrossingIndex crossings_;
  Pricer pricer_;
  std::optional<RmpState> rmp_;
  Incumbent incumbent_;
  SolveStats stats_;
  double deadline_;

  std::vector<Node> nodes_;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                      std::greater<>>
      open_;
  std::vector<int> plunge_;
  std::vector<char> branchable_;
  std::vector<char> applied_;
  std::vector<EdgeId> forbidden_;
  std::optional<DualVector> center_;
  double best_center_bound_ = -std::numeric_limits<double>::infinity();
};

SolveResult solve_compact_mode(const PointSet& ps, const SolverConfig& config) {
  const double t0 = now_seconds();
  EmptyTriangleTable table = EmptyTriangleTable::build(ps);
  Triangulation del = delaunay(ps, table);
  std::vector<EdgeId> allowed;
  for (int e = 0; e < edge_count(ps.size()); ++e) allowed.push_back(edge_from_index(e, ps.size()));
  CompactSolver solver(ps, std::move(allowed), table);
  CompactResult cr = solver.solve(config.time_limit_seconds, del.edges);

  SolveResult res;
  res.incumbent.partition = cr.faces;
  res.incumbent.value = static_cast<int>(cr.faces.size());
  res.incumbent.source = "compact";
  res.status = cr.status == CompactResult::Status::TimeCap ? ProofStatus::TimeLimit
                                                           : ProofStatus::Optimal;
  res.bound = res.status == ProofStatus::Optimal ? res.incumbent.value : cr.root_bound_faces;
  res.stats.nodes = cr.nodes;
  res.stats.root_bound = cr.root_bound_faces;
  res.stats.seconds = now_seconds() - t0;
  return res;
}

SolveResult solve_oracle_mode(const PointSet& ps, const SolverConfig& config) {
  (void)config;
  const double t0 = now_seconds();
  oracle::OracleResult orc = oracle::brute_force_optimum(ps);
  SolveResult res;
  res.incumbent.partition = orc.partition;
  res.incumbent.value = orc.value;
  res.incumbent.source = "oracle";
  res.status = ProofStatus::Optimal;
  res.bound = orc.value;
  res.stats.nodes = 1;
  res.stats.seconds = now_seconds() - t0;
  return res;
}

}  // namespace

SolveResult solve(const PointSet& ps, const SolverConfig& config) {
  assert(!validate_general_position(ps).has_value());
  switch (config.mode) {
    case SolverConfig::Mode::Compact:
      return solve_compact_mode(ps, config);
    case SolverConfig::Mode::Oracle:
      return solve_oracle_mode(ps, config);
    case SolverConfig::Mode::Full:
      if (ps.size() > 40) {
        throw std::invalid_argument("full mode preloads every polygon; capped at 40 points");
      }
      [[fallthrough]];
    case SolverConfig::Mode::Cg:
      break;
  }
  BnpSolver solver(ps, config);
  return solver.run();
}

}  // namespace mcp
