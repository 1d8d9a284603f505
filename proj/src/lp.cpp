#include "mcp/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mcp {

namespace {

// Variable handle: v >= 0 is structural column v, v < 0 is the logical
// variable of row (-v - 1).
inline int logical_var(int row) { return -row - 1; }
inline bool is_logical(int v) { return v < 0; }
inline int logical_row(int v) { return -v - 1; }

struct Eta {
  int row;
  Eigen::VectorXd w;
};

}  // namespace

struct LpModel::Impl {
  std::vector<double> cost, lo, hi;
  std::vector<std::vector<SparseEntry>> cols;
  std::vector<RowRelation> rel;
  std::vector<double> rhs;
  Params params;

  std::vector<VarStatus> struct_status;
  std::vector<VarStatus> logical_status;
  std::vector<int> basic;   // var per basis slot; order matches lu/etas
  bool basis_dirty = true;  // factorization must be rebuilt before pivoting

  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  std::vector<Eta> etas;
  Eigen::VectorXd x_basic;

  LpSolution sol;

  int m() const { return static_cast<int>(rhs.size()); }
  int n() const { return static_cast<int>(cost.size()); }

  double var_cost(int v) const { return is_logical(v) ? 0.0 : cost[static_cast<size_t>(v)]; }

  double var_lo(int v) const {
    if (!is_logical(v)) return lo[static_cast<size_t>(v)];
    switch (rel[static_cast<size_t>(logical_row(v))]) {
      case RowRelation::GreaterEqual: return -kLpInfinity;
      default: return 0.0;
    }
  }

  double var_hi(int v) const {
    if (!is_logical(v)) return hi[static_cast<size_t>(v)];
    switch (rel[static_cast<size_t>(logical_row(v))]) {
      case RowRelation::LessEqual: return kLpInfinity;
      default: return 0.0;
    }
  }

  VarStatus& var_status(int v) {
    return is_logical(v) ? logical_status[static_cast<size_t>(logical_row(v))]
                         : struct_status[static_cast<size_t>(v)];
  }

  double nonbasic_value(int v) {
    double l = var_lo(v), h = var_hi(v);
    if (var_status(v) == VarStatus::AtUpper) return h;
    if (l <= -kLpInfinity) return h < kLpInfinity ? h : 0.0;
    return l;
  }

  void append_var_column(Eigen::VectorXd& out, int v, double scale) const {
    if (is_logical(v)) {
      out[logical_row(v)] += scale;
    } else {
      for (const SparseEntry& e : cols[static_cast<size_t>(v)]) out[e.index] += scale * e.value;
    }
  }

  Eigen::VectorXd var_column(int v) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m());
    append_var_column(a, v, 1.0);
    return a;
  }

  void reset_to_slack_basis() {
    struct_status.assign(static_cast<size_t>(n()), VarStatus::AtLower);
    for (int j = 0; j < n(); ++j) {
      if (lo[static_cast<size_t>(j)] <= -kLpInfinity && hi[static_cast<size_t>(j)] < kLpInfinity) {
        struct_status[static_cast<size_t>(j)] = VarStatus::AtUpper;
      }
    }
    logical_status.assign(static_cast<size_t>(m()), VarStatus::Basic);
    basis_dirty = true;
  }

  void rebuild_basic_list() {
    basic.clear();
    for (int r = 0; r < m(); ++r) {
      if (logical_status[static_cast<size_t>(r)] == VarStatus::Basic) {
        basic.push_back(logical_var(r));
      }
    }
    for (int j = 0; j < n(); ++j) {
      if (struct_status[static_cast<size_t>(j)] == VarStatus::Basic) basic.push_back(j);
    }
  }

  // Rebuilds the basic list and factorizes. False if singular or mis-sized.
  bool factorize() {
    rebuild_basic_list();
    if (static_cast<int>(basic.size()) != m()) return false;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m(), m());
    for (int s = 0; s < m(); ++s) {
      int v = basic[static_cast<size_t>(s)];
      if (is_logical(v)) {
        B(logical_row(v), s) = 1.0;
      } else {
        for (const SparseEntry& e : cols[static_cast<size_t>(v)]) B(e.index, s) = e.value;
      }
    }
    lu.compute(B);
    etas.clear();
    if (m() > 0) {
      Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
      double dmax = std::max(d.maxCoeff(), 1.0);
      if (d.minCoeff() <= 1e-13 * dmax) return false;
    }
    basis_dirty = false;
    return true;
  }

  Eigen::VectorXd ftran(const Eigen::VectorXd& a) const {
    Eigen::VectorXd v = lu.solve(a);
    for (const Eta& e : etas) {
      double t = v[e.row] / e.w[e.row];
      if (t != 0.0) v -= t * e.w;
      v[e.row] = t;
    }
    return v;
  }

  Eigen::VectorXd btran(const Eigen::VectorXd& c) const {
    Eigen::VectorXd v = c;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = it->w.dot(v);
      v[it->row] = (v[it->row] - (s - it->w[it->row] * v[it->row])) / it->w[it->row];
    }
    return lu.transpose().solve(v);
  }

  void recompute_x_basic() {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(m());
    for (int i = 0; i < m(); ++i) r[i] = rhs[static_cast<size_t>(i)];
    for (int j = 0; j < n(); ++j) {
      if (struct_status[static_cast<size_t>(j)] == VarStatus::Basic) continue;
      double v = nonbasic_value(j);
      if (v != 0.0) append_var_column(r, j, -v);
    }
    for (int rr = 0; rr < m(); ++rr) {
      if (logical_status[static_cast<size_t>(rr)] == VarStatus::Basic) continue;
      double v = nonbasic_value(logical_var(rr));
      if (v != 0.0) r[rr] -= v;
    }
    x_basic = ftran(r);
  }

  void ensure_factorized() {
    if (!basis_dirty && static_cast<int>(basic.size()) == m()) return;
    if (!factorize()) {
      reset_to_slack_basis();
      bool ok = factorize();
      assert(ok);
      (void)ok;
    }
  }

  void simplex_loop();
  void finish_solution();
};

LpModel::LpModel() : impl_(std::make_unique<Impl>()) {}
LpModel::~LpModel() = default;
LpModel::LpModel(LpModel&&) noexcept = default;
LpModel& LpModel::operator=(LpModel&&) noexcept = default;

int LpModel::add_column(const LpColumnDef& def) {
  Impl& im = *impl_;
  if (def.lo > def.hi) throw std::invalid_argument("column bounds lo > hi");
  for (const SparseEntry& e : def.entries) {
    if (e.index < 0 || e.index >= im.m()) throw std::out_of_range("row index in column");
  }
  im.cost.push_back(def.cost);
  im.lo.push_back(def.lo);
  im.hi.push_back(def.hi);
  im.cols.push_back(def.entries);
  im.struct_status.push_back(def.lo <= -kLpInfinity && def.hi < kLpInfinity
                                 ? VarStatus::AtUpper
                                 : VarStatus::AtLower);
  // previous basis stays primal feasible and the factorization untouched
  return im.n() - 1;
}

void LpModel::add_columns(const std::vector<LpColumnDef>& defs) {
  for (const LpColumnDef& d : defs) add_column(d);
}

int LpModel::add_row(const LpRowDef& def) {
  Impl& im = *impl_;
  for (const SparseEntry& e : def.entries) {
    if (e.index < 0 || e.index >= im.n()) throw std::out_of_range("column index in row");
  }
  int r = im.m();
  im.rel.push_back(def.rel);
  im.rhs.push_back(def.rhs);
  for (const SparseEntry& e : def.entries) {
    im.cols[static_cast<size_t>(e.index)].push_back(SparseEntry{r, e.value});
  }
  im.logical_status.push_back(VarStatus::Basic);
  im.basis_dirty = true;
  return r;
}

void LpModel::add_rows(const std::vector<LpRowDef>& defs) {
  for (const LpRowDef& d : defs) add_row(d);
}

void LpModel::fix_column_bounds(int col, double lo, double hi) {
  Impl& im = *impl_;
  if (lo > hi) throw std::invalid_argument("lo > hi");
  im.lo[static_cast<size_t>(col)] = lo;
  im.hi[static_cast<size_t>(col)] = hi;
  VarStatus& st = im.struct_status[static_cast<size_t>(col)];
  if (st == VarStatus::AtUpper && hi >= kLpInfinity) st = VarStatus::AtLower;
  if (st == VarStatus::AtLower && lo <= -kLpInfinity) st = VarStatus::AtUpper;
}

int LpModel::num_cols() const { return impl_->n(); }
int LpModel::num_rows() const { return impl_->m(); }
double LpModel::column_cost(int col) const { return impl_->cost[static_cast<size_t>(col)]; }
std::pair<double, double> LpModel::column_bounds(int col) const {
  return {impl_->lo[static_cast<size_t>(col)], impl_->hi[static_cast<size_t>(col)]};
}

LpModel::Params& LpModel::params() { return impl_->params; }

LpBasis LpModel::basis() const { return LpBasis{impl_->struct_status, impl_->logical_status}; }

void LpModel::set_basis(const LpBasis& b) {
  Impl& im = *impl_;
  im.struct_status.assign(static_cast<size_t>(im.n()), VarStatus::AtLower);
  for (size_t j = 0; j < b.structural.size() && j < im.struct_status.size(); ++j) {
    im.struct_status[j] = b.structural[j];
  }
  im.logical_status.assign(static_cast<size_t>(im.m()), VarStatus::Basic);
  for (size_t r = 0; r < b.logical.size() && r < im.logical_status.size(); ++r) {
    im.logical_status[r] = b.logical[r];
  }
  im.basis_dirty = true;
}

const LpSolution& LpModel::last_solution() const { return impl_->sol; }

const LpSolution& LpModel::solve(const std::optional<LpBasis>& hint) {
  Impl& im = *impl_;
  if (hint) set_basis(*hint);
  im.ensure_factorized();
  im.simplex_loop();
  return im.sol;
}

void LpModel::Impl::simplex_loop() {
  const int rows = m();
  const int ncols = n();
  const long max_iters = params.max_iterations > 0 ? params.max_iterations
                                                   : 50000 + 20L * (rows + ncols);
  const long bland_threshold = 10L * (rows + ncols);

  recompute_x_basic();
  sol.iterations = 0;
  long degenerate_streak = 0;
  bool bland = false;
  int pivots_since_refactor = 0;

  Eigen::VectorXd cb(rows), y(rows);
  std::vector<double> basic_lo(static_cast<size_t>(rows)), basic_hi(static_cast<size_t>(rows));

  // Bland entering order: structurals by index, then logicals by row.
  auto bland_key = [&](int v) { return is_logical(v) ? ncols + logical_row(v) : v; };

  while (true) {
    if (sol.iterations >= max_iters) {
      sol.status = LpStatus::IterationLimit;
      finish_solution();
      return;
    }

    for (int i = 0; i < rows; ++i) {
      int v = basic[static_cast<size_t>(i)];
      basic_lo[static_cast<size_t>(i)] = var_lo(v);
      basic_hi[static_cast<size_t>(i)] = var_hi(v);
    }

    // Composite rule: minimize total bound violation of the basis while any
    // exists, the true objective otherwise.
    bool phase1 = false;
    for (int i = 0; i < rows && !phase1; ++i) {
      phase1 = x_basic[i] < basic_lo[static_cast<size_t>(i)] - params.feas_tol ||
               x_basic[i] > basic_hi[static_cast<size_t>(i)] + params.feas_tol;
    }

    for (int i = 0; i < rows; ++i) {
      if (phase1) {
        if (x_basic[i] < basic_lo[static_cast<size_t>(i)] - params.feas_tol) {
          cb[i] = -1.0;
        } else if (x_basic[i] > basic_hi[static_cast<size_t>(i)] + params.feas_tol) {
          cb[i] = 1.0;
        } else {
          cb[i] = 0.0;
        }
      } else {
        cb[i] = var_cost(basic[static_cast<size_t>(i)]);
      }
    }
    y = btran(cb);

    int entering = 0;
    bool have_entering = false;
    double best_score = 0.0;
    int best_key = std::numeric_limits<int>::max();
    int dir = 0;
    auto consider = [&](int v) {
      if (var_status(v) == VarStatus::Basic) return;
      double l = var_lo(v), h = var_hi(v);
      if (l == h) return;
      double d = phase1 ? 0.0 : var_cost(v);
      if (is_logical(v)) {
        d -= y[logical_row(v)];
      } else {
        for (const SparseEntry& e : cols[static_cast<size_t>(v)]) d -= y[e.index] * e.value;
      }
      int want = 0;
      if (var_status(v) == VarStatus::AtLower && d < -params.opt_tol) want = 1;
      if (var_status(v) == VarStatus::AtUpper && d > params.opt_tol) want = -1;
      if (!want) return;
      if (bland) {
        if (bland_key(v) < best_key) {
          best_key = bland_key(v);
          entering = v;
          dir = want;
          have_entering = true;
        }
      } else if (std::abs(d) > best_score * (1.0 + 1e-12) || !have_entering) {
        best_score = std::abs(d);
        entering = v;
        dir = want;
        have_entering = true;
      }
    };
    for (int j = 0; j < ncols; ++j) consider(j);
    for (int r = 0; r < rows; ++r) consider(logical_var(r));

    if (!have_entering) {
      sol.status = phase1 ? LpStatus::Infeasible : LpStatus::Optimal;
      finish_solution();
      return;
    }

    Eigen::VectorXd w = ftran(var_column(entering));

    // Ratio test: entering moves by t*dir, basics by -dir*w[i]*t. The step
    // is limited by the entering bound span (flip) and by basic variables
    // reaching a bound; in phase 1 an out-of-bounds basic blocks at the
    // bound it is approaching.
    double span = var_hi(entering) - var_lo(entering);
    double t_best = span;  // may be +inf
    int leave_slot = -1;
    bool leave_at_upper = false;
    double best_piv = 0.0;
    int best_leave_key = std::numeric_limits<int>::max();
    for (int i = 0; i < rows; ++i) {
      double delta = -dir * w[i];
      if (std::abs(delta) <= params.pivot_tol) continue;
      double xl = basic_lo[static_cast<size_t>(i)], xh = basic_hi[static_cast<size_t>(i)];
      double xi = x_basic[i];
      double t;
      bool to_upper;
      if (xi < xl - params.feas_tol) {
        if (delta <= 0) continue;  // moving further below its range
        t = (xl - xi) / delta;
        to_upper = false;
      } else if (xi > xh + params.feas_tol) {
        if (delta >= 0) continue;
        t = (xh - xi) / delta;
        to_upper = true;
      } else if (delta > 0) {
        if (xh >= kLpInfinity) continue;
        t = (xh - xi) / delta;
        to_upper = true;
      } else {
        if (xl <= -kLpInfinity) continue;
        t = (xl - xi) / delta;
        to_upper = false;
      }
      if (t < 0) t = 0;
      bool take;
      if (t < t_best - 1e-12) {
        take = true;
      } else if (leave_slot != -1 && t <= t_best + 1e-12) {
        take = bland ? bland_key(basic[static_cast<size_t>(i)]) < best_leave_key
                     : std::abs(w[i]) > best_piv;
      } else {
        take = false;
      }
      if (take) {
        t_best = std::min(t_best, t);
        leave_slot = i;
        leave_at_upper = to_upper;
        best_piv = std::abs(w[i]);
        best_leave_key = bland_key(basic[static_cast<size_t>(i)]);
      }
    }

    if (t_best >= kLpInfinity) {
      // a strictly improving unblocked ray; cannot happen while minimizing
      // infeasibility
      assert(!phase1);
      sol.status = phase1 ? LpStatus::Infeasible : LpStatus::Unbounded;
      finish_solution();
      return;
    }

    ++sol.iterations;
    if (t_best <= 1e-12) {
      if (++degenerate_streak > bland_threshold) bland = true;
    } else {
      degenerate_streak = 0;
    }

    if (leave_slot == -1) {
      // bound flip, no basis change
      VarStatus& st = var_status(entering);
      x_basic -= (dir * t_best) * w;
      st = st == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      continue;
    }

    double enter_val = nonbasic_value(entering) + dir * t_best;
    int leaving = basic[static_cast<size_t>(leave_slot)];
    x_basic -= (dir * t_best) * w;
    x_basic[leave_slot] = enter_val;
    var_status(leaving) = leave_at_upper ? VarStatus::AtUpper : VarStatus::AtLower;
    var_status(entering) = VarStatus::Basic;
    basic[static_cast<size_t>(leave_slot)] = entering;
    etas.push_back(Eta{leave_slot, std::move(w)});

    if (++pivots_since_refactor >= params.refactor_interval) {
      if (!factorize()) {
        reset_to_slack_basis();
        bool ok = factorize();
        assert(ok);
        (void)ok;
      }
      recompute_x_basic();
      pivots_since_refactor = 0;
    }
  }
}

void LpModel::Impl::finish_solution() {
  const int rows = m();
  const int ncols = n();
  sol.primal.assign(static_cast<size_t>(ncols), 0.0);
  sol.dual.assign(static_cast<size_t>(rows), 0.0);
  sol.reduced_cost.assign(static_cast<size_t>(ncols), 0.0);

  for (int j = 0; j < ncols; ++j) {
    if (struct_status[static_cast<size_t>(j)] != VarStatus::Basic) {
      sol.primal[static_cast<size_t>(j)] = nonbasic_value(j);
    }
  }
  for (int i = 0; i < rows; ++i) {
    int v = basic[static_cast<size_t>(i)];
    if (!is_logical(v)) sol.primal[static_cast<size_t>(v)] = x_basic[i];
  }

  Eigen::VectorXd cb(rows);
  for (int i = 0; i < rows; ++i) cb[i] = var_cost(basic[static_cast<size_t>(i)]);
  Eigen::VectorXd y = btran(cb);

  double obj = 0.0;
  for (int j = 0; j < ncols; ++j) {
    obj += cost[static_cast<size_t>(j)] * sol.primal[static_cast<size_t>(j)];
    double d = cost[static_cast<size_t>(j)];
    for (const SparseEntry& e : cols[static_cast<size_t>(j)]) d -= y[e.index] * e.value;
    sol.reduced_cost[static_cast<size_t>(j)] = d;
  }
  for (int i = 0; i < rows; ++i) sol.dual[static_cast<size_t>(i)] = y[i];
  sol.objective = obj;
}

void LpModel::export_lp_text(std::ostream& os) const {
  const Impl& im = *impl_;
  os << "Minimize\n obj:";
  for (int j = 0; j < im.n(); ++j) {
    double c = im.cost[static_cast<size_t>(j)];
    if (c != 0.0) os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << j;
  }
  os << "\nSubject To\n";
  std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(im.m()));
  for (int j = 0; j < im.n(); ++j) {
    for (const SparseEntry& e : im.cols[static_cast<size_t>(j)]) {
      rows[static_cast<size_t>(e.index)].emplace_back(j, e.value);
    }
  }
  for (int r = 0; r < im.m(); ++r) {
    os << " r" << r << ":";
    for (const auto& [j, v] : rows[static_cast<size_t>(r)]) {
      os << (v >= 0 ? " + " : " - ") << std::abs(v) << " x" << j;
    }
    switch (im.rel[static_cast<size_t>(r)]) {
      case RowRelation::Equal: os << " = "; break;
      case RowRelation::LessEqual: os << " <= "; break;
      case RowRelation::GreaterEqual: os << " >= "; break;
    }
    os << im.rhs[static_cast<size_t>(r)] << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < im.n(); ++j) {
    double l = im.lo[static_cast<size_t>(j)], h = im.hi[static_cast<size_t>(j)];
    os << " ";
    if (l <= -kLpInfinity && h >= kLpInfinity) {
      os << "x" << j << " free";
    } else if (l <= -kLpInfinity) {
      os << "-inf <= x" << j << " <= " << h;
    } else if (h >= kLpInfinity) {
      os << "x" << j << " >= " << l;
    } else {
      os << l << " <= x" << j << " <= " << h;
    }
    os << "\n";
  }
  os << "End\n";
}

}  // namespace mcp
