#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace mcp {

enum class RowRelation : std::int8_t { Equal, LessEqual, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline constexpr double kLpInfinity = 1e100;

enum class VarStatus : std::int8_t { AtLower, AtUpper, Basic };

/// Snapshot of a simplex basis. Columns appended after the snapshot default
/// to nonbasic-at-lower; rows appended after it get their logical variable
/// basic.
struct LpBasis {
  std::vector<VarStatus> structural;
  std::vector<VarStatus> logical;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;        // per structural column
  std::vector<double> dual;          // per row
  std::vector<double> reduced_cost;  // per structural column
  long iterations = 0;
};

struct SparseEntry {
  int index;  // row for columns, column for rows
  double value;
};

struct LpColumnDef {
  double cost = 0.0;
  double lo = 0.0;
  double hi = kLpInfinity;
  std::vector<SparseEntry> entries;
};

struct LpRowDef {
  RowRelation rel = RowRelation::Equal;
  double rhs = 0.0;
  std::vector<SparseEntry> entries;
};

/// A minimize-sense LP with bounded columns and =/<=/>= rows, solved by a
/// bounded-variable revised primal simplex over a dense LU factorization
/// with product-form updates. The model is stateful: the factorization and
/// basis survive column additions, which keeps re-optimization cheap inside
/// column-generation loops.
class LpModel {
 public:
  struct Params {
    double feas_tol = 1e-7;
    double opt_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_interval = 100;
    long max_iterations = -1;  // -1: derived from model size
  };

  LpModel();
  ~LpModel();
  LpModel(LpModel&&) noexcept;
  LpModel& operator=(LpModel&&) noexcept;
  LpModel(const LpModel&) = delete;
  LpModel& operator=(const LpModel&) = delete;

  int add_column(const LpColumnDef& def);
  void add_columns(const std::vector<LpColumnDef>& defs);
  int add_row(const LpRowDef& def);
  void add_rows(const std::vector<LpRowDef>& defs);
  void fix_column_bounds(int col, double lo, double hi);

  int num_cols() const;
  int num_rows() const;
  double column_cost(int col) const;
  std::pair<double, double> column_bounds(int col) const;

  /// Re-optimizes from the internal basis (or the hint, when given).
  const LpSolution& solve(const std::optional<LpBasis>& hint = std::nullopt);
  const LpSolution& last_solution() const;

  LpBasis basis() const;
  void set_basis(const LpBasis& b);

  Params& params();

  /// Plain-text export of the current model (LP file format).
  void export_lp_text(std::ostream& os) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Free-function form of the solver entry point.
inline LpSolution solve(LpModel& model, const std::optional<LpBasis>& hint = std::nullopt) {
  return model.solve(hint);
}

}  // namespace mcp
