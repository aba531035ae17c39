#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flipflow/rational.hpp"

namespace flipflow {

enum class Rel { LE, EQ, GE };

struct LpRow {
  std::vector<Rat> coeffs;  // dense, one per variable
  Rel rel = Rel::LE;
  Rat rhs;
  std::string tag;  // provenance: which family member / bound made the row
};

// Inequality-form program over free rational variables, objective sense max.
struct LinearProgram {
  std::vector<std::string> var_names;
  std::vector<LpRow> rows;
  std::vector<Rat> objective;

  explicit LinearProgram(std::vector<std::string> names)
      : var_names(std::move(names)),
        objective(var_names.size(), Rat(0)) {}

  int num_vars() const { return static_cast<int>(var_names.size()); }
  void add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs, std::string tag);
};

struct VertexPoint {
  std::vector<Rat> values;
  std::vector<int> tight_rows;  // indices into LinearProgram::rows
  int basis_rank = 0;           // rank of the tight rows' coefficient matrix

  bool is_vertex(int num_vars) const { return basis_rank == num_vars; }
};

bool is_integral(const VertexPoint& p);

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct SolveResult {
  LpStatus status;
  std::optional<VertexPoint> point;  // present iff Optimal
  Rat value;
  // Signed optimal dual multiplier per row (>=0 for LE, <=0 for GE, free
  // for EQ); present iff Optimal.
  std::vector<Rat> row_duals;
};

// Exact rational solve; deterministic under Bland's rule. The returned
// point is a basic optimal solution: a vertex whenever the feasible
// region is pointed. Every optimal point is re-verified by substitution.
SolveResult solve(const LinearProgram& lp);

struct LexStageError {
  int stage;
  LpStatus status;  // Infeasible or Unbounded at that stage
};

// Lexicographically maximal feasible point under the variable order:
// maximize the first variable, fix it, recurse. Throws LexStageError when
// a stage is infeasible or unbounded. The result is a vertex.
VertexPoint lex_maximize(const LinearProgram& lp,
                         const std::vector<int>& order);

// All vertices, by enumeration of full-rank tight sets with feasibility
// filtering. Capacity-limited to 12 variables and 40 rows.
std::vector<VertexPoint> enumerate_vertices(const LinearProgram& lp);

// Rank of a rational matrix (list of rows), by Gaussian elimination.
int rational_rank(const std::vector<std::vector<Rat>>& rows);

// min cost'z subject to a z = rhs, z >= 0, solved directly in standard
// form. Used where the constraint matrix is short and wide (dual systems).
struct StandardFormResult {
  LpStatus status;
  std::vector<Rat> z;
  Rat value;
  std::vector<Rat> multipliers;  // one per equality row, when Optimal
};
StandardFormResult solve_standard_form(
    const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& rhs,
    const std::vector<Rat>& cost);

// Hook for tests: observes the basis after every pivot of every simplex
// run while set. Not thread safe; test-only.
void set_simplex_basis_observer(
    std::function<void(const std::vector<int>&)> observer);

}  // namespace flipflow
