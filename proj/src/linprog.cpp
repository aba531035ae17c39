#include "flipflow/linprog.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "flipflow/errors.hpp"

namespace flipflow {

namespace {

std::function<void(const std::vector<int>&)> g_basis_observer;

// ---------------------------------------------------------------------
// Standard-form core: min cost'z  s.t.  Az = b, z >= 0, dense rational
// tableau, two-phase, Bland's rule. Artificial columns stay in the
// tableau (barred from entering) so the equality-row multipliers can be
// read off their reduced costs at the end.
// ---------------------------------------------------------------------

struct StdFormResult {
  enum Status { Optimal, Unbounded, Infeasible } status;
  std::vector<Rat> z;            // structural variables
  Rat value;
  std::vector<Rat> multipliers;  // one per equality row
  std::vector<Rat> ray;          // structural ray when Unbounded
};

class StdFormSimplex {
 public:
  // a: rows x cols structural matrix, rhs may be any sign.
  StdFormSimplex(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs,
                 std::vector<Rat> cost)
      : m_(static_cast<int>(a.size())),
        n_(m_ ? static_cast<int>(a[0].size()) : static_cast<int>(cost.size())),
        cost_(std::move(cost)) {
    // Normalize row signs so the artificial basis is feasible.
    row_sign_.assign(m_, Rat(1));
    tab_.assign(m_, std::vector<Rat>(n_ + m_ + 1, Rat(0)));
    for (int i = 0; i < m_; ++i) {
      Rat s = rhs[i] < 0 ? Rat(-1) : Rat(1);
      row_sign_[i] = s;
      for (int j = 0; j < n_; ++j) tab_[i][j] = s * a[i][j];
      tab_[i][n_ + i] = 1;  // artificial
      tab_[i].back() = s * rhs[i];
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  StdFormResult run() {
    // Phase 1: minimize the artificial sum.
    std::vector<Rat> phase1(n_ + m_, Rat(0));
    for (int i = 0; i < m_; ++i) phase1[n_ + i] = 1;
    pivot_loop(phase1);
    Rat art_sum = 0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_) art_sum += tab_[i].back();
    if (art_sum != 0) return {StdFormResult::Infeasible, {}, Rat(0), {}, {}};
    drive_out_artificials();

    // Phase 2 on the real cost; artificial cost is zero.
    std::vector<Rat> phase2(n_ + m_, Rat(0));
    for (int j = 0; j < n_; ++j) phase2[j] = cost_[j];
    int unbounded_col = pivot_loop(phase2);
    if (unbounded_col >= 0) {
      std::vector<Rat> ray(n_, Rat(0));
      ray[unbounded_col] = 1;
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) ray[basis_[i]] = -tab_[i][unbounded_col];
      return {StdFormResult::Unbounded, {}, Rat(0), {}, std::move(ray)};
    }

    StdFormResult res;
    res.status = StdFormResult::Optimal;
    res.z.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.z[basis_[i]] = tab_[i].back();
    res.value = 0;
    for (int j = 0; j < n_; ++j) res.value += cost_[j] * res.z[j];
    // Multiplier of row i = -(reduced cost of its artificial column),
    // undoing the row-sign normalization.
    res.multipliers.assign(m_, Rat(0));
    for (int i = 0; i < m_; ++i)
      res.multipliers[i] = -row_sign_[i] * reduced_[n_ + i];
    return res;
  }

 private:
  // Runs Bland pivoting for the given cost vector. Returns -1 on
  // optimality, or the entering column index when unbounded. The observer
  // gets an empty basis as a phase separator: bases may repeat across
  // phases but never within one.
  int pivot_loop(const std::vector<Rat>& cost) {
    if (g_basis_observer) g_basis_observer({});
    compute_reduced(cost);
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_; ++j) {  // artificials never enter
        if (reduced_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rat best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = tab_[i].back() / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter, cost);
    }
  }

  void compute_reduced(const std::vector<Rat>& cost) {
    reduced_ = cost;
    for (int i = 0; i < m_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < n_ + m_; ++j) reduced_[j] -= cb * tab_[i][j];
    }
  }

  void pivot(int row, int col, const std::vector<Rat>&) {
    Rat p = tab_[row][col];
    for (Rat& v : tab_[row]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      Rat f = tab_[i][col];
      for (int j = 0; j <= n_ + m_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    if (reduced_[col] != 0) {
      Rat f = reduced_[col];
      for (int j = 0; j < n_ + m_; ++j) reduced_[j] -= f * tab_[row][j];
    }
    basis_[row] = col;
    if (g_basis_observer) g_basis_observer(basis_);
  }

  // After phase 1 every basic artificial sits at zero. Swap it for any
  // structural column with a nonzero entry in its row; rows where no such
  // column exists are redundant and keep their artificial pinned at zero.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (tab_[i][j] != 0) {
          pivot(i, j, {});
          break;
        }
      }
    }
  }

  int m_;
  int n_;
  std::vector<Rat> cost_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> row_sign_;
  std::vector<Rat> reduced_;
  std::vector<int> basis_;
};

// Row-form program normalized to a pure <= system, remembering where each
// normalized row came from.
struct NormalizedRows {
  std::vector<std::vector<Rat>> coeffs;
  std::vector<Rat> rhs;
  std::vector<int> origin;   // original row index
  std::vector<int> sign;     // +1: as stated, -1: negated copy
};

NormalizedRows normalize(const LinearProgram& lp) {
  NormalizedRows out;
  for (int r = 0; r < static_cast<int>(lp.rows.size()); ++r) {
    const LpRow& row = lp.rows[r];
    auto push = [&](int sign) {
      std::vector<Rat> c(lp.num_vars());
      for (int j = 0; j < lp.num_vars(); ++j)
        c[j] = sign > 0 ? row.coeffs[j] : -row.coeffs[j];
      out.coeffs.push_back(std::move(c));
      out.rhs.push_back(sign > 0 ? row.rhs : -row.rhs);
      out.origin.push_back(r);
      out.sign.push_back(sign);
    };
    if (row.rel == Rel::LE || row.rel == Rel::EQ) push(+1);
    if (row.rel == Rel::GE || row.rel == Rel::EQ) push(-1);
  }
  return out;
}

// min rhs'z s.t. (coeffs)'z = c, z >= 0  -- the dual of the row program.
StdFormResult solve_dual(const NormalizedRows& rows, const std::vector<Rat>& c,
                         int num_vars) {
  int m = static_cast<int>(rows.coeffs.size());
  std::vector<std::vector<Rat>> a(num_vars, std::vector<Rat>(m, Rat(0)));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < num_vars; ++j) a[j][r] = rows.coeffs[r][j];
  StdFormSimplex simplex(std::move(a), c, rows.rhs);
  return simplex.run();
}

VertexPoint make_point(const LinearProgram& lp, std::vector<Rat> values) {
  VertexPoint p;
  p.values = std::move(values);
  std::vector<std::vector<Rat>> tight_coeffs;
  for (int r = 0; r < static_cast<int>(lp.rows.size()); ++r) {
    const LpRow& row = lp.rows[r];
    Rat lhs = 0;
    for (int j = 0; j < lp.num_vars(); ++j) lhs += row.coeffs[j] * p.values[j];
    bool tight = lhs == row.rhs;
    bool ok = row.rel == Rel::LE   ? lhs <= row.rhs
              : row.rel == Rel::GE ? lhs >= row.rhs
                                   : tight;
    if (!ok)
      throw InternalInvariantError("simplex returned an infeasible point");
    if (tight) {
      p.tight_rows.push_back(r);
      tight_coeffs.push_back(row.coeffs);
    }
  }
  p.basis_rank = rational_rank(tight_coeffs);
  return p;
}

}  // namespace

void LinearProgram::add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs,
                            std::string tag) {
  if (coeffs.size() != var_names.size())
    throw InputError("row length does not match variable count");
  for (const LpRow& r : rows)
    if (r.tag == tag) throw InputError("duplicate row tag: " + tag);
  rows.push_back({std::move(coeffs), rel, std::move(rhs), std::move(tag)});
}

bool is_integral(const VertexPoint& p) {
  return std::all_of(p.values.begin(), p.values.end(),
                     [](const Rat& v) { return is_integer(v); });
}

int rational_rank(const std::vector<std::vector<Rat>>& rows) {
  std::vector<std::vector<Rat>> m = rows;
  int rank = 0;
  if (m.empty()) return 0;
  int cols = static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

void set_simplex_basis_observer(
    std::function<void(const std::vector<int>&)> observer) {
  g_basis_observer = std::move(observer);
}

StandardFormResult solve_standard_form(
    const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& rhs,
    const std::vector<Rat>& cost) {
  StdFormSimplex simplex(a, rhs, cost);
  StdFormResult res = simplex.run();
  switch (res.status) {
    case StdFormResult::Optimal:
      return {LpStatus::Optimal, std::move(res.z), res.value,
              std::move(res.multipliers)};
    case StdFormResult::Unbounded:
      return {LpStatus::Unbounded, {}, Rat(0), {}};
    default:
      return {LpStatus::Infeasible, {}, Rat(0), {}};
  }
}

SolveResult solve(const LinearProgram& lp) {
  NormalizedRows rows = normalize(lp);
  StdFormResult dual = solve_dual(rows, lp.objective, lp.num_vars());

  if (dual.status == StdFormResult::Unbounded)
    return {LpStatus::Infeasible, std::nullopt, Rat(0), {}};

  if (dual.status == StdFormResult::Infeasible) {
    // No multiplier certificate for this objective: the program is either
    // unbounded or empty. Farkas decides: a nonnegative row combination
    // summing to zero coefficients with negative rhs proves emptiness.
    std::vector<Rat> zero(lp.num_vars(), Rat(0));
    StdFormResult feas = solve_dual(rows, zero, lp.num_vars());
    if (feas.status == StdFormResult::Unbounded)
      return {LpStatus::Infeasible, std::nullopt, Rat(0), {}};
    return {LpStatus::Unbounded, std::nullopt, Rat(0), {}};
  }

  // Multipliers of the dual's equality rows are the primal point.
  VertexPoint point = make_point(lp, dual.multipliers);
  Rat check = 0;
  for (int j = 0; j < lp.num_vars(); ++j)
    check += lp.objective[j] * point.values[j];
  if (check != dual.value)
    throw InternalInvariantError("primal/dual objective values differ");

  std::vector<Rat> row_duals(lp.rows.size(), Rat(0));
  for (std::size_t k = 0; k < rows.origin.size(); ++k)
    row_duals[rows.origin[k]] += Rat(rows.sign[k]) * dual.z[k];

  return {LpStatus::Optimal, std::move(point), dual.value,
          std::move(row_duals)};
}

VertexPoint lex_maximize(const LinearProgram& lp,
                         const std::vector<int>& order) {
  std::vector<bool> seen(lp.num_vars(), false);
  for (int v : order) {
    if (v < 0 || v >= lp.num_vars() || seen[v])
      throw InputError("lex order must be a permutation of the variables");
    seen[v] = true;
  }
  if (static_cast<int>(order.size()) != lp.num_vars())
    throw InputError("lex order must cover every variable");

  LinearProgram work = lp;
  std::vector<Rat> values(lp.num_vars());
  for (int stage = 0; stage < static_cast<int>(order.size()); ++stage) {
    int v = order[stage];
    std::fill(work.objective.begin(), work.objective.end(), Rat(0));
    work.objective[v] = 1;
    SolveResult res = solve(work);
    if (res.status != LpStatus::Optimal) throw LexStageError{stage, res.status};
    values[v] = res.value;
    std::vector<Rat> fix(lp.num_vars(), Rat(0));
    fix[v] = 1;
    work.add_row(std::move(fix), Rel::EQ, res.value,
                 "lex-fix:" + std::to_string(stage));
  }

  VertexPoint point = make_point(lp, std::move(values));
  if (point.basis_rank != lp.num_vars())
    throw InternalInvariantError("lex-maximal point is not a vertex");
  return point;
}

std::vector<VertexPoint> enumerate_vertices(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int m = static_cast<int>(lp.rows.size());
  if (n > 12 || m > 40)
    throw CapacityError("enumerate_vertices: caps are 12 variables, 40 rows");

  // DFS over independent row subsets of size n, kept in echelon form.
  std::set<std::vector<Rat>> seen;
  std::vector<VertexPoint> out;
  // echelon rows store coeffs + rhs.
  std::vector<std::vector<Rat>> echelon;
  std::vector<int> chosen;

  auto reduce = [&](std::vector<Rat> row) {
    for (const auto& e : echelon) {
      int lead = 0;
      while (lead <= n && e[lead] == 0) ++lead;
      if (lead >= n) continue;
      if (row[lead] != 0) {
        Rat f = row[lead] / e[lead];
        for (int j = 0; j <= n; ++j) row[j] -= f * e[j];
      }
    }
    return row;
  };

  std::function<void(int)> dfs = [&](int next) {
    if (static_cast<int>(chosen.size()) == n) {
      // Back-substitute the echelon system.
      std::vector<std::vector<Rat>> sys;
      for (int r : chosen) {
        std::vector<Rat> row = lp.rows[r].coeffs;
        row.push_back(lp.rows[r].rhs);
        sys.push_back(std::move(row));
      }
      // Gaussian solve of the n x n system.
      std::vector<Rat> x(n, Rat(0));
      std::vector<std::vector<Rat>> g = sys;
      std::vector<int> perm(n);
      for (int c = 0, r = 0; c < n && r < n; ++c) {
        int p = -1;
        for (int i = r; i < n; ++i)
          if (g[i][c] != 0) {
            p = i;
            break;
          }
        if (p < 0) return;  // should not happen: rows are independent
        std::swap(g[r], g[p]);
        for (int i = 0; i < n; ++i) {
          if (i == r || g[i][c] == 0) continue;
          Rat f = g[i][c] / g[r][c];
          for (int j = c; j <= n; ++j) g[i][j] -= f * g[r][j];
        }
        perm[r] = c;
        ++r;
      }
      for (int r = 0; r < n; ++r) x[perm[r]] = g[r][n] / g[r][perm[r]];
      // Feasibility against every row.
      for (const LpRow& row : lp.rows) {
        Rat lhs = 0;
        for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * x[j];
        bool ok = row.rel == Rel::LE   ? lhs <= row.rhs
                  : row.rel == Rel::GE ? lhs >= row.rhs
                                       : lhs == row.rhs;
        if (!ok) return;
      }
      if (seen.insert(x).second) out.push_back(make_point(lp, x));
      return;
    }
    for (int r = next; r < m; ++r) {
      if (m - r < n - static_cast<int>(chosen.size())) break;
      std::vector<Rat> row = lp.rows[r].coeffs;
      row.push_back(lp.rows[r].rhs);
      std::vector<Rat> red = reduce(row);
      bool zero = std::all_of(red.begin(), red.end() - 1,
                              [](const Rat& v) { return v == 0; });
      if (zero) continue;  // dependent (or inconsistent as a tight set)
      echelon.push_back(std::move(red));
      chosen.push_back(r);
      dfs(r + 1);
      chosen.pop_back();
      echelon.pop_back();
    }
  };
  dfs(0);

  std::sort(out.begin(), out.end(),
            [](const VertexPoint& a, const VertexPoint& b) {
              return a.values < b.values;
            });
  return out;
}

}  // namespace flipflow
