#include "flipflow/oracles.hpp"

#include <algorithm>
#include <random>

#include "flipflow/errors.hpp"

namespace flipflow {

namespace {

// Per-subset outgoing/incoming arc masks, for mask-level cut arithmetic.
struct CutMasks {
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> in;
};

CutMasks cut_masks(const Digraph& d) {
  const int n = d.vertex_count();
  require_subset_cap(n, "cut mask precomputation");
  const std::uint64_t full = VertexSet::full(n).mask;
  CutMasks masks;
  masks.out.assign(full + 1, 0);
  masks.in.assign(full + 1, 0);
  for (std::uint64_t u = 1; u < full; ++u) {
    for (int a = 0; a < d.arc_count(); ++a) {
      bool ti = (u >> d.arc(a).tail) & 1ULL;
      bool hi = (u >> d.arc(a).head) & 1ULL;
      if (ti && !hi) masks.out[u] |= 1ULL << a;
      if (!ti && hi) masks.in[u] |= 1ULL << a;
    }
  }
  return masks;
}

}  // namespace

std::optional<ArcSet> brute_force_flip(const Digraph& d, int k,
                                       const SubmodularOracle& f,
                                       scan::Exec exec) {
  const int m = d.arc_count();
  if (m > 20) throw CapacityError("brute_force_flip: arc count exceeds 20");
  const int n = d.vertex_count();
  CutMasks masks = cut_masks(d);
  const std::uint64_t full_u = VertexSet::full(n).mask;

  std::vector<VertexSet> members = f.family.enumerate();
  std::vector<long long> bound(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) bound[i] = f(members[i]);

  // Connectivity after flipping J, checked by direct subset enumeration so
  // this stays independent of the flow-based predicate it cross-checks.
  auto valid = [&](std::uint64_t j) {
    for (std::uint64_t u = 1; u < full_u; ++u) {
      long long deg = std::popcount(masks.out[u] & ~j) +
                      std::popcount(masks.in[u] & j);
      if (deg < k) return false;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::uint64_t u = members[i].mask;
      long long lhs = std::popcount(masks.out[u] & j) -
                      static_cast<long long>(std::popcount(masks.in[u] & j));
      if (lhs > bound[i]) return false;
    }
    return true;
  };

  auto hit = scan::find_min_mask(0, 1ULL << m, valid, exec);
  if (!hit) return std::nullopt;
  return ArcSet::from_mask(m, *hit);
}

LinearProgram build_arc_lp(const TwoSystemInstance& inst, bool with_bounds) {
  const Digraph& d = inst.d;
  const int m = d.arc_count();
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) names.push_back("y" + std::to_string(a));
  LinearProgram lp(std::move(names));

  auto add_system = [&](const SubmodularOracle& f, const char* label) {
    for (const VertexSet& u : f.family.enumerate()) {
      std::vector<Rat> coeffs(m, Rat(0));
      for (int a = 0; a < m; ++a) {
        bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
        if (ti && !hi) coeffs[a] = 1;
        if (!ti && hi) coeffs[a] = -1;
      }
      lp.add_row(std::move(coeffs), Rel::LE, Rat(f(u)),
                 std::string(label) + ":" + u.to_string());
    }
  };
  add_system(inst.f1, "f1");
  add_system(inst.f2, "f2");

  if (with_bounds) {
    for (int a = 0; a < m; ++a) {
      std::vector<Rat> coeffs(m, Rat(0));
      coeffs[a] = 1;
      if (inst.lower[a])
        lp.add_row(coeffs, Rel::GE, Rat(*inst.lower[a]),
                   "lo:" + std::to_string(a));
      if (inst.upper[a])
        lp.add_row(std::move(coeffs), Rel::LE, Rat(*inst.upper[a]),
                   "hi:" + std::to_string(a));
    }
  }
  for (int a = 0; a < m && a < static_cast<int>(inst.objective.size()); ++a)
    lp.objective[a] = Rat(inst.objective[a]);
  return lp;
}

namespace {

struct BranchBound {
  int var;
  bool upper;       // z_var <= bound vs z_var >= bound
  long long bound;
};

// LP-guided branch and bound for an integral point of
//   { z >= 0 : sum_j col_j z_j = c, cost' z = target }.
class IntegralDualSearch {
 public:
  IntegralDualSearch(std::vector<std::vector<Rat>> cols, std::vector<Rat> cost,
                     std::vector<Rat> rhs, Rat target)
      : cols_(std::move(cols)),
        cost_(std::move(cost)),
        rhs_(std::move(rhs)),
        target_(std::move(target)) {}

  std::optional<std::vector<long long>> run() {
    std::vector<BranchBound> path;
    nodes_ = 0;
    return dfs(path);
  }

 private:
  std::optional<std::vector<long long>> dfs(std::vector<BranchBound>& path) {
    if (++nodes_ > 50000 || path.size() > 80) return std::nullopt;
    const int m = static_cast<int>(cols_.size());
    const int rows = static_cast<int>(rhs_.size());
    const int extra = static_cast<int>(path.size());

    std::vector<std::vector<Rat>> a(rows + extra,
                                    std::vector<Rat>(m + extra, Rat(0)));
    std::vector<Rat> b(rows + extra);
    std::vector<Rat> cost(m + extra, Rat(0));
    for (int j = 0; j < m; ++j) {
      cost[j] = cost_[j];
      for (int r = 0; r < rows; ++r) a[r][j] = cols_[j][r];
    }
    for (int r = 0; r < rows; ++r) b[r] = rhs_[r];
    for (int e = 0; e < extra; ++e) {
      const BranchBound& bb = path[e];
      a[rows + e][bb.var] = 1;
      a[rows + e][m + e] = bb.upper ? Rat(1) : Rat(-1);
      b[rows + e] = Rat(bb.bound);
    }

    StandardFormResult res = solve_standard_form(a, b, cost);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    if (res.status != LpStatus::Optimal)
      throw InternalInvariantError("dual relaxation cannot be unbounded");
    if (res.value > target_) return std::nullopt;
    if (res.value < target_)
      throw InternalInvariantError("dual relaxation dipped below the optimum");

    int frac = -1;
    for (int j = 0; j < m; ++j)
      if (!is_integer(res.z[j])) {
        frac = j;
        break;
      }
    if (frac < 0) {
      std::vector<long long> out(m);
      for (int j = 0; j < m; ++j)
        out[j] = static_cast<long long>(numerator(res.z[j]));
      return out;
    }

    long long down = static_cast<long long>(floor_rat(res.z[frac]));
    path.push_back({frac, true, down});
    if (auto hit = dfs(path)) return hit;
    path.back() = {frac, false, down + 1};
    auto hit = dfs(path);
    path.pop_back();
    return hit;
  }

  std::vector<std::vector<Rat>> cols_;
  std::vector<Rat> cost_;
  std::vector<Rat> rhs_;
  Rat target_;
  long long nodes_ = 0;
};

}  // namespace

TdiCheckResult check_tdi_at(const std::vector<long long>& c,
                            const TwoSystemInstance& inst) {
  const Digraph& d = inst.d;
  const int m = d.arc_count();
  if (static_cast<int>(c.size()) != m)
    throw InputError("objective length must match arc count");

  TwoSystemInstance primal = inst;
  primal.objective = c;
  LinearProgram lp = build_arc_lp(primal, false);
  SolveResult opt = solve(lp);
  if (opt.status == LpStatus::Infeasible)
    throw InputError("check_tdi_at requires a non-empty polyhedron");
  if (opt.status == LpStatus::Unbounded) return DualUnbounded{};

  std::vector<VertexSet> mem1 = inst.f1.family.enumerate();
  std::vector<VertexSet> mem2 = inst.f2.family.enumerate();

  if (std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; })) {
    DualSolution trivial;
    trivial.z1.assign(mem1.size(), 0);
    trivial.z2.assign(mem2.size(), 0);
    trivial.value = 0;
    return trivial;
  }
  if (!is_integer(opt.value))
    return NoIntegralDual{opt.value, opt.point->values};

  // Columns of the dual equality system, one per family member.
  std::vector<std::vector<Rat>> cols;
  std::vector<Rat> cost;
  auto add_cols = [&](const SubmodularOracle& f,
                      const std::vector<VertexSet>& members) {
    for (const VertexSet& u : members) {
      std::vector<Rat> col(m, Rat(0));
      for (int a = 0; a < m; ++a) {
        bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
        if (ti && !hi) col[a] = 1;
        if (!ti && hi) col[a] = -1;
      }
      cols.push_back(std::move(col));
      cost.push_back(Rat(f(u)));
    }
  };
  add_cols(inst.f1, mem1);
  add_cols(inst.f2, mem2);
  std::vector<Rat> rhs(m);
  for (int a = 0; a < m; ++a) rhs[a] = Rat(c[a]);

  IntegralDualSearch search(std::move(cols), std::move(cost), std::move(rhs),
                            opt.value);
  auto z = search.run();
  if (!z) return NoIntegralDual{opt.value, opt.point->values};

  DualSolution sol;
  sol.z1.assign(z->begin(), z->begin() + mem1.size());
  sol.z2.assign(z->begin() + mem1.size(), z->end());
  sol.value = static_cast<long long>(numerator(opt.value));

  // Exact verification of dual feasibility and the objective value.
  std::vector<long long> combo(m, 0);
  long long value = 0;
  auto accumulate = [&](const SubmodularOracle& f,
                        const std::vector<VertexSet>& members,
                        const std::vector<long long>& zs) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (zs[i] < 0)
        throw InternalInvariantError("negative dual multiplier");
      if (zs[i] == 0) continue;
      for (int a = 0; a < m; ++a) {
        bool ti = members[i].contains(d.arc(a).tail);
        bool hi = members[i].contains(d.arc(a).head);
        if (ti && !hi) combo[a] += zs[i];
        if (!ti && hi) combo[a] -= zs[i];
      }
      value += f(members[i]) * zs[i];
    }
  };
  accumulate(inst.f1, mem1, sol.z1);
  accumulate(inst.f2, mem2, sol.z2);
  if (combo != c || value != sol.value)
    throw InternalInvariantError("integral dual failed verification");
  return sol;
}

std::vector<FractionalVertex> fractional_vertex_search(
    const TwoSystemInstance& inst) {
  LinearProgram lp = build_arc_lp(inst, true);
  std::vector<FractionalVertex> out;
  for (VertexPoint& p : enumerate_vertices(lp)) {
    if (is_integral(p)) continue;
    int rank = p.basis_rank;
    out.push_back({std::move(p), rank});
  }
  return out;
}

MatroidReduction reduce_matroids_to_two_systems(const MatroidOracle& m1,
                                                const MatroidOracle& m2,
                                                const MatroidOracle& m3) {
  const int mv = m1.ground_size();
  if (m2.ground_size() != mv || m3.ground_size() != mv)
    throw ReductionInapplicableError("matroids must share the ground set");
  if (mv > 8)
    throw CapacityError("matroid reduction: ground size exceeds cap 8");
  const int r = m1.full_rank();
  if (m2.full_rank() != r || m3.full_rank() != r)
    throw ReductionInapplicableError("matroids must have equal full rank");
  for (int u = 0; u < mv; ++u) {
    if (m1.rank(VertexSet::of({u})) != 1)
      throw ReductionInapplicableError(
          "first matroid must have every singleton of rank 1");
    VertexSet rest = VertexSet::full(mv);
    rest.remove(u);
    if (m1.rank(rest) != r)
      throw ReductionInapplicableError(
          "first matroid must keep full rank without any one element");
  }

  // Digraph on V and a starred copy, one arc u -> u*.
  const int n = 2 * mv;
  std::vector<Arc> arcs;
  for (int u = 0; u < mv; ++u) arcs.push_back({u, mv + u});
  Digraph d(n, std::move(arcs));

  VertexSet ground_v = VertexSet::full(mv);
  VertexSet ground_star;
  for (int u = 0; u < mv; ++u) ground_star.add(mv + u);

  std::vector<VertexSet> members;
  for (std::uint64_t mask = 1; mask <= ground_v.mask; ++mask)
    members.emplace_back(mask);  // U subset of V, non-empty
  for (std::uint64_t mask = 1; mask <= ground_v.mask; ++mask) {
    // V plus the starred complement of U.
    VertexSet u(mask);
    VertexSet w = ground_v;
    for (int x = 0; x < mv; ++x)
      if (!u.contains(x)) w.add(mv + x);
    if (w.is_proper_nonempty(n)) members.push_back(w);
  }
  members.push_back(ground_star);
  CrossingFamily family = CrossingFamily::explicit_family(members, n);

  auto make_value = [mv, r, ground_star](const MatroidOracle& first,
                                         const MatroidOracle& second) {
    return [mv, r, ground_star, first, second](VertexSet w) -> long long {
      if (w == ground_star) return -r;
      if (w.subset_of(VertexSet::full(mv))) return first.rank(w);
      VertexSet u;
      for (int x = 0; x < mv; ++x)
        if (!w.contains(mv + x)) u.add(x);
      return second.rank(u);
    };
  };

  TwoSystemInstance inst{
      d,
      SubmodularOracle{family, make_value(m1, m2), "matroid-f"},
      SubmodularOracle{family, make_value(m1, m3), "matroid-g"},
      std::vector<Bound>(mv, std::nullopt),
      std::vector<Bound>(mv, std::nullopt),
      {}};

  return MatroidReduction{
      std::move(inst), [mv](const std::vector<long long>& y) {
        VertexSet basis;
        for (int u = 0; u < mv && u < static_cast<int>(y.size()); ++u)
          if (y[u] == 1) basis.add(u);
        return basis;
      }};
}

bool has_common_basis(const MatroidOracle& m1, const MatroidOracle& m2,
                      const MatroidOracle& m3) {
  const int mv = m1.ground_size();
  const int r = m1.full_rank();
  const std::uint64_t full = VertexSet::full(mv).mask;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    VertexSet b(mask);
    if (b.count() != r) continue;
    if (m1.is_basis(b) && m2.is_basis(b) && m3.is_basis(b)) return true;
  }
  return false;
}

std::optional<std::vector<long long>> brute_force_two_system_01(
    const TwoSystemInstance& inst) {
  const Digraph& d = inst.d;
  const int m = d.arc_count();
  if (m > 20) throw CapacityError("0/1 search: arc count exceeds 20");
  std::vector<VertexSet> mem1 = inst.f1.family.enumerate();
  std::vector<VertexSet> mem2 = inst.f2.family.enumerate();

  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) {
      long long y = (mask >> a) & 1ULL;
      if (inst.lower[a] && y < *inst.lower[a]) ok = false;
      if (inst.upper[a] && y > *inst.upper[a]) ok = false;
    }
    auto fits = [&](const SubmodularOracle& f,
                    const std::vector<VertexSet>& members) {
      for (const VertexSet& u : members) {
        long long lhs = 0;
        for (int a = 0; a < m; ++a) {
          bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
          long long y = (mask >> a) & 1ULL;
          if (ti && !hi) lhs += y;
          if (!ti && hi) lhs -= y;
        }
        if (lhs > f(u)) return false;
      }
      return true;
    };
    if (ok && fits(inst.f1, mem1) && fits(inst.f2, mem2)) {
      std::vector<long long> y(m);
      for (int a = 0; a < m; ++a) y[a] = (mask >> a) & 1ULL;
      return y;
    }
  }
  return std::nullopt;
}

std::optional<ArcSet> find_dijoin_pair_by_search(const Digraph& d, int tau,
                                                 int k) {
  const int m = d.arc_count();
  if (m > 18) throw CapacityError("dijoin pair search: arc count exceeds 18");
  std::vector<std::uint64_t> dicut_masks;
  for (const VertexSet& u : enumerate_dicuts(d)) {
    std::uint64_t mask = 0;
    for (int a = 0; a < m; ++a) {
      bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
      if (ti && !hi) mask |= 1ULL << a;
    }
    dicut_masks.push_back(mask);
  }
  auto hit = scan::find_min_mask(0, 1ULL << m, [&](std::uint64_t j) {
    for (std::uint64_t dc : dicut_masks) {
      if (std::popcount(j & dc) < k) return false;
      if (std::popcount(dc & ~j) < tau - k) return false;
    }
    return true;
  });
  if (!hit) return std::nullopt;
  return ArcSet::from_mask(m, *hit);
}

ConjectureSearchReport conjecture_search(int tau, int size_cap, int trials,
                                         std::uint64_t seed) {
  if (tau < 2) throw InputError("conjecture search needs tau >= 2");
  if (size_cap < 2 || size_cap > 7)
    throw CapacityError("conjecture search: vertex cap must be 2..7");
  std::mt19937_64 rng(seed);
  ConjectureSearchReport report;
  for (int t = 0; t < trials; ++t) {
    ++report.trials_run;
    std::uniform_int_distribution<int> nd(3, size_cap);
    int n = nd(rng);
    std::uniform_int_distribution<int> md(n, std::min(2 * n + 2, 16));
    int m = md(rng);
    std::vector<Arc> arcs;
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int a = 0; a < m; ++a) {
      int tail = vd(rng), head = vd(rng);
      while (head == tail) head = vd(rng);
      arcs.push_back({tail, head});
    }
    Digraph d(n, std::move(arcs));

    std::vector<VertexSet> dicuts = enumerate_dicuts(d);
    if (dicuts.empty()) continue;  // vacuous instance, nothing to learn
    bool min_ok = true;
    for (const VertexSet& u : dicuts)
      if (out_degree(d, u) < tau) {
        min_ok = false;
        break;
      }
    if (!min_ok) continue;
    ++report.instances_accepted;

    for (int k = 1; k <= tau - 1; ++k) {
      if (find_dijoin_pair_by_search(d, tau, k)) continue;
      // A hit would be a research event: re-verify with the serial kernel
      // and an independent dicut pass before reporting.
      std::vector<VertexSet> recheck = enumerate_dicuts(d, scan::Exec::Serial);
      bool confirmed = true;
      for (std::uint64_t j = 0; j < (1ULL << d.arc_count()); ++j) {
        ArcSet js = ArcSet::from_mask(d.arc_count(), j);
        bool good = true;
        for (const VertexSet& u : recheck) {
          Cut cut = delta(d, u);
          if ((js & cut.outgoing).count() < k ||
              (js.complement() & cut.outgoing).count() < tau - k) {
            good = false;
            break;
          }
        }
        if (good) {
          confirmed = false;
          break;
        }
      }
      if (confirmed) report.counterexamples.push_back({d, k, seed});
    }
  }
  return report;
}

}  // namespace flipflow
