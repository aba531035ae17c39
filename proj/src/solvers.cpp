#include "flipflow/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "flipflow/errors.hpp"
#include "flipflow/linprog.hpp"

namespace flipflow {

namespace {

void validate_bounds(int m, const std::vector<Bound>& lower,
                     const std::vector<Bound>& upper) {
  if (static_cast<int>(lower.size()) != m ||
      static_cast<int>(upper.size()) != m)
    throw InputError("bounds must cover every arc");
  for (int a = 0; a < m; ++a)
    if (lower[a] && upper[a] && *lower[a] > *upper[a])
      throw InputError("lower bound exceeds upper bound");
}

long long value_or(const std::vector<long long>& v, int i) {
  return v.empty() ? 0 : v[i];
}

}  // namespace

std::optional<std::vector<long long>> potentials_from_objective(
    const Digraph& d, const std::vector<long long>& c,
    std::vector<int>* witness_cycle) {
  const int n = d.vertex_count();
  std::vector<long long> w(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<int> parent_arc(n, -1);
  std::vector<int> parent(n, -1);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, arc)
  for (int a = 0; a < d.arc_count(); ++a) {
    adj[d.arc(a).tail].push_back({d.arc(a).head, a});
    adj[d.arc(a).head].push_back({d.arc(a).tail, a});
  }
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<int> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (auto [to, a] : adj[v]) {
        if (seen[to]) continue;
        seen[to] = true;
        // w_tail - w_head = c_a
        w[to] = d.arc(a).tail == v ? w[v] - value_or(c, a) : w[v] + value_or(c, a);
        parent[to] = v;
        parent_arc[to] = a;
        queue.push_back(to);
      }
    }
  }
  for (int a = 0; a < d.arc_count(); ++a) {
    if (w[d.arc(a).tail] - w[d.arc(a).head] == value_or(c, a)) continue;
    if (witness_cycle) {
      // Tree paths from both endpoints to their common ancestor, plus a.
      auto path_to_root = [&](int v) {
        std::vector<int> nodes;
        for (int x = v; x >= 0; x = parent[x]) nodes.push_back(x);
        return nodes;
      };
      std::vector<int> pt = path_to_root(d.arc(a).tail);
      std::vector<int> ph = path_to_root(d.arc(a).head);
      std::vector<bool> on_tail_path(d.vertex_count(), false);
      for (int v : pt) on_tail_path[v] = true;
      int meet = ph.front();
      for (int v : ph)
        if (on_tail_path[v]) {
          meet = v;
          break;
        }
      witness_cycle->clear();
      witness_cycle->push_back(a);
      for (int v = d.arc(a).tail; v != meet; v = parent[v])
        witness_cycle->push_back(parent_arc[v]);
      for (int v = d.arc(a).head; v != meet; v = parent[v])
        witness_cycle->push_back(parent_arc[v]);
    }
    return std::nullopt;
  }
  return w;
}

TwoSystemResult solve_two_systems(const TwoSystemInstance& inst) {
  const Digraph& d = inst.d;
  const int m = d.arc_count();
  validate_bounds(m, inst.lower, inst.upper);

  bool has_objective =
      std::any_of(inst.objective.begin(), inst.objective.end(),
                  [](long long v) { return v != 0; });

  BaseIntersectionInstance base;
  base.n = d.vertex_count();
  base.f1 = inst.f1;
  base.f2 = inst.f2;
  base.digraph = d;

  std::vector<long long> w;
  if (has_objective) {
    std::vector<int> cycle;
    auto pot = potentials_from_objective(d, inst.objective, &cycle);
    if (!pot) return ObjectiveNotRealizable{std::move(cycle)};
    w = std::move(*pot);
    base.objective = w;
  }

  BasePointResult bp = integral_base_point(base);
  if (auto* pv = std::get_if<PreconditionViolated>(&bp)) return *pv;
  if (std::holds_alternative<BaseInfeasible>(bp)) return TwoSystemInfeasible{};
  const BasePoint& point = std::get<BasePoint>(bp);

  TransshipmentInstance ts{d, point.b, inst.lower, inst.upper};
  TransshipmentResult flow = solve_transshipment(ts);
  if (auto* viol = std::get_if<ViolatingSet>(&flow)) return *viol;
  std::vector<long long> y = std::get<Flow>(flow).y;

  // Exact re-check against every enumerated member of both systems.
  auto check_system = [&](const SubmodularOracle& f) {
    for (const VertexSet& u : f.family.enumerate()) {
      long long lhs = 0;
      for (int a = 0; a < m; ++a) {
        bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
        if (ti && !hi) lhs += y[a];
        if (!ti && hi) lhs -= y[a];
      }
      if (lhs > f(u))
        throw InternalInvariantError(
            "two-system solution violates a family constraint");
    }
  };
  check_system(inst.f1);
  check_system(inst.f2);
  for (int a = 0; a < m; ++a) {
    if (inst.lower[a] && y[a] < *inst.lower[a])
      throw InternalInvariantError("two-system solution breaks a lower bound");
    if (inst.upper[a] && y[a] > *inst.upper[a])
      throw InternalInvariantError("two-system solution breaks an upper bound");
  }
  if (has_objective) {
    long long cy = 0, wb = 0;
    for (int a = 0; a < m; ++a) cy += inst.objective[a] * y[a];
    for (int v = 0; v < d.vertex_count(); ++v) wb += w[v] * point.b[v];
    if (cy != wb)
      throw InternalInvariantError("objective identity c'y = w'b failed");
  }
  return IntegralSolution{std::move(y)};
}

// ----------------------------------------------------------------------
// TU generalization
// ----------------------------------------------------------------------

namespace {

long long int_det(std::vector<std::vector<long long>> a) {
  // Fraction-free Bareiss; sizes are at most 6.
  const int k = static_cast<int>(a.size());
  long long prev = 1;
  long long sign = 1;
  for (int c = 0; c < k; ++c) {
    int p = -1;
    for (int r = c; r < k; ++r)
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < k; ++r) {
      for (int j = c + 1; j < k; ++j)
        a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
      a[r][c] = 0;
    }
    prev = a[c][c];
  }
  return sign * a[k - 1][k - 1];
}

std::optional<NotTU> find_non_tu_witness(
    const std::vector<std::vector<int>>& m, int cap) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::optional<NotTU> found;
  std::vector<int> rsel, csel;
  std::function<bool(int, int, int)> pick_cols = [&](int k, int next,
                                                     int left) -> bool {
    if (left == 0) {
      std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = m[rsel[i]][csel[j]];
      long long det = int_det(std::move(sub));
      if (det < -1 || det > 1) {
        found = NotTU{rsel, csel, det};
        return true;
      }
      return false;
    }
    for (int c = next; c + left <= cols; ++c) {
      csel.push_back(c);
      if (pick_cols(k, c + 1, left - 1)) return true;
      csel.pop_back();
    }
    return false;
  };
  std::function<bool(int, int, int)> pick_rows = [&](int k, int next,
                                                     int left) -> bool {
    if (left == 0) return pick_cols(k, 0, k);
    for (int r = next; r + left <= rows; ++r) {
      rsel.push_back(r);
      if (pick_rows(k, r + 1, left - 1)) return true;
      rsel.pop_back();
    }
    return false;
  };
  for (int k = 2; k <= std::min({cap, rows, cols}); ++k) {
    rsel.clear();
    csel.clear();
    if (pick_rows(k, 0, k)) return found;
  }
  return std::nullopt;
}

}  // namespace

TUResult solve_tu_generalization(const TUInstance& inst) {
  const int rows = static_cast<int>(inst.m.size());
  if (rows == 0) throw InputError("TU matrix needs at least one row");
  const int cols = static_cast<int>(inst.m[0].size());
  for (const auto& row : inst.m) {
    if (static_cast<int>(row.size()) != cols)
      throw InputError("TU matrix rows must have equal length");
    for (int v : row)
      if (v < -1 || v > 1) throw InputError("TU matrix entries must be -1/0/1");
  }
  validate_bounds(cols, inst.lower, inst.upper);

  constexpr int kTuCheckCap = 6;
  if (!inst.trust_tu) {
    if (std::min(rows, cols) > kTuCheckCap)
      throw CapacityError(
          "TU verification beyond submatrix cap 6; set trustTU to proceed");
    if (auto witness = find_non_tu_witness(inst.m, kTuCheckCap))
      return *witness;
  }
  for (int j = 0; j < cols; ++j) {
    long long s = 0;
    for (int i = 0; i < rows; ++i) s += inst.m[i][j];
    if (s != 0) throw InputError("TU matrix must satisfy M'1 = 0");
  }

  // Ground sets U with M'chi(U) = 0 need min f_i(U) <= 0.
  require_subset_cap(rows, "TU precondition");
  const std::uint64_t full = VertexSet::full(rows).mask;
  auto m_chi = [&](VertexSet u) {
    std::vector<long long> v(cols, 0);
    for (int i : u.members())
      for (int j = 0; j < cols; ++j) v[j] += inst.m[i][j];
    return v;
  };
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    VertexSet u(mask);
    std::vector<long long> v = m_chi(u);
    if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; }))
      continue;
    bool in1 = inst.f1.family.contains(u);
    bool in2 = inst.f2.family.contains(u);
    long long best = 1;
    if (in1) best = std::min(best, inst.f1(u));
    if (in2) best = std::min(best, inst.f2(u));
    if (best > 0) return PreconditionViolated{u};
  }

  BaseIntersectionInstance base;
  base.n = rows;
  base.f1 = inst.f1;
  base.f2 = inst.f2;
  BasePointResult bp = integral_base_point(base);
  if (auto* pv = std::get_if<PreconditionViolated>(&bp)) return *pv;
  if (std::holds_alternative<BaseInfeasible>(bp)) return TwoSystemInfeasible{};
  const BasePoint& point = std::get<BasePoint>(bp);

  // Feasibility of My = b, l <= y <= u as an exact LP; a lexicographically
  // extreme point of a TU box system is integral.
  std::vector<std::string> names;
  for (int j = 0; j < cols; ++j) names.push_back("y" + std::to_string(j));
  LinearProgram lp(std::move(names));
  for (int i = 0; i < rows; ++i) {
    std::vector<Rat> coeffs(cols);
    for (int j = 0; j < cols; ++j) coeffs[j] = inst.m[i][j];
    lp.add_row(std::move(coeffs), Rel::EQ, Rat(point.b[i]),
               "row:" + std::to_string(i));
  }
  for (int j = 0; j < cols; ++j) {
    std::vector<Rat> coeffs(cols, Rat(0));
    coeffs[j] = 1;
    if (inst.lower[j])
      lp.add_row(coeffs, Rel::GE, Rat(*inst.lower[j]), "lo:" + std::to_string(j));
    if (inst.upper[j])
      lp.add_row(std::move(coeffs), Rel::LE, Rat(*inst.upper[j]),
                 "hi:" + std::to_string(j));
  }

  std::optional<std::vector<Rat>> feas = lex_point_zero_preferring(lp);
  if (!feas) {
    // Hunt the witness of the violated feasibility characterization.
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      VertexSet u(mask);
      std::vector<long long> v = m_chi(u);
      long long lhs = 0;
      for (int i : u.members()) lhs += point.b[i];
      long long rhs = 0;
      bool infinite = false;
      for (int j = 0; j < cols; ++j) {
        if (v[j] > 0) {
          if (!inst.upper[j]) { infinite = true; break; }
          rhs += *inst.upper[j] * v[j];
        } else if (v[j] < 0) {
          if (!inst.lower[j]) { infinite = true; break; }
          rhs += *inst.lower[j] * v[j];
        }
      }
      if (!infinite && lhs > rhs) return ViolatingSet{u, lhs, rhs};
    }
    throw InternalInvariantError(
        "TU system infeasible but no violating set exists");
  }

  IntegralSolution sol;
  sol.y.resize(cols);
  for (int j = 0; j < cols; ++j) {
    if (!is_integer((*feas)[j]))
      throw InternalInvariantError(
          "TU extreme point is fractional, contradicting unimodularity");
    sol.y[j] = static_cast<long long>(numerator((*feas)[j]));
  }
  for (int i = 0; i < rows; ++i) {
    long long lhs = 0;
    for (int j = 0; j < cols; ++j) lhs += inst.m[i][j] * sol.y[j];
    if (lhs != point.b[i])
      throw InternalInvariantError("TU solution does not satisfy My = b");
  }
  return sol;
}

// ----------------------------------------------------------------------
// Flip pipeline
// ----------------------------------------------------------------------

namespace {

// Scaled integer form of d+(U) + (tau/k - 1) d-(U) - tau over proper
// non-empty subsets: the minimizer of the equivalent submodular expression
// g(U) = f2(U) - ybar(delta+(U)) + ybar(delta-(U)) with ybar = (k/tau)1,
// times tau. The violated original inequality lives at the complement.
HypothesisResult hypothesis_scan(const Digraph& d,
                                 const std::vector<int>& weights, int tau,
                                 int k, const char* inequality) {
  if (tau < 1 || k < 1) throw InputError("tau and k must be positive");
  const int n = d.vertex_count();
  require_subset_cap(n, "verify_hypothesis");
  if (n == 1) return std::nullopt;
  const std::uint64_t full = VertexSet::full(n).mask;
  auto scaled_g = [&](std::uint64_t mask) -> std::optional<long long> {
    VertexSet u(mask);
    long long dp = 0, dm = 0;
    for (int a = 0; a < d.arc_count(); ++a) {
      bool ti = u.contains(d.arc(a).tail), hi = u.contains(d.arc(a).head);
      if (ti && !hi) dp += weights[a];
      if (!ti && hi) dm += weights[a];
    }
    return (tau - k) * dp + k * dm - static_cast<long long>(tau) * k;
  };
  auto best = scan::min_over_masks<long long>(1, full, scaled_g);
  if (best->first >= 0) return std::nullopt;
  VertexSet violated = VertexSet(best->second).complement(n);
  return HypothesisViolation{violated, Rat(best->first) / Rat(k), inequality};
}

}  // namespace

HypothesisResult verify_hypothesis(const Digraph& d, int tau, int k) {
  return hypothesis_scan(d, std::vector<int>(d.arc_count(), 1), tau, k,
                         "d+(U) + (tau/k - 1) d-(U) >= tau");
}

HypothesisResult verify_weighted_hypothesis(const Digraph& d,
                                            const std::vector<int>& w, int tau,
                                            int k) {
  if (static_cast<int>(w.size()) != d.arc_count())
    throw InputError("weight vector length must match arc count");
  return hypothesis_scan(d, w, tau, k,
                         "w(delta+(U)) + (tau/k - 1) w(delta-(U)) >= tau");
}

FlipCertificate find_k_flip(const Digraph& d, int tau, int k,
                            const SubmodularOracle& f) {
  if (auto v = verify_hypothesis(d, tau, k))
    throw HypothesisViolatedError(*v);
  for (const VertexSet& u : f.family.enumerate()) {
    long long imbalance = out_degree(d, u) - in_degree(d, u);
    if (Rat(tau) * Rat(f(u)) < Rat(k) * Rat(imbalance))
      throw HypothesisViolatedError(HypothesisViolation{
          u, Rat(f(u)) - Rat(k * imbalance) / Rat(tau),
          "f(U) >= (k/tau)(d+(U) - d-(U))"});
  }

  TwoSystemInstance inst{
      d, f, outdeg_minus_k(d, k),
      std::vector<Bound>(d.arc_count(), Bound(0)),
      std::vector<Bound>(d.arc_count(), Bound(1)),
      {}};
  TwoSystemResult res = solve_two_systems(inst);
  auto* sol = std::get_if<IntegralSolution>(&res);
  if (!sol)
    throw InternalInvariantError(
        "flip pipeline failed although its hypotheses hold");

  FlipCertificate cert;
  cert.j = ArcSet(d.arc_count());
  for (int a = 0; a < d.arc_count(); ++a)
    if (sol->y[a] == 1) cert.j.add(a);
  cert.k = k;
  cert.tau = tau;
  cert.k_flip_verified = is_k_flip(d, cert.j, k);
  cert.family_constraints_verified = true;
  for (const VertexSet& u : f.family.enumerate()) {
    Cut cut = delta(d, u);
    long long lhs = (cert.j & cut.outgoing).count() -
                    (cert.j & cut.incoming).count();
    if (lhs > f(u)) cert.family_constraints_verified = false;
  }
  if (!cert.k_flip_verified || !cert.family_constraints_verified)
    throw InternalInvariantError("flip certificate failed re-verification");
  return cert;
}

DecompositionResult decompose_flip_dijoin(const Digraph& d, int tau, int k) {
  if (k < 1 || k > tau - 1) throw InputError("need 1 <= k <= tau - 1");
  FlipCertificate cert = find_k_flip(d, tau, k, dicut_slack(d, tau - k));
  DecompositionResult out;
  out.part1 = cert.j;
  out.part2 = cert.j.complement();
  out.role1 = std::to_string(k) + "-arc-connected flip";
  out.role2 = std::to_string(tau - k) + "-dijoin";
  out.verified = is_k_flip(d, out.part1, k) &&
                 (tau - k < 1 || is_k_dijoin(d, out.part2, tau - k));
  if (!out.verified)
    throw InternalInvariantError("flip/dijoin decomposition failed to verify");
  return out;
}

FlipCertificate near_eulerian_flip(const Digraph& d, int k) {
  if (k < 1) throw InputError("k must be positive");
  ConnectivityResult ec = edge_connectivity_underlying_cut(d);
  if (ec.value < 2LL * k)
    throw ConnectivityTooLowError(*ec.min_cut, ec.value, 2LL * k);
  FlipCertificate cert = find_k_flip(d, 2 * k, k, ceil_half_imbalance(d));
  Digraph flipped = flip(d, cert.j);
  for (int v = 0; v < d.vertex_count(); ++v) {
    VertexSet s = VertexSet::of({v});
    long long diff = out_degree(flipped, s) - in_degree(flipped, s);
    if (diff < -1 || diff > 1)
      throw InternalInvariantError("flip is not near-Eulerian");
  }
  return cert;
}

DecompositionResult weighted_decompose(const Digraph& d,
                                       const std::vector<int>& w, int tau,
                                       int k) {
  if (k < 1 || k > tau - 1) throw InputError("need 1 <= k <= tau - 1");
  if (auto v = verify_weighted_hypothesis(d, w, tau, k))
    throw HypothesisViolatedError(*v);

  // Restrict to the weight-1 arcs; the family still uses full-digraph
  // dicuts and weighted out-degrees.
  std::vector<Arc> sub_arcs;
  std::vector<int> orig_id;
  for (int a = 0; a < d.arc_count(); ++a) {
    if (w[a] == 1) {
      sub_arcs.push_back(d.arc(a));
      orig_id.push_back(a);
    }
  }
  Digraph sub(d.vertex_count(), std::move(sub_arcs));

  SubmodularOracle f{dicut_family(d),
                     [d, w, tau, k](VertexSet u) -> long long {
                       long long val = 0;
                       for (int a = 0; a < d.arc_count(); ++a) {
                         const Arc& arc = d.arc(a);
                         if (u.contains(arc.tail) && !u.contains(arc.head))
                           val += w[a];
                       }
                       return val - (tau - k);
                     },
                     "weighted-dicut-slack"};

  FlipCertificate cert = find_k_flip(sub, tau, k, f);
  DecompositionResult out;
  out.part1 = ArcSet(d.arc_count());
  out.part2 = ArcSet(d.arc_count());
  for (int i = 0; i < sub.arc_count(); ++i) {
    if (cert.j.contains(i))
      out.part1.add(orig_id[i]);
    else
      out.part2.add(orig_id[i]);
  }
  out.role1 = std::to_string(k) + "-arc-connected flip of the weight-1 part";
  out.role2 = std::to_string(tau - k) + "-dijoin";
  out.verified =
      cert.k_flip_verified && is_k_dijoin(d, out.part2, tau - k);
  if (!out.verified)
    throw InternalInvariantError("weighted decomposition failed to verify");
  return out;
}

DecompositionResult dijoin_pair_decompose(const Digraph& d, int tau, int k) {
  if (k < 1 || k > tau - 1) throw InputError("need 1 <= k <= tau - 1");
  ConnectivityResult ec = edge_connectivity_underlying_cut(d);
  if (ec.value < tau)
    throw ConnectivityTooLowError(*ec.min_cut, ec.value, tau);
  // By symmetry only k <= tau/2 needs the flip theorem.
  int small = std::min(k, tau - k);
  DecompositionResult dec = decompose_flip_dijoin(d, tau, small);
  DecompositionResult out;
  if (small == k) {
    out.part1 = dec.part1;
    out.part2 = dec.part2;
  } else {
    out.part1 = dec.part2;
    out.part2 = dec.part1;
  }
  out.role1 = std::to_string(k) + "-dijoin";
  out.role2 = std::to_string(tau - k) + "-dijoin";
  out.verified =
      is_k_dijoin(d, out.part1, k) && is_k_dijoin(d, out.part2, tau - k);
  if (!out.verified)
    throw InternalInvariantError("dijoin pair failed to verify");
  return out;
}

HypothesisResult cuts_near_uniform(const Digraph& d, int tau) {
  if (tau < 1) throw InputError("tau must be positive");
  const int n = d.vertex_count();
  require_subset_cap(n, "cuts_near_uniform");
  const std::uint64_t full = VertexSet::full(n).mask;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    VertexSet u(mask);
    long long dp = out_degree(d, u), dm = in_degree(d, u);
    if (dp + dm < tau - 1)
      return HypothesisViolation{u, Rat(dp + dm - (tau - 1)),
                                 "|delta+(U)| + |delta-(U)| >= tau - 1"};
    if (dp + dm == tau - 1 && dp != dm)
      return HypothesisViolation{u, Rat(-std::llabs(dp - dm)),
                                 "size tau-1 cuts must be balanced"};
  }
  return std::nullopt;
}

}  // namespace flipflow
