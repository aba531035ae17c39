#include "flipflow/base_point.hpp"

#include <algorithm>
#include <set>

#include "flipflow/errors.hpp"

namespace flipflow {

namespace {

std::string member_tag(const char* system, VertexSet u) {
  return std::string(system) + ":" + u.to_string();
}

// Proper non-empty unions of weak components; exactly the U with
// delta+(U) = delta-(U) = empty.
std::vector<VertexSet> isolated_sets(const Digraph& d) {
  std::vector<VertexSet> comps = weak_components(d);
  const int c = static_cast<int>(comps.size());
  require_subset_cap(c, "isolated-set enumeration");
  std::vector<VertexSet> out;
  for (std::uint64_t m = 1; m + 1 < (1ULL << c); ++m) {
    VertexSet u;
    for (int i = 0; i < c; ++i)
      if ((m >> i) & 1ULL) u = u | comps[i];
    out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LinearProgram build_base_lp(const BaseIntersectionInstance& inst) {
  std::vector<std::string> names;
  names.reserve(inst.n);
  for (int v = 0; v < inst.n; ++v) names.push_back("x" + std::to_string(v));
  LinearProgram lp(std::move(names));

  auto add_system = [&](const SubmodularOracle& f,
                        const std::vector<VertexSet>& face,
                        const char* label) {
    std::set<VertexSet> eq(face.begin(), face.end());
    for (const VertexSet& u : f.family.enumerate()) {
      std::vector<Rat> coeffs(inst.n, Rat(0));
      for (int v : u.members()) coeffs[v] = 1;
      lp.add_row(std::move(coeffs), eq.count(u) ? Rel::EQ : Rel::LE,
                 Rat(f(u)), member_tag(label, u));
      eq.erase(u);
    }
    if (!eq.empty())
      throw InputError("face member outside its crossing family: " +
                       eq.begin()->to_string());
  };
  add_system(inst.f1, inst.face1, "f1");
  add_system(inst.f2, inst.face2, "f2");

  lp.add_row(std::vector<Rat>(inst.n, Rat(1)), Rel::EQ, Rat(0), "balance");
  if (inst.objective) {
    for (int v = 0; v < inst.n; ++v) lp.objective[v] = Rat((*inst.objective)[v]);
  }
  return lp;
}

BasePointResult integral_base_point(const BaseIntersectionInstance& inst) {
  std::vector<int> order(inst.n);
  for (int v = 0; v < inst.n; ++v) order[v] = v;
  return integral_base_point(inst, order);
}

// The lexicographic loop with the unbounded-stage fallback, shared with
// the TU feasibility path.
std::optional<std::vector<Rat>> lex_point_zero_preferring(
    LinearProgram lp, const std::vector<int>& order) {
  std::vector<Rat> values(lp.num_vars());
  for (std::size_t stage = 0; stage < order.size(); ++stage) {
    int v = order[stage];
    std::fill(lp.objective.begin(), lp.objective.end(), Rat(0));
    lp.objective[v] = 1;
    SolveResult up = solve(lp);
    Rat fixed;
    if (up.status == LpStatus::Infeasible) {
      if (stage == 0) return std::nullopt;
      throw InternalInvariantError("region became empty after a lex fix");
    }
    if (up.status == LpStatus::Optimal) {
      fixed = up.value;
    } else {
      lp.objective[v] = -1;
      SolveResult down = solve(lp);
      if (down.status == LpStatus::Optimal) {
        Rat low = -down.value;
        fixed = low <= 0 ? Rat(0) : Rat(ceil_rat(low));
      } else {
        fixed = 0;  // free line through this coordinate
      }
    }
    values[v] = fixed;
    std::vector<Rat> fix(lp.num_vars(), Rat(0));
    fix[v] = 1;
    lp.add_row(std::move(fix), Rel::EQ, fixed,
               "lex-fix:" + std::to_string(stage));
  }
  return values;
}

std::optional<std::vector<Rat>> lex_point_zero_preferring(LinearProgram lp) {
  std::vector<int> order(lp.num_vars());
  for (int v = 0; v < lp.num_vars(); ++v) order[v] = v;
  return lex_point_zero_preferring(std::move(lp), order);
}

BasePointResult integral_base_point(const BaseIntersectionInstance& inst,
                                    const std::vector<int>& order) {
  if (inst.digraph) {
    for (const VertexSet& u : isolated_sets(*inst.digraph)) {
      bool in1 = inst.f1.family.contains(u);
      bool in2 = inst.f2.family.contains(u);
      long long best = 1;  // off-family means unconstrained, so positive
      if (in1) best = std::min(best, inst.f1(u));
      if (in2) best = std::min(best, inst.f2(u));
      if (best > 0) return PreconditionViolated{u};
    }
  }

  LinearProgram lp = build_base_lp(inst);
  if (inst.objective) {
    SolveResult opt = solve(lp);
    if (opt.status == LpStatus::Infeasible) return BaseInfeasible{};
    if (opt.status == LpStatus::Unbounded)
      throw InputError("base objective is unbounded over the base polyhedron");
    std::vector<Rat> coeffs = lp.objective;
    lp.add_row(std::move(coeffs), Rel::EQ, opt.value, "face:objective");
  }

  std::optional<std::vector<Rat>> values =
      lex_point_zero_preferring(std::move(lp), order);
  if (!values) return BaseInfeasible{};

  BasePoint point;
  point.b.resize(inst.n);
  long long sum = 0;
  for (int v = 0; v < inst.n; ++v) {
    if (!is_integer((*values)[v]))
      throw InternalInvariantError(
          "base point is fractional, contradicting box integrality of the "
          "base system");
    point.b[v] = static_cast<long long>(numerator((*values)[v]));
    sum += point.b[v];
  }
  if (sum != 0)
    throw InternalInvariantError("base point does not balance to zero");
  auto verify_system = [&](const SubmodularOracle& f,
                           const std::vector<VertexSet>& face,
                           const char* which) {
    std::set<VertexSet> eq(face.begin(), face.end());
    for (const VertexSet& u : f.family.enumerate()) {
      long long lhs = 0;
      for (int v : u.members()) lhs += point.b[v];
      if (lhs > f(u) || (eq.count(u) && lhs != f(u)))
        throw InternalInvariantError(std::string("base point violates ") +
                                     which);
    }
  };
  verify_system(inst.f1, inst.face1, "system 1");
  verify_system(inst.f2, inst.face2, "system 2");
  return point;
}

}  // namespace flipflow
