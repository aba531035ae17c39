#include "flipflow/transshipment.hpp"

#include <cstdlib>
#include <numeric>

#include "flipflow/errors.hpp"
#include "flipflow/maxflow.hpp"

namespace flipflow {

long long divergence(const Digraph& d, const std::vector<long long>& y,
                     int v) {
  long long out = 0;
  for (int id = 0; id < d.arc_count(); ++id) {
    if (d.arc(id).tail == v) out += y[id];
    if (d.arc(id).head == v) out -= y[id];
  }
  return out;
}

TransshipmentResult solve_transshipment(const TransshipmentInstance& inst) {
  const Digraph& d = inst.d;
  const int n = d.vertex_count();
  const int m = d.arc_count();
  if (static_cast<int>(inst.b.size()) != n)
    throw InputError("b must assign a value to every vertex");
  if (static_cast<int>(inst.lower.size()) != m ||
      static_cast<int>(inst.upper.size()) != m)
    throw InputError("bounds must cover every arc");
  if (std::accumulate(inst.b.begin(), inst.b.end(), 0LL) != 0)
    throw InputError("b must sum to zero");

  // Infinite bounds become +-B for a budget B that any feasible flow fits
  // in, so the reduction's verdict matches the unbounded instance.
  long long budget = 1;
  for (long long v : inst.b) budget += std::llabs(v);
  for (int a = 0; a < m; ++a) {
    if (inst.lower[a] && inst.upper[a] && *inst.lower[a] > *inst.upper[a])
      throw InputError("lower bound exceeds upper bound");
    if (inst.lower[a]) budget += std::llabs(*inst.lower[a]);
    if (inst.upper[a]) budget += std::llabs(*inst.upper[a]);
  }
  std::vector<long long> lo(m), hi(m);
  for (int a = 0; a < m; ++a) {
    lo[a] = inst.lower[a] ? *inst.lower[a] : -budget;
    hi[a] = inst.upper[a] ? *inst.upper[a] : budget;
  }

  // Shift y = lo + y' with 0 <= y' <= hi - lo; vertex v then needs net
  // outflow b'_v = b_v - lo(delta+(v)) + lo(delta-(v)). Feasibility is a
  // max-flow from a super source saturating all surplus arcs.
  std::vector<long long> surplus(inst.b.begin(), inst.b.end());
  for (int a = 0; a < m; ++a) {
    surplus[d.arc(a).tail] -= lo[a];
    surplus[d.arc(a).head] += lo[a];
  }

  const int source = n;
  const int sink = n + 1;
  FlowNetwork net(n + 2);
  std::vector<int> arc_edge(m);
  for (int a = 0; a < m; ++a)
    arc_edge[a] = net.add_edge(d.arc(a).tail, d.arc(a).head, hi[a] - lo[a]);
  long long need = 0;
  for (int v = 0; v < n; ++v) {
    if (surplus[v] > 0) {
      net.add_edge(source, v, surplus[v]);
      need += surplus[v];
    } else if (surplus[v] < 0) {
      net.add_edge(v, sink, -surplus[v]);
    }
  }

  long long value = net.max_flow(source, sink);
  if (value == need) {
    Flow flow;
    flow.y.resize(m);
    for (int a = 0; a < m; ++a) flow.y[a] = lo[a] + net.flow_on(arc_edge[a]);
    return flow;
  }

  // The source side of the min cut, restricted to real vertices, violates
  // the cut condition; with the chosen budget it is proper and non-empty.
  std::vector<bool> side = net.min_cut_side(source);
  VertexSet u;
  for (int v = 0; v < n; ++v)
    if (side[v]) u.add(v);
  ViolatingSet viol;
  viol.u = u;
  viol.lhs = 0;
  for (int v : u.members()) viol.lhs += inst.b[v];
  viol.rhs = 0;
  for (int a = 0; a < m; ++a) {
    bool tail_in = u.contains(d.arc(a).tail);
    bool head_in = u.contains(d.arc(a).head);
    if (tail_in && !head_in) viol.rhs += hi[a];
    if (!tail_in && head_in) viol.rhs -= lo[a];
  }
  if (!u.is_proper_nonempty(n) || viol.lhs <= viol.rhs)
    throw InternalInvariantError(
        "transshipment min cut did not yield a violating set");
  return viol;
}

}  // namespace flipflow
