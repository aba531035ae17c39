#include "flipflow/digraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "flipflow/errors.hpp"
#include "flipflow/maxflow.hpp"

namespace flipflow {

Digraph::Digraph(int n, std::vector<Arc> arcs)
    : Digraph(n, std::move(arcs), {}) {}

Digraph::Digraph(int n, std::vector<Arc> arcs, std::vector<int> weights)
    : n_(n), arcs_(std::move(arcs)), weights_(std::move(weights)) {
  if (n < 1 || n > 63) throw InputError("vertex count must be in 1..63");
  for (const Arc& a : arcs_) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw InputError("arc endpoint out of range");
    if (a.tail == a.head) throw InputError("self-loops are not allowed");
  }
  if (weights_.empty()) {
    weights_.assign(arcs_.size(), 1);
  } else if (weights_.size() != arcs_.size()) {
    throw InputError("weight vector length must match arc count");
  }
  for (int w : weights_)
    if (w != 0 && w != 1) throw InputError("arc weights must be 0 or 1");
}

void require_subset_cap(int n, const char* what) {
  if (n > kSubsetEnumerationCap)
    throw CapacityError(std::string(what) + ": vertex count " +
                        std::to_string(n) + " exceeds enumeration cap " +
                        std::to_string(kSubsetEnumerationCap));
}

Cut delta(const Digraph& d, VertexSet u) {
  Cut cut{ArcSet(d.arc_count()), ArcSet(d.arc_count())};
  for (int id = 0; id < d.arc_count(); ++id) {
    const Arc& a = d.arc(id);
    bool tail_in = u.contains(a.tail);
    bool head_in = u.contains(a.head);
    if (tail_in && !head_in) cut.outgoing.add(id);
    if (!tail_in && head_in) cut.incoming.add(id);
  }
  return cut;
}

int out_degree(const Digraph& d, VertexSet u) {
  int c = 0;
  for (const Arc& a : d.arcs())
    c += u.contains(a.tail) && !u.contains(a.head);
  return c;
}

int in_degree(const Digraph& d, VertexSet u) {
  int c = 0;
  for (const Arc& a : d.arcs())
    c += !u.contains(a.tail) && u.contains(a.head);
  return c;
}

int weighted_out_degree(const Digraph& d, VertexSet u) {
  int c = 0;
  for (int id = 0; id < d.arc_count(); ++id) {
    const Arc& a = d.arc(id);
    if (u.contains(a.tail) && !u.contains(a.head)) c += d.weight(id);
  }
  return c;
}

int weighted_in_degree(const Digraph& d, VertexSet u) {
  int c = 0;
  for (int id = 0; id < d.arc_count(); ++id) {
    const Arc& a = d.arc(id);
    if (!u.contains(a.tail) && u.contains(a.head)) c += d.weight(id);
  }
  return c;
}

Digraph flip(const Digraph& d, const ArcSet& j) {
  if (j.universe_size() != static_cast<std::size_t>(d.arc_count()))
    throw InputError("arc set universe does not match digraph");
  for (int id : j.members())
    if (id >= d.arc_count()) throw InputError("unknown arc id in flip set");
  std::vector<Arc> arcs = d.arcs();
  for (int id : j.members()) std::swap(arcs[id].tail, arcs[id].head);
  return Digraph(d.vertex_count(), std::move(arcs),
                 std::vector<int>(d.weights()));
}

namespace {

// Min s->t cut value over the arc multiset, with multiplicities as unit
// capacities. Returns the flow network for cut extraction.
long long st_cut_value(const Digraph& d, int s, int t, bool bidirect,
                       FlowNetwork* out_net = nullptr) {
  FlowNetwork net(d.vertex_count());
  for (const Arc& a : d.arcs()) {
    net.add_edge(a.tail, a.head, 1);
    if (bidirect) net.add_edge(a.head, a.tail, 1);
  }
  long long v = net.max_flow(s, t);
  if (out_net) *out_net = net;
  return v;
}

}  // namespace

ConnectivityResult arc_connectivity(const Digraph& d) {
  const int n = d.vertex_count();
  if (n == 1) return {std::numeric_limits<long long>::max(), std::nullopt};
  long long best = std::numeric_limits<long long>::max();
  int best_v = -1;
  bool best_forward = true;
  for (int v = 1; v < n; ++v) {
    long long fwd = st_cut_value(d, 0, v, false);
    if (fwd < best) best = fwd, best_v = v, best_forward = true;
    long long bwd = st_cut_value(d, v, 0, false);
    if (bwd < best) best = bwd, best_v = v, best_forward = false;
  }
  FlowNetwork net(1);
  if (best_forward) {
    st_cut_value(d, 0, best_v, false, &net);
  } else {
    st_cut_value(d, best_v, 0, false, &net);
  }
  std::vector<bool> side = net.min_cut_side(best_forward ? 0 : best_v);
  VertexSet u;
  for (int v = 0; v < n; ++v)
    if (side[v]) u.add(v);
  return {best, u};
}

bool is_k_arc_connected(const Digraph& d, int k) {
  if (k < 1) throw InputError("k must be positive");
  if (d.vertex_count() == 1) return true;
  return arc_connectivity(d).value >= k;
}

ConnectivityResult edge_connectivity_underlying_cut(const Digraph& d) {
  const int n = d.vertex_count();
  if (n < 2) throw InputError("edge connectivity needs at least two vertices");
  long long best = std::numeric_limits<long long>::max();
  int best_v = -1;
  for (int v = 1; v < n; ++v) {
    long long c = st_cut_value(d, 0, v, true);
    if (c < best) best = c, best_v = v;
  }
  FlowNetwork net(1);
  st_cut_value(d, 0, best_v, true, &net);
  std::vector<bool> side = net.min_cut_side(0);
  VertexSet u;
  for (int v = 0; v < n; ++v)
    if (side[v]) u.add(v);
  return {best, u};
}

long long edge_connectivity_underlying(const Digraph& d) {
  return edge_connectivity_underlying_cut(d).value;
}

std::vector<VertexSet> enumerate_dicuts(const Digraph& d, scan::Exec exec) {
  const int n = d.vertex_count();
  require_subset_cap(n, "enumerate_dicuts");
  const std::uint64_t full = VertexSet::full(n).mask;
  auto masks = scan::collect_masks(
      1, full,
      [&](std::uint64_t m) {
        VertexSet u(m);
        for (const Arc& a : d.arcs())
          if (!u.contains(a.tail) && u.contains(a.head)) return false;
        return true;
      },
      exec);
  std::vector<VertexSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(m);
  return out;
}

bool is_k_dijoin(const Digraph& d, const ArcSet& j, int k) {
  if (k < 1) throw InputError("k must be positive");
  require_subset_cap(d.vertex_count(), "is_k_dijoin");
  for (const VertexSet& u : enumerate_dicuts(d)) {
    Cut cut = delta(d, u);
    if ((j & cut.outgoing).count() < k) return false;
  }
  return true;
}

bool is_k_flip(const Digraph& d, const ArcSet& j, int k) {
  return is_k_arc_connected(flip(d, j), k);
}

std::vector<VertexSet> weak_components(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> nbrs(n);
  for (const Arc& a : d.arcs()) {
    nbrs[a.tail].push_back(a.head);
    nbrs[a.head].push_back(a.tail);
  }
  std::vector<VertexSet> out;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    VertexSet set;
    std::vector<int> stack{root};
    comp[root] = root;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      set.add(v);
      for (int w : nbrs[v]) {
        if (comp[w] < 0) {
          comp[w] = root;
          stack.push_back(w);
        }
      }
    }
    out.push_back(set);
  }
  return out;
}

}  // namespace flipflow
