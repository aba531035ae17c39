#pragma once

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/setfam.hpp"

namespace flipflow::testutil {

// The three-arc bad example: vertices 1,2,3,1',2',3' mapped to ids
// 0,1,2,3,4,5 and arcs a=0->3, b=1->4, c=2->5.
inline Digraph bad_example_digraph() {
  return Digraph(6, {{0, 3}, {1, 4}, {2, 5}});
}

inline Digraph directed_triangle() {
  return Digraph(3, {{0, 1}, {1, 2}, {2, 0}});
}

inline Digraph bidirected_triangle() {
  return Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}});
}

// Subset-enumeration reference for connectivity quantities; independent
// of the flow-based implementations.
inline long long brute_min_out_degree(const Digraph& d) {
  long long best = -1;
  const std::uint64_t full = VertexSet::full(d.vertex_count()).mask;
  for (std::uint64_t m = 1; m < full; ++m) {
    long long deg = out_degree(d, VertexSet(m));
    if (best < 0 || deg < best) best = deg;
  }
  return best;
}

inline bool brute_is_k_arc_connected(const Digraph& d, int k) {
  if (d.vertex_count() == 1) return true;
  return brute_min_out_degree(d) >= k;
}

inline long long brute_edge_connectivity(const Digraph& d) {
  long long best = -1;
  const std::uint64_t full = VertexSet::full(d.vertex_count()).mask;
  for (std::uint64_t m = 1; m < full; ++m) {
    VertexSet u(m);
    long long deg = out_degree(d, u) + in_degree(d, u);
    if (best < 0 || deg < best) best = deg;
  }
  return best;
}

inline Digraph random_digraph(std::mt19937_64& rng, int n, int arcs) {
  std::uniform_int_distribution<int> vd(0, n - 1);
  std::vector<Arc> list;
  for (int a = 0; a < arcs; ++a) {
    int tail = vd(rng), head = vd(rng);
    while (head == tail) head = vd(rng);
    list.push_back({tail, head});
  }
  return Digraph(n, std::move(list));
}

// Closure of random seed sets under crossing intersection/union; resamples
// until the closure stays within the cap.
inline CrossingFamily random_crossing_family(std::mt19937_64& rng, int n,
                                             int seeds, std::size_t cap = 24) {
  const std::uint64_t full = VertexSet::full(n).mask;
  std::uniform_int_distribution<std::uint64_t> md(1, full - 1);
  for (;;) {
    std::set<VertexSet> family;
    for (int s = 0; s < seeds; ++s) family.insert(VertexSet(md(rng)));
    bool grew = true;
    while (grew && family.size() <= cap) {
      grew = false;
      std::vector<VertexSet> snapshot(family.begin(), family.end());
      for (const VertexSet& u : snapshot) {
        for (const VertexSet& w : snapshot) {
          VertexSet inter = u & w, uni = u | w;
          if (inter.empty() || uni.mask == full) continue;
          if (family.insert(inter).second) grew = true;
          if (family.insert(uni).second) grew = true;
        }
      }
    }
    if (family.size() <= cap)
      return CrossingFamily::explicit_family(
          std::vector<VertexSet>(family.begin(), family.end()), n);
  }
}

// Coverage functions plus a modular part are submodular on every family.
inline SubmodularOracle random_submodular_oracle(std::mt19937_64& rng,
                                                 CrossingFamily family, int n,
                                                 int shift = 0) {
  std::uniform_int_distribution<std::uint64_t> md(1,
                                                  VertexSet::full(n).mask - 1);
  std::uniform_int_distribution<int> wd(0, 3);
  std::uniform_int_distribution<int> vertex_w(-2, 2);
  std::vector<std::pair<VertexSet, int>> cover;
  for (int i = 0; i < 3; ++i) cover.push_back({VertexSet(md(rng)), wd(rng)});
  std::vector<int> modular(n);
  for (int v = 0; v < n; ++v) modular[v] = vertex_w(rng);
  return SubmodularOracle{
      std::move(family),
      [cover, modular, shift](VertexSet u) -> long long {
        long long val = shift;
        for (const auto& [s, w] : cover)
          if (!(u & s).empty()) val += w;
        for (int v : u.members()) val += modular[v];
        return val;
      },
      "random-coverage"};
}

}  // namespace flipflow::testutil
