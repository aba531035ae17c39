#include "flipflow/generators.hpp"

#include <random>

#include "flipflow/errors.hpp"

namespace flipflow {

Digraph gen_cycle(int n) {
  if (n < 2) throw InputError("cycle needs at least two vertices");
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  return Digraph(n, std::move(arcs));
}

Digraph gen_bidirected_cycle(int n) {
  if (n < 2) throw InputError("bidirected cycle needs at least two vertices");
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) {
    arcs.push_back({v, (v + 1) % n});
    arcs.push_back({(v + 1) % n, v});
  }
  return Digraph(n, std::move(arcs));
}

Digraph gen_random_ec(int n, int target_ec, std::uint64_t seed) {
  if (n < 2) throw InputError("random-ec needs at least two vertices");
  if (target_ec < 0) throw InputError("target edge connectivity must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vd(0, n - 1);
  std::uniform_int_distribution<int> flip_coin(0, 1);

  std::vector<Arc> arcs;
  auto add_edge = [&](int u, int v) {
    if (flip_coin(rng))
      arcs.push_back({u, v});
    else
      arcs.push_back({v, u});
  };
  // Start from a cycle, sprinkle a few extras, then raise connectivity by
  // bridging whichever cut is currently thinnest.
  for (int v = 0; v < n; ++v) add_edge(v, (v + 1) % n);
  std::uniform_int_distribution<int> extra_count(0, n);
  for (int e = extra_count(rng); e > 0; --e) {
    int u = vd(rng), v = vd(rng);
    while (v == u) v = vd(rng);
    add_edge(u, v);
  }

  const int edge_cap = 8 * n + target_ec * n + 16;
  for (;;) {
    Digraph d(n, arcs);
    ConnectivityResult ec = edge_connectivity_underlying_cut(d);
    if (ec.value >= target_ec) return d;
    if (static_cast<int>(arcs.size()) >= edge_cap)
      throw InputError("could not reach the requested edge connectivity");
    std::vector<int> inside = ec.min_cut->members();
    std::vector<int> outside = ec.min_cut->complement(n).members();
    std::uniform_int_distribution<std::size_t> pick_in(0, inside.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_out(0, outside.size() - 1);
    add_edge(inside[pick_in(rng)], outside[pick_out(rng)]);
  }
}

}  // namespace flipflow
