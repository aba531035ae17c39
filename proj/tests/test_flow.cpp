#include <array>
#include <random>

#include "doctest.h"
#include "flipflow/errors.hpp"
#include "flipflow/maxflow.hpp"
#include "flipflow/transshipment.hpp"
#include "test_util.hpp"

using namespace flipflow;
using namespace flipflow::testutil;

namespace {

// Brute-force min cut: min over source-side subsets of crossing capacity.
long long brute_min_cut(int n, const std::vector<std::array<long long, 3>>& edges,
                        int s, int t) {
  long long best = -1;
  for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
    if (!((m >> s) & 1ULL) || ((m >> t) & 1ULL)) continue;
    long long cap = 0;
    for (const auto& e : edges)
      if (((m >> e[0]) & 1ULL) && !((m >> e[1]) & 1ULL)) cap += e[2];
    if (best < 0 || cap < best) best = cap;
  }
  return best;
}

// Independent 0/1 search for a feasible transshipment within 0/1 bounds.
bool brute_has_01_transshipment(const TransshipmentInstance& inst) {
  const int m = inst.d.arc_count();
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    bool ok = true;
    std::vector<long long> y(m);
    for (int a = 0; a < m && ok; ++a) {
      y[a] = (mask >> a) & 1ULL;
      if (inst.lower[a] && y[a] < *inst.lower[a]) ok = false;
      if (inst.upper[a] && y[a] > *inst.upper[a]) ok = false;
    }
    if (!ok) continue;
    for (int v = 0; v < inst.d.vertex_count() && ok; ++v)
      if (divergence(inst.d, y, v) != inst.b[v]) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("max flow basics") {
  FlowNetwork net(2);
  net.add_edge(0, 1, 3);
  CHECK(net.max_flow(0, 1) == 3);

  FlowNetwork net2(2);
  net2.add_edge(0, 1, 1);
  net2.add_edge(0, 1, 2);
  CHECK(net2.max_flow(0, 1) == 3);
}

TEST_CASE("max flow equals brute-force min cut on random networks") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);  // up to 8
    int m = n + static_cast<int>(rng() % (2 * n));
    std::vector<std::array<long long, 3>> edges;
    FlowNetwork net(n);
    for (int e = 0; e < m; ++e) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v) continue;
      long long cap = static_cast<long long>(rng() % 4);
      edges.push_back({u, v, cap});
      net.add_edge(u, v, cap);
    }
    long long flow = net.max_flow(0, n - 1);
    CHECK(flow == brute_min_cut(n, edges, 0, n - 1));
    // The reported cut has capacity equal to the flow value.
    std::vector<bool> side = net.min_cut_side(0);
    long long cap = 0;
    for (const auto& e : edges)
      if (side[e[0]] && !side[e[1]]) cap += e[2];
    CHECK(cap == flow);
    CHECK(side[0]);
    CHECK_FALSE(side[n - 1]);
  }
}

TEST_CASE("transshipment examples") {
  Digraph single(2, {{0, 1}});

  TransshipmentInstance feasible{single, {1, -1}, {Bound(0)}, {Bound(1)}};
  auto res = solve_transshipment(feasible);
  REQUIRE(std::holds_alternative<Flow>(res));
  CHECK(std::get<Flow>(res).y == std::vector<long long>{1});

  TransshipmentInstance infeasible{single, {2, -2}, {Bound(0)}, {Bound(1)}};
  res = solve_transshipment(infeasible);
  REQUIRE(std::holds_alternative<ViolatingSet>(res));
  const auto& viol = std::get<ViolatingSet>(res);
  CHECK(viol.u == VertexSet::of({0}));
  CHECK(viol.lhs == 2);
  CHECK(viol.rhs == 1);

  TransshipmentInstance zero{single, {0, 0}, {Bound(0)}, {Bound(0)}};
  res = solve_transshipment(zero);
  REQUIRE(std::holds_alternative<Flow>(res));
  CHECK(std::get<Flow>(res).y == std::vector<long long>{0});

  TransshipmentInstance bad{single, {1, 0}, {Bound(0)}, {Bound(1)}};
  CHECK_THROWS_AS(solve_transshipment(bad), InputError);
}

TEST_CASE("transshipment with unbounded sides") {
  // Negative lower bounds let flow run backwards.
  Digraph single(2, {{0, 1}});
  TransshipmentInstance inst{single, {-2, 2}, {Bound()}, {Bound(0)}};
  auto res = solve_transshipment(inst);
  REQUIRE(std::holds_alternative<Flow>(res));
  CHECK(std::get<Flow>(res).y == std::vector<long long>{-2});
}

TEST_CASE("transshipment equals 0/1 brute force on random instances") {
  std::mt19937_64 rng(37);
  int feasible_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 5);
    Digraph d = random_digraph(rng, n, m);
    std::vector<long long> b(n, 0);
    for (int i = 0; i + 1 < n; ++i) {
      b[i] = static_cast<long long>(rng() % 5) - 2;
      b[n - 1] -= b[i];
    }
    if (b[n - 1] < -2 || b[n - 1] > 2) continue;
    std::vector<Bound> lo(m, Bound(0)), hi(m);
    for (int a = 0; a < m; ++a) hi[a] = Bound(rng() % 2);
    TransshipmentInstance inst{d, b, lo, hi};
    auto res = solve_transshipment(inst);
    bool brute = brute_has_01_transshipment(inst);
    if (std::holds_alternative<Flow>(res)) {
      ++feasible_count;
      CHECK(brute);
      const auto& y = std::get<Flow>(res).y;
      for (int v = 0; v < n; ++v) CHECK(divergence(d, y, v) == b[v]);
    } else {
      CHECK_FALSE(brute);
      const auto& viol = std::get<ViolatingSet>(res);
      CHECK(viol.lhs > viol.rhs);
    }
  }
  CHECK(feasible_count > 20);
}
