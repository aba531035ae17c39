#include "flipflow/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "flipflow/errors.hpp"

namespace flipflow {

MatroidOracle::MatroidOracle(int ground_size, std::function<int(VertexSet)> rank,
                             std::string name)
    : m_(ground_size), rank_(std::move(rank)), name_(std::move(name)) {
  if (m_ < 1 || m_ > 20) throw InputError("matroid ground size must be 1..20");
  if (m_ > 12) return;  // axiom check only at small sizes
  const std::uint64_t full = VertexSet::full(m_).mask;
  if (rank_(VertexSet()) != 0)
    throw InputError("matroid rank of the empty set must be 0");
  for (std::uint64_t s = 0; s <= full; ++s) {
    VertexSet set(s);
    int r = rank_(set);
    if (r < 0 || r > set.count())
      throw InputError("matroid rank must lie in [0, |S|]");
    for (int e = 0; e < m_; ++e) {
      if (set.contains(e)) continue;
      VertexSet bigger = set;
      bigger.add(e);
      int rb = rank_(bigger);
      if (rb < r || rb > r + 1)
        throw InputError("matroid rank must grow by 0 or 1 per element");
    }
  }
  for (std::uint64_t a = 0; a <= full; ++a) {
    for (std::uint64_t b = a; b <= full; ++b) {
      VertexSet sa(a), sb(b);
      if (rank_(sa & sb) + rank_(sa | sb) > rank_(sa) + rank_(sb))
        throw InputError("matroid rank must be submodular");
    }
  }
}

MatroidOracle uniform_matroid(int rank, int ground_size) {
  if (rank < 0 || rank > ground_size)
    throw InputError("uniform matroid rank must be in 0..ground size");
  return MatroidOracle(
      ground_size,
      [rank](VertexSet s) { return std::min(rank, s.count()); },
      "U(" + std::to_string(rank) + "," + std::to_string(ground_size) + ")");
}

MatroidOracle partition_matroid(const std::vector<VertexSet>& blocks,
                                const std::vector<int>& caps,
                                int ground_size) {
  if (blocks.size() != caps.size())
    throw InputError("partition matroid needs one cap per block");
  VertexSet seen;
  for (const VertexSet& b : blocks) {
    if (!(seen & b).empty())
      throw InputError("partition matroid blocks must be disjoint");
    seen = seen | b;
  }
  if (seen != VertexSet::full(ground_size))
    throw InputError("partition matroid blocks must cover the ground set");
  return MatroidOracle(
      ground_size,
      [blocks, caps](VertexSet s) {
        int r = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
          r += std::min((s & blocks[i]).count(), caps[i]);
        return r;
      },
      "partition");
}

MatroidOracle graphic_matroid(int vertex_count,
                              const std::vector<std::pair<int, int>>& edges) {
  for (auto [a, b] : edges)
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
      throw InputError("graphic matroid edge endpoint out of range");
  return MatroidOracle(
      static_cast<int>(edges.size()),
      [vertex_count, edges](VertexSet s) {
        // Spanning-forest size of the selected edges, via union-find.
        std::vector<int> parent(vertex_count);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        int r = 0;
        for (int e : s.members()) {
          int a = find(edges[e].first), b = find(edges[e].second);
          if (a != b) {
            parent[a] = b;
            ++r;
          }
        }
        return r;
      },
      "graphic");
}

}  // namespace flipflow
