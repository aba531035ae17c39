#pragma once

#include <cstdint>
#include <vector>

#include "flipflow/vertex_set.hpp"

namespace flipflow {

// Integer max-flow network (Dinic). Deterministic: BFS levels and DFS
// augmentation follow arc insertion order, so the returned flow and the
// source-side min cut are reproducible.
class FlowNetwork {
 public:
  explicit FlowNetwork(int node_count);

  int node_count() const { return node_count_; }

  // Returns the index of the forward edge; the reverse edge is index^1.
  int add_edge(int from, int to, long long capacity);

  long long max_flow(int source, int sink);

  // Flow currently on the forward edge with the given index.
  long long flow_on(int edge_index) const;

  // Nodes reachable from `source` in the residual graph after max_flow;
  // this is the canonical source side of a minimum cut.
  std::vector<bool> min_cut_side(int source) const;

 private:
  struct Edge {
    int to;
    long long cap;  // residual capacity
  };

  bool bfs(int source, int sink);
  long long dfs(int v, int sink, long long limit);

  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<long long> initial_cap_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace flipflow
