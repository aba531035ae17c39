#include "flipflow/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "flipflow/errors.hpp"

namespace flipflow {

FlowNetwork::FlowNetwork(int node_count)
    : node_count_(node_count), adj_(node_count) {
  if (node_count <= 0) throw InputError("flow network needs at least one node");
}

int FlowNetwork::add_edge(int from, int to, long long capacity) {
  if (from < 0 || from >= node_count_ || to < 0 || to >= node_count_)
    throw InputError("flow edge endpoint out of range");
  if (capacity < 0) throw InputError("flow capacities must be nonnegative");
  int id = static_cast<int>(edges_.size());
  adj_[from].push_back(id);
  edges_.push_back({to, capacity});
  adj_[to].push_back(id + 1);
  edges_.push_back({from, 0});
  initial_cap_.push_back(capacity);
  initial_cap_.push_back(0);
  return id;
}

bool FlowNetwork::bfs(int source, int sink) {
  level_.assign(node_count_, -1);
  std::queue<int> q;
  q.push(source);
  level_[source] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long FlowNetwork::dfs(int v, int sink, long long limit) {
  if (v == sink || limit == 0) return limit;
  for (std::size_t& i = next_[v]; i < adj_[v].size(); ++i) {
    int id = adj_[v][i];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    long long pushed = dfs(e.to, sink, std::min(limit, e.cap));
    if (pushed > 0) {
      e.cap -= pushed;
      edges_[id ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

long long FlowNetwork::max_flow(int source, int sink) {
  if (source == sink) throw InputError("max_flow requires distinct endpoints");
  long long total = 0;
  while (bfs(source, sink)) {
    next_.assign(node_count_, 0);
    while (long long pushed =
               dfs(source, sink, std::numeric_limits<long long>::max()))
      total += pushed;
  }
  return total;
}

long long FlowNetwork::flow_on(int edge_index) const {
  return initial_cap_[edge_index] - edges_[edge_index].cap;
}

std::vector<bool> FlowNetwork::min_cut_side(int source) const {
  std::vector<bool> seen(node_count_, false);
  std::queue<int> q;
  q.push(source);
  seen[source] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = true;
        q.push(e.to);
      }
    }
  }
  return seen;
}

}  // namespace flipflow
