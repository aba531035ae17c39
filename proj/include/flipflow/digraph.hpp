#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flipflow/arc_set.hpp"
#include "flipflow/subset_scan.hpp"
#include "flipflow/vertex_set.hpp"

namespace flipflow {

struct Arc {
  int tail;
  int head;
  bool operator==(const Arc&) const = default;
};

// Immutable digraph over dense vertex ids 0..n-1. Arc ids equal positions
// in the arc list; parallel arcs are allowed, self-loops are rejected.
// Optional 0/1 arc weights default to 1.
class Digraph {
 public:
  Digraph(int n, std::vector<Arc> arcs);
  Digraph(int n, std::vector<Arc> arcs, std::vector<int> weights);

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_[id]; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int id) const { return weights_[id]; }

  bool operator==(const Digraph&) const = default;

 private:
  int n_;
  std::vector<Arc> arcs_;
  std::vector<int> weights_;
};

// Arcs leaving and entering U.
struct Cut {
  ArcSet outgoing;
  ArcSet incoming;
};
Cut delta(const Digraph& d, VertexSet u);

int out_degree(const Digraph& d, VertexSet u);
int in_degree(const Digraph& d, VertexSet u);
int weighted_out_degree(const Digraph& d, VertexSet u);
int weighted_in_degree(const Digraph& d, VertexSet u);

// The digraph with the arcs of J reversed in place (ids preserved).
Digraph flip(const Digraph& d, const ArcSet& j);

// Every proper non-empty U has at least k outgoing arcs. Computed with
// 2(n-1) max-flow calls (root to v and v to root), not subset enumeration.
bool is_k_arc_connected(const Digraph& d, int k);

// min over proper non-empty U of d+(U); the certificate is a minimising U.
struct ConnectivityResult {
  long long value;
  std::optional<VertexSet> min_cut;  // absent when n == 1
};
ConnectivityResult arc_connectivity(const Digraph& d);

// Edge connectivity of the underlying undirected multigraph.
long long edge_connectivity_underlying(const Digraph& d);
ConnectivityResult edge_connectivity_underlying_cut(const Digraph& d);

// All proper non-empty U with no entering arc, ascending bitmask order.
// Each such U induces the dicut delta+(U).
std::vector<VertexSet> enumerate_dicuts(const Digraph& d,
                                        scan::Exec exec = scan::Exec::Auto);

// |J & delta+(U)| >= k for every dicut-inducing U.
bool is_k_dijoin(const Digraph& d, const ArcSet& j, int k);

// flip(d, J) is k-arc-connected.
bool is_k_flip(const Digraph& d, const ArcSet& j, int k);

// Weak connected components as vertex sets, ascending by smallest member.
std::vector<VertexSet> weak_components(const Digraph& d);

inline constexpr int kSubsetEnumerationCap = 22;
void require_subset_cap(int n, const char* what);

}  // namespace flipflow
