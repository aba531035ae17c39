#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flipflow/vertex_set.hpp"

namespace flipflow {

// Rank oracle over ground ids 0..m-1. The rank axioms (zero at empty,
// unit increments, monotone, submodular) are checked at construction for
// ground sizes up to 12.
class MatroidOracle {
 public:
  MatroidOracle(int ground_size, std::function<int(VertexSet)> rank,
                std::string name);

  int ground_size() const { return m_; }
  int rank(VertexSet s) const { return rank_(s); }
  int full_rank() const { return rank_(VertexSet::full(m_)); }
  const std::string& name() const { return name_; }

  bool is_independent(VertexSet s) const { return rank(s) == s.count(); }
  bool is_basis(VertexSet s) const {
    return is_independent(s) && rank(s) == full_rank();
  }

 private:
  int m_;
  std::function<int(VertexSet)> rank_;
  std::string name_;
};

MatroidOracle uniform_matroid(int rank, int ground_size);
// Blocks partition the ground set; rank of S is the sum of
// min(|S & block|, cap) over blocks.
MatroidOracle partition_matroid(const std::vector<VertexSet>& blocks,
                                const std::vector<int>& caps, int ground_size);
// Ground elements are the edges of an undirected graph.
MatroidOracle graphic_matroid(int vertex_count,
                              const std::vector<std::pair<int, int>>& edges);

}  // namespace flipflow
