#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/vertex_set.hpp"

namespace flipflow {

// Bounds are integers, or unbounded when absent.
using Bound = std::optional<long long>;

// Find an integral y with lower <= y <= upper and net outflow b_v at every
// vertex, or a proper non-empty U with b(U) > u(delta+(U)) - l(delta-(U)).
struct TransshipmentInstance {
  Digraph d;
  std::vector<long long> b;     // one per vertex, must sum to zero
  std::vector<Bound> lower;     // one per arc; nullopt = -infinity
  std::vector<Bound> upper;     // one per arc; nullopt = +infinity
};

struct Flow {
  std::vector<long long> y;
};

struct ViolatingSet {
  VertexSet u;
  // Exact sides of the violated inequality: b(U) and u(d+(U)) - l(d-(U)).
  long long lhs = 0;
  long long rhs = 0;
};

using TransshipmentResult = std::variant<Flow, ViolatingSet>;

TransshipmentResult solve_transshipment(const TransshipmentInstance& inst);

// Net outflow of y at v.
long long divergence(const Digraph& d, const std::vector<long long>& y, int v);

}  // namespace flipflow
