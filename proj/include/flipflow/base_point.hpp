#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/linprog.hpp"
#include "flipflow/setfam.hpp"

namespace flipflow {

// The base intersection polyhedron lives in vertex space:
//   sum(x) = 0,  x(U) <= f_i(U) for U in C_i, i = 1, 2.
// Members of the optional subfamilies force their rows to equality,
// selecting a face. An optional vertex objective selects the optimal face
// instead. A digraph supplies the isolated-set precondition context.
struct BaseIntersectionInstance {
  int n = 0;
  SubmodularOracle f1;
  SubmodularOracle f2;
  std::vector<VertexSet> face1;  // subset of C1 forced to equality
  std::vector<VertexSet> face2;  // subset of C2 forced to equality
  std::optional<std::vector<long long>> objective;  // per vertex
  std::optional<Digraph> digraph;
};

LinearProgram build_base_lp(const BaseIntersectionInstance& inst);

struct PreconditionViolated {
  VertexSet u;  // isolated set whose min f exceeds zero (or is off-family)
};

struct BaseInfeasible {};

struct BasePoint {
  std::vector<long long> b;  // integral, sums to zero
};

using BasePointResult =
    std::variant<BasePoint, BaseInfeasible, PreconditionViolated>;

// Integral point of the designated face, found by lexicographic
// maximization over ascending vertex ids (or a caller-provided order).
// Integrality is asserted; a fractional result would contradict the
// box-integrality of the base system and raises an internal error.
BasePointResult integral_base_point(const BaseIntersectionInstance& inst);
BasePointResult integral_base_point(const BaseIntersectionInstance& inst,
                                    const std::vector<int>& order);

// Lexicographic maximization where a stage with unbounded maximum gets
// pinned to the smallest nonnegative integer the region allows. Pins are
// box rows, so box-integrality arguments still apply to the result.
// Returns nullopt when the region is empty.
std::optional<std::vector<Rat>> lex_point_zero_preferring(
    LinearProgram lp, const std::vector<int>& order);
std::optional<std::vector<Rat>> lex_point_zero_preferring(LinearProgram lp);

}  // namespace flipflow
