#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flipflow/base_point.hpp"
#include "flipflow/digraph.hpp"
#include "flipflow/rational.hpp"
#include "flipflow/setfam.hpp"
#include "flipflow/transshipment.hpp"

namespace flipflow {

// ----------------------------------------------------------------------
// Two crossing-submodular flow systems over the arcs of one digraph:
//   y(delta+(U)) - y(delta-(U)) <= f_i(U)  for U in C_i, i = 1, 2
// plus bounds l <= y <= u. An optional arc objective c designates the
// face to search (the optimal face of max c'y); c = 0 means the whole
// polyhedron.
// ----------------------------------------------------------------------
struct TwoSystemInstance {
  Digraph d;
  SubmodularOracle f1;
  SubmodularOracle f2;
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::vector<long long> objective;  // empty or all-zero means none
};

struct IntegralSolution {
  std::vector<long long> y;
};
struct ObjectiveNotRealizable {
  // Cycle whose arc ids witness a nonzero signed objective sum.
  std::vector<int> cycle_arcs;
};
struct TwoSystemInfeasible {};

using TwoSystemResult =
    std::variant<IntegralSolution, ViolatingSet, TwoSystemInfeasible,
                 PreconditionViolated, ObjectiveNotRealizable>;

TwoSystemResult solve_two_systems(const TwoSystemInstance& inst);

// Integer potentials w with w_tail - w_head = c_a for every arc, by
// component-wise propagation; nullopt when some cycle sum is nonzero.
std::optional<std::vector<long long>> potentials_from_objective(
    const Digraph& d, const std::vector<long long>& c,
    std::vector<int>* witness_cycle = nullptr);

// ----------------------------------------------------------------------
// The generalization to an arbitrary totally unimodular matrix M with
// entries in {-1,0,1}, rows indexed by the ground set and M'1 = 0.
// ----------------------------------------------------------------------
struct TUInstance {
  std::vector<std::vector<int>> m;  // ground_size rows, width columns
  bool trust_tu = false;
  SubmodularOracle f1;
  SubmodularOracle f2;
  std::vector<Bound> lower;  // per column
  std::vector<Bound> upper;
};

struct NotTU {
  std::vector<int> rows;
  std::vector<int> cols;
  long long det = 0;
};

using TUResult = std::variant<IntegralSolution, ViolatingSet,
                              TwoSystemInfeasible, PreconditionViolated,
                              NotTU>;

TUResult solve_tu_generalization(const TUInstance& inst);

// ----------------------------------------------------------------------
// Flip existence pipeline and its applications.
// ----------------------------------------------------------------------

// Violation of d+(U) + (tau/k - 1) d-(U) >= tau, with the exact slack.
struct HypothesisViolation {
  VertexSet u;
  Rat slack;  // negative
  std::string inequality;
};

using HypothesisResult = std::optional<HypothesisViolation>;  // nullopt = OK

// Checks the cut inequalities of the flip theorem on every proper
// non-empty subset, in exact rationals.
HypothesisResult verify_hypothesis(const Digraph& d, int tau, int k);
// Weighted form: w(delta+) + (tau/k - 1) w(delta-) >= tau.
HypothesisResult verify_weighted_hypothesis(const Digraph& d,
                                            const std::vector<int>& w, int tau,
                                            int k);

struct FlipCertificate {
  ArcSet j;
  int k = 0;
  int tau = 0;
  bool k_flip_verified = false;
  bool family_constraints_verified = false;
};

struct DecompositionResult {
  ArcSet part1;
  ArcSet part2;
  std::string role1;
  std::string role2;
  bool verified = false;
};

class HypothesisViolatedError : public std::runtime_error {
 public:
  explicit HypothesisViolatedError(HypothesisViolation v)
      : std::runtime_error("hypothesis violated at U=" + v.u.to_string() +
                           " (slack " + rat_to_string(v.slack) + ")"),
        violation(std::move(v)) {}
  HypothesisViolation violation;
};

class ConnectivityTooLowError : public std::runtime_error {
 public:
  ConnectivityTooLowError(VertexSet cut, long long have, long long need)
      : std::runtime_error("underlying edge connectivity " +
                           std::to_string(have) + " < " +
                           std::to_string(need) + " at cut " +
                           cut.to_string()),
        cut(cut), have(have), need(need) {}
  VertexSet cut;
  long long have;
  long long need;
};

// k-arc-connected flip whose incidence vector also satisfies the given
// crossing-submodular system. Requires the cut hypothesis and the lower
// bound f(U) >= (k/tau)(d+(U) - d-(U)) on every member.
FlipCertificate find_k_flip(const Digraph& d, int tau, int k,
                            const SubmodularOracle& f);

// Partition of the arcs into a k-arc-connected flip and a (tau-k)-dijoin.
DecompositionResult decompose_flip_dijoin(const Digraph& d, int tau, int k);

// k-arc-connected flip that also makes the digraph near-Eulerian.
FlipCertificate near_eulerian_flip(const Digraph& d, int k);

// Weighted variant: partitions {a : w_a = 1} into a k-arc-connected flip
// of the weight-1 subdigraph and a (tau-k)-dijoin of the full digraph.
DecompositionResult weighted_decompose(const Digraph& d,
                                       const std::vector<int>& w, int tau,
                                       int k);

// Partition into a k-dijoin and a (tau-k)-dijoin for tau-edge-connected
// underlying graphs.
DecompositionResult dijoin_pair_decompose(const Digraph& d, int tau, int k);

// Every cut has size >= tau-1, and size-(tau-1) cuts are balanced. This
// implies the flip hypothesis for every k <= tau/2.
HypothesisResult cuts_near_uniform(const Digraph& d, int tau);

}  // namespace flipflow
