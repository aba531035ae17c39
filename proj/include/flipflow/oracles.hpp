#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/linprog.hpp"
#include "flipflow/matroid.hpp"
#include "flipflow/setfam.hpp"
#include "flipflow/solvers.hpp"
#include "flipflow/subset_scan.hpp"

namespace flipflow {

// Exhaustive search for a valid flip certificate: J must be a k-flip and
// satisfy d_J+(U) - d_J-(U) <= f(U) on every family member. Hypothesis
// free; lexicographically smallest J returned. Capacity |A| <= 20.
std::optional<ArcSet> brute_force_flip(const Digraph& d, int k,
                                       const SubmodularOracle& f,
                                       scan::Exec exec = scan::Exec::Auto);

// Integral optimal dual of the two-system inequality description for an
// integer objective.
struct DualSolution {
  // One multiplier per (system, member), in family enumeration order.
  std::vector<long long> z1;
  std::vector<long long> z2;
  std::optional<long long> mu;  // balance-row multiplier where present
  long long value = 0;
};

struct NoIntegralDual {
  Rat primal_value;                  // fractional optimum when that is the cause
  std::vector<Rat> primal_point;
};
struct DualUnbounded {};

using TdiCheckResult = std::variant<DualSolution, NoIntegralDual, DualUnbounded>;

// Solves max c'y over the two-system polyhedron exactly, then searches
// for an integral optimal dual by bounded LP-guided branch and bound.
TdiCheckResult check_tdi_at(const std::vector<long long>& c,
                            const TwoSystemInstance& inst);

// Rows of the arc-space inequality system of an instance, plus optional
// box rows. Tags carry the generating member.
LinearProgram build_arc_lp(const TwoSystemInstance& inst, bool with_bounds);

struct FractionalVertex {
  VertexPoint point;
  int tight_rank;
};

// All fractional vertices of P intersected with the box, each with its
// full-rank tight-set certificate. Subject to the vertex-enumeration caps.
std::vector<FractionalVertex> fractional_vertex_search(
    const TwoSystemInstance& inst);

// Reduction from three rank oracles to one two-system instance on the
// doubled ground set, plus the decoder from integral solutions back to
// candidate common bases.
struct MatroidReduction {
  TwoSystemInstance instance;
  std::function<VertexSet(const std::vector<long long>&)> decode;
};

class ReductionInapplicableError : public std::runtime_error {
 public:
  explicit ReductionInapplicableError(const std::string& what)
      : std::runtime_error(what) {}
};

MatroidReduction reduce_matroids_to_two_systems(const MatroidOracle& m1,
                                                const MatroidOracle& m2,
                                                const MatroidOracle& m3);

// Exhaustive searches on both sides of the reduction, for equivalence
// checking at desk scale.
bool has_common_basis(const MatroidOracle& m1, const MatroidOracle& m2,
                      const MatroidOracle& m3);
std::optional<std::vector<long long>> brute_force_two_system_01(
    const TwoSystemInstance& inst);

// Random digraphs with min dicut >= tau, exhaustively searched for a
// k-dijoin / (tau-k)-dijoin decomposition for every k. Instances without
// one are reported (and re-verified before reporting).
struct ConjectureCandidate {
  Digraph d;
  int k;
  std::uint64_t seed;
};
struct ConjectureSearchReport {
  int trials_run = 0;
  int instances_accepted = 0;
  std::vector<ConjectureCandidate> counterexamples;
};
ConjectureSearchReport conjecture_search(int tau, int size_cap, int trials,
                                         std::uint64_t seed);

// Exhaustive test: can A be split into a k-dijoin and a (tau-k)-dijoin?
std::optional<ArcSet> find_dijoin_pair_by_search(const Digraph& d, int tau,
                                                 int k);

}  // namespace flipflow
