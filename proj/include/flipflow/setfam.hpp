#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/subset_scan.hpp"
#include "flipflow/vertex_set.hpp"

namespace flipflow {

// Lattice family in well-provided form: unique minimal member L, unique
// maximal member M, and a preorder on vertex ids. U is a member iff
// L <= U <= M and U is a lower ideal of the preorder.
struct LatticeFamily {
  VertexSet min_member;
  VertexSet max_member;
  // below[v] = set of u with u preceding v; reflexive and transitive.
  std::vector<VertexSet> below;

  bool contains(VertexSet u) const;
  void validate(int n) const;
  bool operator==(const LatticeFamily&) const = default;

  // Compact description of an explicitly listed lattice family.
  static LatticeFamily from_members(const std::vector<VertexSet>& members,
                                    int n);
};

// Family of proper non-empty vertex subsets closed under intersection and
// union on crossing pairs. Stored explicitly, or per ordered vertex pair
// (u,v) as the lattice family C_uv = {C : u in C, v not in C}.
class CrossingFamily {
 public:
  enum class Kind { Explicit, WellProvided };

  // Empty explicit family over an empty ground set; a placeholder until a
  // real family is assigned.
  CrossingFamily() = default;

  static CrossingFamily explicit_family(std::vector<VertexSet> members, int n);
  static CrossingFamily well_provided(
      std::map<std::pair<int, int>, LatticeFamily> lattices, int n);
  // Computes L, M and the preorder of every C_uv from an explicit list.
  static CrossingFamily well_provided_from_explicit(
      const std::vector<VertexSet>& members, int n);

  Kind kind() const { return kind_; }
  int ground_size() const { return n_; }

  bool contains(VertexSet u) const;
  // All members, ascending bitmask order.
  std::vector<VertexSet> enumerate() const;
  const std::vector<VertexSet>& explicit_members() const;
  const std::map<std::pair<int, int>, LatticeFamily>& lattices() const {
    return lattices_;
  }
  bool operator==(const CrossingFamily&) const = default;

 private:
  Kind kind_ = Kind::Explicit;
  int n_ = 0;
  std::vector<VertexSet> members_;  // sorted, Explicit only
  std::map<std::pair<int, int>, LatticeFamily> lattices_;
};

// Witnessed result of a structural check: ok, or the pair that fails.
struct CrossingCheck {
  bool ok = true;
  VertexSet u;
  VertexSet w;
};

// Closure of an explicit list under crossing intersection/union.
CrossingCheck check_crossing_family(const std::vector<VertexSet>& members,
                                    int n);

// Integer value oracle over the members of a crossing family. Values
// outside the family are "plus infinity" by constraint omission; no
// sentinel ever enters arithmetic.
struct SubmodularOracle {
  CrossingFamily family;
  std::function<long long(VertexSet)> value;
  std::string builder_tag;

  long long operator()(VertexSet u) const { return value(u); }
};

// f(U&W) + f(U|W) <= f(U) + f(W) whenever U, W cross and all four sets are
// members. Quadratic in family size.
CrossingCheck check_crossing_submodular(const SubmodularOracle& f, int n);

struct Minimum {
  long long value;
  VertexSet argmin;  // lexicographically smallest (ascending bitmask)
};
Minimum minimize_over_family(const SubmodularOracle& f,
                             scan::Exec exec = scan::Exec::Auto);

// Standard builders.
CrossingFamily all_proper_family(int n);
CrossingFamily dicut_family(const Digraph& d);
CrossingFamily singletons_and_complements(int n);

SubmodularOracle outdeg_minus_k(const Digraph& d, int k);
SubmodularOracle dicut_slack(const Digraph& d, int t);
SubmodularOracle ceil_half_imbalance(const Digraph& d);
SubmodularOracle modular_weight(const Digraph& d, std::vector<int> w);
SubmodularOracle table_oracle(std::map<VertexSet, long long> table, int n);
SubmodularOracle constant_oracle(CrossingFamily family, long long c);

}  // namespace flipflow
