#include <random>

#include "doctest.h"
#include "flipflow/errors.hpp"
#include "flipflow/setfam.hpp"
#include "test_util.hpp"

using namespace flipflow;
using namespace flipflow::testutil;

TEST_CASE("explicit family membership") {
  CrossingFamily cf = CrossingFamily::explicit_family(
      {VertexSet::of({0}), VertexSet::of({0, 1})}, 3);
  CHECK(cf.contains(VertexSet::of({0})));
  CHECK_FALSE(cf.contains(VertexSet::of({1})));
  CHECK_THROWS_AS(cf.contains(VertexSet()), InputError);
  CHECK_THROWS_AS(cf.contains(VertexSet::full(3)), InputError);
  CHECK_THROWS_AS(
      CrossingFamily::explicit_family({VertexSet::full(3)}, 3), InputError);
}

TEST_CASE("well-provided representation agrees with explicit, exhaustively") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);  // up to 8
    CrossingFamily expl = random_crossing_family(rng, n, 2 + trial % 3);
    CrossingFamily wp = CrossingFamily::well_provided_from_explicit(
        expl.explicit_members(), n);
    const std::uint64_t full = VertexSet::full(n).mask;
    for (std::uint64_t m = 1; m < full; ++m) {
      VertexSet u(m);
      CHECK(expl.contains(u) == wp.contains(u));
    }
    CHECK(wp.enumerate() == expl.explicit_members());
  }
}

TEST_CASE("every pair slice of a crossing family is a lattice family") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    CrossingFamily cf = random_crossing_family(rng, n, 3);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        std::vector<VertexSet> slice;
        for (const VertexSet& m : cf.explicit_members())
          if (m.contains(u) && !m.contains(v)) slice.push_back(m);
        if (slice.empty()) continue;
        // Closed under intersection and union over all pairs.
        for (const VertexSet& a : slice) {
          for (const VertexSet& b : slice) {
            VertexSet inter = a & b, uni = a | b;
            CHECK(std::count(slice.begin(), slice.end(), inter) == 1);
            CHECK(std::count(slice.begin(), slice.end(), uni) == 1);
          }
        }
        LatticeFamily lat = LatticeFamily::from_members(slice, n);
        CHECK_NOTHROW(lat.validate(n));
      }
    }
  }
}

TEST_CASE("crossing family checker") {
  auto bad = check_crossing_family({VertexSet::of({0, 1}), VertexSet::of({1, 2})}, 4);
  CHECK_FALSE(bad.ok);
  CHECK(((bad.u == VertexSet::of({0, 1}) && bad.w == VertexSet::of({1, 2})) ||
         (bad.u == VertexSet::of({1, 2}) && bad.w == VertexSet::of({0, 1}))));

  // The bad example's first family; 1,2,3,1' are ids 0,1,2,3.
  CHECK(check_crossing_family({VertexSet::of({0, 1}), VertexSet::of({0, 1, 2, 3})}, 6).ok);

  // Laminar families have no crossing pairs.
  CHECK(check_crossing_family(
            {VertexSet::of({0}), VertexSet::of({0, 1}), VertexSet::of({2})}, 4)
            .ok);
}

TEST_CASE("submodularity checker and builders") {
  Digraph tri = directed_triangle();
  CHECK(check_crossing_submodular(outdeg_minus_k(tri, 1), 3).ok);

  // |U|^2 is supermodular, so it must fail the submodularity check on a
  // crossing pair (spreading the sizes increases the sum of squares).
  SubmodularOracle bad{all_proper_family(4),
                       [](VertexSet u) -> long long {
                         long long c = u.count();
                         return c * c;
                       },
                       "square"};
  auto res = check_crossing_submodular(bad, 4);
  CHECK_FALSE(res.ok);

  // Modular weights: submodularity holds with equality everywhere.
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    Digraph d = random_digraph(rng, 4, 6);
    std::vector<int> w(6);
    for (int& x : w) x = static_cast<int>(rng() % 2);
    SubmodularOracle mod = modular_weight(d, w);
    CHECK(check_crossing_submodular(mod, 4).ok);
    SubmodularOracle neg = modular_weight(d, w);
    neg.value = [mod](VertexSet u) { return -mod(u); };
    CHECK(check_crossing_submodular(neg, 4).ok);  // equality case
  }
}

TEST_CASE("all shipped builders are crossing submodular on random digraphs") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);  // up to 8
    Digraph d = random_digraph(rng, n, 1 + static_cast<int>(rng() % (2 * n)));
    CHECK(check_crossing_submodular(outdeg_minus_k(d, 1 + trial % 3), n).ok);
    CHECK(check_crossing_submodular(dicut_slack(d, trial % 4), n).ok);
    CHECK(check_crossing_submodular(ceil_half_imbalance(d), n).ok);
  }
}

TEST_CASE("family enumeration") {
  CHECK(all_proper_family(3).enumerate().size() == 6);
  CHECK(dicut_family(directed_triangle()).enumerate().empty());
  auto single = dicut_family(Digraph(2, {{0, 1}})).enumerate();
  REQUIRE(single.size() == 1);
  CHECK(single[0] == VertexSet::of({0}));
  CHECK(singletons_and_complements(4).enumerate().size() == 8);
  CHECK(singletons_and_complements(2).enumerate().size() == 2);
}

TEST_CASE("minimize_over_family") {
  Digraph tri = directed_triangle();
  Minimum min = minimize_over_family(outdeg_minus_k(tri, 1));
  CHECK(min.value == 0);  // every cut of the 3-cycle has out-degree 1
  CHECK(min.argmin == VertexSet::of({0}));

  SubmodularOracle constant = constant_oracle(all_proper_family(3), 5);
  Minimum c = minimize_over_family(constant);
  CHECK(c.value == 5);
  CHECK(c.argmin == VertexSet::of({0}));  // first member

  SubmodularOracle empty = constant_oracle(
      CrossingFamily::explicit_family({}, 3), 7);
  CHECK_THROWS_AS(minimize_over_family(empty), InputError);

  // Matches an independent reversed-order re-enumeration.
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    CrossingFamily fam = random_crossing_family(rng, n, 3);
    if (fam.enumerate().empty()) continue;
    SubmodularOracle f = random_submodular_oracle(rng, fam, n);
    Minimum got = minimize_over_family(f);
    auto members = f.family.enumerate();
    long long best = f(members.back());
    VertexSet arg = members.back();
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
      long long v = f(*it);
      if (v < best || (v == best && it->mask <= arg.mask)) {
        best = v;
        arg = *it;
      }
    }
    CHECK(got.value == best);
    CHECK(got.argmin == arg);
  }
}

TEST_CASE("table oracle") {
  std::map<VertexSet, long long> table{{VertexSet::of({0, 1}), 1},
                                       {VertexSet::of({0, 1, 2, 3}), 1}};
  SubmodularOracle f = table_oracle(table, 6);
  CHECK(f(VertexSet::of({0, 1})) == 1);
  CHECK_THROWS_AS(f(VertexSet::of({2})), InputError);
}
