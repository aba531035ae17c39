#include "flipflow/setfam.hpp"

#include <algorithm>
#include <set>

#include "flipflow/errors.hpp"
#include "flipflow/rational.hpp"

namespace flipflow {

bool LatticeFamily::contains(VertexSet u) const {
  if (!min_member.subset_of(u) || !u.subset_of(max_member)) return false;
  for (int v : u.members())
    if (!below[v].subset_of(u)) return false;  // lower-ideal test
  return true;
}

void LatticeFamily::validate(int n) const {
  if (static_cast<int>(below.size()) != n)
    throw InputError("lattice preorder must cover every vertex id");
  if (!min_member.subset_of(max_member))
    throw InputError("lattice family: L must be a subset of M");
  for (int v = 0; v < n; ++v) {
    if (!below[v].contains(v))
      throw InputError("lattice preorder must be reflexive");
    for (int u : below[v].members())
      if (!below[u].subset_of(below[v]))
        throw InputError("lattice preorder must be transitive");
  }
  auto lower_ideal = [&](VertexSet s) {
    for (int v : s.members())
      if (!below[v].subset_of(s)) return false;
    return true;
  };
  if (!lower_ideal(min_member) || !lower_ideal(max_member))
    throw InputError("lattice family: L and M must be lower ideals");
}

LatticeFamily LatticeFamily::from_members(
    const std::vector<VertexSet>& members, int n) {
  if (members.empty()) throw InputError("lattice family must be non-empty");
  LatticeFamily lat;
  lat.min_member = members.front();
  lat.max_member = members.front();
  for (const VertexSet& m : members) {
    lat.min_member = lat.min_member & m;
    lat.max_member = lat.max_member | m;
  }
  lat.below.assign(n, VertexSet());
  for (int v = 0; v < n; ++v) {
    // u precedes v iff every member containing v contains u.
    VertexSet rel = VertexSet::full(n);
    bool v_in_any = false;
    for (const VertexSet& m : members) {
      if (m.contains(v)) {
        rel = rel & m;
        v_in_any = true;
      }
    }
    lat.below[v] = v_in_any ? rel : VertexSet::of({v});
    lat.below[v].add(v);
  }
  return lat;
}

CrossingFamily CrossingFamily::explicit_family(std::vector<VertexSet> members,
                                               int n) {
  CrossingFamily cf;
  cf.kind_ = Kind::Explicit;
  cf.n_ = n;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const VertexSet& m : members)
    if (!m.is_proper_nonempty(n))
      throw InputError("family members must be proper non-empty subsets");
  cf.members_ = std::move(members);
  return cf;
}

CrossingFamily CrossingFamily::well_provided(
    std::map<std::pair<int, int>, LatticeFamily> lattices, int n) {
  CrossingFamily cf;
  cf.kind_ = Kind::WellProvided;
  cf.n_ = n;
  for (auto& [pair, lat] : lattices) {
    if (pair.first == pair.second || pair.first < 0 || pair.first >= n ||
        pair.second < 0 || pair.second >= n)
      throw InputError("well-provided pair indices must be distinct vertices");
    lat.validate(n);
  }
  cf.lattices_ = std::move(lattices);
  return cf;
}

CrossingFamily CrossingFamily::well_provided_from_explicit(
    const std::vector<VertexSet>& members, int n) {
  std::map<std::pair<int, int>, LatticeFamily> lattices;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      std::vector<VertexSet> slice;
      for (const VertexSet& m : members)
        if (m.contains(u) && !m.contains(v)) slice.push_back(m);
      if (slice.empty()) continue;
      lattices[{u, v}] = LatticeFamily::from_members(slice, n);
    }
  }
  return well_provided(std::move(lattices), n);
}

bool CrossingFamily::contains(VertexSet u) const {
  if (!u.is_proper_nonempty(n_))
    throw InputError("membership is defined for proper non-empty subsets");
  if (kind_ == Kind::Explicit)
    return std::binary_search(members_.begin(), members_.end(), u);
  for (int a : u.members())
    for (int b : u.complement(n_).members()) {
      auto it = lattices_.find({a, b});
      if (it != lattices_.end() && it->second.contains(u)) return true;
    }
  return false;
}

std::vector<VertexSet> CrossingFamily::enumerate() const {
  if (kind_ == Kind::Explicit) return members_;
  require_subset_cap(n_, "enumerate_family");
  std::vector<VertexSet> out;
  const std::uint64_t full = VertexSet::full(n_).mask;
  for (std::uint64_t m = 1; m < full; ++m)
    if (contains(VertexSet(m))) out.emplace_back(m);
  return out;
}

const std::vector<VertexSet>& CrossingFamily::explicit_members() const {
  if (kind_ != Kind::Explicit)
    throw InputError("family is not stored explicitly");
  return members_;
}

CrossingCheck check_crossing_family(const std::vector<VertexSet>& members,
                                    int n) {
  require_subset_cap(n, "check_crossing_family");
  std::set<VertexSet> set(members.begin(), members.end());
  const VertexSet full = VertexSet::full(n);
  for (const VertexSet& u : members) {
    for (const VertexSet& w : members) {
      VertexSet inter = u & w;
      VertexSet uni = u | w;
      if (inter.empty() || uni == full) continue;
      if (!set.count(inter) || !set.count(uni)) return {false, u, w};
    }
  }
  return {};
}

CrossingCheck check_crossing_submodular(const SubmodularOracle& f, int n) {
  if (n > 18)
    throw CapacityError("check_crossing_submodular: n exceeds cap 18");
  std::vector<VertexSet> members = f.family.enumerate();
  std::set<VertexSet> set(members.begin(), members.end());
  const VertexSet full = VertexSet::full(n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      VertexSet u = members[i], w = members[j];
      VertexSet inter = u & w;
      VertexSet uni = u | w;
      if (inter.empty() || uni == full) continue;
      if (!set.count(inter) || !set.count(uni)) continue;
      if (f(inter) + f(uni) > f(u) + f(w)) return {false, u, w};
    }
  }
  return {};
}

Minimum minimize_over_family(const SubmodularOracle& f, scan::Exec exec) {
  std::vector<VertexSet> members = f.family.enumerate();
  if (members.empty())
    throw InputError("minimize_over_family: family is empty");
  auto best = scan::min_over_masks<long long>(
      0, members.size(),
      [&](std::uint64_t i) -> std::optional<long long> {
        return f(members[i]);
      },
      exec);
  return {best->first, members[best->second]};
}

CrossingFamily all_proper_family(int n) {
  require_subset_cap(n, "all_proper_family");
  std::vector<VertexSet> members;
  const std::uint64_t full = VertexSet::full(n).mask;
  members.reserve(full > 2 ? full - 1 : 0);
  for (std::uint64_t m = 1; m < full; ++m) members.emplace_back(m);
  return CrossingFamily::explicit_family(std::move(members), n);
}

CrossingFamily dicut_family(const Digraph& d) {
  return CrossingFamily::explicit_family(enumerate_dicuts(d),
                                         d.vertex_count());
}

CrossingFamily singletons_and_complements(int n) {
  std::vector<VertexSet> members;
  for (int v = 0; v < n; ++v) {
    VertexSet s = VertexSet::of({v});
    if (s.is_proper_nonempty(n)) {
      members.push_back(s);
      members.push_back(s.complement(n));
    }
  }
  return CrossingFamily::explicit_family(std::move(members), n);
}

SubmodularOracle outdeg_minus_k(const Digraph& d, int k) {
  return {all_proper_family(d.vertex_count()),
          [d, k](VertexSet u) -> long long { return out_degree(d, u) - k; },
          "outdeg-minus:" + std::to_string(k)};
}

SubmodularOracle dicut_slack(const Digraph& d, int t) {
  return {dicut_family(d),
          [d, t](VertexSet u) -> long long { return out_degree(d, u) - t; },
          "dicut-slack:" + std::to_string(t)};
}

SubmodularOracle ceil_half_imbalance(const Digraph& d) {
  return {singletons_and_complements(d.vertex_count()),
          [d](VertexSet u) -> long long {
            long long diff = out_degree(d, u) - in_degree(d, u);
            return ceil_div(diff, 2);
          },
          "ceil-half-imbalance"};
}

SubmodularOracle modular_weight(const Digraph& d, std::vector<int> w) {
  if (w.size() != static_cast<std::size_t>(d.arc_count()))
    throw InputError("modular weight vector length must match arc count");
  return {all_proper_family(d.vertex_count()),
          [d, w = std::move(w)](VertexSet u) -> long long {
            long long val = 0;
            for (int id = 0; id < d.arc_count(); ++id) {
              const Arc& a = d.arc(id);
              if (u.contains(a.tail) && !u.contains(a.head)) val += w[id];
              if (!u.contains(a.tail) && u.contains(a.head)) val -= w[id];
            }
            return val;
          },
          "modular"};
}

SubmodularOracle table_oracle(std::map<VertexSet, long long> table, int n) {
  std::vector<VertexSet> members;
  members.reserve(table.size());
  for (const auto& [set, _] : table) members.push_back(set);
  CrossingFamily family = CrossingFamily::explicit_family(members, n);
  return {std::move(family),
          [table = std::move(table)](VertexSet u) -> long long {
            auto it = table.find(u);
            if (it == table.end())
              throw InputError("table oracle queried outside its family");
            return it->second;
          },
          "table"};
}

SubmodularOracle constant_oracle(CrossingFamily family, long long c) {
  return {std::move(family), [c](VertexSet) { return c; },
          "const:" + std::to_string(c)};
}

}  // namespace flipflow
