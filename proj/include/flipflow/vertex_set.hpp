#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace flipflow {

// Subset of vertex ids 0..n-1 with bitmask semantics. Ground sets beyond
// 63 vertices are out of scope for subset-based routines.
struct VertexSet {
  std::uint64_t mask = 0;

  VertexSet() = default;
  explicit VertexSet(std::uint64_t m) : mask(m) {}

  static VertexSet full(int n) {
    return VertexSet(n == 64 ? ~0ULL : ((1ULL << n) - 1));
  }
  static VertexSet of(std::initializer_list<int> ids) {
    VertexSet s;
    for (int v : ids) s.add(v);
    return s;
  }

  bool contains(int v) const { return (mask >> v) & 1ULL; }
  void add(int v) { mask |= (1ULL << v); }
  void remove(int v) { mask &= ~(1ULL << v); }
  int count() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }

  VertexSet complement(int n) const {
    return VertexSet(full(n).mask & ~mask);
  }
  bool subset_of(const VertexSet& o) const { return (mask & ~o.mask) == 0; }
  bool is_proper_nonempty(int n) const {
    return mask != 0 && mask != full(n).mask;
  }

  VertexSet operator&(const VertexSet& o) const { return VertexSet(mask & o.mask); }
  VertexSet operator|(const VertexSet& o) const { return VertexSet(mask | o.mask); }
  bool operator==(const VertexSet& o) const = default;
  auto operator<=>(const VertexSet& o) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint64_t m = mask; m;) {
      int v = std::countr_zero(m);
      out.push_back(v);
      m &= m - 1;
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : members()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }
};

}  // namespace flipflow
