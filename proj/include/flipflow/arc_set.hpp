#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace flipflow {

// Subset of arc ids 0..arc_count-1. Arc counts are not limited to 64, so
// this is a block bitset rather than a single word.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(std::size_t arc_count)
      : size_(arc_count), blocks_((arc_count + 63) / 64, 0) {}

  static ArcSet of(std::size_t arc_count, std::initializer_list<int> ids) {
    ArcSet s(arc_count);
    for (int a : ids) s.add(a);
    return s;
  }
  static ArcSet from_mask(std::size_t arc_count, std::uint64_t mask) {
    ArcSet s(arc_count);
    if (!s.blocks_.empty()) s.blocks_[0] = mask;
    return s;
  }

  std::size_t universe_size() const { return size_; }
  bool contains(int a) const {
    return (blocks_[a >> 6] >> (a & 63)) & 1ULL;
  }
  void add(int a) { blocks_[a >> 6] |= 1ULL << (a & 63); }
  void remove(int a) { blocks_[a >> 6] &= ~(1ULL << (a & 63)); }

  int count() const {
    int c = 0;
    for (auto b : blocks_) c += std::popcount(b);
    return c;
  }
  bool empty() const { return count() == 0; }

  ArcSet complement() const {
    ArcSet s(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) s.blocks_[i] = ~blocks_[i];
    s.trim();
    return s;
  }
  ArcSet operator&(const ArcSet& o) const {
    ArcSet s(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      s.blocks_[i] = blocks_[i] & o.blocks_[i];
    return s;
  }
  ArcSet operator|(const ArcSet& o) const {
    ArcSet s(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      s.blocks_[i] = blocks_[i] | o.blocks_[i];
    return s;
  }
  bool operator==(const ArcSet& o) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (std::uint64_t m = blocks_[i]; m;) {
        out.push_back(static_cast<int>(i * 64) + std::countr_zero(m));
        m &= m - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int a : members()) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    }
    return s + "}";
  }

 private:
  void trim() {
    if (size_ % 64 != 0 && !blocks_.empty())
      blocks_.back() &= (1ULL << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace flipflow
