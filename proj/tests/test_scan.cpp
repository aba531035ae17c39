#include <bit>
#include <random>

#include "doctest.h"
#include "flipflow/subset_scan.hpp"

using namespace flipflow;

// The OpenMP kernels must agree with their serial references exactly,
// including tie-breaks, for any thread count and schedule.

TEST_CASE("parallel min scan equals serial") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::uint64_t salt = rng();
    auto eval = [salt](std::uint64_t m) -> std::optional<long long> {
      if (((m ^ salt) & 7ULL) == 0) return std::nullopt;
      return static_cast<long long>(std::popcount(m ^ salt)) -
             static_cast<long long>(m % 5);
    };
    auto serial = scan::min_over_masks_serial<long long>(1, 1 << 16, eval);
    auto parallel = scan::min_over_masks_parallel<long long>(1, 1 << 16, eval);
    REQUIRE(serial.has_value() == parallel.has_value());
    CHECK(serial->first == parallel->first);
    CHECK(serial->second == parallel->second);
  }
}

TEST_CASE("parallel collect equals serial, in order") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    std::uint64_t salt = rng();
    auto pred = [salt](std::uint64_t m) {
      return std::popcount(m ^ salt) % 3 == 0;
    };
    auto serial = scan::collect_masks_serial(0, 1 << 15, pred);
    auto parallel = scan::collect_masks_parallel(0, 1 << 15, pred);
    CHECK(serial == parallel);
  }
}

TEST_CASE("parallel find-min equals serial") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint64_t salt = rng() % (1 << 14);
    auto pred = [salt](std::uint64_t m) { return m >= salt && m % 13 == 5; };
    auto serial = scan::find_min_mask_serial(0, 1 << 15, pred);
    auto parallel = scan::find_min_mask_parallel(0, 1 << 15, pred);
    CHECK(serial == parallel);
  }
  auto nothing = scan::find_min_mask_parallel(
      0, 1 << 12, [](std::uint64_t) { return false; });
  CHECK_FALSE(nothing.has_value());
}

TEST_CASE("empty ranges") {
  auto none = scan::min_over_masks<long long>(
      5, 5, [](std::uint64_t) -> std::optional<long long> { return 1; });
  CHECK_FALSE(none.has_value());
  CHECK(scan::collect_masks(9, 9, [](std::uint64_t) { return true; }).empty());
}
