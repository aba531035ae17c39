#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flipflow::scan {

// Data-parallel kernels over contiguous mask ranges. Every kernel has a
// serial reference and an OpenMP variant that must produce identical
// results: reductions are keyed on (value, mask) so the outcome does not
// depend on thread schedule. The serial versions are kept both as the
// fallback and as the oracle the parallel ones are tested against.

enum class Exec { Auto, Serial, Parallel };

inline constexpr std::uint64_t kParallelThreshold = 1ULL << 14;

namespace detail {

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline bool use_parallel(Exec exec, std::uint64_t range) {
  if (exec == Exec::Serial) return false;
  if (exec == Exec::Parallel) return true;
#ifdef _OPENMP
  return range >= kParallelThreshold && thread_count() > 1;
#else
  (void)range;
  return false;
#endif
}

}  // namespace detail

// Minimum of eval over masks in [lo, hi); eval returns std::nullopt for
// masks outside the domain. Ties broken toward the smallest mask.
template <class Value, class Eval>
std::optional<std::pair<Value, std::uint64_t>> min_over_masks_serial(
    std::uint64_t lo, std::uint64_t hi, Eval&& eval) {
  std::optional<std::pair<Value, std::uint64_t>> best;
  for (std::uint64_t m = lo; m < hi; ++m) {
    std::optional<Value> v = eval(m);
    if (!v) continue;
    if (!best || *v < best->first) best = {std::move(*v), m};
  }
  return best;
}

template <class Value, class Eval>
std::optional<std::pair<Value, std::uint64_t>> min_over_masks_parallel(
    std::uint64_t lo, std::uint64_t hi, Eval&& eval) {
#ifndef _OPENMP
  return min_over_masks_serial<Value>(lo, hi, eval);
#else
  if (hi <= lo) return std::nullopt;
  const int threads = detail::thread_count();
  std::vector<std::optional<std::pair<Value, std::uint64_t>>> local(threads);
  const std::uint64_t range = hi - lo;
#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const std::uint64_t begin = lo + range * t / threads;
    const std::uint64_t end = lo + range * (t + 1) / threads;
    local[t] = min_over_masks_serial<Value>(begin, end, eval);
  }
  std::optional<std::pair<Value, std::uint64_t>> best;
  for (auto& cand : local) {
    if (!cand) continue;
    if (!best || cand->first < best->first ||
        (cand->first == best->first && cand->second < best->second))
      best = std::move(cand);
  }
  return best;
#endif
}

template <class Value, class Eval>
std::optional<std::pair<Value, std::uint64_t>> min_over_masks(
    std::uint64_t lo, std::uint64_t hi, Eval&& eval, Exec exec = Exec::Auto) {
  if (detail::use_parallel(exec, hi - lo))
    return min_over_masks_parallel<Value>(lo, hi, eval);
  return min_over_masks_serial<Value>(lo, hi, eval);
}

// All masks in [lo, hi) satisfying pred, in ascending order.
template <class Pred>
std::vector<std::uint64_t> collect_masks_serial(std::uint64_t lo,
                                                std::uint64_t hi,
                                                Pred&& pred) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = lo; m < hi; ++m)
    if (pred(m)) out.push_back(m);
  return out;
}

template <class Pred>
std::vector<std::uint64_t> collect_masks_parallel(std::uint64_t lo,
                                                  std::uint64_t hi,
                                                  Pred&& pred) {
#ifndef _OPENMP
  return collect_masks_serial(lo, hi, pred);
#else
  if (hi <= lo) return {};
  const int threads = detail::thread_count();
  std::vector<std::vector<std::uint64_t>> local(threads);
  const std::uint64_t range = hi - lo;
#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const std::uint64_t begin = lo + range * t / threads;
    const std::uint64_t end = lo + range * (t + 1) / threads;
    local[t] = collect_masks_serial(begin, end, pred);
  }
  // Chunks are contiguous and ascending, so concatenation keeps the order.
  std::vector<std::uint64_t> out;
  for (auto& chunk : local) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
#endif
}

template <class Pred>
std::vector<std::uint64_t> collect_masks(std::uint64_t lo, std::uint64_t hi,
                                         Pred&& pred, Exec exec = Exec::Auto) {
  if (detail::use_parallel(exec, hi - lo))
    return collect_masks_parallel(lo, hi, pred);
  return collect_masks_serial(lo, hi, pred);
}

// Smallest mask in [lo, hi) satisfying pred, if any.
template <class Pred>
std::optional<std::uint64_t> find_min_mask_serial(std::uint64_t lo,
                                                  std::uint64_t hi,
                                                  Pred&& pred) {
  for (std::uint64_t m = lo; m < hi; ++m)
    if (pred(m)) return m;
  return std::nullopt;
}

template <class Pred>
std::optional<std::uint64_t> find_min_mask_parallel(std::uint64_t lo,
                                                    std::uint64_t hi,
                                                    Pred&& pred) {
#ifndef _OPENMP
  return find_min_mask_serial(lo, hi, pred);
#else
  if (hi <= lo) return std::nullopt;
  const int threads = detail::thread_count();
  const std::uint64_t range = hi - lo;
  std::atomic<std::uint64_t> best{UINT64_MAX};
#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const std::uint64_t begin = lo + range * t / threads;
    const std::uint64_t end = lo + range * (t + 1) / threads;
    for (std::uint64_t m = begin; m < end; ++m) {
      if ((m & 0x3ff) == 0 && best.load(std::memory_order_relaxed) < begin)
        break;  // some lower chunk already found a hit
      if (pred(m)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (m < cur &&
               !best.compare_exchange_weak(cur, m, std::memory_order_relaxed))
          ;
        break;  // ascending within the chunk, nothing smaller here
      }
    }
  }
  std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
#endif
}

template <class Pred>
std::optional<std::uint64_t> find_min_mask(std::uint64_t lo, std::uint64_t hi,
                                           Pred&& pred,
                                           Exec exec = Exec::Auto) {
  if (detail::use_parallel(exec, hi - lo))
    return find_min_mask_parallel(lo, hi, pred);
  return find_min_mask_serial(lo, hi, pred);
}

}  // namespace flipflow::scan
