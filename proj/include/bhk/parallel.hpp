#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace bhk {

/// Seed for sample `index` of a run seeded with `seed` (splitmix64), so that
/// sample i is the same no matter how samples are distributed over threads.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Runs fn(0..count-1) on `jobs` threads and returns the failure with the
/// smallest index, if any. Indices above a known failure are skipped.
template <class T>
std::optional<std::pair<std::size_t, T>> first_failure(std::size_t count, unsigned jobs,
                                                       const std::function<std::optional<T>(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> best{count};
  std::mutex mu;
  std::optional<std::pair<std::size_t, T>> result;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count || i >= best.load()) return;
        auto r = fn(i);
        if (!r) continue;
        std::lock_guard<std::mutex> lock(mu);
        if (i < best.load()) {
          best = i;
          result.emplace(i, std::move(*r));
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return result;
}

/// fn(0..count-1) on `jobs` threads; results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  auto none = first_failure<int>(count, jobs, [&](std::size_t i) -> std::optional<int> {
    slots[i] = fn(i);
    return std::nullopt;
  });
  (void)none;
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace bhk
