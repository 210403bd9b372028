#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace goelab::parallel {

namespace detail {
inline std::atomic<unsigned>& override_slot() {
  static std::atomic<unsigned> slot{0};
  return slot;
}
}  // namespace detail

// Worker cap: set_worker_count() wins, then GOE_LAB_THREADS, then hardware concurrency.
inline unsigned worker_count() {
  if (unsigned forced = detail::override_slot().load()) return forced;
  if (const char* env = std::getenv("GOE_LAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline void set_worker_count(unsigned n) { detail::override_slot().store(n); }

// Splits [0, total) into contiguous chunks and calls body(lo, hi, chunk_index).
// Chunk boundaries depend only on `chunks`, never on the number of threads, so any
// per-chunk result reduced in chunk order is partition independent.
template <typename Body>
void for_chunks(std::uint64_t total, std::size_t chunks, Body&& body) {
  if (total == 0) return;
  chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(chunks, total));
  const std::uint64_t step = (total + chunks - 1) / chunks;
  unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      std::uint64_t lo = c * step, hi = std::min(total, lo + step);
      if (lo < hi) body(lo, hi, c);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        std::uint64_t lo = c * step, hi = std::min(total, lo + step);
        if (lo >= hi) continue;
        try {
          body(lo, hi, c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Evaluates fn(i) for i in [0, n) and returns results in index order.
template <typename Fn>
auto map_indexed(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(n);
  for_chunks(n, n, [&](std::uint64_t lo, std::uint64_t hi, std::size_t) {
    for (std::uint64_t i = lo; i < hi; ++i) slots[i].emplace(fn(static_cast<std::size_t>(i)));
  });
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace goelab::parallel
