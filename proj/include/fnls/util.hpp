#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace fnls {

/// Number of worker threads: FNLS_THREADS if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("FNLS_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Splits [0, n) into contiguous chunks and runs body(begin, end, chunk_index)
/// on each. Chunk boundaries depend only on n and the thread count, so any
/// per-chunk results can be reduced in a fixed order afterwards.
inline void parallel_for_chunks(
    std::int64_t n, const std::function<void(std::int64_t, std::int64_t, int)>& body) {
  int workers = thread_count();
  if (n <= 0) return;
  if (workers > n) workers = static_cast<int>(n);
  if (workers <= 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::int64_t base = n / workers, rem = n % workers, begin = 0;
  for (int w = 0; w < workers; ++w) {
    std::int64_t len = base + (w < rem ? 1 : 0);
    std::int64_t end = begin + len;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

/// Pairwise (cascade) summation; deterministic and more accurate than a
/// running sum for long arrays.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() <= 8) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

/// FNV-1a 64-bit content hash, reported as 16 hex digits. Used to fingerprint
/// experiment inputs in reports.
inline std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace fnls
