#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace parity_sieve {

// Worker count used by segment-parallel loops. Resolution order: explicit
// set_thread_count(), then PARITY_SIEVE_THREADS, then 1.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(i) for i in [0, count) on up to thread_count() workers.
// Callers store per-chunk results by index and reduce them in index order,
// which keeps floating-point results independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct Chunk {
  std::uint64_t lo;  // inclusive
  std::uint64_t hi;  // exclusive
};

// Fixed decomposition of [lo, hi) into pieces of at most `length` entries.
// The decomposition depends only on the arguments, never on thread count.
std::vector<Chunk> split_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t length);

}  // namespace parity_sieve
