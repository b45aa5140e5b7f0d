#include "parity_sieve/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace parity_sieve {
namespace {

std::atomic<unsigned> g_threads{0};

unsigned threads_from_env() {
  const char* env = std::getenv("PARITY_SIEVE_THREADS");
  if (env == nullptr) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(std::min<long>(v, 256)) : 1;
}

}  // namespace

unsigned thread_count() {
  const unsigned n = g_threads.load();
  return n != 0 ? n : threads_from_env();
}

void set_thread_count(unsigned n) { g_threads.store(n); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Chunk> split_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t length) {
  std::vector<Chunk> chunks;
  if (hi <= lo || length == 0) return chunks;
  chunks.reserve(static_cast<std::size_t>((hi - lo + length - 1) / length));
  for (std::uint64_t a = lo; a < hi; a += std::min(length, hi - a))
    chunks.push_back({a, std::min(hi, a + length)});
  return chunks;
}

}  // namespace parity_sieve
