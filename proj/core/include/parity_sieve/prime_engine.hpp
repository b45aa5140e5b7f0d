#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace parity_sieve {

// All primes <= limit, ascending. Immutable once built; share freely.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 1'000'000'000;

  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

  // Number of primes strictly below `bound`.
  std::size_t count_below(std::uint64_t bound) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

// Throws kBounds unless 2 <= limit <= 10^9.
PrimeTable primes_up_to(std::uint64_t limit);

// Sieving threshold: only primes p < y are counted. An unset value means
// every prime divisor counts (nu(n) instead of nu_y(n)).
struct SieveBound {
  std::optional<std::uint64_t> y;

  static SieveBound unbounded() { return {}; }
  static SieveBound below(std::uint64_t y) { return {y}; }
  bool is_unbounded() const { return !y.has_value(); }
};

// counts[n - lo] = nu_y(n) for lo <= n < hi.
struct NuTable {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  SieveBound bound;
  std::vector<std::uint8_t> counts;

  std::uint8_t at(std::uint64_t n) const { return counts[n - lo]; }
};

// Reusable segmented sieve for one bound. Holds the base primes it needs for
// ranges ending at or below `max_hi`; sieve() is const and thread-safe.
class NuSieve {
 public:
  static constexpr std::size_t kDefaultSegment = std::size_t{1} << 20;
  static constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 31;

  NuSieve(SieveBound bound, std::uint64_t max_hi,
          std::shared_ptr<const PrimeTable> primes = nullptr);

  // Fills out[0 .. hi-lo) with nu_y(lo .. hi-1). `scratch` must hold
  // hi-lo cofactor slots when the cofactor pass is active (see
  // needs_cofactor()); pass an empty span otherwise.
  void sieve_into(std::uint64_t lo, std::uint64_t hi, std::span<std::uint8_t> out,
                  std::span<std::uint64_t> scratch) const;

  NuTable sieve(std::uint64_t lo, std::uint64_t hi) const;

  SieveBound bound() const { return bound_; }
  std::uint64_t max_hi() const { return max_hi_; }
  bool needs_cofactor() const { return cofactor_; }

  // Visits consecutive segments of [lo, hi) in ascending order, calling
  // fn(segment_lo, counts) for each.
  template <typename Fn>
  void for_each_segment(std::uint64_t lo, std::uint64_t hi, std::size_t segment, Fn&& fn) const {
    std::vector<std::uint8_t> counts(segment);
    std::vector<std::uint64_t> scratch(cofactor_ ? segment : 0);
    for (std::uint64_t a = lo; a < hi;) {
      const std::uint64_t b = std::min<std::uint64_t>(hi, a + segment);
      const std::size_t len = static_cast<std::size_t>(b - a);
      sieve_into(a, b, std::span(counts).first(len),
                 cofactor_ ? std::span(scratch).first(len) : std::span<std::uint64_t>{});
      fn(a, std::span<const std::uint8_t>(counts).first(len));
      a = b;
    }
  }

 private:
  SieveBound bound_;
  std::uint64_t max_hi_;
  bool cofactor_ = false;
  // Primes that are marked directly: p < y, and p <= sqrt(max_hi - 1) when
  // the cofactor pass is active.
  std::shared_ptr<const PrimeTable> table_;
  std::size_t marked_count_ = 0;
};

// One-shot convenience wrapper: nu_y(n) for lo <= n < hi.
NuTable sieve_nu(std::uint64_t lo, std::uint64_t hi, SieveBound bound);

// floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

}  // namespace parity_sieve
