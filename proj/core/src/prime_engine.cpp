#include "parity_sieve/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parity_sieve/error.hpp"

namespace parity_sieve {

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2 || limit > kMaxLimit)
    fail(ErrorCode::kBounds, "prime limit must lie in [2, 10^9], got " + std::to_string(limit));

  // Odd-only sieve of Eratosthenes, segmented so the working set stays small.
  const std::uint64_t root = isqrt(limit);
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<std::uint32_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  primes_.reserve(static_cast<std::size_t>(1.1 * limit / std::max(1.0, std::log(double(limit)) - 1.1)) + 16);
  primes_.push_back(2);
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;  // odd numbers per segment
  std::vector<std::uint8_t> mark(kSegment);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) next[i] = base[i] * std::uint64_t{base[i]};
  // Segment covers odd numbers lo, lo+2, ..., lo+2*(kSegment-1).
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegment) {
    const std::uint64_t hi = std::min(limit, lo + 2 * (kSegment - 1));
    const std::size_t len = static_cast<std::size_t>((hi - lo) / 2 + 1);
    std::fill_n(mark.begin(), len, 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const std::uint64_t p = base[i];
      std::uint64_t j = next[i];
      for (; j <= hi; j += 2 * p) mark[(j - lo) / 2] = 0;
      next[i] = j;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (mark[i]) primes_.push_back(static_cast<std::uint32_t>(lo + 2 * i));
  }
}

std::size_t PrimeTable::count_below(std::uint64_t bound) const {
  return static_cast<std::size_t>(
      std::lower_bound(primes_.begin(), primes_.end(), bound,
                       [](std::uint32_t p, std::uint64_t b) { return p < b; }) -
      primes_.begin());
}

PrimeTable primes_up_to(std::uint64_t limit) { return PrimeTable(limit); }

NuSieve::NuSieve(SieveBound bound, std::uint64_t max_hi, std::shared_ptr<const PrimeTable> primes)
    : bound_(bound), max_hi_(max_hi) {
  if (max_hi < 2) fail(ErrorCode::kEmptyRange, "sieve range must contain n >= 1");
  if (bound.y && *bound.y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  const std::uint64_t largest = max_hi - 1;
  const std::uint64_t root = isqrt(largest);
  // Every prime counted satisfies p < y and p <= largest.
  const std::uint64_t needed_max =
      bound.y ? std::min(*bound.y - 1, largest) : largest;
  // When primes up to `needed_max` exceed sqrt(largest), mark only up to the
  // root and recover the single remaining large prime from the cofactor.
  std::uint64_t mark_limit = needed_max;
  if (needed_max > root) {
    cofactor_ = true;
    mark_limit = root;
  }
  const std::uint64_t table_limit = std::max<std::uint64_t>(2, mark_limit);
  if (primes && primes->limit() >= table_limit) {
    table_ = std::move(primes);
  } else {
    table_ = std::make_shared<const PrimeTable>(table_limit);
  }
  marked_count_ = table_->count_below(mark_limit + 1);
}

void NuSieve::sieve_into(std::uint64_t lo, std::uint64_t hi, std::span<std::uint8_t> out,
                         std::span<std::uint64_t> scratch) const {
  if (hi <= lo) fail(ErrorCode::kEmptyRange, "sieve range [lo, hi) is empty");
  if (lo < 1) fail(ErrorCode::kBounds, "sieve range must start at n >= 1");
  if (hi > max_hi_) fail(ErrorCode::kRange, "sieve range exceeds the prepared bound");
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  std::fill_n(out.begin(), len, 0);
  const auto primes = table_->primes().first(marked_count_);

  if (!cofactor_) {
    for (const std::uint64_t p : primes) {
      std::uint64_t first = ((lo + p - 1) / p) * p;
      for (std::uint64_t m = first; m < hi; m += p) ++out[m - lo];
    }
    return;
  }

  for (std::size_t i = 0; i < len; ++i) scratch[i] = lo + i;
  for (const std::uint64_t p : primes) {
    std::uint64_t first = ((lo + p - 1) / p) * p;
    for (std::uint64_t m = first; m < hi; m += p) {
      const std::size_t i = m - lo;
      ++out[i];
      std::uint64_t r = scratch[i] / p;
      while (r % p == 0) r /= p;
      scratch[i] = r;
    }
  }
  // What remains is 1 or a single prime above the marking limit.
  const std::uint64_t y = bound_.y.value_or(UINT64_MAX);
  for (std::size_t i = 0; i < len; ++i)
    if (scratch[i] > 1 && scratch[i] < y) ++out[i];
}

NuTable NuSieve::sieve(std::uint64_t lo, std::uint64_t hi) const {
  if (hi <= lo) fail(ErrorCode::kEmptyRange, "sieve range [lo, hi) is empty");
  if (hi - lo > kMaxEntries)
    fail(ErrorCode::kResource, "sieve range exceeds the in-memory budget; segment the call");
  NuTable table{lo, hi, bound_, std::vector<std::uint8_t>(static_cast<std::size_t>(hi - lo))};
  std::vector<std::uint64_t> scratch(cofactor_ ? table.counts.size() : 0);
  sieve_into(lo, hi, table.counts, scratch);
  return table;
}

NuTable sieve_nu(std::uint64_t lo, std::uint64_t hi, SieveBound bound) {
  if (hi <= lo) fail(ErrorCode::kEmptyRange, "sieve range [lo, hi) is empty");
  if (lo < 1) fail(ErrorCode::kBounds, "sieve range must start at n >= 1");
  return NuSieve(bound, hi).sieve(lo, hi);
}

}  // namespace parity_sieve
