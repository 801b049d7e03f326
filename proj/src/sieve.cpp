#include "mudens/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace mudens {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  if (n >= (1ull << 32))
    throw resource_error("primes_up_to: limit exceeds 32-bit sieve range");
  std::vector<std::uint8_t> is_prime(n + 1, 1);
  is_prime[0] = 0;
  if (n >= 1) is_prime[1] = 0;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= n; j += i) is_prime[j] = 0;
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (is_prime[i]) primes.push_back(static_cast<std::uint32_t>(i));
  return primes;
}

SpfTable::SpfTable(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment_size,
                   std::uint64_t max_entries)
    : lo_(lo), hi_(hi), segment_size_(segment_size) {
  if (lo < 2 || lo >= hi) throw std::invalid_argument("SpfTable: need 2 <= lo < hi");
  if (hi > (1ull << 32))
    throw resource_error("SpfTable: hi exceeds 32-bit entry range");
  if (hi - lo > max_entries)
    throw resource_error("SpfTable: range exceeds the configured segment budget");
  if (segment_size_ == 0) segment_size_ = kDefaultSegment;

  spf_.assign(hi - lo, 0);
  const auto base = primes_up_to(isqrt(hi - 1));

  for (std::uint64_t seg_lo = lo; seg_lo < hi; seg_lo += segment_size_) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + segment_size_);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = p;
      if (pp * pp >= seg_hi) break;
      std::uint64_t start = std::max(pp * pp, ((seg_lo + pp - 1) / pp) * pp);
      for (std::uint64_t m = start; m < seg_hi; m += pp) {
        auto& slot = spf_[m - lo];
        if (slot == 0) slot = p;
      }
    }
    for (std::uint64_t n = seg_lo; n < seg_hi; ++n) {
      auto& slot = spf_[n - lo];
      if (slot == 0) slot = static_cast<std::uint32_t>(n);  // n is prime
    }
  }
}

int mobius(std::uint64_t n, const SpfTable& table) {
  if (n == 1) return 1;
  if (table.lo() != 2 || n >= table.hi())
    throw std::out_of_range("mobius: n outside table range (table must start at 2)");
  int k = 0;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    n /= p;
    if (n % p == 0) return 0;
    ++k;
  }
  return (k & 1) ? -1 : 1;
}

}  // namespace mudens
