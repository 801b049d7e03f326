#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mudens/errors.hpp"

namespace mudens {

// Primes <= n by a plain sieve of Eratosthenes. n is capped so the bitmap
// stays within a sane allocation (use the segmented scans for big ranges).
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

// Smallest-prime-factor table over [lo, hi).
//   spf(n) is prime and divides n, and no smaller prime divides n;
//   spf(p) == p exactly when p is prime.
// Built in cache-sized segments; entries are 32-bit, so hi is capped at 2^32.
class SpfTable {
 public:
  static constexpr std::uint64_t kDefaultSegment = 1ull << 22;
  static constexpr std::uint64_t kDefaultMaxEntries = 1ull << 28;

  SpfTable(std::uint64_t lo, std::uint64_t hi,
           std::uint64_t segment_size = kDefaultSegment,
           std::uint64_t max_entries = kDefaultMaxEntries);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t segment_size() const { return segment_size_; }

  std::uint32_t spf(std::uint64_t n) const {
    if (n < lo_ || n >= hi_) throw std::out_of_range("SpfTable: n outside [lo, hi)");
    return spf_[n - lo_];
  }

 private:
  std::uint64_t lo_, hi_, segment_size_;
  std::vector<std::uint32_t> spf_;
};

inline SpfTable sieve_spf(std::uint64_t lo, std::uint64_t hi,
                          std::uint64_t segment_size = SpfTable::kDefaultSegment,
                          std::uint64_t max_entries = SpfTable::kDefaultMaxEntries) {
  return SpfTable(lo, hi, segment_size, max_entries);
}

// Mobius value of n from a table that starts at 2 (the factor walk visits
// quotients all the way down). 1 maps to +1 without touching the table.
int mobius(std::uint64_t n, const SpfTable& table);

// Workspace for the streaming mu / p_min scan; reusable across segments.
struct MuPminWorkspace {
  std::vector<std::int8_t> mu;
  std::vector<std::int32_t> pmin_idx;  // index into base primes, -1 = none
  std::vector<std::uint64_t> rem;
};

// One factorization pass over [lo, hi): for every n, derive mu(n) and the
// index of its least prime factor in base_primes (-1 means n is prime and
// p_min(n) = n). base_primes must contain all primes <= sqrt(hi - 1).
// visit(n, mu, pmin_index) is called for n ascending.
template <class Visit>
void scan_mu_pmin(std::uint64_t lo, std::uint64_t hi,
                  std::span<const std::uint32_t> base_primes,
                  MuPminWorkspace& ws, Visit&& visit) {
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  ws.mu.assign(len, 1);
  ws.pmin_idx.assign(len, -1);
  ws.rem.resize(len);
  for (std::size_t i = 0; i < len; ++i) ws.rem[i] = lo + i;

  for (std::size_t bi = 0; bi < base_primes.size(); ++bi) {
    const std::uint64_t p = base_primes[bi];
    if (p * p >= hi) break;
    std::uint64_t start = ((lo + p - 1) / p) * p;
    for (std::uint64_t m = start; m < hi; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - lo);
      ws.mu[i] = static_cast<std::int8_t>(-ws.mu[i]);
      ws.rem[i] /= p;
      if (ws.pmin_idx[i] < 0) ws.pmin_idx[i] = static_cast<std::int32_t>(bi);
    }
    const std::uint64_t p2 = p * p;
    std::uint64_t start2 = ((lo + p2 - 1) / p2) * p2;
    for (std::uint64_t m = start2; m < hi; m += p2) {
      ws.mu[m - lo] = 0;  // stays 0: negating 0 is 0
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    // A leftover cofactor > 1 is a single prime > sqrt(hi).
    if (ws.rem[i] > 1) ws.mu[i] = static_cast<std::int8_t>(-ws.mu[i]);
    visit(lo + i, static_cast<int>(ws.mu[i]), ws.pmin_idx[i]);
  }
}

}  // namespace mudens
