#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mudens/number_field.hpp"

namespace mudens {

class SpfTable;

// An integral ideal as a multiset of prime ideals. The splitting data alone
// determines everything the sums consult: norm, mu, distinguishability,
// p_min and the maximal prime norm M(a). The empty factor list is O_K.
struct IdealFactorization {
  std::vector<std::pair<PrimeIdeal, int>> factors;  // sorted by ideal_less, exp >= 1
  std::uint64_t norm = 1;
  int mu = 1;                        // 0 as soon as any exponent is >= 2
  bool distinguishable = false;      // unique prime divisor of minimal norm
  std::optional<PrimeIdeal> p_min;   // set iff distinguishable
  std::uint64_t max_prime_norm = 0;  // M(a); 0 for O_K by convention

  static IdealFactorization unit() { return {}; }
  static IdealFactorization from_factors(std::vector<std::pair<PrimeIdeal, int>> fs);
};

namespace detail {

template <class Visit>
void ideal_dfs(std::span<const PrimeIdeal> primes, std::size_t lo, std::size_t hi,
               std::uint64_t budget,
               std::vector<std::pair<PrimeIdeal, int>>& stack, std::uint64_t norm,
               Visit& visit) {
  visit(stack, norm);
  for (std::size_t j = lo; j < hi; ++j) {
    const std::uint64_t q = primes[j].norm();
    if (q > budget) break;  // table is norm-sorted
    std::uint64_t b = budget / q;
    std::uint64_t n = norm * q;
    int e = 1;
    while (true) {
      stack.emplace_back(primes[j], e);
      ideal_dfs(primes, j + 1, hi, b, stack, n, visit);
      stack.pop_back();
      if (q > b) break;
      b /= q;
      n *= q;
      ++e;
    }
  }
}

}  // namespace detail

// Visit every integral ideal of norm <= limit exactly once, as
// visit(factors, norm) with factors sorted ascending by norm. Includes O_K.
template <class Visit>
void enumerate_ideals(const PrimeIdealTable& table, std::uint64_t limit, Visit&& visit) {
  if (limit > table.limit())
    throw std::invalid_argument("enumerate_ideals: limit exceeds table range");
  std::vector<std::pair<PrimeIdeal, int>> stack;
  stack.reserve(64);
  detail::ideal_dfs(table.ideals(), 0, table.size(), limit, stack, 1, visit);
}

// Ideals whose largest factor (in table order) is exactly the prime at
// `top`; the disjoint union over top plus O_K covers everything once.
// This is the partition the parallel sums schedule over. Note the stack
// here leads with the top factor, so it is not norm-sorted; visitors must
// scan rather than index.
template <class Visit>
void enumerate_ideals_with_top(const PrimeIdealTable& table, std::uint64_t limit,
                               std::size_t top, Visit&& visit) {
  const auto primes = table.ideals();
  const std::uint64_t q = primes[top].norm();
  std::vector<std::pair<PrimeIdeal, int>> stack;
  stack.reserve(64);
  std::uint64_t b = limit / q;
  std::uint64_t n = q;
  int e = 1;
  while (n <= limit) {
    stack.emplace_back(primes[top], e);
    detail::ideal_dfs(primes, 0, top, b, stack, n, visit);
    stack.pop_back();
    if (q > b) break;
    b /= q;
    n *= q;
    ++e;
  }
}

// [X]_K: number of integral ideals of norm <= limit (including O_K).
std::uint64_t count_ideals(const PrimeIdealTable& table, std::uint64_t limit);

// n >= 1 as an ideal of Q; the spf table must start at 2 and cover n.
IdealFactorization factor_rational(std::uint64_t n, const SpfTable& table);

// Exact Psi(X, Y): ideals of norm <= X all of whose prime divisors have
// norm <= Y.
std::uint64_t smooth_count(const PrimeIdealTable& table, std::uint64_t X, std::uint64_t Y);

}  // namespace mudens
