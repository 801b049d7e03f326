#include "mudens/ideal.hpp"

#include <algorithm>

#include "mudens/sieve.hpp"

namespace mudens {

IdealFactorization IdealFactorization::from_factors(
    std::vector<std::pair<PrimeIdeal, int>> fs) {
  IdealFactorization a;
  std::sort(fs.begin(), fs.end(),
            [](const auto& x, const auto& y) { return ideal_less(x.first, y.first); });
  a.factors = std::move(fs);
  for (const auto& [pi, e] : a.factors) {
    for (int i = 0; i < e; ++i) a.norm *= pi.norm();
    if (e >= 2) a.mu = 0;
  }
  if (a.mu != 0) a.mu = (a.factors.size() & 1) ? -1 : 1;
  if (!a.factors.empty()) {
    a.max_prime_norm = a.factors.back().first.norm();
    const std::uint64_t min_norm = a.factors.front().first.norm();
    a.distinguishable =
        a.factors.size() == 1 || a.factors[1].first.norm() != min_norm;
    if (a.distinguishable) a.p_min = a.factors.front().first;
  }
  return a;
}

std::uint64_t count_ideals(const PrimeIdealTable& table, std::uint64_t limit) {
  std::uint64_t count = 0;
  enumerate_ideals(table, limit,
                   [&](const auto&, std::uint64_t) { ++count; });
  return count;
}

IdealFactorization factor_rational(std::uint64_t n, const SpfTable& table) {
  std::vector<std::pair<PrimeIdeal, int>> fs;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fs.emplace_back(PrimeIdeal{p, 1, 0, 1}, e);
  }
  return IdealFactorization::from_factors(std::move(fs));
}

std::uint64_t smooth_count(const PrimeIdealTable& table, std::uint64_t X,
                           std::uint64_t Y) {
  if (X > table.limit())
    throw std::invalid_argument("smooth_count: X exceeds table range");
  const auto primes = table.ideals();
  // primes are norm-sorted; the Y-smooth ones are a prefix
  std::size_t hi = 0;
  while (hi < primes.size() && primes[hi].norm() <= Y) ++hi;
  std::uint64_t count = 0;
  std::vector<std::pair<PrimeIdeal, int>> stack;
  auto visit = [&](const auto&, std::uint64_t) { ++count; };
  detail::ideal_dfs(primes, 0, hi, X, stack, 1, visit);
  return count;
}

}  // namespace mudens
