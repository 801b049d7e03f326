#include "mudens/kronecker.hpp"

#include <stdexcept>
#include <utility>

namespace mudens {

namespace {

// (a|2): 0 for even a, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8).
int kronecker_two(std::int64_t a) {
  if (a % 2 == 0) return 0;
  const int r = static_cast<int>(((a % 8) + 8) % 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

// Jacobi symbol for odd m >= 1.
int jacobi(std::int64_t a, std::uint64_t m) {
  std::uint64_t aa = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(m)) +
                                                 static_cast<std::int64_t>(m)) %
                                                static_cast<std::int64_t>(m));
  int s = 1;
  while (aa != 0) {
    while ((aa & 1) == 0) {
      aa >>= 1;
      const std::uint64_t r = m & 7;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(aa, m);
    if ((aa & 3) == 3 && (m & 3) == 3) s = -s;
    aa %= m;
  }
  return m == 1 ? s : 0;
}

}  // namespace

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) throw std::domain_error("kronecker: n must be >= 1");
  int s = 1;
  while ((n & 1) == 0) {
    n >>= 1;
    const int t = kronecker_two(a);
    if (t == 0) return 0;
    s *= t;
  }
  if (n == 1) return s;
  const int j = jacobi(a, n);
  return j == 0 ? 0 : s * j;
}

}  // namespace mudens
