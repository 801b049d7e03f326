#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mudens {

// Dense univariate polynomial over F_p, ascending coefficients in [0, p),
// no leading zeros; the zero polynomial is the empty vector.
using PolyFp = std::vector<std::uint64_t>;

struct PolyFpFactor {
  PolyFp factor;  // monic irreducible
  int multiplicity;
};

inline constexpr std::uint64_t kFactorSeed = 0x5eed1e55u;

// Factor a monic f over F_p: squarefree decomposition, then distinct-degree
// splitting, then Cantor-Zassenhaus equal-degree splitting. Deterministic
// for a fixed seed; factors come back sorted by (degree, coefficients).
std::vector<PolyFpFactor> factor_poly_mod_p(const PolyFp& f, std::uint64_t p,
                                            std::uint64_t seed = kFactorSeed);

// Only the (irreducible-factor degree, multiplicity) pattern, sorted.
std::vector<std::pair<int, int>> factor_degrees_mod_p(const PolyFp& f, std::uint64_t p,
                                                      std::uint64_t seed = kFactorSeed);

}  // namespace mudens
