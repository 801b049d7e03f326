#pragma once

#include <cstdint>

namespace mudens {

// Kronecker symbol (a|n) for n >= 1. Fully multiplicative in n and equal to
// the Legendre symbol when n is an odd prime.
int kronecker(std::int64_t a, std::uint64_t n);

}  // namespace mudens
