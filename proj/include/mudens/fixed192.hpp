#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "mudens/errors.hpp"

namespace mudens {

// An irrational constant alpha > 1 held as floor(alpha * 2^192) together
// with a certified error radius in the same 2^-192 units. Membership tests
// against the Beatty sequence floor(alpha * n) run in exact integer
// arithmetic on this representation with a two-sided guard band; a
// comparison that falls inside the band raises precision_error instead of
// silently resolving.
class Fixed192 {
 public:
  using uint256 = boost::multiprecision::uint256_t;

  static constexpr int kFracBits = 192;

  // "pi", "e", "sqrt2": 192 fractional bits baked in, error radius 1.
  static Fixed192 named(std::string_view name);

  // Decimal literal such as "3.1415926535". The declared precision is the
  // number of fractional digits; the stored error covers a final digit that
  // was either truncated or rounded.
  static Fixed192 from_decimal(std::string_view literal);

  const uint256& scaled() const { return scaled_; }
  const uint256& error() const { return error_; }
  const std::string& label() const { return label_; }

  double to_double() const;
  double reciprocal() const { return 1.0 / to_double(); }

 private:
  Fixed192(uint256 scaled, uint256 error, std::string label);

  uint256 scaled_;
  uint256 error_;
  std::string label_;
};

// True iff floor(alpha * n) == m for some n >= 1; throws precision_error if
// the stored precision of alpha cannot decide m.
bool beatty_contains(const Fixed192& alpha, std::uint64_t m);

}  // namespace mudens
