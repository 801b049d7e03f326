#include "mudens/fixed192.hpp"

#include <cctype>

namespace mudens {

namespace mp = boost::multiprecision;
using uint512 = mp::uint512_t;
using uint256 = Fixed192::uint256;

namespace {

const uint256 kOne = uint256(1) << Fixed192::kFracBits;

// floor(c * 2^192) for the shipped constants, 192 fractional bits each.
struct NamedConstant {
  const char* name;
  const char* scaled_hex;
};

constexpr NamedConstant kConstants[] = {
    {"pi", "0x3243f6a8885a308d313198a2e03707344a4093822299f31d0"},
    {"e", "0x2b7e151628aed2a6abf7158809cf4f3c762e7160f38b4da56"},
    {"sqrt2", "0x16a09e667f3bcc908b2fb1366ea957d3e3adec17512775099"},
};

}  // namespace

Fixed192::Fixed192(uint256 scaled, uint256 error, std::string label)
    : scaled_(std::move(scaled)), error_(std::move(error)), label_(std::move(label)) {
  if (scaled_ <= kOne + error_)
    throw config_error("Fixed192: alpha must be > 1 beyond its error radius");
}

Fixed192 Fixed192::named(std::string_view name) {
  for (const auto& c : kConstants)
    if (name == c.name) return Fixed192(uint256(c.scaled_hex), uint256(1), c.name);
  throw config_error("Fixed192: unknown named constant '" + std::string(name) + "'");
}

Fixed192 Fixed192::from_decimal(std::string_view literal) {
  mp::cpp_int int_part = 0, frac_part = 0;
  std::size_t i = 0, frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < literal.size(); ++i) {
    const char ch = literal[i];
    if (ch == '.') {
      if (seen_dot) throw config_error("Fixed192: malformed decimal literal");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      seen_digit = true;
      if (seen_dot) {
        frac_part = frac_part * 10 + (ch - '0');
        ++frac_digits;
      } else {
        int_part = int_part * 10 + (ch - '0');
      }
    } else {
      throw config_error("Fixed192: malformed decimal literal");
    }
  }
  if (!seen_digit || !seen_dot || frac_digits == 0)
    throw config_error(
        "Fixed192: decimal alpha needs fractional digits to declare its precision");
  if (frac_digits > 80)
    throw config_error("Fixed192: more than 80 fractional digits is unsupported");

  mp::cpp_int pow10 = 1;
  for (std::size_t k = 0; k < frac_digits; ++k) pow10 *= 10;
  const mp::cpp_int one = mp::cpp_int(1) << kFracBits;
  const mp::cpp_int scaled = int_part * one + (frac_part * one) / pow10;
  // +-1 in the last declared digit, plus our own floor.
  const mp::cpp_int err = one / pow10 + 2;
  return Fixed192(uint256(scaled), uint256(err), std::string(literal));
}

double Fixed192::to_double() const {
  return scaled_.convert_to<double>() /
         kOne.convert_to<double>();
}

bool beatty_contains(const Fixed192& alpha, std::uint64_t m) {
  if (m == 0) return false;
  const uint512 a(alpha.scaled());
  const uint512 e(alpha.error());
  const uint512 lo_target = uint512(m) << Fixed192::kFracBits;
  const uint512 hi_target = (uint512(m) + 1) << Fixed192::kFracBits;

  // floor(alpha * n) == m can hold for at most one n since alpha > 1; the
  // candidate is ceil(m / alpha), probed with a one-step margin either side.
  const uint512 n0 = lo_target / a;
  bool ambiguous = false;
  for (int d = 0; d <= 2; ++d) {
    const uint512 n = n0 + d;
    if (n == 0) continue;
    const uint512 mid = a * n;
    const uint512 band = e * n;
    const bool def_ge_lo = mid >= lo_target + band;
    const bool def_lt_hi = mid + band < hi_target;
    if (def_ge_lo && def_lt_hi) return true;
    const bool def_lt_lo = mid + band < lo_target;
    const bool def_ge_hi = mid >= hi_target + band;
    if (!(def_lt_lo || def_ge_hi)) ambiguous = true;
  }
  if (ambiguous)
    throw precision_error(
        "beatty_contains: membership of " + std::to_string(m) + " for alpha='" +
        alpha.label() + "' is ambiguous at the stored precision; supply more digits");
  return false;
}

}  // namespace mudens
