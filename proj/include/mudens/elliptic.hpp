#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mudens {

// Short Weierstrass curve y^2 = x^3 + Ax + B over Q. The CM flag is a user
// declaration (it feeds Lang-Trotter densities); nothing here verifies it.
struct Curve {
  std::int64_t A = 0;
  std::int64_t B = 0;
  bool cm = false;

  // -16(4A^3 + 27B^2), nonzero for a valid curve
  __int128 discriminant() const;
  bool good_reduction(std::uint64_t p) const;
  void validate() const;

  static Curve parse(std::string_view text);  // "A,B" or "A,B,cm"
  std::string label() const;

  friend bool operator==(const Curve&, const Curve&) = default;
};

struct TraceRecord {
  std::uint64_t p;
  std::int64_t a_p;
  double theta;  // in [0, pi], cos(theta) = a_p / (2 sqrt p)
};

// Primes below this go through the O(p) character sum; above it the
// baby-step/giant-step order search takes over.
inline constexpr std::uint64_t kNaiveThreshold = 1ull << 16;
inline constexpr std::uint64_t kPointSeed = 0xec5eedu;

// a_p = p + 1 - #E(F_p) for a good prime p.
std::int64_t trace_of_frobenius(const Curve& E, std::uint64_t p,
                                std::uint64_t seed = kPointSeed);

// Both computation paths, exposed so the crossover range can be tested.
std::int64_t trace_naive(const Curve& E, std::uint64_t p);
std::int64_t trace_bsgs(const Curve& E, std::uint64_t p,
                        std::uint64_t seed = kPointSeed);

double theta_angle(std::int64_t a_p, std::uint64_t p);

// One record per good prime <= X, ascending. Work-stealing parallel with a
// deterministic merged order (per-prime seeds, not a shared stream).
std::vector<TraceRecord> batch_traces(const Curve& E, std::uint64_t X,
                                      std::uint64_t seed = kPointSeed);

namespace serial {
// Reference single-thread implementation kept for testing and benchmarks.
std::vector<TraceRecord> batch_traces(const Curve& E, std::uint64_t X,
                                      std::uint64_t seed = kPointSeed);
}  // namespace serial

}  // namespace mudens
