#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mudens/number_field.hpp"
#include "mudens/prime_set.hpp"
#include "mudens/summation.hpp"

namespace mudens {

struct SumOptions {
  int workers = 0;  // 0 = all available
  std::uint64_t segment_size = 1ull << 22;
  std::uint64_t seed = kPointSeed;
};

struct SumCheckpoint {
  std::uint64_t x;
  double value;
  double error_bound;
};

// Checkpointed partial-sum sequence; value at x is the sum over norms <= x.
struct SumTrace {
  std::vector<SumCheckpoint> checkpoints;
  std::string set_label;
  std::string field_label;
  std::optional<double> density;  // the theoretical limit, when known
};

// -sum mu(a)/N(a) over distinguishable a with p_min(a) in S, 2 <= N(a) <= x,
// evaluated at every checkpoint. Over Q this streams the segmented sieve;
// over number fields it streams the ideal enumeration. Compensated
// summation throughout; OpenMP over segments / top-prime partitions with a
// deterministic merge, so results do not depend on the worker count.
SumTrace partial_sum(const NumberField& K, const PrimeSetSpec& S, std::uint64_t X,
                     std::span<const std::uint64_t> checkpoints,
                     const SumOptions& opt = {});

// sum of Q_S(a) over 2 <= N(a) <= X, exact.
std::uint64_t q_sum(const NumberField& K, const PrimeSetSpec& S, std::uint64_t X,
                    const SumOptions& opt = {});

// The same sum decomposed through smooth-ideal counts,
// sum over p in S of Psi(X / N(p), N(p)); equality with q_sum is the
// two-path consistency check.
std::uint64_t q_sum_via_smooth(const NumberField& K, const PrimeSetSpec& S,
                               std::uint64_t X, const SumOptions& opt = {});

struct DualityCheck {
  std::int64_t lhs = 0;  // sum over divisors b of a of mu(b) 1_D(b)
  std::int64_t rhs = 0;  // -Q_S(a)
  bool equal = false;
};

// The minimal/maximal prime duality, exact on one ideal.
DualityCheck verify_duality(const IdealFactorization& a, const PrimeSetSpec& S);

// Checkpointed sum of mu(a) 1_D(a) (integers; the o(X) diagnostic).
SumTrace mu_indicator_sum(const NumberField& K, const PrimeSetSpec& S, std::uint64_t X,
                          std::span<const std::uint64_t> checkpoints,
                          const SumOptions& opt = {});

struct DiagnosticsRow {
  std::uint64_t x;
  std::uint64_t pi_s;     // prime ideals of norm <= x in S
  std::uint64_t pi_all;   // all prime ideals of norm <= x
  double delta_li;        // delta(S) * Li(x)
  double e_s;             // running sup of |pi_s - delta Li| over the grid
  double v_s;             // grid-tail proxy of sup_{y >= x} e_s(y)/y
};

// Grid-restricted density diagnostics. e_s and v_s are proxies on the given
// grid (the true sups range over all reals / an infinite tail).
struct DensityDiagnostics {
  std::vector<DiagnosticsRow> rows;
  double density = 0.0;
  std::string set_label;
  std::string field_label;
};

DensityDiagnostics density_diagnostics(const NumberField& K, const PrimeSetSpec& S,
                                       std::span<const std::uint64_t> grid,
                                       const SumOptions& opt = {});

namespace serial {
// Reference single-thread implementations kept for testing and benchmarks;
// they produce bit-identical traces to the parallel kernels.
SumTrace partial_sum(const NumberField& K, const PrimeSetSpec& S, std::uint64_t X,
                     std::span<const std::uint64_t> checkpoints,
                     const SumOptions& opt = {});
SumTrace mu_indicator_sum(const NumberField& K, const PrimeSetSpec& S, std::uint64_t X,
                          std::span<const std::uint64_t> checkpoints,
                          const SumOptions& opt = {});
}  // namespace serial

// Bulk membership evaluation for rational primes. Elliptic-backed sets are
// precomputed in one parallel pass (per-prime traces are far too slow to
// recompute inside the sieve loop); everything else answers directly.
class PrimeMembership {
 public:
  PrimeMembership(const PrimeSetSpec& S, std::uint64_t limit, const SumOptions& opt,
                  bool parallel = true);

  bool contains(std::uint64_t p) const;

 private:
  const PrimeSetSpec* spec_;
  std::vector<std::uint32_t> primes_;  // only populated for elliptic sets
  std::vector<std::uint8_t> member_;
};

}  // namespace mudens
