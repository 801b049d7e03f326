// Serial vs OpenMP kernel timings. The parallel kernels must produce
// bit-identical traces, so this doubles as an equality check at scale.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "mudens/elliptic.hpp"
#include "mudens/partial_sums.hpp"
#include "mudens/prime_set.hpp"

using namespace mudens;
using clk = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = clk::now();
  fn();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    const auto K = NumberField::rationals();
    const auto S = PrimeSetSpec::parse("beatty:pi");
    const std::vector<std::uint64_t> cps{10'000'000};
    SumTrace a, b;
    const double ts = time_of([&] { a = serial::partial_sum(K, S, cps[0], cps); });
    const double tp = time_of([&] { b = partial_sum(K, S, cps[0], cps); });
    std::printf("%-34s %9.2fs %9.2fs %7.2fx\n", "beatty:pi partial sum to 1e7", ts, tp,
                ts / tp);
    if (a.checkpoints[0].value != b.checkpoints[0].value)
      std::printf("  !! serial/parallel mismatch\n");
  }
  {
    const auto K = NumberField::rationals();
    const auto S = PrimeSetSpec::parse("all");
    const std::vector<std::uint64_t> cps{10'000'000};
    SumTrace a, b;
    const double ts = time_of([&] { a = serial::partial_sum(K, S, cps[0], cps); });
    const double tp = time_of([&] { b = partial_sum(K, S, cps[0], cps); });
    std::printf("%-34s %9.2fs %9.2fs %7.2fx\n", "all-primes partial sum to 1e7", ts,
                tp, ts / tp);
    if (a.checkpoints[0].value != b.checkpoints[0].value)
      std::printf("  !! serial/parallel mismatch\n");
  }
  {
    const Curve E{-1, 1, false};
    std::vector<TraceRecord> a, b;
    const double ts = time_of([&] { a = serial::batch_traces(E, 200'000); });
    const double tp = time_of([&] { b = batch_traces(E, 200'000); });
    std::printf("%-34s %9.2fs %9.2fs %7.2fx\n", "batch traces to 2e5", ts, tp,
                ts / tp);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].p == b[i].p && a[i].a_p == b[i].a_p;
    if (!same) std::printf("  !! serial/parallel mismatch\n");
  }
  {
    NumberField K;
    K.poly = {1, 0, 1};
    K.degree = 2;
    K.name = "Q(i)";
    K.r1 = 0;
    K.r2 = 1;
    K.class_number = 1;
    K.roots_of_unity = 4;
    K.regulator = 1.0;
    K.abs_discriminant = 4.0;
    const auto S = PrimeSetSpec::parse("all");
    const std::vector<std::uint64_t> cps{1'000'000};
    SumTrace a, b;
    const double ts = time_of([&] { a = serial::partial_sum(K, S, cps[0], cps); });
    const double tp = time_of([&] { b = partial_sum(K, S, cps[0], cps); });
    std::printf("%-34s %9.2fs %9.2fs %7.2fx\n", "Q(i) ideal sum to 1e6", ts, tp,
                ts / tp);
    if (a.checkpoints[0].value != b.checkpoints[0].value)
      std::printf("  !! serial/parallel mismatch\n");
  }
  return 0;
}
