#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mudens {

// Kahan-Babuska-Neumaier accumulator. The compensation term is carried
// separately so partial accumulators can be merged without losing the
// error-free-transformation guarantee: the final error is bounded by
// error_bound() independent of the number or order of terms.
struct CompensatedSum {
  double value = 0.0;
  double compensation = 0.0;
  std::uint64_t term_count = 0;
  double abs_sum = 0.0;  // running sum of |term|, drives the bound

  void add(double x) {
    double s = value + x;
    if (std::abs(value) >= std::abs(x))
      compensation += (value - s) + x;
    else
      compensation += (x - s) + value;
    value = s;
    abs_sum += std::abs(x);
    ++term_count;
  }

  // Merge a later partial sum into this one. Deterministic as long as the
  // merge order is fixed, which the segment-ordered kernels guarantee.
  void merge(const CompensatedSum& other) {
    double s = value + other.value;
    if (std::abs(value) >= std::abs(other.value))
      compensation += (value - s) + other.value;
    else
      compensation += (other.value - s) + value;
    value = s;
    compensation += other.compensation;
    abs_sum += other.abs_sum;
    term_count += other.term_count;
  }

  double result() const { return value + compensation; }

  // Conservative first-order bound ~ 2 eps * sum |x_i|.
  double error_bound() const {
    return 2.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  }
};

}  // namespace mudens
