#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "mudens/summation.hpp"

using mudens::CompensatedSum;

TEST_CASE("compensated sum matches exact rational arithmetic at 1e3 terms") {
  using boost::multiprecision::cpp_rational;
  CompensatedSum acc;
  cpp_rational exact = 0;
  for (int n = 1; n <= 1000; ++n) {
    const double term = (n % 2 ? 1.0 : -1.0) / n;
    acc.add(term);
    exact += cpp_rational(n % 2 ? 1 : -1, n);
  }
  // the double terms themselves are rounded, so compare against the rounded
  // rational of each term summed exactly
  cpp_rational exact_rounded = 0;
  for (int n = 1; n <= 1000; ++n)
    exact_rounded += cpp_rational((n % 2 ? 1.0 : -1.0) / n);
  const double want = exact_rounded.convert_to<double>();
  CHECK(acc.term_count == 1000);
  CHECK(std::abs(acc.result() - want) < 1e-12);
  // and the true alternating harmonic value is within the reported bound
  CHECK(std::abs(acc.result() - exact.convert_to<double>()) <
        acc.error_bound() + 1e-12);
}

TEST_CASE("compensated sum of 1e7 alternating terms tracks a wide-float oracle") {
  using wide = boost::multiprecision::cpp_bin_float_50;
  CompensatedSum acc;
  wide oracle = 0;
  for (int n = 1; n <= 10'000'000; ++n) {
    const double term = (n % 2 ? 1.0 : -1.0) / n;
    acc.add(term);
    oracle += wide(term);
  }
  const double want = oracle.convert_to<double>();
  CHECK(std::abs(acc.result() - want) < 1e-12);
  CHECK(std::abs(acc.result() - want) <= acc.error_bound());
  CHECK(acc.error_bound() < 1e-7);  // ~2 eps * ln(1e7) * ... stays tiny
}

TEST_CASE("merged partial sums equal the single-pass result") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = dist(rng);

  CompensatedSum whole;
  for (double x : xs) whole.add(x);

  for (std::size_t cut : {1u, 137u, 9999u, 19999u}) {
    CompensatedSum a, b;
    for (std::size_t i = 0; i < cut; ++i) a.add(xs[i]);
    for (std::size_t i = cut; i < xs.size(); ++i) b.add(xs[i]);
    a.merge(b);
    CHECK(a.term_count == whole.term_count);
    CHECK(std::abs(a.result() - whole.result()) <= whole.error_bound());
  }
}

TEST_CASE("order independence within the error bound") {
  // ill-conditioned mix: huge cancellations
  std::vector<double> xs;
  for (int k = 0; k < 1000; ++k) {
    xs.push_back(1e16);
    xs.push_back(1.0);
    xs.push_back(-1e16);
  }
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  CHECK(acc.result() == doctest::Approx(1000.0).epsilon(1e-12));
}
