// Acceptance suite: one line per criterion, nonzero exit on any failure.
// `--extended-only` runs just the minutes-scale 1e8 Beatty row, which is
// kept out of the default gate.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mudens/elliptic.hpp"
#include "mudens/ideal.hpp"
#include "mudens/partial_sums.hpp"
#include "mudens/prime_set.hpp"
#include "mudens/sieve.hpp"

using namespace mudens;
using u64 = std::uint64_t;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

NumberField gaussian() {
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
  return K;
}

const NumberField kQ = NumberField::rationals();

double value_at(const SumTrace& t, u64 x) {
  for (const auto& c : t.checkpoints)
    if (c.x == x) return c.value;
  throw std::logic_error("missing checkpoint");
}

// criterion 1: the published Beatty-pi partial-sum table through 1e7
void criterion_beatty_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto S = PrimeSetSpec::parse("beatty:pi");
  const std::vector<u64> cps{10, 100, 1000, 10'000, 100'000, 1'000'000, 10'000'000};
  const auto trace = partial_sum(kQ, S, cps.back(), cps);
  const double elapsed = seconds_since(t0);

  const std::map<u64, double> table{
      {10, 0.33333},      {100, 0.23915},       {1000, 0.31849}, {10'000, 0.34409},
      {100'000, 0.34209}, {1'000'000, 0.33181}, {10'000'000, 0.32456}};
  for (const auto& [x, want] : table) {
    const double got = value_at(trace, x);
    char buf[128];
    std::snprintf(buf, sizeof buf, "S(%llu) = %.7f vs %.5f",
                  static_cast<unsigned long long>(x), got, want);
    report("criterion 1: Beatty-pi table at X=" + std::to_string(x),
           std::abs(got - want) <= 2e-5, buf);
  }
  report("criterion 1: runtime through 1e7 within 60 s", elapsed <= 60.0,
         std::to_string(elapsed) + " s");
}

void criterion_beatty_extended() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto S = PrimeSetSpec::parse("beatty:pi");
  const std::vector<u64> cps{100'000'000};
  const auto trace = partial_sum(kQ, S, cps.back(), cps);
  const double got = value_at(trace, 100'000'000);
  char buf[128];
  std::snprintf(buf, sizeof buf, "S(1e8) = %.7f vs 0.32117, %.1f s", got,
                seconds_since(t0));
  report("extended: Beatty-pi at X=1e8", std::abs(got - 0.32117) <= 2e-5, buf);
}

// criterion 2: the Sato-Tate sum at 1e6 and its theoretical measure
void criterion_sato_tate() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto S = PrimeSetSpec::parse("satotate:-1,1:pi/3,2pi/3");
  const std::vector<u64> cps{1'000'000};
  const auto trace = partial_sum(kQ, S, cps.back(), cps);
  const double got = value_at(trace, 1'000'000);
  const double elapsed = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "sum = %.6f vs 0.60805", got);
  report("criterion 2: Sato-Tate partial sum at 1e6", std::abs(got - 0.60805) <= 1e-4,
         buf);

  const double measure =
      sato_tate_measure(std::numbers::pi / 3, 2 * std::numbers::pi / 3);
  std::snprintf(buf, sizeof buf, "measure = %.7f vs 0.60900", measure);
  report("criterion 2: Sato-Tate measure", std::abs(measure - 0.60900) <= 1e-5, buf);
  report("criterion 2: runtime within 5 min", elapsed <= 300.0,
         std::to_string(elapsed) + " s");
}

// criterion 3: Lemma 2.2 duality, exact, three sets
void criterion_duality() {
  const std::vector<std::string> names{"all", "ap:4,1", "finite:2,5"};
  const auto spf = sieve_spf(2, 10'001);
  const auto K = gaussian();
  const PrimeIdealTable table(K, 2000);
  for (const auto& name : names) {
    const auto S = PrimeSetSpec::parse(name);
    bool ok = true;
    for (u64 n = 2; n <= 10'000 && ok; ++n)
      ok = verify_duality(factor_rational(n, spf), S).equal;
    report("criterion 3: duality over Q to 1e4, S=" + name, ok);

    bool ok_qi = true;
    enumerate_ideals(table, 2000, [&](const auto& fs, u64 norm) {
      if (norm < 2 || !ok_qi) return;
      ok_qi = verify_duality(IdealFactorization::from_factors(fs), S).equal;
    });
    report("criterion 3: duality over Q(i) to 2000, S=" + name, ok_qi);
  }
}

// criterion 4: Theorem 3.1 ratio and the two-path consistency
void criterion_qsum() {
  const auto ap = PrimeSetSpec::parse("ap:4,1");
  const u64 qs = q_sum(kQ, ap, 1'000'000);
  const double ratio = static_cast<double>(qs) / (0.5 * 1e6);
  char buf[128];
  std::snprintf(buf, sizeof buf, "sum = %llu, ratio = %.4f",
                static_cast<unsigned long long>(qs), ratio);
  report("criterion 4: q_sum ratio in [0.95, 1.05]", ratio >= 0.95 && ratio <= 1.05,
         buf);

  bool consistent = true;
  for (const auto& name : {"all", "ap:4,1", "finite:2,5"}) {
    const auto S = PrimeSetSpec::parse(name);
    if (q_sum(kQ, S, 10'000) != q_sum_via_smooth(kQ, S, 10'000)) consistent = false;
    if (q_sum(gaussian(), S, 2000) != q_sum_via_smooth(gaussian(), S, 2000))
      consistent = false;
  }
  report("criterion 4: q_sum two-path consistency at 1e4", consistent);
}

// criterion 5: class number formula anchors
void criterion_class_number() {
  const PrimeIdealTable table(gaussian(), 1'000'000);
  const double slope = static_cast<double>(count_ideals(table, 1'000'000)) / 1e6;
  char buf[128];
  std::snprintf(buf, sizeof buf, "[1e6]/1e6 = %.5f vs pi/4 = %.5f", slope,
                std::numbers::pi / 4);
  report("criterion 5: Q(i) ideal count slope",
         std::abs(slope - std::numbers::pi / 4) < 0.02, buf);
  report("criterion 5: residue_cK(Q) is exactly 1",
         residue_ck(NumberField::rationals()) == 1.0);
}

// criterion 6: the classical identity 1 = -sum mu(n)/n
void criterion_classical() {
  const auto all = PrimeSetSpec::parse("all");
  const std::vector<u64> cps{100'000, 1'000'000, 10'000'000};
  const auto trace = partial_sum(kQ, all, cps.back(), cps);
  std::vector<double> errs;
  for (const auto& c : trace.checkpoints) errs.push_back(std::abs(c.value - 1.0));
  char buf[160];
  std::snprintf(buf, sizeof buf, "|S-1| = %.2e, %.2e, %.2e", errs[0], errs[1], errs[2]);
  const bool monotone = errs[1] <= errs[0] && errs[2] <= errs[1];
  const bool band = errs[0] < 0.005 && errs[1] < 0.005 && errs[2] < 0.005;
  report("criterion 6: classical identity at 1e7 within 0.05", errs[2] < 0.05, buf);
  report("criterion 6: error trend monotone or within band", monotone || band);
}

// criterion 7: sieve path vs brute-force divisor oracle, every variant
void criterion_oracle_equivalence() {
  const std::vector<std::string> specs = {
      "all",          "finite:2,5",          "cofinite:2,3",
      "ap:4,1",       "beatty:pi",           "cyclo:8:1,3",
      "quad:-4,1",    "cycletype:1,0,1:1+1", "split:1mod8",
      "langtrotter:-1,1:-2", "satotate:-1,1:pi/3,2pi/3", "and:ap:4,1;quad:8,1"};
  const u64 X = 10'000;
  const std::vector<u64> cps{X};
  const auto spf = sieve_spf(2, X + 1);
  for (const auto& name : specs) {
    const auto S = PrimeSetSpec::parse(name);
    const double got = value_at(partial_sum(kQ, S, X, cps), X);
    long double want = 0.0L;
    for (u64 n = 2; n <= X; ++n) {
      const auto a = factor_rational(n, spf);
      if (a.mu == 0) continue;
      if (S.classify(*a.p_min) != Membership::in) continue;
      want -= static_cast<long double>(a.mu) / static_cast<long double>(n);
    }
    const double diff = std::abs(got - static_cast<double>(want));
    report("criterion 7: oracle equivalence, S=" + name, diff < 1e-12,
           "diff " + std::to_string(diff));
  }
}

// criterion 8: the per-module property suites
void criterion_properties() {
  {  // Hasse sweep
    const Curve E{-1, 1, false};
    bool ok = true;
    for (const auto& r : batch_traces(E, 10'000))
      if (static_cast<double>(r.a_p) * r.a_p > 4.0 * static_cast<double>(r.p))
        ok = false;
    report("criterion 8: Hasse bound sweep to 1e4", ok);
  }
  {  // Beatty scan agreement to 1e5
    const auto alpha = Fixed192::named("pi");
    namespace mp = boost::multiprecision;
    const mp::uint512_t scaled(alpha.scaled());
    std::vector<std::uint8_t> hit(100'001, 0);
    for (u64 n = 1;; ++n) {
      const u64 floor_val = static_cast<u64>(mp::uint512_t(scaled * n) >> 192);
      if (floor_val > 100'000) break;
      hit[floor_val] = 1;
    }
    bool ok = true;
    for (u64 m = 1; m <= 100'000; ++m)
      if (beatty_contains(alpha, m) != (hit[m] != 0)) ok = false;
    report("criterion 8: Beatty membership scan agreement to 1e5", ok);
  }
  {  // Psi monotonicity on random grid points
    const PrimeIdealTable table(kQ, 20'000);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<u64> dx(2, 10'000), dy(1, 300);
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      const u64 X = dx(rng), Y = dy(rng);
      if (smooth_count(table, X + dx(rng) % 100, Y) < smooth_count(table, X, Y))
        ok = false;
      if (smooth_count(table, X, Y + dy(rng) % 50) < smooth_count(table, X, Y))
        ok = false;
    }
    report("criterion 8: Psi(X,Y) monotone in both arguments", ok);
  }
  {  // e_S monotone, v_S antitone
    const std::vector<u64> grid{100, 1000, 10'000, 100'000, 1'000'000};
    bool ok = true;
    for (const auto& name : {"all", "ap:4,1", "beatty:pi"}) {
      const auto diag = density_diagnostics(kQ, PrimeSetSpec::parse(name), grid);
      for (std::size_t i = 1; i < diag.rows.size(); ++i) {
        if (diag.rows[i].e_s < diag.rows[i - 1].e_s) ok = false;
        if (diag.rows[i].v_s > diag.rows[i - 1].v_s) ok = false;
      }
    }
    report("criterion 8: e_S nondecreasing, v_S nonincreasing on grids", ok);
  }
  {  // o(X) trend of the mu-indicator sums
    const std::vector<u64> grid{10'000, 100'000, 1'000'000};
    const auto t = mu_indicator_sum(kQ, PrimeSetSpec::parse("all"), grid.back(), grid);
    bool ok = true;
    double prev = 1.0;
    for (const auto& c : t.checkpoints) {
      const double ratio = std::abs(c.value) / static_cast<double>(c.x);
      if (ratio >= prev) ok = false;
      prev = ratio;
    }
    report("criterion 8: mu-indicator |sum|/X decreasing over decades", ok);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const bool extended_only = argc > 1 && std::strcmp(argv[1], "--extended-only") == 0;
  try {
    if (extended_only) {
      criterion_beatty_extended();
    } else {
      criterion_beatty_table();
      criterion_sato_tate();
      criterion_duality();
      criterion_qsum();
      criterion_class_number();
      criterion_classical();
      criterion_oracle_equivalence();
      criterion_properties();
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL  suite aborted: " << e.what() << "\n";
    return 1;
  }
  if (g_failures > 0) {
    std::cout << g_failures << " criterion check(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
