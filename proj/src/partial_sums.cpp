#include "mudens/partial_sums.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "mudens/ideal.hpp"
#include "mudens/li.hpp"
#include "mudens/sieve.hpp"

namespace mudens {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

void validate_checkpoints(std::span<const u64> cps, u64 X) {
  if (cps.empty()) throw config_error("sums: need at least one checkpoint");
  u64 prev = 0;
  for (u64 c : cps) {
    if (c < 2 || c > X)
      throw config_error("sums: checkpoints must lie in [2, X]");
    if (c <= prev) throw config_error("sums: checkpoints must be strictly increasing");
    prev = c;
  }
}

int resolve_workers(const SumOptions& opt) {
  return opt.workers > 0 ? opt.workers : omp_get_max_threads();
}

struct SegmentResult {
  CompensatedSum sum;
  // (checkpoint index, within-segment partial up to that checkpoint)
  std::vector<std::pair<std::size_t, CompensatedSum>> snaps;
};

// The workhorse over Q: one streaming factorization pass per segment, with
// mu and p_min derived on the fly and membership answered from the cached
// base-prime table (p_min <= sqrt(X)) or the bulk oracle (n itself prime).
// TermFn(n, mu) is only called on squarefree members.
template <class TermFn>
SumTrace qq_checkpoint_sum(const PrimeSetSpec& S, u64 X, std::span<const u64> cps,
                           const SumOptions& opt, bool parallel, TermFn term) {
  validate_checkpoints(cps, X);
  const u64 seg = std::max<u64>(opt.segment_size, 1u << 10);
  const auto base = primes_up_to(isqrt(X));
  const PrimeMembership oracle(S, X, opt, parallel);
  std::vector<std::uint8_t> base_member(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    base_member[i] = oracle.contains(base[i]) ? 1 : 0;

  const u64 lo0 = 2;
  const std::size_t nseg = static_cast<std::size_t>((X - lo0) / seg) + 1;
  std::vector<SegmentResult> segs(nseg);
  std::exception_ptr err;

#pragma omp parallel num_threads(resolve_workers(opt)) if (parallel)
  {
    MuPminWorkspace ws;
#pragma omp for schedule(dynamic)
    for (std::size_t k = 0; k < nseg; ++k) {
      try {
        const u64 lo = lo0 + k * seg;
        const u64 hi = std::min(X + 1, lo + seg);
        SegmentResult& out = segs[k];
        std::size_t cnext =
            std::lower_bound(cps.begin(), cps.end(), lo) - cps.begin();
        const std::size_t cend =
            std::lower_bound(cps.begin(), cps.end(), hi) - cps.begin();
        scan_mu_pmin(lo, hi, base, ws, [&](u64 n, int mu, std::int32_t pidx) {
          while (cnext < cend && cps[cnext] < n) {
            out.snaps.emplace_back(cnext, out.sum);
            ++cnext;
          }
          if (mu == 0) return;
          const bool member =
              pidx >= 0 ? base_member[pidx] != 0 : oracle.contains(n);
          if (member) out.sum.add(term(n, mu));
        });
        while (cnext < cend) {
          out.snaps.emplace_back(cnext, out.sum);
          ++cnext;
        }
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);

  SumTrace trace;
  trace.set_label = S.label();
  trace.field_label = "Q";
  trace.density = S.density();
  trace.checkpoints.resize(cps.size());
  CompensatedSum prefix;
  for (std::size_t k = 0; k < nseg; ++k) {
    for (const auto& [ci, snap] : segs[k].snaps) {
      CompensatedSum at = prefix;
      at.merge(snap);
      trace.checkpoints[ci] = SumCheckpoint{cps[ci], at.result(), at.error_bound()};
    }
    prefix.merge(segs[k].sum);
  }
  return trace;
}

// Precomputed membership of every prime ideal in a table, so the
// enumeration visitors stay cheap even for Beatty or elliptic sets.
struct IdealMembership {
  const PrimeIdealTable* table;
  std::vector<std::uint8_t> member;

  IdealMembership(const PrimeIdealTable& t, const PrimeSetSpec& S,
                  const SumOptions& opt, bool parallel)
      : table(&t), member(t.size(), 0) {
    std::exception_ptr err;
    const auto ideals = t.ideals();
#pragma omp parallel for schedule(dynamic, 256) \
    num_threads(resolve_workers(opt)) if (parallel)
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      try {
        member[i] = S.classify(ideals[i]) == Membership::in ? 1 : 0;
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }

  bool contains(const PrimeIdeal& pi) const {
    const auto ideals = table->ideals();
    const auto it = std::lower_bound(
        ideals.begin(), ideals.end(), pi,
        [](const PrimeIdeal& a, const PrimeIdeal& b) { return ideal_less(a, b); });
    return member[it - ideals.begin()] != 0;
  }
};

// Scan an (unordered) factor stack: mu sign, minimal-norm uniqueness, p_min.
struct StackStats {
  int mu = 1;
  bool distinguishable = false;
  const PrimeIdeal* p_min = nullptr;
};

StackStats scan_stack(const std::vector<std::pair<PrimeIdeal, int>>& fs) {
  StackStats st;
  u64 min_norm = UINT64_MAX;
  int min_count = 0;
  for (const auto& [pi, e] : fs) {
    if (e >= 2) {
      st.mu = 0;
      return st;
    }
    st.mu = -st.mu;
    const u64 q = pi.norm();
    if (q < min_norm) {
      min_norm = q;
      min_count = 1;
      st.p_min = &pi;
    } else if (q == min_norm) {
      ++min_count;
    }
  }
  st.distinguishable = min_count == 1;
  return st;
}

// Number-field path: enumerate ideals partitioned by their largest prime,
// bucket contributions per checkpoint interval, merge in a fixed order.
template <class TermFn>
SumTrace nf_checkpoint_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                           std::span<const u64> cps, const SumOptions& opt,
                           bool parallel, TermFn term) {
  validate_checkpoints(cps, X);
  const u64 xmax = cps.back();
  const PrimeIdealTable table(K, xmax);
  const IdealMembership membership(table, S, opt, parallel);
  const std::size_t ncp = cps.size();

  std::vector<std::vector<CompensatedSum>> parts(table.size());
  std::exception_ptr err;

#pragma omp parallel for schedule(dynamic, 16) \
    num_threads(resolve_workers(opt)) if (parallel)
  for (std::size_t t = 0; t < table.size(); ++t) {
    try {
      std::vector<CompensatedSum> buckets(ncp);
      enumerate_ideals_with_top(
          table, xmax, t,
          [&](const std::vector<std::pair<PrimeIdeal, int>>& fs, u64 norm) {
            const StackStats st = scan_stack(fs);
            if (st.mu == 0 || !st.distinguishable) return;
            if (!membership.contains(*st.p_min)) return;
            const std::size_t b =
                std::lower_bound(cps.begin(), cps.end(), norm) - cps.begin();
            buckets[b].add(term(norm, st.mu));
          });
      parts[t] = std::move(buckets);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  SumTrace trace;
  trace.set_label = S.label();
  trace.field_label = K.name;
  trace.density = S.density();
  trace.checkpoints.resize(ncp);
  CompensatedSum prefix;
  for (std::size_t b = 0; b < ncp; ++b) {
    for (std::size_t t = 0; t < parts.size(); ++t)
      if (!parts[t].empty()) prefix.merge(parts[t][b]);
    trace.checkpoints[b] = SumCheckpoint{cps[b], prefix.result(), prefix.error_bound()};
  }
  return trace;
}

template <class TermFn>
SumTrace checkpoint_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                        std::span<const u64> cps, const SumOptions& opt, bool parallel,
                        TermFn term) {
  if (K.is_rational()) return qq_checkpoint_sum(S, X, cps, opt, parallel, term);
  return nf_checkpoint_sum(K, S, X, cps, opt, parallel, term);
}

double mobius_over_norm(u64 n, int mu) {
  return -static_cast<double>(mu) / static_cast<double>(n);
}

double mobius_itself(u64, int mu) { return static_cast<double>(mu); }

}  // namespace

PrimeMembership::PrimeMembership(const PrimeSetSpec& S, u64 limit,
                                 const SumOptions& opt, bool parallel)
    : spec_(&S) {
  if (!S.has_elliptic_part()) return;
  primes_ = primes_up_to(limit);
  member_.assign(primes_.size(), 0);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 64) \
    num_threads(resolve_workers(opt)) if (parallel)
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    try {
      member_[i] = S.classify(primes_[i]) == Membership::in ? 1 : 0;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

bool PrimeMembership::contains(u64 p) const {
  if (member_.empty()) return spec_->classify(p) == Membership::in;
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p)
    throw std::out_of_range("PrimeMembership: prime outside precomputed range");
  return member_[it - primes_.begin()] != 0;
}

SumTrace partial_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                     std::span<const u64> checkpoints, const SumOptions& opt) {
  return checkpoint_sum(K, S, X, checkpoints, opt, true, mobius_over_norm);
}

SumTrace mu_indicator_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                          std::span<const u64> checkpoints, const SumOptions& opt) {
  return checkpoint_sum(K, S, X, checkpoints, opt, true, mobius_itself);
}

namespace serial {

SumTrace partial_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                     std::span<const u64> checkpoints, const SumOptions& opt) {
  return checkpoint_sum(K, S, X, checkpoints, opt, false, mobius_over_norm);
}

SumTrace mu_indicator_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                          std::span<const u64> checkpoints, const SumOptions& opt) {
  return checkpoint_sum(K, S, X, checkpoints, opt, false, mobius_itself);
}

}  // namespace serial

std::uint64_t q_sum(const NumberField& K, const PrimeSetSpec& S, u64 X,
                    const SumOptions& opt) {
  if (X < 2) return 0;
  const PrimeIdealTable table(K, X);
  const IdealMembership membership(table, S, opt, true);

  u64 total = 0;
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16) \
    num_threads(resolve_workers(opt)) reduction(+ : total)
  for (std::size_t t = 0; t < table.size(); ++t) {
    try {
      u64 local = 0;
      enumerate_ideals_with_top(
          table, X, t,
          [&](const std::vector<std::pair<PrimeIdeal, int>>& fs, u64) {
            u64 max_norm = 0;
            for (const auto& [pi, e] : fs) max_norm = std::max(max_norm, pi.norm());
            for (const auto& [pi, e] : fs)
              if (pi.norm() == max_norm && membership.contains(pi)) ++local;
          });
      total += local;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return total;
}

std::uint64_t q_sum_via_smooth(const NumberField& K, const PrimeSetSpec& S, u64 X,
                               const SumOptions& opt) {
  if (X < 2) return 0;
  const PrimeIdealTable table(K, X);
  const IdealMembership membership(table, S, opt, true);
  u64 total = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& pi = table[i];
    if (!membership.member[i]) continue;
    total += smooth_count(table, X / pi.norm(), pi.norm());
  }
  return total;
}

DualityCheck verify_duality(const IdealFactorization& a, const PrimeSetSpec& S) {
  const auto& fs = a.factors;
  const std::size_t k = fs.size();
  if (k > 24) throw resource_error("verify_duality: too many distinct primes");

  DualityCheck check;
  // Only squarefree divisors contribute; walk the subsets of distinct primes.
  for (u64 mask = 1; mask < (1ull << k); ++mask) {
    u64 min_norm = UINT64_MAX;
    int min_count = 0;
    const PrimeIdeal* p_min = nullptr;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (1ull << i))) continue;
      ++bits;
      const u64 q = fs[i].first.norm();
      if (q < min_norm) {
        min_norm = q;
        min_count = 1;
        p_min = &fs[i].first;
      } else if (q == min_norm) {
        ++min_count;
      }
    }
    if (min_count != 1) continue;  // not distinguishable
    if (S.classify(*p_min) != Membership::in) continue;
    check.lhs += (bits & 1) ? -1 : 1;
  }
  check.rhs = -ideal_stats(a, S).q_s;
  check.equal = check.lhs == check.rhs;
  return check;
}

DensityDiagnostics density_diagnostics(const NumberField& K, const PrimeSetSpec& S,
                                       std::span<const u64> grid,
                                       const SumOptions& opt) {
  if (grid.empty()) throw config_error("diagnostics: need a nonempty grid");
  validate_checkpoints(grid, grid.back());
  const auto density = S.density();
  if (!density)
    throw config_error("diagnostics: set '" + S.label() + "' has no known density");

  DensityDiagnostics diag;
  diag.density = *density;
  diag.set_label = S.label();
  diag.field_label = K.name;
  diag.rows.resize(grid.size());

  // cumulative prime(-ideal) counts at the grid points
  std::vector<u64> count_s(grid.size(), 0), count_all(grid.size(), 0);
  if (K.is_rational()) {
    const auto primes = primes_up_to(grid.back());
    const PrimeMembership oracle(S, grid.back(), opt, true);
    std::size_t g = 0;
    u64 cs = 0, ca = 0;
    for (const u64 p : primes) {
      while (p > grid[g]) {
        count_s[g] = cs;
        count_all[g] = ca;
        ++g;
      }
      ++ca;
      if (oracle.contains(p)) ++cs;
    }
    for (; g < grid.size(); ++g) {
      count_s[g] = cs;
      count_all[g] = ca;
    }
  } else {
    const PrimeIdealTable table(K, grid.back());
    const IdealMembership membership(table, S, opt, true);
    std::size_t g = 0;
    u64 cs = 0, ca = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const u64 norm = table[i].norm();
      while (norm > grid[g]) {
        count_s[g] = cs;
        count_all[g] = ca;
        ++g;
      }
      ++ca;
      if (membership.member[i]) ++cs;
    }
    for (; g < grid.size(); ++g) {
      count_s[g] = cs;
      count_all[g] = ca;
    }
  }

  double run_sup = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    auto& row = diag.rows[g];
    row.x = grid[g];
    row.pi_s = count_s[g];
    row.pi_all = count_all[g];
    row.delta_li = diag.density * li(static_cast<double>(grid[g]));
    run_sup = std::max(run_sup, std::abs(static_cast<double>(row.pi_s) - row.delta_li));
    row.e_s = run_sup;
  }
  double tail_sup = 0.0;
  for (std::size_t g = grid.size(); g-- > 0;) {
    tail_sup = std::max(tail_sup, diag.rows[g].e_s / static_cast<double>(grid[g]));
    diag.rows[g].v_s = tail_sup;
  }
  return diag;
}

}  // namespace mudens
