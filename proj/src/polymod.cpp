#include "mudens/polymod.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace mudens {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using boost::multiprecision::cpp_int;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

void trim(PolyFp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const PolyFp& f) { return static_cast<int>(f.size()) - 1; }

bool is_one(const PolyFp& f) { return f.size() == 1 && f[0] == 1; }

PolyFp poly_mul(const PolyFp& a, const PolyFp& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + u128(a[i]) * b[j]) % p;
  }
  trim(r);
  return r;
}

// Remainder of a mod b (b nonzero).
PolyFp poly_rem(PolyFp a, const PolyFp& b, u64 p) {
  assert(!b.empty());
  const int db = degree(b);
  const u64 lead_inv = invmod(b.back(), p);
  while (degree(a) >= db) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const int shift = degree(a) - db;
    for (int i = 0; i <= db; ++i) {
      u64 sub = mulmod(c, b[i], p);
      u64& slot = a[i + shift];
      slot = (slot >= sub) ? slot - sub : slot + p - sub;
    }
    trim(a);
  }
  return a;
}

PolyFp poly_quot(PolyFp a, const PolyFp& b, u64 p) {
  assert(!b.empty());
  const int db = degree(b);
  if (degree(a) < db) return {};
  PolyFp q(degree(a) - db + 1, 0);
  const u64 lead_inv = invmod(b.back(), p);
  while (degree(a) >= db) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const int shift = degree(a) - db;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) {
      u64 sub = mulmod(c, b[i], p);
      u64& slot = a[i + shift];
      slot = (slot >= sub) ? slot - sub : slot + p - sub;
    }
    trim(a);
  }
  return q;
}

void make_monic(PolyFp& f, u64 p) {
  if (f.empty() || f.back() == 1) return;
  const u64 inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
}

PolyFp poly_gcd(PolyFp a, PolyFp b, u64 p) {
  while (!b.empty()) {
    a = poly_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  make_monic(a, p);
  return a;
}

PolyFp poly_sub(PolyFp a, const PolyFp& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] = (a[i] >= b[i]) ? a[i] - b[i] : a[i] + p - b[i];
  trim(a);
  return a;
}

PolyFp poly_add(PolyFp a, const PolyFp& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] += b[i];
    if (a[i] >= p) a[i] -= p;
  }
  trim(a);
  return a;
}

PolyFp derivative(const PolyFp& f, u64 p) {
  if (f.size() <= 1) return {};
  PolyFp d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
  trim(d);
  return d;
}

PolyFp poly_powmod(PolyFp base, cpp_int e, const PolyFp& m, u64 p) {
  PolyFp r{1};
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = poly_rem(poly_mul(r, base, p), m, p);
    base = poly_rem(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// f with zero derivative is g(x^p); over the prime field the coefficients
// are Frobenius-fixed, so g_i = f_{i*p}.
PolyFp pth_root(const PolyFp& f, u64 p) {
  PolyFp g((f.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i * p];
  trim(g);
  return g;
}

// (squarefree part, multiplicity) pairs of monic f.
void squarefree_decompose(const PolyFp& f, u64 p, int mult,
                          std::vector<std::pair<PolyFp, int>>& out) {
  if (degree(f) <= 0) return;
  PolyFp fp = derivative(f, p);
  if (fp.empty()) {
    squarefree_decompose(pth_root(f, p), p, mult * static_cast<int>(p), out);
    return;
  }
  PolyFp c = poly_gcd(f, fp, p);
  PolyFp w = poly_quot(f, c, p);
  int i = 1;
  while (!is_one(w)) {
    PolyFp y = poly_gcd(w, c, p);
    PolyFp fac = poly_quot(w, y, p);
    if (degree(fac) > 0) out.emplace_back(fac, mult * i);
    w = std::move(y);
    c = poly_quot(c, w, p);
    ++i;
  }
  if (!is_one(c)) squarefree_decompose(c, p, mult * static_cast<int>(p), out);
}

PolyFp random_poly(int max_deg, u64 p, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> coef(0, p - 1);
  PolyFp r(max_deg + 1);
  for (auto& c : r) c = coef(rng);
  trim(r);
  return r;
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void edf(const PolyFp& f, int d, u64 p, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  const int n = degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  PolyFp g;
  while (true) {
    PolyFp r = random_poly(n - 1, p, rng);
    if (degree(r) < 1) continue;
    if (p == 2) {
      // trace map sum r^(2^i), i < d
      PolyFp t = r, acc = r;
      for (int i = 1; i < d; ++i) {
        t = poly_rem(poly_mul(t, t, p), f, p);
        acc = poly_add(std::move(acc), t, p);
      }
      g = poly_gcd(acc, f, p);
    } else {
      cpp_int e = (boost::multiprecision::pow(cpp_int(p), d) - 1) / 2;
      PolyFp s = poly_powmod(r, e, f, p);
      g = poly_gcd(poly_sub(std::move(s), PolyFp{1}, p), f, p);
    }
    if (degree(g) > 0 && degree(g) < n) break;
  }
  edf(g, d, p, rng, out);
  edf(poly_quot(f, g, p), d, p, rng, out);
}

// Distinct-degree split of squarefree monic g, then EDF.
void factor_squarefree(PolyFp g, u64 p, std::mt19937_64& rng,
                       std::vector<PolyFp>& out) {
  PolyFp x{0, 1};
  PolyFp h = poly_rem(x, g, p);
  int d = 0;
  while (degree(g) > 0 && 2 * (d + 1) <= degree(g)) {
    ++d;
    h = poly_powmod(std::move(h), cpp_int(p), g, p);
    PolyFp gd = poly_gcd(poly_sub(h, poly_rem(x, g, p), p), g, p);
    if (degree(gd) > 0) {
      edf(gd, d, p, rng, out);
      g = poly_quot(g, gd, p);
      h = poly_rem(std::move(h), g, p);
    }
  }
  if (degree(g) > 0) out.push_back(g);
}

}  // namespace

std::vector<PolyFpFactor> factor_poly_mod_p(const PolyFp& f, u64 p, u64 seed) {
  if (p < 2) throw std::domain_error("factor_poly_mod_p: p must be prime");
  PolyFp g = f;
  for (auto& c : g) c %= p;
  trim(g);
  if (degree(g) < 1)
    throw std::domain_error("factor_poly_mod_p: polynomial must be nonconstant mod p");
  make_monic(g, p);

  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ull));
  std::vector<std::pair<PolyFp, int>> sqfree;
  squarefree_decompose(g, p, 1, sqfree);

  std::vector<PolyFpFactor> result;
  for (auto& [part, mult] : sqfree) {
    std::vector<PolyFp> irr;
    factor_squarefree(std::move(part), p, rng, irr);
    for (auto& q : irr) result.push_back({std::move(q), mult});
  }
  std::sort(result.begin(), result.end(), [](const PolyFpFactor& a, const PolyFpFactor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    return std::lexicographical_compare(a.factor.rbegin(), a.factor.rend(),
                                        b.factor.rbegin(), b.factor.rend());
  });
  return result;
}

std::vector<std::pair<int, int>> factor_degrees_mod_p(const PolyFp& f, u64 p, u64 seed) {
  std::vector<std::pair<int, int>> degs;
  for (const auto& fac : factor_poly_mod_p(f, p, seed))
    degs.emplace_back(degree(fac.factor), fac.multiplicity);
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace mudens
