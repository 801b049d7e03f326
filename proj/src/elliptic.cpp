#include "mudens/elliptic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mudens/errors.hpp"
#include "mudens/sieve.hpp"

namespace mudens {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

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

u64 invmod(u64 a, u64 p) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p), new_r = static_cast<i64>(a % p);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  assert(r == 1);
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(p) : t);
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Tonelli-Shanks square root mod an odd prime; a must be a QR.
u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

struct Point {
  u64 x = 0, y = 0;
  bool inf = true;
};

struct CurveModP {
  u64 p, a, b;

  u64 rhs(u64 x) const {
    return (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p == 0) return {};  // P + (-P) = O, covers y = 0 doubling
      // tangent slope (3x^2 + a) / 2y
      const u64 num = (mulmod(3, mulmod(P.x, P.x, p), p) + a) % p;
      const u64 lam = mulmod(num, invmod(mulmod(2, P.y, p), p), p);
      return chord(P, P, lam);
    }
    const u64 dx = (Q.x + p - P.x) % p;
    const u64 dy = (Q.y + p - P.y) % p;
    const u64 lam = mulmod(dy, invmod(dx, p), p);
    return chord(P, Q, lam);
  }

  Point chord(const Point& P, const Point& Q, u64 lam) const {
    const u64 x3 = (mulmod(lam, lam, p) + 2 * p - P.x - Q.x) % p;
    const u64 y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
    return {x3, y3, false};
  }

  Point mul(Point P, u64 k) const {
    Point R;
    while (k) {
      if (k & 1) R = add(R, P);
      P = add(P, P);
      k >>= 1;
    }
    return R;
  }

  Point random_point(std::mt19937_64& rng) const {
    std::uniform_int_distribution<u64> dist(0, p - 1);
    while (true) {
      const u64 x = dist(rng);
      const u64 t = rhs(x);
      const int chi = legendre(t, p);
      if (chi == -1) continue;
      return {x, chi == 0 ? 0 : sqrt_mod(t, p), false};
    }
  }
};

// Some positive m with m * P = O, found by Shanks steps across the Hasse
// interval [p+1-2sqrt(p), p+1+2sqrt(p)].
u64 find_annihilator(const CurveModP& E, const Point& P) {
  const u64 s = isqrt(4 * E.p);
  const u64 L = E.p + 1 - s;
  const u64 bs = isqrt(2 * s) + 1;

  std::unordered_map<u64, std::vector<std::pair<u64, u64>>> baby;  // x -> (j, y)
  Point J;  // j * P
  for (u64 j = 0; j <= bs; ++j) {
    if (J.inf && j > 0) return j;  // ord(P) <= bs
    if (!J.inf) baby[J.x].emplace_back(j, J.y);
    J = E.add(J, P);
  }
  const Point G = E.mul(P, bs);
  Point U = E.mul(P, L);
  for (u64 i = 0;; ++i) {
    const u64 base = L + i * bs;
    if (U.inf) return base;
    if (auto it = baby.find(U.x); it != baby.end()) {
      for (const auto& [j, y] : it->second) {
        if (y == U.y && base >= j) return base - j;  // U = jP
        if ((y + U.y) % E.p == 0) return base + j;   // U = -jP
      }
    }
    if (base > E.p + 1 + s) throw check_failure("bsgs: no annihilator in range");
    U = E.add(U, G);
  }
}

std::vector<std::pair<u64, int>> factor_small(u64 m) {
  std::vector<std::pair<u64, int>> fs;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    fs.emplace_back(d, e);
  }
  if (m > 1) fs.emplace_back(m, 1);
  return fs;
}

// Exact order of P given some annihilating multiple m.
u64 point_order(const CurveModP& E, const Point& P, u64 m) {
  for (const auto& [q, e] : factor_small(m)) {
    for (int k = 0; k < e; ++k) {
      if (E.mul(P, m / q).inf)
        m /= q;
      else
        break;
    }
  }
  return m;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

// Group order |E(F_p)| pinned uniquely inside the Hasse interval by point
// orders on the curve and, when those leave several candidates, on its
// quadratic twist (|E| + |E^d| = 2p + 2 ties the two searches together).
u64 group_order_bsgs(u64 p, u64 a, u64 b, u64 seed) {
  const CurveModP E{p, a % p, b % p};
  u64 d = 2;
  while (legendre(d, p) != -1) ++d;
  const u64 d2 = mulmod(d, d, p);
  const CurveModP T{p, mulmod(E.a, d2, p), mulmod(E.b, mulmod(d2, d, p), p)};

  const u64 s = isqrt(4 * p);
  const u64 L = p + 1 - s, R = p + 1 + s;
  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ull));

  u64 lcm_e = 1, lcm_t = 1;
  for (int round = 0; round < 256; ++round) {
    if (round % 2 == 0) {
      const Point P = E.random_point(rng);
      lcm_e = lcm_u64(lcm_e, point_order(E, P, find_annihilator(E, P)));
    } else {
      const Point P = T.random_point(rng);
      lcm_t = lcm_u64(lcm_t, point_order(T, P, find_annihilator(T, P)));
    }
    u64 candidate = 0;
    int hits = 0;
    for (u64 m = ((L + lcm_e - 1) / lcm_e) * lcm_e; m <= R; m += lcm_e) {
      if ((2 * p + 2 - m) % lcm_t == 0) {
        candidate = m;
        if (++hits > 1) break;
      }
    }
    if (hits == 1) return candidate;
    if (hits == 0) throw check_failure("bsgs: no order candidate, twist mixup");
  }
  throw check_failure("bsgs: order not pinned after 256 rounds");
}

}  // namespace

__int128 Curve::discriminant() const {
  const i128 a3 = i128(A) * A * A;
  const i128 b2 = i128(B) * B;
  return -16 * (4 * a3 + 27 * b2);
}

void Curve::validate() const {
  if (discriminant() == 0)
    throw config_error("Curve: discriminant is zero (singular curve)");
}

bool Curve::good_reduction(u64 p) const {
  i128 d = discriminant() % static_cast<i128>(p);
  return d != 0;
}

Curve Curve::parse(std::string_view text) {
  Curve E;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string cm_tag;
  if (!(in >> E.A >> E.B)) throw config_error("Curve: expected 'A,B[,cm]'");
  if (in >> cm_tag) {
    if (cm_tag == "cm")
      E.cm = true;
    else
      throw config_error("Curve: trailing token must be 'cm'");
  }
  E.validate();
  return E;
}

std::string Curve::label() const {
  std::ostringstream out;
  out << "y^2=x^3";
  if (A) out << (A > 0 ? "+" : "") << A << "x";
  if (B) out << (B > 0 ? "+" : "") << B;
  if (cm) out << " (CM)";
  return out.str();
}

std::int64_t trace_naive(const Curve& E, u64 p) {
  if (!E.good_reduction(p)) throw excluded_prime("trace: bad reduction at p");
  if (p < 5) {
    // brute force over all affine pairs
    u64 count = 1;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y) {
        const u64 lhs = y * y % p;
        const u64 rhs = (x * x % p * x + ((E.A % i64(p)) + i64(p)) * x +
                         ((E.B % i64(p)) + i64(p))) %
                        p;
        if (lhs == rhs) ++count;
      }
    return static_cast<i64>(p) + 1 - static_cast<i64>(count);
  }
  const u64 a = static_cast<u64>(((E.A % i64(p)) + i64(p)) % i64(p));
  const u64 b = static_cast<u64>(((E.B % i64(p)) + i64(p)) % i64(p));
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) chi[mulmod(x, x, p)] = 1;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 fx = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
    sum += chi[fx];
  }
  return -sum;  // a_p = p + 1 - #E = -sum chi(f(x))
}

std::int64_t trace_bsgs(const Curve& E, u64 p, u64 seed) {
  if (!E.good_reduction(p)) throw excluded_prime("trace: bad reduction at p");
  const u64 a = static_cast<u64>(((E.A % i64(p)) + i64(p)) % i64(p));
  const u64 b = static_cast<u64>(((E.B % i64(p)) + i64(p)) % i64(p));
  const u64 n = group_order_bsgs(p, a, b, seed);
  return static_cast<i64>(p) + 1 - static_cast<i64>(n);
}

std::int64_t trace_of_frobenius(const Curve& E, u64 p, u64 seed) {
  return p < kNaiveThreshold ? trace_naive(E, p) : trace_bsgs(E, p, seed);
}

double theta_angle(std::int64_t a_p, u64 p) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(p));
  if (static_cast<double>(a_p) > bound || static_cast<double>(a_p) < -bound)
    throw std::invalid_argument("theta_angle: Hasse bound violated");
  const double c = std::clamp(static_cast<double>(a_p) / bound, -1.0, 1.0);
  return std::acos(c);
}

namespace {

std::vector<TraceRecord> batch_impl(const Curve& E, u64 X, u64 seed, bool parallel) {
  E.validate();
  const auto primes = primes_up_to(X);
  std::vector<TraceRecord> out(primes.size());
  std::vector<std::uint8_t> good(primes.size(), 0);
  std::exception_ptr err;

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::size_t i = 0; i < primes.size(); ++i) {
    try {
      const u64 p = primes[i];
      if (!E.good_reduction(p)) continue;
      const i64 a_p = trace_of_frobenius(E, p, seed);
      out[i] = TraceRecord{p, a_p, theta_angle(a_p, p)};
      good[i] = 1;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  std::vector<TraceRecord> filtered;
  filtered.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (good[i]) filtered.push_back(out[i]);
  return filtered;
}

}  // namespace

std::vector<TraceRecord> batch_traces(const Curve& E, u64 X, u64 seed) {
  return batch_impl(E, X, seed, true);
}

namespace serial {
std::vector<TraceRecord> batch_traces(const Curve& E, u64 X, u64 seed) {
  return batch_impl(E, X, seed, false);
}
}  // namespace serial

}  // namespace mudens
