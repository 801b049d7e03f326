#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mudens/elliptic.hpp"
#include "mudens/fixed192.hpp"
#include "mudens/ideal.hpp"
#include "mudens/number_field.hpp"

namespace mudens {

class PrimeSetSpec;

namespace sets {

struct AllPrimes {};

// Finite / cofinite sets are keyed by norm.
struct Finite {
  std::vector<std::uint64_t> norms;
};
struct Cofinite {
  std::vector<std::uint64_t> excluded;
};

// p = a (mod q), gcd(a, q) = 1.
struct Progression {
  std::uint64_t q = 1, a = 0;
};

struct Beatty {
  Fixed192 alpha;
};

// p mod m lying in a residue set (primes dividing m are excluded).
struct CyclotomicClass {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues;
};

// kronecker(disc | p) == symbol.
struct QuadraticClass {
  std::int64_t disc = 1;
  int symbol = 1;
};

// Factorization pattern of a defining polynomial mod p. Identifies a
// Chebotarev class when the cycle type determines the conjugacy class
// (symmetric Galois group); the density is the user's claim, not ours.
struct CycleType {
  std::vector<std::int64_t> poly;
  std::vector<int> pattern;  // sorted irreducible-factor degrees
  std::optional<double> declared_density;
};

// Degree-1 unramified prime ideals above p = a (mod q); the ideal-level
// analogue of a progression. Density depends on the field, so it is
// declared.
struct SplitAbove {
  std::uint64_t q = 1, a = 0;
  std::optional<double> declared_density;
};

struct LangTrotter {
  Curve curve;
  std::int64_t trace = 0;
};

struct SatoTate {
  Curve curve;
  double alpha1 = 0, alpha2 = 0;
};

struct Intersection {
  std::vector<PrimeSetSpec> parts;
  std::optional<double> declared_density;
};

}  // namespace sets

enum class Membership { out, in, excluded };

// Declarative description of a set S of primes (or prime ideals) together
// with its theoretical density. Membership tests are pure; elliptic
// variants report bad-reduction primes as excluded rather than guessing.
class PrimeSetSpec {
 public:
  using Variant =
      std::variant<sets::AllPrimes, sets::Finite, sets::Cofinite, sets::Progression,
                   sets::Beatty, sets::CyclotomicClass, sets::QuadraticClass,
                   sets::CycleType, sets::SplitAbove, sets::LangTrotter,
                   sets::SatoTate, sets::Intersection>;

  explicit PrimeSetSpec(Variant v, std::string label = "");

  Membership classify(std::uint64_t p) const;
  Membership classify(const PrimeIdeal& pi) const;

  // classify with bad-reduction primes raised as excluded_prime
  bool contains(std::uint64_t p) const;
  bool contains(const PrimeIdeal& pi) const;

  std::optional<double> density() const;
  const std::string& label() const { return label_; }
  const Variant& variant() const { return v_; }

  bool has_elliptic_part() const;

  // CLI grammar, e.g. "all", "beatty:pi", "ap:4,1", "finite:2,5",
  // "split:1mod8", "and:beatty:pi;quad:8,1". See the README for the list.
  static PrimeSetSpec parse(std::string_view text);

  // Declare the density of a split / cycle-type / intersection set (the
  // variants whose density is external knowledge). config_error for sets
  // whose density is derived here.
  PrimeSetSpec with_declared_density(double density) const;

 private:
  Variant v_;
  std::string label_;
};

// Sato-Tate measure of [a1, a2]: (2/pi) * integral of sin^2.
double sato_tate_measure(double alpha1, double alpha2);

// "pi", "pi/3", "2pi/3", "0.25pi" or a plain decimal.
double parse_angle(std::string_view text);

// Per-ideal statistics against S: mu, distinguishability, the minimal prime
// (when unique), M(a), and Q_S(a) = #{p | a : N(p) = M(a), p in S}.
struct IdealStats {
  int mu = 1;
  bool distinguishable = false;
  std::optional<PrimeIdeal> p_min;
  std::uint64_t max_prime_norm = 0;
  int q_s = 0;
};

IdealStats ideal_stats(const IdealFactorization& a, const PrimeSetSpec& S);

}  // namespace mudens
