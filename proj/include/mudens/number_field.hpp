#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mudens/errors.hpp"
#include "mudens/polymod.hpp"

namespace mudens {

// A monogenic number field K = Q[x]/(f) with user-declared analytic
// invariants. Prime splitting mirrors the factorization of f mod p, which is
// the monogenic assumption: callers must not feed in fields where Z[theta]
// has index > 1 divisible by a sieved prime.
struct NumberField {
  std::vector<std::int64_t> poly{0, 1};  // monic, ascending coefficients
  int degree = 1;
  std::string name = "Q";

  // analytic class number formula inputs
  int r1 = 1;
  int r2 = 0;
  std::int64_t class_number = 1;
  std::int64_t roots_of_unity = 2;
  double regulator = 1.0;
  double abs_discriminant = 1.0;

  bool is_rational() const { return degree == 1; }

  static NumberField rationals() { return NumberField{}; }
  static NumberField parse(std::string_view text);
  static NumberField load(const std::string& path);

  void validate() const;
};

// Residue of the Dedekind zeta function at s = 1 by the class number
// formula: 2^r1 (2 pi)^r2 Reg h / (w sqrt|D|).
double residue_ck(const NumberField& K);

struct PrimeIdeal {
  std::uint64_t p = 0;
  int f = 1;      // residue degree; norm = p^f
  int index = 0;  // rank among the primes above p, ordered by (f, factor)
  int e = 1;      // ramification index

  bool ramified() const { return e > 1; }
  std::uint64_t norm() const;

  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

// (norm, p, index) order; ties cannot occur within one field.
bool ideal_less(const PrimeIdeal& a, const PrimeIdeal& b);

// The primes above p, one per irreducible factor of f mod p. The sum of
// e * f over the result equals the field degree.
std::vector<PrimeIdeal> primes_above(const NumberField& K, std::uint64_t p,
                                     std::uint64_t seed = kFactorSeed);

// Every prime ideal of norm <= limit, sorted by (norm, p, index). Built once
// per (K, X) and shared read-only by the enumeration passes.
class PrimeIdealTable {
 public:
  PrimeIdealTable(const NumberField& K, std::uint64_t limit,
                  std::uint64_t max_entries = 1ull << 27);

  const NumberField& field() const { return field_; }
  std::uint64_t limit() const { return limit_; }
  std::span<const PrimeIdeal> ideals() const { return ideals_; }
  std::size_t size() const { return ideals_.size(); }
  const PrimeIdeal& operator[](std::size_t i) const { return ideals_[i]; }

 private:
  NumberField field_;
  std::uint64_t limit_;
  std::vector<PrimeIdeal> ideals_;
};

}  // namespace mudens
