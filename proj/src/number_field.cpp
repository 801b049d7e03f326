#include "mudens/number_field.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mudens/sieve.hpp"

namespace mudens {

namespace {

std::uint64_t pow_saturating(std::uint64_t p, int f) {
  std::uint64_t r = 1;
  for (int i = 0; i < f; ++i) {
    if (r > UINT64_MAX / p) return UINT64_MAX;
    r *= p;
  }
  return r;
}

}  // namespace

std::uint64_t PrimeIdeal::norm() const { return pow_saturating(p, f); }

bool ideal_less(const PrimeIdeal& a, const PrimeIdeal& b) {
  const auto na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.p != b.p) return a.p < b.p;
  return a.index < b.index;
}

void NumberField::validate() const {
  if (poly.size() < 2 || poly.back() != 1)
    throw config_error("NumberField: defining polynomial must be monic of degree >= 1");
  if (degree != static_cast<int>(poly.size()) - 1)
    throw config_error("NumberField: degree does not match polynomial");
  if (r1 + 2 * r2 != degree)
    throw config_error("NumberField: r1 + 2*r2 must equal the degree");
  if (class_number < 1 || roots_of_unity < 1)
    throw config_error("NumberField: class number and roots of unity must be >= 1");
  if (!(regulator > 0.0) || !(abs_discriminant >= 1.0))
    throw config_error("NumberField: regulator and |disc| must be positive");
}

double residue_ck(const NumberField& K) {
  K.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  return std::pow(2.0, K.r1) * std::pow(two_pi, K.r2) * K.regulator *
         static_cast<double>(K.class_number) /
         (static_cast<double>(K.roots_of_unity) * std::sqrt(K.abs_discriminant));
}

NumberField NumberField::parse(std::string_view text) {
  NumberField K;
  K.poly.clear();
  K.r1 = -1;
  K.r2 = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);
    try {
      if (key == "name") {
        K.name = value;
      } else if (key == "coeffs") {
        std::istringstream cs(value);
        std::int64_t c;
        while (cs >> c) K.poly.push_back(c);
      } else if (key == "r1") {
        K.r1 = std::stoi(value);
      } else if (key == "r2") {
        K.r2 = std::stoi(value);
      } else if (key == "h") {
        K.class_number = std::stoll(value);
      } else if (key == "w") {
        K.roots_of_unity = std::stoll(value);
      } else if (key == "reg") {
        K.regulator = std::stod(value);
      } else if (key == "disc") {
        K.abs_discriminant = std::stod(value);
      } else {
        throw config_error("NumberField: unknown key '" + key + "'");
      }
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      throw config_error("NumberField: bad value for key '" + key + "'");
    }
  }
  if (K.poly.empty())
    throw config_error("NumberField: missing 'coeffs' (ascending, monic)");
  K.degree = static_cast<int>(K.poly.size()) - 1;
  if (K.r1 < 0 || K.r2 < 0)
    throw config_error("NumberField: r1 and r2 are required");
  K.validate();
  return K;
}

NumberField NumberField::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("NumberField: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<PrimeIdeal> primes_above(const NumberField& K, std::uint64_t p,
                                     std::uint64_t seed) {
  if (K.is_rational()) return {PrimeIdeal{p, 1, 0, 1}};
  PolyFp f(K.poly.size());
  for (std::size_t i = 0; i < K.poly.size(); ++i) {
    const std::int64_t c = K.poly[i] % static_cast<std::int64_t>(p);
    f[i] = static_cast<std::uint64_t>(c < 0 ? c + static_cast<std::int64_t>(p) : c);
  }
  const auto degs = factor_degrees_mod_p(f, p, seed);  // sorted by degree
  std::vector<PrimeIdeal> out;
  out.reserve(degs.size());
  int index = 0;
  for (const auto& [deg, mult] : degs)
    out.push_back(PrimeIdeal{p, deg, index++, mult});
  return out;
}

PrimeIdealTable::PrimeIdealTable(const NumberField& K, std::uint64_t limit,
                                 std::uint64_t max_entries)
    : field_(K), limit_(limit) {
  K.validate();
  if (limit >= (1ull << 32))
    throw resource_error("PrimeIdealTable: limit exceeds the sieve range");
  const auto primes = primes_up_to(limit);
  if (primes.size() * static_cast<std::uint64_t>(K.degree) > max_entries)
    throw resource_error("PrimeIdealTable: too many prime ideals for the budget");

  if (K.is_rational()) {
    ideals_.reserve(primes.size());
    for (auto p : primes) ideals_.push_back(PrimeIdeal{p, 1, 0, 1});
    return;
  }

  std::vector<std::vector<PrimeIdeal>> per_prime(primes.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (auto& pi : primes_above(K, primes[i]))
      if (pi.norm() <= limit) per_prime[i].push_back(pi);
  }
  for (auto& v : per_prime)
    ideals_.insert(ideals_.end(), v.begin(), v.end());
  std::sort(ideals_.begin(), ideals_.end(), ideal_less);
}

}  // namespace mudens
