#include "mudens/prime_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "mudens/kronecker.hpp"

namespace mudens {

namespace {

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    result -= result / d;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<std::uint64_t> parse_u64_list(std::string_view text, char sep = ',') {
  std::vector<std::uint64_t> out;
  std::string s(text);
  std::replace(s.begin(), s.end(), sep, ' ');
  std::istringstream in(s);
  std::uint64_t v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw config_error("prime set: bad integer list '" + s + "'");
  return out;
}

Membership bool_to_member(bool b) { return b ? Membership::in : Membership::out; }

}  // namespace

PrimeSetSpec::PrimeSetSpec(Variant v, std::string label)
    : v_(std::move(v)), label_(std::move(label)) {
  // normalize and validate per variant
  if (auto* fin = std::get_if<sets::Finite>(&v_)) {
    std::sort(fin->norms.begin(), fin->norms.end());
  } else if (auto* cof = std::get_if<sets::Cofinite>(&v_)) {
    std::sort(cof->excluded.begin(), cof->excluded.end());
  } else if (auto* ap = std::get_if<sets::Progression>(&v_)) {
    if (ap->q == 0) throw config_error("progression: modulus must be positive");
    ap->a %= ap->q;
    if (std::gcd(ap->a, ap->q) != 1)
      throw config_error("progression: need gcd(a, q) = 1");
  } else if (auto* cyc = std::get_if<sets::CyclotomicClass>(&v_)) {
    if (cyc->modulus == 0) throw config_error("cyclotomic class: modulus must be positive");
    for (auto& r : cyc->residues) r %= cyc->modulus;
    std::sort(cyc->residues.begin(), cyc->residues.end());
    cyc->residues.erase(std::unique(cyc->residues.begin(), cyc->residues.end()),
                        cyc->residues.end());
  } else if (auto* qc = std::get_if<sets::QuadraticClass>(&v_)) {
    if (qc->symbol < -1 || qc->symbol > 1)
      throw config_error("quadratic class: symbol must be -1, 0 or 1");
  } else if (auto* ct = std::get_if<sets::CycleType>(&v_)) {
    if (ct->poly.size() < 2 || ct->poly.back() != 1)
      throw config_error("cycle type: polynomial must be monic, degree >= 1");
    std::sort(ct->pattern.begin(), ct->pattern.end());
    int total = 0;
    for (int d : ct->pattern) total += d;
    if (total != static_cast<int>(ct->poly.size()) - 1)
      throw config_error("cycle type: pattern degrees must sum to the degree");
  } else if (auto* sp = std::get_if<sets::SplitAbove>(&v_)) {
    if (sp->q == 0) throw config_error("split: modulus must be positive");
    sp->a %= sp->q;
    if (std::gcd(sp->a, sp->q) != 1) throw config_error("split: need gcd(a, q) = 1");
  } else if (auto* lt = std::get_if<sets::LangTrotter>(&v_)) {
    lt->curve.validate();
  } else if (auto* st = std::get_if<sets::SatoTate>(&v_)) {
    st->curve.validate();
    if (!(0.0 <= st->alpha1 && st->alpha1 <= st->alpha2 &&
          st->alpha2 <= std::numbers::pi))
      throw std::domain_error("sato-tate: need 0 <= a1 <= a2 <= pi");
  } else if (auto* is = std::get_if<sets::Intersection>(&v_)) {
    if (is->parts.empty()) throw config_error("intersection: needs at least one part");
  }
  if (label_.empty()) label_ = "set";
}

bool PrimeSetSpec::has_elliptic_part() const {
  if (std::holds_alternative<sets::LangTrotter>(v_) ||
      std::holds_alternative<sets::SatoTate>(v_))
    return true;
  if (const auto* is = std::get_if<sets::Intersection>(&v_))
    for (const auto& part : is->parts)
      if (part.has_elliptic_part()) return true;
  return false;
}

Membership PrimeSetSpec::classify(std::uint64_t p) const {
  return std::visit(
      [&](const auto& s) -> Membership {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::AllPrimes>) {
          return Membership::in;
        } else if constexpr (std::is_same_v<T, sets::Finite>) {
          return bool_to_member(
              std::binary_search(s.norms.begin(), s.norms.end(), p));
        } else if constexpr (std::is_same_v<T, sets::Cofinite>) {
          return bool_to_member(
              !std::binary_search(s.excluded.begin(), s.excluded.end(), p));
        } else if constexpr (std::is_same_v<T, sets::Progression>) {
          return bool_to_member(p % s.q == s.a);
        } else if constexpr (std::is_same_v<T, sets::Beatty>) {
          return bool_to_member(beatty_contains(s.alpha, p));
        } else if constexpr (std::is_same_v<T, sets::CyclotomicClass>) {
          if (std::gcd(p, s.modulus) != 1) return Membership::out;  // ramified
          return bool_to_member(std::binary_search(s.residues.begin(),
                                                   s.residues.end(), p % s.modulus));
        } else if constexpr (std::is_same_v<T, sets::QuadraticClass>) {
          return bool_to_member(kronecker(s.disc, p) == s.symbol);
        } else if constexpr (std::is_same_v<T, sets::CycleType>) {
          PolyFp f(s.poly.size());
          for (std::size_t i = 0; i < s.poly.size(); ++i) {
            const auto c = s.poly[i] % static_cast<std::int64_t>(p);
            f[i] = static_cast<std::uint64_t>(c < 0 ? c + static_cast<std::int64_t>(p) : c);
          }
          if (f.back() != 1) return Membership::out;  // degenerate reduction
          std::vector<int> degs;
          for (const auto& [d, mult] : factor_degrees_mod_p(f, p)) {
            if (mult > 1) return Membership::out;  // ramified
            for (int k = 0; k < mult; ++k) degs.push_back(d);
          }
          std::sort(degs.begin(), degs.end());
          return bool_to_member(degs == s.pattern);
        } else if constexpr (std::is_same_v<T, sets::SplitAbove>) {
          return bool_to_member(p % s.q == s.a);  // over Q every prime has degree 1
        } else if constexpr (std::is_same_v<T, sets::LangTrotter>) {
          if (!s.curve.good_reduction(p)) return Membership::excluded;
          return bool_to_member(trace_of_frobenius(s.curve, p) == s.trace);
        } else if constexpr (std::is_same_v<T, sets::SatoTate>) {
          if (!s.curve.good_reduction(p)) return Membership::excluded;
          const double theta = theta_angle(trace_of_frobenius(s.curve, p), p);
          // half-open [a1, a2), closed when a2 == pi
          const bool in = theta >= s.alpha1 &&
                          (theta < s.alpha2 || s.alpha2 == std::numbers::pi);
          return bool_to_member(in);
        } else {
          static_assert(std::is_same_v<T, sets::Intersection>);
          bool all_in = true;
          for (const auto& part : s.parts) {
            switch (part.classify(p)) {
              case Membership::excluded:
                return Membership::excluded;
              case Membership::out:
                all_in = false;
                break;
              case Membership::in:
                break;
            }
          }
          return bool_to_member(all_in);
        }
      },
      v_);
}

Membership PrimeSetSpec::classify(const PrimeIdeal& pi) const {
  if (const auto* sp = std::get_if<sets::SplitAbove>(&v_))
    return bool_to_member(pi.f == 1 && !pi.ramified() && pi.p % sp->q == sp->a);
  if (has_elliptic_part() && (pi.f != 1 || pi.e != 1))
    throw config_error("elliptic prime sets are only defined over Q");
  if (const auto* is = std::get_if<sets::Intersection>(&v_)) {
    bool all_in = true;
    for (const auto& part : is->parts) {
      switch (part.classify(pi)) {
        case Membership::excluded:
          return Membership::excluded;
        case Membership::out:
          all_in = false;
          break;
        case Membership::in:
          break;
      }
    }
    return bool_to_member(all_in);
  }
  // scalar variants act on the norm
  return classify(pi.norm());
}

bool PrimeSetSpec::contains(std::uint64_t p) const {
  switch (classify(p)) {
    case Membership::in:
      return true;
    case Membership::out:
      return false;
    default:
      throw excluded_prime("prime set: bad-reduction prime " + std::to_string(p));
  }
}

bool PrimeSetSpec::contains(const PrimeIdeal& pi) const {
  switch (classify(pi)) {
    case Membership::in:
      return true;
    case Membership::out:
      return false;
    default:
      throw excluded_prime("prime set: bad-reduction prime " + std::to_string(pi.p));
  }
}

std::optional<double> PrimeSetSpec::density() const {
  return std::visit(
      [&](const auto& s) -> std::optional<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::AllPrimes>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, sets::Finite>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, sets::Cofinite>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, sets::Progression>) {
          return 1.0 / static_cast<double>(totient(s.q));
        } else if constexpr (std::is_same_v<T, sets::Beatty>) {
          return s.alpha.reciprocal();
        } else if constexpr (std::is_same_v<T, sets::CyclotomicClass>) {
          std::uint64_t units = 0;
          for (auto r : s.residues)
            if (std::gcd(r, s.modulus) == 1) ++units;
          return static_cast<double>(units) / static_cast<double>(totient(s.modulus));
        } else if constexpr (std::is_same_v<T, sets::QuadraticClass>) {
          return s.symbol == 0 ? 0.0 : 0.5;
        } else if constexpr (std::is_same_v<T, sets::CycleType>) {
          return s.declared_density;
        } else if constexpr (std::is_same_v<T, sets::SplitAbove>) {
          return s.declared_density;
        } else if constexpr (std::is_same_v<T, sets::LangTrotter>) {
          return (s.curve.cm && s.trace == 0) ? 0.5 : 0.0;
        } else if constexpr (std::is_same_v<T, sets::SatoTate>) {
          return sato_tate_measure(s.alpha1, s.alpha2);
        } else {
          static_assert(std::is_same_v<T, sets::Intersection>);
          return s.declared_density;
        }
      },
      v_);
}

double sato_tate_measure(double alpha1, double alpha2) {
  if (!(0.0 <= alpha1 && alpha1 <= alpha2 && alpha2 <= std::numbers::pi))
    throw std::domain_error("sato_tate_measure: need 0 <= a1 <= a2 <= pi");
  return (alpha2 - alpha1 - 0.5 * (std::sin(2 * alpha2) - std::sin(2 * alpha1))) /
         std::numbers::pi;
}

double parse_angle(std::string_view text) {
  std::string s(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw config_error("bad angle '" + s + "'");
    }
  }
  double scale = 1.0;
  const std::string head = s.substr(0, pos);
  const std::string tail = s.substr(pos + 2);
  try {
    if (!head.empty()) scale = std::stod(head);
    if (!tail.empty()) {
      if (tail[0] != '/') throw config_error("bad angle '" + s + "'");
      scale /= std::stod(tail.substr(1));
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("bad angle '" + s + "'");
  }
  return scale * std::numbers::pi;
}

PrimeSetSpec PrimeSetSpec::parse(std::string_view text) {
  const std::string s(text);
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);

  if (head == "all") return PrimeSetSpec(sets::AllPrimes{}, s);
  if (head == "finite") return PrimeSetSpec(sets::Finite{parse_u64_list(rest)}, s);
  if (head == "cofinite")
    return PrimeSetSpec(sets::Cofinite{parse_u64_list(rest)}, s);
  if (head == "ap") {
    const auto qa = parse_u64_list(rest);
    if (qa.size() != 2) throw config_error("ap: expected 'ap:q,a'");
    return PrimeSetSpec(sets::Progression{qa[0], qa[1]}, s);
  }
  if (head == "beatty") {
    if (rest == "pi" || rest == "e" || rest == "sqrt2")
      return PrimeSetSpec(sets::Beatty{Fixed192::named(rest)}, s);
    return PrimeSetSpec(sets::Beatty{Fixed192::from_decimal(rest)}, s);
  }
  if (head == "cyclo") {
    const auto semi = rest.find(':');
    if (semi == std::string::npos)
      throw config_error("cyclo: expected 'cyclo:m:r1,r2,...'");
    const auto m = parse_u64_list(rest.substr(0, semi));
    if (m.size() != 1) throw config_error("cyclo: bad modulus");
    return PrimeSetSpec(
        sets::CyclotomicClass{m[0], parse_u64_list(rest.substr(semi + 1))}, s);
  }
  if (head == "quad") {
    std::string body = rest;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::int64_t disc;
    int symbol;
    if (!(in >> disc >> symbol)) throw config_error("quad: expected 'quad:disc,symbol'");
    return PrimeSetSpec(sets::QuadraticClass{disc, symbol}, s);
  }
  if (head == "cycletype") {
    const auto semi = rest.find(':');
    if (semi == std::string::npos)
      throw config_error("cycletype: expected 'cycletype:c0,c1,..,cn:d1+d2'");
    std::string coeff_s = rest.substr(0, semi);
    std::replace(coeff_s.begin(), coeff_s.end(), ',', ' ');
    std::istringstream cs(coeff_s);
    sets::CycleType ct;
    std::int64_t c;
    while (cs >> c) ct.poly.push_back(c);
    std::string pat = rest.substr(semi + 1);
    std::replace(pat.begin(), pat.end(), '+', ' ');
    std::istringstream ps(pat);
    int d;
    while (ps >> d) ct.pattern.push_back(d);
    return PrimeSetSpec(std::move(ct), s);
  }
  if (head == "split") {
    const auto mod = rest.find("mod");
    if (mod == std::string::npos) throw config_error("split: expected 'split:AmodQ'");
    sets::SplitAbove sp;
    try {
      sp.a = std::stoull(rest.substr(0, mod));
      sp.q = std::stoull(rest.substr(mod + 3));
    } catch (const std::exception&) {
      throw config_error("split: expected 'split:AmodQ'");
    }
    return PrimeSetSpec(std::move(sp), s);
  }
  if (head == "langtrotter") {
    const auto semi = rest.rfind(':');
    if (semi == std::string::npos)
      throw config_error("langtrotter: expected 'langtrotter:A,B[,cm]:a'");
    sets::LangTrotter lt{Curve::parse(rest.substr(0, semi)), 0};
    try {
      lt.trace = std::stoll(rest.substr(semi + 1));
    } catch (const std::exception&) {
      throw config_error("langtrotter: bad trace value");
    }
    return PrimeSetSpec(std::move(lt), s);
  }
  if (head == "satotate") {
    const auto semi = rest.find(':');
    if (semi == std::string::npos)
      throw config_error("satotate: expected 'satotate:A,B[,cm]:a1,a2'");
    const std::string angles = rest.substr(semi + 1);
    const auto comma = angles.find(',');
    if (comma == std::string::npos)
      throw config_error("satotate: expected two angles");
    sets::SatoTate st{Curve::parse(rest.substr(0, semi)),
                      parse_angle(angles.substr(0, comma)),
                      parse_angle(angles.substr(comma + 1))};
    return PrimeSetSpec(std::move(st), s);
  }
  if (head == "and") {
    sets::Intersection is;
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto end = rest.find(';', start);
      if (end == std::string::npos) end = rest.size();
      const std::string part = rest.substr(start, end - start);
      if (!part.empty()) is.parts.push_back(PrimeSetSpec::parse(part));
      start = end + 1;
    }
    return PrimeSetSpec(std::move(is), s);
  }
  throw config_error("unknown prime set '" + s + "'");
}

PrimeSetSpec PrimeSetSpec::with_declared_density(double density) const {
  if (!(density >= 0.0 && density <= 1.0))
    throw config_error("declared density must lie in [0, 1]");
  PrimeSetSpec out = *this;
  if (auto* ct = std::get_if<sets::CycleType>(&out.v_))
    ct->declared_density = density;
  else if (auto* sp = std::get_if<sets::SplitAbove>(&out.v_))
    sp->declared_density = density;
  else if (auto* is = std::get_if<sets::Intersection>(&out.v_))
    is->declared_density = density;
  else
    throw config_error("set '" + label_ + "' derives its own density");
  return out;
}

IdealStats ideal_stats(const IdealFactorization& a, const PrimeSetSpec& S) {
  IdealStats st;
  st.mu = a.mu;
  st.distinguishable = a.distinguishable;
  st.p_min = a.p_min;
  st.max_prime_norm = a.max_prime_norm;
  for (const auto& [pi, e] : a.factors)
    if (pi.norm() == a.max_prime_norm && S.classify(pi) == Membership::in) ++st.q_s;
  return st;
}

}  // namespace mudens
