#pragma once

/**
 * @file spinstruct.hpp
 * @brief Sign laws of lifted representations.
 *
 * A lift of a representation to SL(2,R) assigns to each closed curve the
 * sign of its trace. Writing eta for that sign and eta* = -eta on simple
 * curves (eta* = 1 on the zero class), the lift is a spin structure when
 *
 *   eta*(a + b) = (-1)^<a,b> eta*(a) eta*(b)
 *
 * for mod-2 classes a, b. On the curves of a pants this reads
 * eta(a1) eta(a2) eta(a3) = -1; for two curves meeting once it reads
 * eta(a1) eta(a2) eta(a1a2) = 1.
 */

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "teich/curves.hpp"
#include "teich/farey.hpp"
#include "teich/rep.hpp"

namespace teich {

/// Sign of the trace of w. Elliptic classes have no sign.
inline int eta_from_rep(const Rep& rep, const Word& w, double eps = 1e-9) {
  const double t = rep.trace(w);
  if (!(std::abs(t) >= 2.0 - eps)) throw Error(ErrorCode::EllipticClass, "|tr| = " + std::to_string(std::abs(t)) + " < 2");
  return t > 0.0 ? 1 : -1;
}

inline int eta_from_rep(const Rep& rep, std::string_view word, double eps = 1e-9) {
  return eta_from_rep(rep, rep.word(word), eps);
}

/// Mod-2 class of the sum of two slope classes. Both coordinates of the sum
/// are even exactly when their gcd is even; otherwise the reduced sum has
/// the same parities and its curve carries the class.
struct SpinClass {
  bool zero = false;
  Slope curve;
};

inline SpinClass sum_class(const Slope& a, const Slope& b) {
  const std::int64_t p = a.p() + b.p(), q = a.q() + b.q();
  const std::int64_t g = std::gcd(p, q);
  if (g == 0 || g % 2 == 0) return {true, Slope(0, 1)};
  return {false, Slope(p / g, q / g)};
}

/// Mod-2 intersection of slope classes. Curves on a four-holed sphere
/// always meet an even number of times.
inline int spin_pairing(const SurfaceSig& sig, const Slope& a, const Slope& b) {
  return sig.is_one_holed_torus() ? z2_intersection(a, b) : 0;
}

/// eta* of the curve of slope s.
inline int eta_star(const Rep& rep, const Slope& s, double eps = 1e-9) {
  return -eta_from_rep(rep, curve_word(rep.sig, s), eps);
}

inline int eta_star(const Rep& rep, const SpinClass& c, double eps = 1e-9) {
  return c.zero ? 1 : eta_star(rep, c.curve, eps);
}

struct LawRecord {
  std::string law;
  std::vector<Slope> classes;
  int expected = 0;
  int actual = 0;
  bool ok() const { return expected == actual; }
};

struct SpinReport {
  std::vector<LawRecord> records;
  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.ok() ? 0 : 1;
    return n;
  }
  bool ok() const { return violations() == 0; }
};

/// Checks eta*(a + b) = (-1)^<a,b> eta*(a) eta*(b) for each pair.
inline SpinReport check_quadratic(const Rep& rep, const std::vector<std::pair<Slope, Slope>>& pairs, double eps = 1e-9) {
  if (!rep.sig.is_farey()) throw Error(ErrorCode::PreconditionViolation, "slope classes need a torus or four-holed sphere");
  SpinReport out;
  for (const auto& [a, b] : pairs) {
    const SpinClass c = sum_class(a, b);
    const int sign = spin_pairing(rep.sig, a, b) ? -1 : 1;
    LawRecord r;
    r.law = "quadratic";
    r.classes = {a, b};
    if (!c.zero) r.classes.push_back(c.curve);
    r.expected = sign * eta_star(rep, a, eps) * eta_star(rep, b, eps);
    r.actual = eta_star(rep, c, eps);
    out.records.push_back(std::move(r));
  }
  return out;
}

/// Every ordered pair of slopes within `depth` flips of the base triangle.
inline std::vector<std::pair<Slope, Slope>> all_pairs(int depth) {
  const auto slopes = enumerate_farey(depth).slopes();
  std::vector<std::pair<Slope, Slope>> out;
  out.reserve(slopes.size() * slopes.size());
  for (const auto& a : slopes)
    for (const auto& b : slopes) out.emplace_back(a, b);
  return out;
}

/// eta(g1) eta(g2) eta(g1g2) for the two generators of a pants group; -1
/// on a spin lift.
inline LawRecord pants_law(const Rep& rep, std::string_view g1 = "A", std::string_view g2 = "B", double eps = 1e-9) {
  const Word a = rep.word(g1), b = rep.word(g2);
  LawRecord r;
  r.law = "pants";
  r.expected = -1;
  r.actual = eta_from_rep(rep, a, eps) * eta_from_rep(rep, b, eps) * eta_from_rep(rep, a * b, eps);
  return r;
}

/// eta(a1) eta(a2) eta(a1a2) for two curves meeting once; +1 on a spin lift.
inline LawRecord perp_law(const Rep& rep, std::string_view a1 = "A", std::string_view a2 = "B", double eps = 1e-9) {
  const Word a = rep.word(a1), b = rep.word(a2);
  LawRecord r;
  r.law = "perp";
  r.expected = 1;
  r.actual = eta_from_rep(rep, a, eps) * eta_from_rep(rep, b, eps) * eta_from_rep(rep, a * b, eps);
  return r;
}

inline constexpr std::size_t kMaxLiftingGenerators = 20;

/// The 2^N sign patterns on the generators. Bit i of the index negates
/// generator i, so index 0 is the rep itself.
inline std::vector<Rep> enumerate_liftings(const Rep& rep) {
  const std::size_t n = rep.arity();
  if (n > kMaxLiftingGenerators)
    throw Error(ErrorCode::TooManyGenerators, std::to_string(n) + " generators, at most 20 supported");
  std::vector<Rep> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rep r = rep;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) r.negate(i);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace teich
