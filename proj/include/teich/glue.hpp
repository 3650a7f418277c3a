#pragma once

/**
 * @file glue.hpp
 * @brief Amalgamating two representations along a common pants group.
 *
 * Both sides are conjugated so that a chosen generating pair (g1, g2) of the
 * pants group is normalized: g1 diagonal with |lambda| > 1 first, g2 with
 * (2,1)-entry 1. Normalized pairs with equal traces are equal, so the two
 * restrictions coincide and the union of the generators is a
 * representation of the glued surface.
 */

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "teich/error.hpp"
#include "teich/fricke.hpp"
#include "teich/relations.hpp"
#include "teich/rep.hpp"
#include "teich/sl2.hpp"
#include "teich/tolerance.hpp"

namespace teich {

/// Replaces each generator i of w by image[i].
inline Word substitute(const Word& w, const std::vector<Word>& image) {
  Word out;
  for (const auto& l : w.letters()) {
    if (l.gen >= image.size()) throw Error(ErrorCode::PreconditionViolation, "word uses an unmapped generator");
    const Word& g = image[l.gen];
    const Word piece = l.exp > 0 ? g : g.inverse();
    for (int k = 0; k < std::abs(l.exp); ++k) out = out * piece;
  }
  return out;
}

/// Two representations and the words of a common pants group in each.
/// The Y-side words must be distinct generators of Y; they are replaced by
/// the X-side words in the merged representation.
struct GlueSpec {
  Rep x, y;
  std::array<std::string, 2> shared_x{"A", "B"};
  std::array<std::string, 2> shared_y{"A", "B"};
  std::optional<SurfaceSig> sig{};  // signature of the result; defaults to that of x
};

struct GlueResult {
  Rep rep;                       // X generators, then the unshared Y generators
  std::vector<Word> y_image;     // Y generator i as a word in the merged generators
  Mat conj_x, conj_y;            // applied to X and Y
  std::array<std::string, 2> pair;  // normalized pair, as X-side words
  double restriction_gap = 0.0;  // max entry difference of the normalized pants pair

  /// A word in Y's generators evaluated in the merged representation.
  Word from_y(const Word& w) const { return substitute(w, y_image); }
};

namespace detail {

inline void check_shared_traces(const Rep& x, const Rep& y, const std::array<Word, 2>& wx, const std::array<Word, 2>& wy,
                                double eps) {
  const std::array<std::pair<Word, Word>, 3> probes{
      std::pair{wx[0], wy[0]}, std::pair{wx[1], wy[1]}, std::pair{wx[0] * wx[1], wy[0] * wy[1]}};
  for (const auto& [a, b] : probes) {
    const double ta = x.trace(a), tb = y.trace(b);
    if (!within(ta - tb, std::max(std::abs(ta), std::abs(tb)), eps))
      throw Error(ErrorCode::TraceMismatch, "shared class has trace " + std::to_string(ta) + " on one side and " +
                                                std::to_string(tb) + " on the other");
  }
}

}  // namespace detail

inline GlueResult glue_reps(const GlueSpec& spec, const Tolerances& tol = {}) {
  const Rep& x = spec.x;
  const Rep& y = spec.y;
  const std::array<Word, 2> wx{x.word(spec.shared_x[0]), x.word(spec.shared_x[1])};
  const std::array<Word, 2> wy{y.word(spec.shared_y[0]), y.word(spec.shared_y[1])};
  std::array<std::size_t, 2> yi{};
  for (int i = 0; i < 2; ++i) {
    const auto& ls = wy[i].letters();
    if (ls.size() != 1 || ls[0].exp != 1)
      throw Error(ErrorCode::PreconditionViolation, "shared Y-side word '" + spec.shared_y[i] + "' is not a generator");
    yi[i] = ls[0].gen;
  }
  if (yi[0] == yi[1]) throw Error(ErrorCode::PreconditionViolation, "shared Y-side generators coincide");

  detail::check_shared_traces(x, y, wx, wy, tol.glue);

  const Mat gx1 = x.eval(wx[0]), gx2 = x.eval(wx[1]);
  const Mat gy1 = y.eval(wy[0]), gy2 = y.eval(wy[1]);
  auto solvable = [&](const Mat& a, const Mat& b) {
    const double tc = commutator(a, b).trace();
    return std::abs(tc - 2.0) <= tol.glue * std::max(1.0, std::abs(tc));
  };
  if (solvable(gx1, gx2) || solvable(gy1, gy2))
    throw Error(ErrorCode::SolvableAmalgam, "the shared pair generates a solvable group");

  // Normalize on the first candidate whose leading element is hyperbolic.
  struct Candidate {
    Mat x1, x2, y1, y2;
    std::array<std::string, 2> name;
  };
  const std::string n1 = spec.shared_x[0], n2 = spec.shared_x[1];
  const std::array<Candidate, 3> candidates{
      Candidate{gx1, gx2, gy1, gy2, {n1, n2}},
      Candidate{gx2, gx1, gy2, gy1, {n2, n1}},
      Candidate{gx1 * gx2, gx1, gy1 * gy2, gy1, {"(" + n1 + ")(" + n2 + ")", n1}},
  };
  std::optional<NormalizedPair> px, py;
  const Candidate* chosen = nullptr;
  std::string last_error = "no candidate pair is hyperbolic";
  for (const auto& c : candidates) {
    if (!(std::abs(c.x1.trace()) > 2.0 + tol.equality)) continue;
    try {
      px = normalize_pair(c.x1, c.x2, tol.glue);
      py = normalize_pair(c.y1, c.y2, tol.glue);
      chosen = &c;
      break;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  if (!chosen) throw Error(ErrorCode::NormalizationFailure, last_error);

  GlueResult out;
  out.conj_x = px->c;
  out.conj_y = py->c;
  out.pair = chosen->name;

  // The normalized restrictions must agree entrywise.
  std::vector<Mat> xg, yg;
  for (const auto& g : x.gens) xg.push_back(conjugate(g, px->c));
  for (const auto& g : y.gens) yg.push_back(conjugate(g, py->c));
  const Rep xn(x.sig, x.names, xg), yn(y.sig, y.names, yg);
  double gap = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Mat a = xn.eval(wx[i]), b = yn.eval(wy[i]);
    gap = std::max(gap, max_abs_diff(a, b) / std::max(1.0, std::max(max_abs_entry(a), max_abs_entry(b))));
  }
  out.restriction_gap = gap;
  if (!(gap <= tol.glue))
    throw Error(ErrorCode::NormalizationFailure, "normalized restrictions differ by " + std::to_string(gap));

  std::vector<std::string> names = x.names;
  std::vector<Mat> gens = xg;
  std::vector<int> lifting = x.lifting;
  out.y_image.resize(y.arity());
  for (std::size_t i = 0; i < y.arity(); ++i) {
    if (i == yi[0] || i == yi[1]) continue;
    std::string name = y.names[i];
    auto taken = [&](const std::string& n) {
      for (const auto& m : names)
        if (m == n) return true;
      return false;
    };
    for (int k = 2; taken(name); ++k) name = y.names[i] + std::to_string(k);
    out.y_image[i] = Word::gen(names.size());
    names.push_back(name);
    gens.push_back(yg[i]);
    lifting.push_back(y.lifting[i]);
  }
  // Shared generators as words in the X generators; the merged
  // representation keeps these names on X's side.
  out.y_image[yi[0]] = wx[0];
  out.y_image[yi[1]] = wx[1];

  out.rep = Rep(spec.sig.value_or(x.sig), std::move(names), std::move(gens));
  out.rep.lifting = std::move(lifting);
  return out;
}

// ---------------------------------------------------------------------------
// Two-holed torus

/// Both boundary-curve candidates for the separating curve: the value read
/// off the image description, and the one forced by the commutator relation.
inline double sigma12_t7_printed(double t1, double t2, double t3) { return t1 * t2 * t3 - t1 * t1 - t2 * t2 - t3 * t3; }
inline double sigma12_t7_relation(double t1, double t2, double t3) { return sigma12_t7_printed(t1, t2, t3) + 2.0; }

/// The second image inequality: positive margin on the image.
inline double sigma12_margin(double t1, double t4, double t5, double t6, double t7) {
  return four_holed_margin({t1, t1, t6, t7, t4, t5});
}

struct Sigma12Embedding {
  std::array<double, 6> coordinates{};  // read back from the glued rep
  std::array<double, 6> input{};
  double t7_printed = 0.0, t7_relation = 0.0;
  double margin_printed = 0.0, margin_relation = 0.0;
  double t7_from_rep = 0.0;      // |tr| of the separating curve in the glued rep
  bool printed_consistent = false, relation_consistent = false;
  double fourth_boundary = 0.0;  // second boundary trace of the surface
  Rep x, y;                      // torus side, sphere side
  GlueResult glued;

  /// Words of the six coordinate curves in the glued generators A, B, C.
  static std::array<std::string, 6> words() { return {"A", "B", "AB", "BA'B'C", "CA", "C"}; }
  double max_relative_error() const {
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
      worst = std::max(worst, std::abs(coordinates[i] - input[i]) / std::max(1.0, std::abs(input[i])));
    return worst;
  }
};

/// Representation of the two-holed torus with coordinates t1..t6. The torus
/// side carries t1, t2, t3; the four-holed side has boundary traces t1, t1,
/// t6 and interior traces (t7, t4, t5) with t7 the separating curve.
inline Sigma12Embedding sigma12_embed(const std::array<double, 6>& t, const Tolerances& tol = {}) {
  const auto [t1, t2, t3, t4, t5, t6] = t;
  for (double v : t)
    if (!std::isfinite(v) || !(v > 2.0)) throw Error(ErrorCode::ImageViolation, "coordinate " + std::to_string(v) + " <= 2");
  Sigma12Embedding out;
  out.input = t;
  out.t7_printed = sigma12_t7_printed(t1, t2, t3);
  out.t7_relation = sigma12_t7_relation(t1, t2, t3);
  out.margin_printed = sigma12_margin(t1, t4, t5, t6, out.t7_printed);
  out.margin_relation = sigma12_margin(t1, t4, t5, t6, out.t7_relation);

  const double lhs = t1 * t2 * t3, rhs = t1 * t1 + t2 * t2 + t3 * t3;
  if (!(lhs - rhs > tol.equality * std::max(1.0, rhs)))
    throw Error(ErrorCode::ImageViolation, "t1 t2 t3 > t1^2 + t2^2 + t3^2 fails");
  if (!(out.margin_printed > 0.0))
    throw Error(ErrorCode::ImageViolation, "second inequality fails with t7 = " + std::to_string(out.t7_printed));
  if (!(out.margin_relation > 0.0))
    throw Error(ErrorCode::ImageViolation,
                "second inequality fails with the relation value t7 = " + std::to_string(out.t7_relation));

  const double t7 = out.t7_relation;
  Rep x = build_torus(t1, t2, t3, tol);
  x.negate(0);
  out.fourth_boundary = four_holed_t4({t1, t1, t6, t7, t4, t5});
  if (!(out.fourth_boundary >= 2.0 - tol.equality))
    throw Error(ErrorCode::ImageViolation, "boundary trace " + std::to_string(out.fourth_boundary) + " < 2");
  const Rep y = build_four_holed(t1, t1, t6, out.fourth_boundary, t7, t4, t5, tol);

  GlueSpec spec{x, y, {"A", "BA'B'"}, {"A", "B"}, std::nullopt};
  const bool cusp = detail::is_cusp_trace(out.fourth_boundary, tol.equality);
  spec.sig = cusp ? SurfaceSig{1, 1, 1} : SurfaceSig{1, 2, 0};
  out.glued = glue_reps(spec, tol);
  out.x = x;
  out.y = y;

  const auto w = Sigma12Embedding::words();
  for (int i = 0; i < 6; ++i) out.coordinates[i] = std::abs(out.glued.rep.trace(w[i]));
  out.t7_from_rep = std::abs(out.glued.rep.trace("ABA'B'"));
  out.printed_consistent = within(out.t7_from_rep - out.t7_printed, out.t7_from_rep, tol.glue);
  out.relation_consistent = within(out.t7_from_rep - out.t7_relation, out.t7_from_rep, tol.glue);
  return out;
}

}  // namespace teich
