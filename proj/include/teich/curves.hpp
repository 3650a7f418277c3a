#pragma once

/**
 * @file curves.hpp
 * @brief Words in the fundamental group representing the curve of a slope.
 *
 * One-holed torus, generators A (slope 1/0) and B (slope 0/1): the lower
 * Christoffel word from the Stern-Brocot descent, with A inverted for
 * negative slopes.
 *
 * Four-holed sphere, generators A, B, C around b1, b2, b3 with ABC around
 * b4: the curves AB, BC, CA sit at 0/1, 1/1, 1/0. Each flip replaces the
 * generator triple (G1, G2, G3) by (G1, G3, G3^-1 G2 G3), which keeps
 * G1G2G3 and exchanges the curve G1G2 for G3^-1 G2 G3 G1.
 */

#include <array>

#include "teich/farey.hpp"
#include "teich/rep.hpp"
#include "teich/sl2.hpp"

namespace teich {

inline Word torus_word(const Slope& s) {
  const Word a = Word::gen(0), b = Word::gen(1);
  if (s == Slope(1, 0)) return a;
  if (s == Slope(0, 1)) return b;
  const bool negative = s.p() < 0;
  const Slope target(negative ? -s.p() : s.p(), s.q());
  Slope l(0, 1), r(1, 0);
  Word wl = b, wr = a;
  for (;;) {
    const Slope m(l.p() + r.p(), l.q() + r.q());
    const Word wm = wl * wr;
    if (m == target) {
      if (!negative) return wm;
      Word out;
      for (const auto& x : wm.letters()) out.push({x.gen, x.gen == 0 ? -x.exp : x.exp});
      return out;
    }
    if (compare(target, m) < 0) {
      r = m;
      wr = wm;
    } else {
      l = m;
      wl = wm;
    }
  }
}

/// Generator triple attached to an ideal triangle of the four-holed sphere.
class FourHoledFrame {
 public:
  static FourHoledFrame base() {
    FourHoledFrame f;
    f.g_ = {Word::gen(0), Word::gen(1), Word::gen(2)};
    f.c_ = {Slope(0, 1), Slope(1, 1), Slope(1, 0)};
    return f;
  }

  /// Curves G1G2, G2G3, G3G1.
  const std::array<Slope, 3>& slopes() const { return c_; }
  const std::array<Word, 3>& generators() const { return g_; }

  Word curve(std::size_t i) const { return g_[i] * g_[(i + 1) % 3]; }

  Word curve(const Slope& s) const {
    for (std::size_t i = 0; i < 3; ++i)
      if (c_[i] == s) return curve(i);
    throw Error(ErrorCode::PreconditionViolation, s.str() + " is not a vertex of the frame");
  }

  /// Replaces the curve `apex` by `to`, the other completion of the opposite edge.
  FourHoledFrame flip(const Slope& apex, const Slope& to) const {
    std::size_t k = 3;
    for (std::size_t i = 0; i < 3; ++i)
      if (c_[i] == apex) k = i;
    if (k == 3) throw Error(ErrorCode::EdgeNotInTriangle, apex.str() + " is not a vertex of the frame");
    const Word& g1 = g_[k];
    const Word& g2 = g_[(k + 1) % 3];
    const Word& g3 = g_[(k + 2) % 3];
    FourHoledFrame f;
    f.g_ = {g1, g3, g3.inverse() * g2 * g3};
    f.c_ = {c_[(k + 2) % 3], c_[(k + 1) % 3], to};
    return f;
  }

 private:
  std::array<Word, 3> g_;
  std::array<Slope, 3> c_;
};

/// The same flip on matrices. After each flip the triple is conjugated so
/// that G2G3 is diagonal and G1 has (2,1)-entry 1, which keeps entries on
/// the scale of the traces instead of growing with the word length.
class FourHoledMatrixFrame {
 public:
  explicit FourHoledMatrixFrame(const std::array<Mat, 3>& g)
      : g_(g), c_{Slope(0, 1), Slope(1, 1), Slope(1, 0)} {}

  const std::array<Mat, 3>& generators() const { return g_; }
  const std::array<Slope, 3>& slopes() const { return c_; }

  FourHoledMatrixFrame flip(const Slope& apex, const Slope& to) const {
    std::size_t k = 3;
    for (std::size_t i = 0; i < 3; ++i)
      if (c_[i] == apex) k = i;
    if (k == 3) throw Error(ErrorCode::EdgeNotInTriangle, apex.str() + " is not a vertex of the frame");
    const Mat& g1 = g_[k];
    const Mat& g2 = g_[(k + 1) % 3];
    const Mat& g3 = g_[(k + 2) % 3];
    FourHoledMatrixFrame f = *this;
    f.g_ = {g1, g3, inv(g3) * g2 * g3};
    f.c_ = {c_[(k + 2) % 3], c_[(k + 1) % 3], to};
    const Mat c = normalize_pair(f.g_[1] * f.g_[2], f.g_[0]).c;
    for (auto& m : f.g_) m = conjugate(m, c);
    return f;
  }

 private:
  std::array<Mat, 3> g_;
  std::array<Slope, 3> c_;
};

inline FourHoledFrame four_holed_frame(const Slope& s) {
  FourHoledFrame f = FourHoledFrame::base();
  for (const auto& step : path_to(s)) f = f.flip(step.from, step.to);
  return f;
}

inline Word four_holed_word(const Slope& s) { return four_holed_frame(s).curve(s); }

/// Word for the curve of slope `s` on a one-holed torus or four-holed sphere.
inline Word curve_word(const SurfaceSig& sig, const Slope& s) {
  if (sig.is_one_holed_torus()) return torus_word(s);
  if (sig.is_four_holed_sphere()) return four_holed_word(s);
  throw Error(ErrorCode::PreconditionViolation, "no slope words for signature " + sig.str());
}

}  // namespace teich
