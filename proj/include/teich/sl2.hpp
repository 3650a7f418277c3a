#pragma once

/**
 * @file sl2.hpp
 * @brief 2x2 matrices, words in free generators, trace identities and the
 *        parametrized Jordan form used to normalize generator pairs.
 *
 * Mat2 is templated on its scalar so the same word evaluator runs on doubles
 * and on exact integers (boost::multiprecision::cpp_int) when a test needs
 * bit-exact traces.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "teich/error.hpp"
#include "teich/tolerance.hpp"

namespace teich {

template <typename T = double>
struct Mat2 {
  T a11{1}, a12{0}, a21{0}, a22{1};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static Mat2 diagonal(const T& x, const T& y) { return {x, T(0), T(0), y}; }

  T det() const { return a11 * a22 - a12 * a21; }
  T trace() const { return a11 + a22; }

  Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }

  friend Mat2 operator*(const T& s, const Mat2& x) { return {s * x.a11, s * x.a12, s * x.a21, s * x.a22}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::array<T, 4> row_major() const { return {a11, a12, a21, a22}; }

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22 << "]]";
  }
};

using Mat = Mat2<double>;

template <typename T>
T tr(const Mat2<T>& m) {
  return m.trace();
}

template <typename T>
Mat2<T> mul(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y;
}

/// Inverse. Floating point requires |det| >= 1e-12; exact scalars require det = +-1.
/// Matrices with det = 1 up to rounding are inverted by the adjugate.
template <typename T>
Mat2<T> inv(const Mat2<T>& m) {
  const T d = m.det();
  if constexpr (!std::numeric_limits<T>::is_integer) {
    using std::abs;
    // Unimodular up to the rounding of the products forming det: adjugate.
    const T scale = abs(m.a11 * m.a22) + abs(m.a12 * m.a21);
    if (abs(d - T(1)) <= T(1e-9) * (scale > T(1) ? scale : T(1))) return {m.a22, -m.a12, -m.a21, m.a11};
    if (!(abs(d) >= T(1e-12)))
      throw Error(ErrorCode::SingularMatrix, "det = " + std::to_string(static_cast<double>(d)));
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
  } else {
    if (d == T(1)) return {m.a22, -m.a12, -m.a21, m.a11};
    if (d == T(-1)) return {-m.a22, m.a12, m.a21, -m.a11};
    throw Error(ErrorCode::SingularMatrix, "exact inverse needs det = +-1");
  }
}

template <typename U, typename T>
Mat2<U> convert(const Mat2<T>& m) {
  return {U(m.a11), U(m.a12), U(m.a21), U(m.a22)};
}

inline bool is_unimodular(const Mat& m, double eps = 1e-9) { return std::abs(m.det() - 1.0) <= eps; }

inline double max_abs_diff(const Mat& x, const Mat& y) {
  return std::max({std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12), std::abs(x.a21 - y.a21),
                   std::abs(x.a22 - y.a22)});
}

inline double max_abs_entry(const Mat& x) {
  return std::max({std::abs(x.a11), std::abs(x.a12), std::abs(x.a21), std::abs(x.a22)});
}

/// Conjugate c^{-1} m c.
template <typename T>
Mat2<T> conjugate(const Mat2<T>& m, const Mat2<T>& c) {
  return inv(c) * m * c;
}

template <typename T>
Mat2<T> commutator(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y * inv(x) * inv(y);
}

// ---------------------------------------------------------------------------
// Words

struct Letter {
  std::size_t gen;
  int exp;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the free group, read left to right.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) push(l);
  }

  static Word gen(std::size_t i, int exp = 1) { return Word{{i, exp}}; }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends with free reduction.
  void push(const Letter& l) {
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push({it->gen, -it->exp});
    return w;
  }

  friend Word operator*(const Word& x, const Word& y) {
    Word w = x;
    for (const auto& l : y.letters_) w.push(l);
    return w;
  }

  std::size_t max_generator() const {
    std::size_t m = 0;
    for (const auto& l : letters_) m = std::max(m, l.gen + 1);
    return m;
  }

  /// Exponent sum of generator `g` (the abelianized count).
  int exponent_sum(std::size_t g) const {
    int s = 0;
    for (const auto& l : letters_)
      if (l.gen == g) s += l.exp;
    return s;
  }

  /// "ABA'B'" using the given generator names (letters A, B, ... by default).
  std::string str(std::span<const std::string> names = {}) const {
    std::string out;
    for (const auto& l : letters_) {
      out += l.gen < names.size() ? names[l.gen] : std::string(1, static_cast<char>('A' + l.gen));
      if (l.exp < 0) out += '\'';
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Parses tokens of the form Name or Name' where Name is a letter followed by
/// optional digits. Names are resolved against `names`; when `names` is empty
/// a single letter X maps to generator X - 'A'.
inline Word parse_word(std::string_view text, std::span<const std::string> names = {}) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch)))
      throw Error(ErrorCode::ParseError, "unexpected '" + std::string(1, ch) + "' in word '" + std::string(text) + "'");
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    const std::string token(text.substr(i, j - i));
    std::size_t gen = 0;
    if (names.empty()) {
      if (token.size() != 1 || !std::isupper(static_cast<unsigned char>(token[0])))
        throw Error(ErrorCode::ParseError, "unknown generator '" + token + "'");
      gen = static_cast<std::size_t>(token[0] - 'A');
    } else {
      auto it = std::find(names.begin(), names.end(), token);
      if (it == names.end()) throw Error(ErrorCode::ParseError, "unknown generator '" + token + "'");
      gen = static_cast<std::size_t>(it - names.begin());
    }
    int exp = 1;
    if (j < text.size() && text[j] == '\'') {
      exp = -1;
      ++j;
    }
    w.push({gen, exp});
    i = j;
  }
  return w;
}

template <typename T>
Mat2<T> evaluate(std::span<const Mat2<T>> gens, const Word& w) {
  if (w.max_generator() > gens.size())
    throw Error(ErrorCode::PreconditionViolation, "word uses generator beyond arity " + std::to_string(gens.size()));
  Mat2<T> m = Mat2<T>::identity();
  for (const auto& l : w.letters()) m = m * (l.exp > 0 ? gens[l.gen] : inv(gens[l.gen]));
  return m;
}

template <typename T>
T word_trace(std::span<const Mat2<T>> gens, const Word& w) {
  return evaluate(gens, w).trace();
}

template <typename T>
T word_trace(const std::vector<Mat2<T>>& gens, const Word& w) {
  return word_trace(std::span<const Mat2<T>>(gens), w);
}

// ---------------------------------------------------------------------------
// Trace identities

/// Scaled residual |lhs - rhs| / max(1, sum of |terms|) of one identity.
struct IdentityResidual {
  double raw = 0.0;
  double scale = 0.0;
  double scaled() const { return scaled_residual(raw, scale); }
};

struct IdentityReport {
  IdentityResidual product_inverse;  // tr A1A2 tr A1^-1A2 = tr^2A1 + tr^2A2 - tr[A1,A2] - 2
  IdentityResidual commutator;       // tr[A1,A2] + 2 = tr^2A1 + tr^2A2 + tr^2A1A2 - trA1 trA2 trA1A2
  IdentityResidual triple_sum;       // tr A1A2A3 + tr A1A3A2 = P
  IdentityResidual triple_product;   // tr A1A2A3 tr A1A3A2 = Q
  IdentityResidual root_123;         // x^2 - P x + Q at x = tr A1A2A3
  IdentityResidual root_132;         // x^2 - P x + Q at x = tr A1A3A2
  double p = 0.0, q = 0.0;

  double max_scaled() const {
    return std::max({product_inverse.scaled(), commutator.scaled(), triple_sum.scaled(), triple_product.scaled(),
                     root_123.scaled(), root_132.scaled()});
  }
};

namespace detail {
template <typename T>
IdentityResidual residual(const T& lhs, const T& rhs, std::initializer_list<T> terms) {
  using std::abs;
  T s(0);
  for (const T& t : terms) s += abs(t);
  return {static_cast<double>(T(lhs - rhs)), static_cast<double>(s)};
}
}  // namespace detail

/// tr(AB) + tr(A^-1 B) - tr A tr B.
inline IdentityResidual basic_identity_residual(const Mat& a, const Mat& b) {
  const double ab = (a * b).trace(), aib = (inv(a) * b).trace(), ta = a.trace(), tb = b.trace();
  return detail::residual(ab + aib, ta * tb, {ab, aib, ta * tb});
}

/// Residuals of the two-generator and three-generator trace identities.
/// Each residual is scaled by the sum of the magnitudes of its terms.
template <typename T>
IdentityReport identity_residuals(const Mat2<T>& a1, const Mat2<T>& a2, const Mat2<T>& a3) {
  IdentityReport r;
  const T t1 = a1.trace(), t2 = a2.trace(), t3 = a3.trace();
  const T t12 = (a1 * a2).trace(), t23 = (a2 * a3).trace(), t31 = (a3 * a1).trace();
  const T t1i2 = (inv(a1) * a2).trace();
  const T tc = commutator(a1, a2).trace();
  const T t123 = (a1 * a2 * a3).trace(), t132 = (a1 * a3 * a2).trace();
  const T two(2), four(4), zero(0);

  r.product_inverse =
      detail::residual<T>(t12 * t1i2, t1 * t1 + t2 * t2 - tc - two, {t12 * t1i2, t1 * t1, t2 * t2, tc, two});
  r.commutator = detail::residual<T>(tc + two, t1 * t1 + t2 * t2 + t12 * t12 - t1 * t2 * t12,
                                     {tc, two, t1 * t1, t2 * t2, t12 * t12, t1 * t2 * t12});

  const T p = t1 * t23 + t2 * t31 + t3 * t12 - t1 * t2 * t3;
  const T q = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t31 * t31 + t12 * t23 * t31 - t1 * t2 * t12 -
              t2 * t3 * t23 - t3 * t1 * t31 - four;
  r.p = static_cast<double>(p);
  r.q = static_cast<double>(q);
  r.triple_sum = detail::residual<T>(t123 + t132, p, {t123, t132, t1 * t23, t2 * t31, t3 * t12, t1 * t2 * t3});
  r.triple_product = detail::residual<T>(
      t123 * t132, q,
      {t123 * t132, t1 * t1, t2 * t2, t3 * t3, t12 * t12, t23 * t23, t31 * t31, t12 * t23 * t31, t1 * t2 * t12,
       t2 * t3 * t23, t3 * t1 * t31, four});
  r.root_123 = detail::residual<T>(t123 * t123 - p * t123 + q, zero, {t123 * t123, p * t123, q});
  r.root_132 = detail::residual<T>(t132 * t132 - p * t132 + q, zero, {t132 * t132, p * t132, q});
  return r;
}

// ---------------------------------------------------------------------------
// Parametrized Jordan form

struct JordanForm {
  Mat c;  // columns are eigenvectors
  Mat d;  // c^{-1} a c, diagonal
};

namespace detail {
inline bool off_diagonal_vanishes(const Mat& a) {
  return std::abs(a.a12 * a.a21) <= 1e-14 * std::max(1.0, std::abs(a.a11 * a.a22));
}

/// Both denominators of the closed-form basis are far from cancellation.
inline bool jordan_well_conditioned(const Mat& a) {
  if (off_diagonal_vanishes(a)) return false;
  const double t = a.trace();
  const double s = std::sqrt(t * t - 4.0);
  const double den = a.a22 - a.a11 + s;
  return std::abs(den) > 1e-6 * (std::abs(a.a22 - a.a11) + s);
}

/// Unimodular eigenbasis, expanding eigenvalue first, for any hyperbolic A.
/// Each eigenvector is taken from the row of A - mu I with the larger entries.
inline Mat eigenbasis(const Mat& a) {
  const double t = a.trace();
  const double s = std::sqrt(t * t - 4.0);
  const double big = t > 0.0 ? 0.5 * (t + s) : 0.5 * (t - s);
  const double mus[2] = {big, 1.0 / big};
  double v[2][2];
  for (int i = 0; i < 2; ++i) {
    const double mu = mus[i];
    const double r1 = std::abs(a.a12) + std::abs(mu - a.a11);
    const double r2 = std::abs(mu - a.a22) + std::abs(a.a21);
    if (r1 >= r2) {
      v[i][0] = a.a12;
      v[i][1] = mu - a.a11;
    } else {
      v[i][0] = mu - a.a22;
      v[i][1] = a.a21;
    }
  }
  Mat c{v[0][0], v[1][0], v[0][1], v[1][1]};
  const double d = c.det();
  if (d == 0.0) throw Error(ErrorCode::NormalizationFailure, "degenerate eigenbasis");
  const double k = 1.0 / std::sqrt(std::abs(d));
  c = k * c;
  if (d < 0.0) {
    c.a12 = -c.a12;
    c.a22 = -c.a22;
  }
  return c;
}
}  // namespace detail

/// Explicit eigenbasis of a hyperbolic A with a12 a21 != 0. The diagonal is
/// (tr A + s)/2, (tr A - s)/2 with s = sqrt(tr^2 A - 4).
inline JordanForm jordan_normalize(const Mat& a) {
  const double t = a.trace();
  if (!(std::abs(t) > 2.0)) throw Error(ErrorCode::NotHyperbolic, "|tr| = " + std::to_string(std::abs(t)) + " <= 2");
  if (detail::off_diagonal_vanishes(a)) throw Error(ErrorCode::ZeroOffDiagonal, "a12 a21 = 0");
  const double s = std::sqrt(t * t - 4.0);
  const double den = a.a22 - a.a11 + s;
  JordanForm j;
  j.c = {2.0 * a.a12 / den, a.a11 - a.a22 - s, 1.0, 2.0 * a.a21};
  j.d = Mat::diagonal(0.5 * (t + s), 0.5 * (t - s));
  return j;
}

struct NormalizedPair {
  Mat a;  // diag(lambda, 1/lambda), |lambda| > 1
  Mat b;  // (2,1)-entry equal to 1
  Mat c;  // a = c^{-1} A c, b = c^{-1} B c
  int lambda_sign = 1;
};

/// Conjugates (A, B) so that A is diagonal with |lambda| > 1 first and the
/// (2,1)-entry of B is 1. A pair already in that form is returned as is.
inline NormalizedPair normalize_pair(const Mat& a, const Mat& b, double eps = 1e-9) {
  const double t = a.trace();
  if (!(std::abs(t) > 2.0)) throw Error(ErrorCode::NotHyperbolic, "|tr A| <= 2");
  const double tc = commutator(a, b).trace();
  if (std::abs(tc - 2.0) <= eps * std::max(1.0, std::abs(tc)))
    throw Error(ErrorCode::CommutatorParabolic, "tr[A,B] = 2");

  const Mat swap{0.0, 1.0, 1.0, 0.0};
  Mat c = Mat::identity();
  const double diag_eps = 1e-13 * std::max(1.0, max_abs_entry(a));
  if (std::abs(a.a12) <= diag_eps && std::abs(a.a21) <= diag_eps) {
    if (std::abs(a.a11) < 1.0) c = swap;
  } else if (detail::jordan_well_conditioned(a)) {
    c = jordan_normalize(a).c;
    // (tr + s)/2 is the expanding eigenvalue only for positive trace.
    if (t < 0.0) c = c * swap;
  } else {
    // The closed form cancels when one off-diagonal entry is tiny; the
    // row-pivoted eigenbasis spans the same eigenlines.
    c = detail::eigenbasis(a);
  }
  Mat bb = conjugate(b, c);
  if (bb.a21 == 0.0) throw Error(ErrorCode::NormalizationFailure, "(2,1)-entry vanished after diagonalization");
  if (std::abs(bb.a21) != 1.0) {
    const double s = 1.0 / std::sqrt(std::abs(bb.a21));
    c = c * Mat::diagonal(s, 1.0 / s);
  }
  bb = conjugate(b, c);
  if (bb.a21 < 0.0) {
    c = c * Mat::diagonal(1.0, -1.0);
    bb = conjugate(b, c);
  }
  NormalizedPair out;
  out.c = c;
  out.a = conjugate(a, c);
  out.b = bb;
  // Exact zeros and the exact unit entry; the residue is rounding.
  out.a.a12 = out.a.a21 = 0.0;
  out.b.a21 = 1.0;
  out.lambda_sign = out.a.a11 > 0 ? 1 : -1;
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

/// Entries uniform in [-range, range]; a22 solved from det = 1 with the
/// pivot a11 resampled while |a11| < min_pivot.
template <typename Rng>
Mat random_unimodular(Rng& rng, double range = 3.0, double min_pivot = 1e-3) {
  std::uniform_real_distribution<double> u(-range, range);
  for (;;) {
    const double a11 = u(rng);
    if (std::abs(a11) < min_pivot) continue;
    const double a12 = u(rng), a21 = u(rng);
    return {a11, a12, a21, (1.0 + a12 * a21) / a11};
  }
}

struct IdentitySuite {
  std::size_t samples = 0;
  double max_residual = 0.0;
  std::size_t worst_sample = 0;
};

/// Identity residuals over `n` random triples, plus the basic identity on
/// each (A1, A2), drawn from a fixed-seed generator.
inline IdentitySuite run_identity_suite(std::size_t n, std::uint64_t seed, double range = 3.0) {
  std::mt19937_64 rng(seed);
  IdentitySuite out;
  out.samples = n;
  for (std::size_t i = 0; i < n; ++i) {
    const Mat a1 = random_unimodular(rng, range), a2 = random_unimodular(rng, range), a3 = random_unimodular(rng, range);
    const double r = std::max(identity_residuals(a1, a2, a3).max_scaled(), basic_identity_residual(a1, a2).scaled());
    if (r > out.max_residual) {
      out.max_residual = r;
      out.worst_sample = i;
    }
  }
  return out;
}

}  // namespace teich
