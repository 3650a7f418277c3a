#pragma once

/**
 * @file fricke.hpp
 * @brief Representations realizing prescribed trace data: pants groups,
 *        one-holed tori and four-holed spheres.
 *
 * Every constructor returns matrices in SL(2,R) whose entries are built from
 * the inputs by field operations and square roots only.
 */

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "teich/error.hpp"
#include "teich/relations.hpp"
#include "teich/rep.hpp"
#include "teich/sl2.hpp"
#include "teich/tolerance.hpp"

namespace teich {

namespace detail {

inline bool is_cusp_trace(double t, double eps) { return std::abs(std::abs(t) - 2.0) <= eps; }

inline void require_at_least_two(double t, double eps, const char* what) {
  if (!std::isfinite(t) || std::abs(t) < 2.0 - eps)
    throw Error(ErrorCode::TraceTooSmall, std::string(what) + " = " + std::to_string(t) + " has |t| < 2");
}

/// Expanding eigenvalue of a trace-t hyperbolic, carrying the sign of t.
inline double expanding_eigenvalue(double t) {
  const double s = std::sqrt(t * t - 4.0);
  return t > 0 ? 0.5 * (t + s) : 0.5 * (t - s);
}

/// A = diag(l, 1/l), B = [[a, ad - 1], [1, d]] with tr A = t1, tr B = t2,
/// tr AB = t3. Needs |t1| > 2.
inline std::pair<Mat, Mat> diagonal_pair(double t1, double t2, double t3) {
  const double l = expanding_eigenvalue(t1);
  const double a = (t3 - t2 / l) / (l - 1.0 / l);
  const double d = t2 - a;
  return {Mat::diagonal(l, 1.0 / l), Mat{a, a * d - 1.0, 1.0, d}};
}

}  // namespace detail

/// Representation of the pants group <g1, g2> with tr g1 = t1, tr g2 = t2,
/// tr g1g2 = t3. When t1 is hyperbolic, g1 is diag(l, 1/l) with |l| > 1 of
/// the sign of t1 and g2 has (2,1)-entry 1. Otherwise the roles are moved
/// to a hyperbolic end; three cusps give the fixed parabolic triple.
inline Rep build_pants(double t1, double t2, double t3, const Tolerances& tol = {}) {
  detail::require_at_least_two(t1, tol.equality, "t1");
  detail::require_at_least_two(t2, tol.equality, "t2");
  detail::require_at_least_two(t3, tol.equality, "t3");
  if (!(t1 * t2 * t3 < 0.0))
    throw Error(ErrorCode::SignCondition, "t1 t2 t3 = " + std::to_string(t1 * t2 * t3) + " is not negative");

  const bool c1 = detail::is_cusp_trace(t1, tol.equality);
  const bool c2 = detail::is_cusp_trace(t2, tol.equality);
  const bool c3 = detail::is_cusp_trace(t3, tol.equality);
  const int cusps = int(c1) + int(c2) + int(c3);
  auto snap = [](double t, bool cusp) { return cusp ? std::copysign(2.0, t) : t; };
  t1 = snap(t1, c1);
  t2 = snap(t2, c2);
  t3 = snap(t3, c3);

  Mat x, y;
  if (cusps == 3) {
    const double s1 = t1 > 0 ? 1.0 : -1.0, s2 = t2 > 0 ? 1.0 : -1.0;
    x = s1 * Mat{1.0, -4.0, 0.0, 1.0};
    y = s2 * Mat{1.0, 0.0, 1.0, 1.0};
  } else if (!c1) {
    std::tie(x, y) = detail::diagonal_pair(t1, t2, t3);
  } else if (!c2) {
    // g2 diagonal; tr g2g1 = tr g1g2.
    std::tie(y, x) = detail::diagonal_pair(t2, t1, t3);
  } else {
    // Only g1g2 hyperbolic: m1 = g1g2, m2 = g2^-1.
    auto [m1, m2] = detail::diagonal_pair(t3, t2, t1);
    x = m1 * m2;
    y = inv(m2);
  }
  return Rep(SurfaceSig{0, 3 - cusps, cusps}, {"A", "B"}, {x, y});
}

/// One-holed or once-punctured torus group <A, B> with tr A = t1,
/// tr B = t2, tr AB = t3. The commutator has trace
/// t1^2 + t2^2 + t3^2 - t1 t2 t3 - 2.
inline Rep build_torus(double t1, double t2, double t3, const Tolerances& tol = {}) {
  for (double t : {t1, t2, t3})
    if (!std::isfinite(t) || !(std::abs(t) > 2.0))
      throw Error(ErrorCode::TraceTooSmall, "torus traces need |t| > 2, got " + std::to_string(t));
  const Residual k = markoff_residual(t1, t2, t3);
  const bool cusp = k.within(tol.equality);
  if (k.raw > 0.0 && !cusp)
    throw Error(ErrorCode::MarkoffInequality, "t1^2 + t2^2 + t3^2 - t1 t2 t3 = " + std::to_string(k.raw) + " > 0");
  auto [a, b] = detail::diagonal_pair(t1, t2, t3);
  return Rep(cusp ? SurfaceSig{1, 0, 1} : SurfaceSig{1, 1, 0}, {"A", "B"}, {a, b});
}

/// Named trace data of a four-holed sphere.
struct FourHoledTraces {
  std::array<double, 4> boundary{};  // t1..t4
  double t12 = 0.0, t23 = 0.0, t31 = 0.0;

  FourHoledData data() const { return {boundary[0], boundary[1], boundary[2], t12, t23, t31}; }
};

struct FourHoledBuild {
  Rep rep;                 // generators A, B, C with tr A_i = -t_i, tr A_iA_j = -t_ij, tr ABC = -t4
  int rotation = 0;        // cyclic index shift applied so that t23 is the largest
  double side_zb = 0.0;    // (2,1)-entry of the first times (1,2)-entry of the second rotated generator
  bool inverted = false;   // inverse triple used to land on the negative root
  double x_closed_form = 0.0;
};

/// Solves for A1, A2, A3 in SL(2,R) with A2A3 = diag(-l, -1/l).
inline FourHoledBuild build_four_holed_detailed(const FourHoledTraces& in, const Tolerances& tol = {}) {
  for (int i = 0; i < 4; ++i) detail::require_at_least_two(in.boundary[i], tol.equality, "boundary trace");
  for (double t : {in.t12, in.t23, in.t31})
    if (!std::isfinite(t) || !(t > 2.0)) throw Error(ErrorCode::TraceTooSmall, "interior trace " + std::to_string(t) + " <= 2");
  const double t4 = in.boundary[3];
  const Residual rel = four_holed_residual(in.data(), t4);
  if (!rel.within(tol.relation))
    throw Error(ErrorCode::QuadraticConstraint, "boundary relation residual " + std::to_string(rel.scaled()));

  // Rotate (1,2,3) -> (1+k, 2+k, 3+k) so that the middle pair carries the maximum.
  const std::array<double, 3> tb{in.boundary[0], in.boundary[1], in.boundary[2]};
  const std::array<double, 3> tp{in.t12, in.t23, in.t31};  // pair (i, i+1) at index i
  int k = 0;
  if (in.t31 >= in.t23 && in.t31 >= in.t12) k = 1;
  if (in.t12 > in.t23 && in.t12 > in.t31) k = 2;
  const double t1 = tb[(0 + k) % 3], t2 = tb[(1 + k) % 3], t3 = tb[(2 + k) % 3];
  const double t12 = tp[(0 + k) % 3], t23 = tp[(1 + k) % 3], t31 = tp[(2 + k) % 3];

  const double l = 0.5 * (t23 + std::sqrt(t23 * t23 - 4.0));
  const double delta = l - 1.0 / l;
  const double a = -(l * t2 + t3) / delta;
  const double d = (t2 / l + t3) / delta;
  const double b = a * d - 1.0;  // c = 1
  const Mat m2{a, b, 1.0, d};
  const Mat m3{-l * d, b / l, l, -a / l};

  // tr A1A2 = -t12 and tr A3A1 = -t31 are linear in (y, z) given x.
  const double r1_0 = -t12 + t1 * d, r1_1 = -(a - d);
  const double r2_0 = -t31 - t1 * a / l, r2_1 = l * d - a / l;
  const double y0 = (r2_0 - r1_0 / l) / delta, y1 = (r2_1 - r1_1 / l) / delta;
  const double z0 = (l * r1_0 - r2_0) / (b * delta), z1 = (l * r1_1 - r2_1) / (b * delta);
  // det A1 = 1 with w = -x - t1.
  const double qa = -1.0 - y1 * z1;
  const double qb = -t1 - y1 * z0 - y0 * z1;
  const double qc = -1.0 - y0 * z0;

  std::array<double, 2> roots{};
  int nroots = 0;
  if (std::abs(qa) <= 1e-10 * std::max({1.0, std::abs(qb), std::abs(qc)})) {
    if (qb == 0.0) throw Error(ErrorCode::NoRealRoot, "degenerate equation for the first generator");
    roots[0] = -qc / qb;
    nroots = 1;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * std::max(1.0, qb * qb)) throw Error(ErrorCode::NoRealRoot, "first generator has no real solution");
    const double sq = std::sqrt(std::max(0.0, disc));
    const double qq = -0.5 * (qb + std::copysign(sq, qb));
    roots = {qq / qa, qq != 0.0 ? qc / qq : qq / qa};
    nroots = 2;
  }

  auto product_trace = [&](double x) { return -delta * x + t1 / l; };
  int best = -1;
  for (int i = 0; i < nroots; ++i) {
    const double u = product_trace(roots[i]);
    if (u < 0.0 && (best < 0 || std::abs(u + t4) < std::abs(product_trace(roots[best]) + t4))) best = i;
  }
  bool inverted = false;
  if (best < 0) {
    best = 0;
    inverted = true;
  }
  const double x = roots[best];
  const Mat m1{x, y1 * x + y0, z1 * x + z0, -x - t1};

  std::array<Mat, 3> rotated{m1, m2, m3};
  if (inverted)
    for (auto& m : rotated) m = inv(m);

  FourHoledBuild out;
  out.rotation = k;
  out.inverted = inverted;
  out.side_zb = rotated[0].a21 * rotated[1].a12;
  out.x_closed_form = (t1 / l + t4) / delta;

  std::vector<Mat> gens(3);
  for (int i = 0; i < 3; ++i) gens[(i + k) % 3] = rotated[i];

  const double u = (gens[0] * gens[1] * gens[2]).trace();
  if (!within(u + t4, std::abs(t4) + std::abs(u), tol.relation))
    throw Error(ErrorCode::QuadraticConstraint, "product trace " + std::to_string(u) + " does not match -t4");
  if (!(out.side_zb < 0.0)) throw Error(ErrorCode::SideCondition, "zb = " + std::to_string(out.side_zb) + " is not negative");

  int cusps = 0;
  for (double t : in.boundary) cusps += detail::is_cusp_trace(t, tol.equality) ? 1 : 0;
  out.rep = Rep(SurfaceSig{0, 4 - cusps, cusps}, {"A", "B", "C"}, std::move(gens));
  return out;
}

inline Rep build_four_holed(const FourHoledTraces& in, const Tolerances& tol = {}) {
  return build_four_holed_detailed(in, tol).rep;
}

inline Rep build_four_holed(double t1, double t2, double t3, double t4, double t12, double t23, double t31,
                            const Tolerances& tol = {}) {
  return build_four_holed(FourHoledTraces{{t1, t2, t3, t4}, t12, t23, t31}, tol);
}

/// Sign of c (l - 1/l) for X = diag(-l, -1/l) and Y = [[a, b], [c, d]];
/// +1 places the Nielsen core of <X, Y> on the side {x > 0, y > 0} of the
/// axis of X.
inline int nielsen_side(const Mat& x, const Mat& y, double eps = 1e-9) {
  const double scale = std::max(1.0, max_abs_entry(x));
  if (std::abs(x.a12) > eps * scale || std::abs(x.a21) > eps * scale)
    throw Error(ErrorCode::PreconditionViolation, "X is not diagonal");
  if (!(x.trace() < -2.0)) throw Error(ErrorCode::PreconditionViolation, "tr X must be < -2");
  if (!(y.trace() <= -2.0 + eps)) throw Error(ErrorCode::PreconditionViolation, "tr Y must be <= -2");
  if (!((x * y).trace() <= -2.0 + eps)) throw Error(ErrorCode::PreconditionViolation, "tr XY must be <= -2");
  const double l = -x.a11;
  const double v = y.a21 * (l - 1.0 / l);
  if (v == 0.0) throw Error(ErrorCode::PreconditionViolation, "c (l - 1/l) vanishes");
  return v > 0.0 ? 1 : -1;
}

/// Sum r1 + r2 = -(d - a)/c of the fixed points of z -> (az + b)/(cz + d).
inline double fixed_point_sum(const Mat& y) {
  if (y.a21 == 0.0) throw Error(ErrorCode::PreconditionViolation, "c = 0");
  return -(y.a22 - y.a11) / y.a21;
}

}  // namespace teich
