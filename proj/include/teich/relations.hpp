#pragma once

/**
 * @file relations.hpp
 * @brief Trace polynomials shared by the constructors, the recursion engine
 *        and the gluing code.
 *
 * Four-holed sphere notation: t1..t4 are boundary traces, t12, t23, t31 the
 * traces of the three curves of an ideal triangle, where the curve of tij
 * cuts off the boundary pair (bi, bj).
 */

#include <cmath>

#include "teich/error.hpp"
#include "teich/tolerance.hpp"

namespace teich {

struct Residual {
  double raw = 0.0;
  double scale = 0.0;
  double scaled() const { return scaled_residual(raw, scale); }
  bool within(double eps) const { return scaled() <= eps; }
};

// ---------------------------------------------------------------------------
// One-holed torus

/// t(b) implied by a triangle: xyz - x^2 - y^2 - z^2 + 2.
inline double torus_boundary_trace(double x, double y, double z) { return x * y * z - x * x - y * y - z * z + 2.0; }

/// x^2 + y^2 + z^2 - xyz; nonpositive on torus seeds, zero on the cusp locus.
inline double markoff_excess(double x, double y, double z) { return x * x + y * y + z * z - x * y * z; }

inline Residual markoff_residual(double x, double y, double z) {
  return {markoff_excess(x, y, z), x * x + y * y + z * z + std::abs(x * y * z)};
}

// ---------------------------------------------------------------------------
// Four-holed sphere

struct FourHoledData {
  double t1, t2, t3;
  double t12, t23, t31;
};

/// Coefficients of t4^2 + P t4 + Q = 0 and the magnitude of their terms.
struct FourHoledQuadratic {
  double p = 0.0, q = 0.0;
  double p_scale = 0.0, q_scale = 0.0;
};

inline FourHoledQuadratic four_holed_quadratic(const FourHoledData& d) {
  const auto& [t1, t2, t3, t12, t23, t31] = d;
  FourHoledQuadratic c;
  c.p = t1 * t23 + t2 * t31 + t3 * t12 + t1 * t2 * t3;
  c.p_scale = std::abs(t1 * t23) + std::abs(t2 * t31) + std::abs(t3 * t12) + std::abs(t1 * t2 * t3);
  const double squares = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t31 * t31;
  const double mixed = t1 * t2 * t12 + t2 * t3 * t23 + t3 * t1 * t31;
  const double triple = t12 * t23 * t31;
  c.q = squares + mixed - 4.0 - triple;
  c.q_scale = squares + std::abs(t1 * t2 * t12) + std::abs(t2 * t3 * t23) + std::abs(t3 * t1 * t31) + 4.0 +
              std::abs(triple);
  return c;
}

/// Residual of the boundary relation t4^2 + P t4 + Q.
inline Residual four_holed_residual(const FourHoledData& d, double t4) {
  const auto c = four_holed_quadratic(d);
  return {t4 * t4 + c.p * t4 + c.q, t4 * t4 + std::abs(t4) * c.p_scale + c.q_scale};
}

/// The larger root (-P + sqrt(P^2 - 4Q)) / 2.
inline double four_holed_t4(const FourHoledData& d) {
  const auto c = four_holed_quadratic(d);
  const double disc = c.p * c.p - 4.0 * c.q;
  if (disc < 0.0) throw Error(ErrorCode::NoRealRoot, "boundary quadratic has discriminant " + std::to_string(disc));
  const double sq = std::sqrt(disc);
  return c.p > 0.0 ? (-2.0 * c.q) / (c.p + sq) : 0.5 * (-c.p + sq);
}

/// Strict inequality t12 t23 t31 > (sum of the twelve printed terms); the
/// difference is -Q - 2P - 4, positive exactly when the fourth boundary
/// trace exceeds 2.
inline double four_holed_margin(const FourHoledData& d) {
  const auto& [t1, t2, t3, t12, t23, t31] = d;
  const double rhs = t12 * t12 + t23 * t23 + t31 * t31 + t1 * t1 + t2 * t2 + t3 * t3 + t12 * t1 * t2 +
                     t23 * t2 * t3 + t31 * t3 * t1 + 2.0 * t1 * t23 + 2.0 * t2 * t31 + 2.0 * t3 * t12 +
                     2.0 * t1 * t2 * t3;
  return t12 * t23 * t31 - rhs;
}

/// All four ends cusped: xyz = x^2 + y^2 + z^2 + 8(x + y + z) + 28.
inline Residual four_cusped_residual(double x, double y, double z) {
  const double rhs = x * x + y * y + z * z + 8.0 * (x + y + z) + 28.0;
  return {x * y * z - rhs, std::abs(x * y * z) + std::abs(rhs)};
}

/// Positive root t of the relation specialised to t3 = t4 = t:
/// (2 + t1 t2 + t12) t^2 + (t1 + t2)(t31 + t23) t + c0 = 0.
inline double equal_boundary_slice(double t1, double t2, double t12, double t23, double t31) {
  const double a = 2.0 + t1 * t2 + t12;
  const double b = t1 * t31 + t1 * t23 + t2 * t31 + t2 * t23;
  const double c = t1 * t1 + t2 * t2 + t1 * t2 * t12 + t12 * t12 + t23 * t23 + t31 * t31 - t12 * t23 * t31 - 4.0;
  if (!(a > 0.0)) throw Error(ErrorCode::NoPositiveRoot, "leading coefficient is not positive");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw Error(ErrorCode::NoPositiveRoot, "negative discriminant " + std::to_string(disc));
  const double sq = std::sqrt(disc);
  // Larger root, written to avoid cancellation when b > 0.
  const double root = b > 0.0 ? (-2.0 * c) / (b + sq) : (-b + sq) / (2.0 * a);
  if (!(root > 0.0)) throw Error(ErrorCode::NoPositiveRoot, "both roots are nonpositive");
  return root;
}

}  // namespace teich
