#pragma once

/**
 * @file tracefn.hpp
 * @brief Candidate trace functions on the curves of a one-holed torus or a
 *        four-holed sphere: seed validation, Farey recursion, membership in
 *        the Teichmueller image, length spectra and matrix cross-checks.
 *
 * Across a flip of the edge {a, b} the new value is
 *   t(new) = t(a) t(b) - t(old)                       (torus)
 *   t(new) = t(a) t(b) - t(old) - pairing(old)        (four-holed sphere)
 * where pairing(old) is t_i t_j + t_k t_l for the boundary split {ij|kl}
 * cut out by the replaced curve. The split is read from the slope mod 2:
 * 0/1 -> {12|34}, 1/0 -> {13|24}, 1/1 -> {14|23}. The new curve lies in the
 * same class as the one it replaces.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "teich/curves.hpp"
#include "teich/error.hpp"
#include "teich/farey.hpp"
#include "teich/fricke.hpp"
#include "teich/relations.hpp"
#include "teich/rep.hpp"
#include "teich/tolerance.hpp"

namespace teich {

/// Values on one ideal triangle plus boundary traces.
struct TraceSeed {
  SurfaceSig surface{1, 1, 0};
  IdealTriangle triangle = IdealTriangle::base();
  std::array<double, 3> values{};  // aligned with triangle.vertices() (ascending)
  std::vector<double> boundary;    // torus: [] or [t(b)]; four-holed: [t1, t2, t3] or [t1, t2, t3, t4]

  /// Values given in the caller's slope order.
  static TraceSeed make(SurfaceSig sig, const std::array<Slope, 3>& slopes, const std::array<double, 3>& vals,
                        std::vector<double> boundary = {}) {
    TraceSeed s;
    s.surface = sig;
    s.triangle = IdealTriangle(slopes[0], slopes[1], slopes[2]);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (s.triangle[i] == slopes[j]) s.values[i] = vals[j];
    s.boundary = std::move(boundary);
    return s;
  }

  /// Values on the base triangle, listed as t(0/1), t(1/1), t(1/0).
  static TraceSeed base(SurfaceSig sig, double t01, double t11, double t10, std::vector<double> boundary = {}) {
    return make(sig, {Slope(0, 1), Slope(1, 1), Slope(1, 0)}, {t01, t11, t10}, std::move(boundary));
  }

  double value(const Slope& s) const {
    for (std::size_t i = 0; i < 3; ++i)
      if (triangle[i] == s) return values[i];
    throw Error(ErrorCode::PreconditionViolation, s.str() + " is not in the seed triangle");
  }

  double value(Parity p) const {
    for (std::size_t i = 0; i < 3; ++i)
      if (parity(triangle[i]) == p) return values[i];
    throw Error(ErrorCode::PreconditionViolation, "triangle misses a parity class");
  }

  /// Four-holed sphere data (t12, t23, t31 read by parity class).
  FourHoledData four_holed_data() const {
    if (boundary.size() < 3) throw Error(ErrorCode::PreconditionViolation, "four-holed seeds need three or four boundary traces");
    return {boundary[0], boundary[1], boundary[2], value(Parity::Zero), value(Parity::One), value(Parity::Infinity)};
  }
};

/// t_i t_j + t_k t_l for the split cut out by curves of parity `p`.
template <typename T>
T pairing_product(Parity p, const std::array<T, 4>& b) {
  switch (p) {
    case Parity::Zero: return b[0] * b[1] + b[2] * b[3];
    case Parity::Infinity: return b[0] * b[2] + b[1] * b[3];
    case Parity::One: return b[0] * b[3] + b[1] * b[2];
  }
  return T(0);
}

struct SeedDiagnostic {
  double residual = 0.0;  // scaled residual of the triangle relation
  double derived = 0.0;   // torus: implied t(b); four-holed: implied t4
  std::array<double, 4> boundary{};  // completed boundary traces (four-holed)
  std::string detail;
};

namespace detail {
inline void check_seed_structure(const TraceSeed& seed, double eps) {
  seed.surface.validate();
  if (!seed.surface.is_farey())
    throw Error(ErrorCode::PreconditionViolation, "seeds are defined for 1,r,s with r+s=1 and 0,r,s with r+s=4");
  for (double v : seed.values)
    if (!std::isfinite(v) || !(v > 2.0)) throw Error(ErrorCode::TraceTooSmall, "seed value " + std::to_string(v) + " is not > 2");
  for (double v : seed.boundary)
    if (!std::isfinite(v) || v < 2.0 - eps) throw Error(ErrorCode::TraceTooSmall, "boundary trace " + std::to_string(v) + " < 2");
  if (seed.surface.is_one_holed_torus() && seed.boundary.size() > 1)
    throw Error(ErrorCode::PreconditionViolation, "torus seeds take at most one boundary trace");
  if (seed.surface.is_four_holed_sphere() && seed.boundary.size() != 3 && seed.boundary.size() != 4)
    throw Error(ErrorCode::PreconditionViolation, "four-holed seeds take three or four boundary traces");
}
}  // namespace detail

/// Checks the triangle relation of the seed. Throws RelationViolated.
inline SeedDiagnostic validate_seed(const TraceSeed& seed, const Tolerances& tol = {}) {
  detail::check_seed_structure(seed, tol.equality);
  SeedDiagnostic out;
  if (seed.surface.is_one_holed_torus()) {
    const auto [x, y, z] = seed.values;
    out.derived = torus_boundary_trace(x, y, z);
    const double scale = std::abs(x * y * z) + x * x + y * y + z * z + 2.0;
    if (out.derived < 2.0 && !within(out.derived - 2.0, scale, tol.equality))
      throw Error(ErrorCode::RelationViolated, "implied boundary trace " + std::to_string(out.derived) + " < 2");
    if (!seed.boundary.empty()) {
      out.residual = scaled_residual(seed.boundary[0] - out.derived, scale);
      if (out.residual > tol.relation)
        throw Error(ErrorCode::RelationViolated, "boundary trace " + std::to_string(seed.boundary[0]) +
                                                     " differs from implied " + std::to_string(out.derived) +
                                                     " (scaled residual " + std::to_string(out.residual) + ")");
    }
    out.detail = "implied boundary trace " + std::to_string(out.derived);
    return out;
  }
  const FourHoledData d = seed.four_holed_data();
  out.derived = four_holed_t4(d);
  const double t4 = seed.boundary.size() == 4 ? seed.boundary[3] : out.derived;
  const Residual r = four_holed_residual(d, t4);
  out.residual = r.scaled();
  if (out.residual > tol.relation)
    throw Error(ErrorCode::RelationViolated, "boundary relation residual " + std::to_string(out.residual));
  out.boundary = {d.t1, d.t2, d.t3, t4};
  out.detail = "implied fourth boundary trace " + std::to_string(out.derived);
  return out;
}

struct MembershipReport {
  bool member = false;
  std::string locus;   // "strict inequality", "equality locus (cusp)", ...
  std::string reason;  // why not, when member is false
  double residual = 0.0;
  double margin = 0.0;  // signed slack of the defining inequality
  SeedDiagnostic diagnostic;
};

/// Membership in the image of Teichmueller space. Never throws.
inline MembershipReport is_member(const TraceSeed& seed, const Tolerances& tol = {}) {
  MembershipReport rep;
  try {
    rep.diagnostic = validate_seed(seed, tol);
  } catch (const Error& e) {
    rep.reason = e.what();
    return rep;
  }
  const auto& sig = seed.surface;
  if (sig.is_one_holed_torus()) {
    const auto [x, y, z] = seed.values;
    const Residual m = markoff_residual(x, y, z);
    rep.margin = -m.raw;
    rep.residual = m.scaled();
    const bool cusp = m.within(tol.equality);
    if (sig.s == 1) {
      rep.locus = "equality locus (cusp)";
      rep.member = cusp;
      if (!cusp) rep.reason = "punctured torus requires t1 t2 t3 = t1^2 + t2^2 + t3^2";
    } else {
      rep.locus = "strict inequality";
      rep.member = !cusp && rep.margin > 0.0;
      if (!rep.member) rep.reason = cusp ? "equality locus belongs to the punctured torus" : "t1 t2 t3 <= t1^2 + t2^2 + t3^2";
    }
    return rep;
  }

  const auto& b = rep.diagnostic.boundary;
  const FourHoledData d = seed.four_holed_data();
  int cusps = 0;
  for (double t : b) cusps += detail::is_cusp_trace(t, tol.equality) ? 1 : 0;
  rep.margin = four_holed_margin(d);
  if (b[3] < 2.0 - tol.equality) {
    rep.reason = "fourth boundary trace " + std::to_string(b[3]) + " < 2";
    return rep;
  }
  if (cusps != sig.s) {
    rep.reason = std::to_string(cusps) + " boundary traces equal 2 but the signature has " + std::to_string(sig.s) + " cusps";
    return rep;
  }
  if (cusps == 4) {
    const Residual r = four_cusped_residual(d.t12, d.t23, d.t31);
    rep.residual = r.scaled();
    rep.locus = "equality locus (four cusps)";
    rep.member = r.within(tol.equality);
    if (!rep.member) rep.reason = "t12 t23 t31 != t12^2 + t23^2 + t31^2 + 8(t12 + t23 + t31) + 28";
    return rep;
  }
  rep.residual = rep.diagnostic.residual;
  if (detail::is_cusp_trace(b[3], tol.equality)) {
    rep.locus = "equality locus (cusp)";
    rep.member = true;
  } else {
    rep.locus = "strict inequality";
    rep.member = rep.margin > 0.0;
    if (!rep.member) rep.reason = "t12 t23 t31 does not exceed the boundary terms";
  }
  return rep;
}

/// Memoized trace function grown from a seed triangle across flips.
/// Lookups take a shared lock; inserts are insert-if-absent, and a slope
/// always receives the same value, so racing writers agree.
template <typename T = double>
class TraceTable {
 public:
  TraceTable(SurfaceSig sig, const IdealTriangle& triangle, const std::array<T, 3>& values,
             const std::array<T, 4>& boundary = {})
      : sig_(sig), triangle_(triangle), boundary_(boundary), mutex_(std::make_unique<std::shared_mutex>()) {
    if (!sig.is_farey()) throw Error(ErrorCode::PreconditionViolation, "trace tables need a Farey surface");
    for (std::size_t i = 0; i < 3; ++i) memo_.emplace(triangle[i], values[i]);
  }

  const SurfaceSig& surface() const { return sig_; }
  const IdealTriangle& triangle() const { return triangle_; }
  const std::array<T, 4>& boundary() const { return boundary_; }

  std::optional<T> find(const Slope& s) const {
    std::shared_lock lock(*mutex_);
    auto it = memo_.find(s);
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(*mutex_);
    return memo_.size();
  }

  /// Value of the triangle relation's correction term for a replaced curve.
  T correction(const Slope& replaced) const {
    return sig_.is_four_holed_sphere() ? pairing_product(parity(replaced), boundary_) : T(0);
  }

  T extend(const Slope& s) {
    if (auto v = find(s)) return *v;
    T last{};
    for (const auto& step : path_between(triangle_, s)) {
      if (auto v = find(step.to)) {
        last = *v;
        continue;
      }
      const T a = *find(step.a), b = *find(step.b), old = *find(step.from);
      T next = a * b - old - correction(step.from);
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(next))
          throw Error(ErrorCode::RecursionBreakdown, "value at " + step.to.str() + " overflows");
      }
      if (!(next > T(2)))
        throw Error(ErrorCode::RecursionBreakdown, "value at " + step.to.str() + " is not > 2");
      std::unique_lock lock(*mutex_);
      last = memo_.try_emplace(step.to, std::move(next)).first->second;
    }
    return last;
  }

  T operator()(const Slope& s) { return extend(s); }

 private:
  SurfaceSig sig_;
  IdealTriangle triangle_;
  std::array<T, 4> boundary_;
  std::unordered_map<Slope, T, SlopeHash> memo_;
  std::unique_ptr<std::shared_mutex> mutex_;
};

/// Table seeded from a validated seed.
inline TraceTable<double> make_table(const TraceSeed& seed, const Tolerances& tol = {}) {
  const SeedDiagnostic d = validate_seed(seed, tol);
  return TraceTable<double>(seed.surface, seed.triangle, seed.values, d.boundary);
}

struct SpectrumRow {
  Slope slope;
  double trace = 0.0;
  double length = 0.0;
};

/// Geodesic length 2 arccosh(t/2).
inline double trace_to_length(double t) { return 2.0 * std::acosh(t / 2.0); }

/// Slopes within `depth` flips of the seed triangle, by trace ascending.
inline std::vector<SpectrumRow> spectrum(const TraceSeed& seed, int depth, const Tolerances& tol = {}) {
  const MembershipReport m = is_member(seed, tol);
  if (!m.member) throw Error(ErrorCode::PreconditionViolation, "seed is not in the image: " + m.reason);
  TraceTable<double> table = make_table(seed, tol);
  std::vector<SpectrumRow> rows;
  for (const auto& s : enumerate_farey(depth, seed.triangle).slopes()) {
    const double t = table.extend(s);
    rows.push_back({s, t, trace_to_length(t)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
    if (a.trace != b.trace) return a.trace < b.trace;
    return compare(a.slope, b.slope) < 0;
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Closed genus two

struct Sigma2Report {
  bool member = false;
  double t8 = 0.0;
  double t9 = 0.0;
  double residual = 0.0;
  std::string reason;
};

/// Image test for the seven coordinates of a closed genus-two surface.
/// t8 is the trace implied on the first one-holed torus, t9 the positive
/// root of the equal-boundary quadratic, and the second torus must be
/// consistent with both.
inline Sigma2Report sigma2_member(const std::array<double, 7>& t, const Tolerances& tol = {}) {
  Sigma2Report rep;
  for (double v : t)
    if (!std::isfinite(v) || !(v > 2.0)) {
      rep.reason = "coordinate " + std::to_string(v) + " is not > 2";
      return rep;
    }
  const auto [t1, t2, t3, t4, t5, t6, t7] = t;
  rep.t8 = torus_boundary_trace(t1, t2, t3);
  if (!(rep.t8 > 2.0)) {
    rep.reason = "t8 = " + std::to_string(rep.t8) + " is not > 2";
    return rep;
  }
  const double a = 2.0 + t2 * t2 + rep.t8;
  const double b = 2.0 * t2 * (t4 + t5);
  const double c = 2.0 * t2 * t2 + t4 * t4 + t5 * t5 + rep.t8 * rep.t8 + t2 * t2 * rep.t8 - t4 * t5 * rep.t8 - 4.0;
  if (b * b - 4.0 * a * c < 0.0) throw Error(ErrorCode::NoRealRoot, "t9 quadratic has negative discriminant");
  try {
    rep.t9 = equal_boundary_slice(t2, t2, rep.t8, t4, t5);
  } catch (const Error& e) {
    rep.reason = e.what();
    return rep;
  }
  if (!(rep.t9 > 2.0)) {
    rep.reason = "t9 = " + std::to_string(rep.t9) + " is not > 2";
    return rep;
  }
  const double rhs = t6 * t7 * rep.t9 - t6 * t6 - t7 * t7 - rep.t9 * rep.t9 + 2.0;
  rep.residual = scaled_residual(rep.t8 - rhs, std::abs(t6 * t7 * rep.t9) + t6 * t6 + t7 * t7 + rep.t9 * rep.t9 + rep.t8);
  rep.member = rep.residual <= tol.relation;
  if (!rep.member) rep.reason = "t8 != t6 t7 t9 - t6^2 - t7^2 - t9^2 + 2";
  return rep;
}

/// Completes six coordinates to a point of the genus-two image by solving
/// for t7 (the larger root). Throws NoRealRoot when no completion exists.
inline double sigma2_complete(const std::array<double, 6>& t) {
  const auto [t1, t2, t3, t4, t5, t6] = t;
  const double t8 = torus_boundary_trace(t1, t2, t3);
  const double t9 = equal_boundary_slice(t2, t2, t8, t4, t5);
  // t7^2 - t6 t9 t7 + (t6^2 + t9^2 + t8 - 2) = 0
  const double b = -t6 * t9, c = t6 * t6 + t9 * t9 + t8 - 2.0;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) throw Error(ErrorCode::NoRealRoot, "no t7 completes the point");
  return 0.5 * (-b + std::sqrt(disc));
}

// ---------------------------------------------------------------------------
// Matrix cross-check

/// Frames deeper than this are not checked against the identities.
inline constexpr int kFrameIdentityDepth = 3;

struct CrossValidation {
  double max_residual = 0.0;  // max |t - |tr w|| / max(1, |tr w|)
  Slope worst;
  std::size_t compared = 0;
  double max_identity_residual = 0.0;  // four-holed: three-generator identities on every frame
  Rep rep;
};

/// Seed read off a torus rep <A, B> or a four-holed rep <A, B, C>: trace
/// magnitudes of the base-triangle curves and the boundary.
inline TraceSeed seed_from_rep(const Rep& rep) {
  auto t = [&](std::string_view w) { return std::abs(rep.trace(w)); };
  if (rep.sig.is_one_holed_torus() && rep.arity() == 2)
    return TraceSeed::base(rep.sig, t("B"), t("AB"), t("A"), {t("ABA'B'")});
  if (rep.sig.is_four_holed_sphere() && rep.arity() == 3)
    return TraceSeed::base(rep.sig, t("AB"), t("BC"), t("CA"), {t("A"), t("B"), t("C"), t("ABC")});
  throw Error(ErrorCode::PreconditionViolation, "no base triangle for signature " + rep.sig.str());
}

namespace detail {

inline void compare_with_words(TraceTable<double>& table, const Rep& rep, int depth, CrossValidation& out) {
  for (const auto& s : enumerate_farey(depth).slopes()) {
    const double t = table.extend(s);
    const double matrix = std::abs(rep.trace(curve_word(rep.sig, s)));
    const double r = scaled_residual(t - matrix, matrix);
    if (out.compared == 0 || r > out.max_residual) {
      out.max_residual = r;
      out.worst = s;
    }
    ++out.compared;
  }
  if (!rep.sig.is_four_holed_sphere()) return;
  // Three-generator identities on the generator triple of every triangle,
  // walked in the same breadth-first order as the enumeration. Curve traces
  // grow doubly exponentially with depth while the boundary traces stay
  // fixed, so only the first few levels are resolvable in double precision.
  struct Node {
    IdealTriangle t;
    FourHoledMatrixFrame f;
    std::pair<Slope, Slope> entry;
    bool root;
  };
  auto check = [&](const FourHoledMatrixFrame& f) {
    const auto& g = f.generators();
    out.max_identity_residual = std::max(out.max_identity_residual, identity_residuals(g[0], g[1], g[2]).max_scaled());
  };
  std::vector<Node> level{{IdealTriangle::base(), FourHoledMatrixFrame({rep.gens[0], rep.gens[1], rep.gens[2]}), {}, true}};
  check(level[0].f);
  for (int d = 0; d < std::min(depth, kFrameIdentityDepth); ++d) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (const auto& e : node.t.edges()) {
        if (!node.root && ((e == node.entry) || (e.first == node.entry.second && e.second == node.entry.first))) continue;
        const IdealTriangle child = flip(node.t, e);
        next.push_back({child, node.f.flip(node.t.opposite(e.first, e.second), child.opposite(e.first, e.second)), e, false});
        check(next.back().f);
      }
    }
    level = std::move(next);
  }
}

}  // namespace detail

/// Builds the representation from the seed's base-triangle values and
/// compares the recursion with matrix traces on every slope within `depth`
/// flips of the base triangle.
inline CrossValidation cross_validate(const TraceSeed& seed, int depth, const Tolerances& tol = {}) {
  const MembershipReport m = is_member(seed, tol);
  if (!m.member) throw Error(ErrorCode::PreconditionViolation, "seed is not in the image: " + m.reason);
  TraceTable<double> table = make_table(seed, tol);
  const Slope s01(0, 1), s11(1, 1), s10(1, 0);
  CrossValidation out;
  if (seed.surface.is_one_holed_torus()) {
    out.rep = build_torus(table.extend(s10), table.extend(s01), table.extend(s11), tol);
  } else {
    const auto& b = table.boundary();
    out.rep = build_four_holed(b[0], b[1], b[2], b[3], table.extend(s01), table.extend(s11), table.extend(s10), tol);
  }
  detail::compare_with_words(table, out.rep, depth, out);
  return out;
}

/// Same comparison against a given representation, seeded from its own
/// base-triangle traces.
inline CrossValidation cross_validate(const Rep& rep, int depth, const Tolerances& tol = {}) {
  const TraceSeed seed = seed_from_rep(rep);
  const MembershipReport m = is_member(seed, tol);
  if (!m.member) throw Error(ErrorCode::PreconditionViolation, "rep traces are not in the image: " + m.reason);
  TraceTable<double> table = make_table(seed, tol);
  CrossValidation out;
  out.rep = rep;
  detail::compare_with_words(table, rep, depth, out);
  return out;
}

}  // namespace teich
