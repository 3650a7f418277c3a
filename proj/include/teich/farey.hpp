#pragma once

/**
 * @file farey.hpp
 * @brief Slopes in QP^1 and the Farey tessellation.
 *
 * For the one-holed torus and the four-holed sphere the essential,
 * non-peripheral simple closed curves are in bijection with reduced
 * fractions p/q (including 1/0). Two curves meet minimally (once on the
 * torus, twice on the sphere) exactly when their slopes are Farey
 * neighbors, and the two ways of resolving the intersections give the two
 * completions of the edge to an ideal triangle.
 *
 * Everything here is exact integer arithmetic on normalized slopes.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "teich/error.hpp"

namespace teich {

/// Reduced fraction p/q with q >= 0; infinity is 1/0.
class Slope {
 public:
  constexpr Slope() : p_(0), q_(1) {}

  Slope(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
    if (p_ == 0 && q_ == 0) throw Error(ErrorCode::ParseError, "0/0 is not a slope");
    const std::int64_t g = std::gcd(p_ < 0 ? -p_ : p_, q_ < 0 ? -q_ : q_);
    p_ /= g;
    q_ /= g;
    if (q_ < 0 || (q_ == 0 && p_ < 0)) {
      p_ = -p_;
      q_ = -q_;
    }
  }

  static Slope infinity() { return Slope(1, 0); }

  /// Parses "p/q" or a bare integer "n" (meaning n/1).
  static Slope parse(std::string_view text) {
    auto to_int = [&](std::string_view s) -> std::int64_t {
      if (s.empty()) throw Error(ErrorCode::ParseError, "empty slope component in '" + std::string(text) + "'");
      std::string buf(s);
      char* end = nullptr;
      const long long v = std::strtoll(buf.c_str(), &end, 10);
      if (end != buf.c_str() + buf.size())
        throw Error(ErrorCode::ParseError, "bad slope '" + std::string(text) + "'");
      return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Slope(to_int(text), 1);
    return Slope(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  constexpr std::int64_t p() const { return p_; }
  constexpr std::int64_t q() const { return q_; }
  constexpr bool is_infinity() const { return q_ == 0; }

  std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

  friend constexpr bool operator==(const Slope&, const Slope&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

 private:
  std::int64_t p_;
  std::int64_t q_;
};

namespace detail {
__extension__ using wide = __int128;
inline wide cross(const Slope& a, const Slope& b) {
  return static_cast<wide>(a.p()) * b.q() - static_cast<wide>(b.p()) * a.q();
}
}  // namespace detail

/// Total order on QP^1 viewed as R with infinity placed last.
inline int compare(const Slope& a, const Slope& b) {
  if (a == b) return 0;
  if (a.is_infinity()) return 1;
  if (b.is_infinity()) return -1;
  const detail::wide c = detail::cross(a, b);  // sign of a - b since q > 0
  return c < 0 ? -1 : 1;
}

struct SlopeLess {
  bool operator()(const Slope& a, const Slope& b) const { return compare(a, b) < 0; }
};

struct SlopeHash {
  std::size_t operator()(const Slope& s) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(s.p());
    const auto h2 = std::hash<std::int64_t>{}(s.q());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

inline bool is_neighbor(const Slope& a, const Slope& b) {
  const detail::wide c = detail::cross(a, b);
  return c == 1 || c == -1;
}

/// Mod-2 reduction of |p_a q_b - p_b q_a|.
inline int z2_intersection(const Slope& a, const Slope& b) {
  detail::wide c = detail::cross(a, b);
  if (c < 0) c = -c;
  return static_cast<int>(c % 2);
}

/// The three nonzero classes of (p, q) mod 2, named by their smallest representative.
enum class Parity { Zero, Infinity, One };  // 0/1, 1/0, 1/1

inline Parity parity(const Slope& s) {
  const bool p_odd = (s.p() % 2) != 0;
  const bool q_odd = (s.q() % 2) != 0;
  if (!p_odd) return Parity::Zero;
  if (!q_odd) return Parity::Infinity;
  return Parity::One;
}

/// The two slopes completing a Farey edge: mediant first, difference second.
inline std::pair<Slope, Slope> triangle_completions(const Slope& a, const Slope& b) {
  if (!is_neighbor(a, b))
    throw Error(ErrorCode::NotNeighbors, a.str() + " and " + b.str() + " are not Farey neighbors");
  return {Slope(a.p() + b.p(), a.q() + b.q()), Slope(a.p() - b.p(), a.q() - b.q())};
}

/// Unordered triple of pairwise neighbors, stored in ascending slope order.
class IdealTriangle {
 public:
  IdealTriangle(const Slope& a, const Slope& b, const Slope& c) : v_{a, b, c} {
    sort();
    if (!is_neighbor(v_[0], v_[1]) || !is_neighbor(v_[1], v_[2]) || !is_neighbor(v_[2], v_[0]))
      throw Error(ErrorCode::NotNeighbors, "not an ideal triangle: " + str());
  }

  static IdealTriangle base() { return {Slope(0, 1), Slope(1, 0), Slope(1, 1)}; }

  const std::array<Slope, 3>& vertices() const { return v_; }
  const Slope& operator[](std::size_t i) const { return v_[i]; }

  bool contains(const Slope& s) const { return v_[0] == s || v_[1] == s || v_[2] == s; }

  /// Edges in the fixed order (a,b), (b,c), (c,a).
  std::array<std::pair<Slope, Slope>, 3> edges() const {
    return {{{v_[0], v_[1]}, {v_[1], v_[2]}, {v_[2], v_[0]}}};
  }

  /// Vertex opposite to the edge {a, b}.
  Slope opposite(const Slope& a, const Slope& b) const {
    if (a == b || !contains(a) || !contains(b))
      throw Error(ErrorCode::EdgeNotInTriangle, "{" + a.str() + ", " + b.str() + "} not an edge of " + str());
    for (const auto& v : v_)
      if (v != a && v != b) return v;
    throw Error(ErrorCode::EdgeNotInTriangle, "degenerate triangle");
  }

  std::string str() const { return "{" + v_[0].str() + ", " + v_[1].str() + ", " + v_[2].str() + "}"; }

  friend bool operator==(const IdealTriangle&, const IdealTriangle&) = default;

 private:
  void sort() {
    SlopeLess less;
    if (less(v_[1], v_[0])) std::swap(v_[0], v_[1]);
    if (less(v_[2], v_[1])) std::swap(v_[1], v_[2]);
    if (less(v_[1], v_[0])) std::swap(v_[0], v_[1]);
  }

  std::array<Slope, 3> v_;
};

/// The triangle across `edge` from `t`: same edge, other completion.
inline IdealTriangle flip(const IdealTriangle& t, const std::pair<Slope, Slope>& edge) {
  const Slope third = t.opposite(edge.first, edge.second);
  const auto [m, d] = triangle_completions(edge.first, edge.second);
  return {edge.first, edge.second, m == third ? d : m};
}

/// One step of a flip path: the edge crossed, the vertex left behind, and the new vertex.
struct Flip {
  Slope a, b;
  Slope from;
  Slope to;
};

namespace detail {
// +1 if x, y, z occur counter-clockwise on the circle QP^1 (x<y<z up to rotation).
inline int cyclic(const Slope& x, const Slope& y, const Slope& z) {
  const bool xy = compare(x, y) < 0, yz = compare(y, z) < 0, zx = compare(z, x) < 0;
  return ((xy && yz) || (yz && zx) || (zx && xy)) ? 1 : -1;
}
}  // namespace detail

/// Edge of `t` facing `target`, i.e. the edge whose far arc contains it.
inline std::pair<Slope, Slope> edge_toward(const IdealTriangle& t, const Slope& target) {
  for (const auto& [u, v] : t.edges()) {
    const Slope w = t.opposite(u, v);
    if (detail::cyclic(u, target, v) != detail::cyclic(u, w, v)) return {u, v};
  }
  throw Error(ErrorCode::PreconditionViolation, target.str() + " lies on " + t.str());
}

/// Flip sequence from `start` to the first triangle containing `target`.
/// The Farey dual graph is a tree, so the greedy descent is the geodesic.
inline std::vector<Flip> path_between(const IdealTriangle& start, const Slope& target) {
  std::vector<Flip> path;
  IdealTriangle cur = start;
  while (!cur.contains(target)) {
    const auto edge = edge_toward(cur, target);
    const Slope from = cur.opposite(edge.first, edge.second);
    cur = flip(cur, edge);
    path.push_back({edge.first, edge.second, from, cur.opposite(edge.first, edge.second)});
  }
  return path;
}

inline std::vector<Flip> path_to(const Slope& s) { return path_between(IdealTriangle::base(), s); }

/// Sum of |partial quotients| of the continued fraction of p/q.
inline std::int64_t partial_quotient_sum(const Slope& s) {
  std::int64_t a = s.p() < 0 ? -s.p() : s.p(), b = s.q(), sum = 0;
  while (b != 0) {
    sum += a / b;
    a %= b;
    std::swap(a, b);
  }
  return sum;
}

/// Triangles reachable from a start triangle (by default {0/1, 1/1, 1/0})
/// by at most `depth` flips, in breadth-first order.
struct FareyEnumeration {
  int depth = 0;
  std::vector<IdealTriangle> triangles;

  /// Distinct vertices in first-seen order.
  std::vector<Slope> slopes() const {
    std::vector<Slope> out;
    std::unordered_set<Slope, SlopeHash> seen;
    for (const auto& t : triangles)
      for (const auto& v : t.vertices())
        if (seen.insert(v).second) out.push_back(v);
    return out;
  }
};

inline std::size_t farey_triangle_count(int depth) {
  return depth <= 0 ? 1 : 1 + 3 * ((std::size_t{1} << depth) - 1);
}

inline FareyEnumeration enumerate_farey(int depth, const IdealTriangle& start = IdealTriangle::base()) {
  if (depth < 0) throw Error(ErrorCode::PreconditionViolation, "negative depth");
  FareyEnumeration out{depth, {}};
  out.triangles.reserve(farey_triangle_count(depth));
  struct Node {
    IdealTriangle t;
    std::pair<Slope, Slope> entry;  // edge crossed to get here
    bool root;
  };
  std::deque<Node> frontier{{start, {}, true}};
  out.triangles.push_back(start);
  for (int d = 0; d < depth; ++d) {
    std::deque<Node> next;
    for (const auto& node : frontier) {
      for (const auto& e : node.t.edges()) {
        if (!node.root && ((e.first == node.entry.first && e.second == node.entry.second) ||
                           (e.first == node.entry.second && e.second == node.entry.first)))
          continue;
        IdealTriangle child = flip(node.t, e);
        out.triangles.push_back(child);
        next.push_back({child, e, false});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace teich
