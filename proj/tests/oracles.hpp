#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library's word, recursion or constructor code.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

template <typename T>
struct M2 {
  T a, b, c, d;
  friend M2 operator*(const M2& x, const M2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  T tr() const { return a + d; }
  M2 inverse() const { return {d, -b, -c, a}; }  // det 1
};

/// Cutting sequence of the segment from (0,0) to (q,p): 'A' for each
/// crossing of a vertical line, 'B' for a horizontal one, in order. Up to
/// cyclic order and reversal this is the curve of slope p/q on the torus
/// with A at slope 1/0 and B at 0/1.
inline std::string christoffel(std::int64_t p, std::int64_t q) {
  const bool negative = p < 0;
  if (negative) p = -p;
  std::string w;
  if (q == 0) return negative ? "a" : "A";
  if (p == 0) return "B";
  // Walk the lattice path below the line y = (p/q) x.
  std::int64_t x = 0, y = 0;
  while (x < q || y < p) {
    // Step up when the point (x, y+1) is still on or below the line.
    if (y < p && (y + 1) * q <= p * x) {
      ++y;
      w += negative ? 'a' : 'A';
    } else {
      ++x;
      w += 'B';
    }
  }
  return w;
}

/// Evaluates a word over {A, a = A^-1, B, b = B^-1}.
template <typename T>
M2<T> eval(const std::string& w, const M2<T>& A, const M2<T>& B) {
  M2<T> m{T(1), T(0), T(0), T(1)};
  for (char ch : w) {
    switch (ch) {
      case 'A': m = m * A; break;
      case 'a': m = m * A.inverse(); break;
      case 'B': m = m * B; break;
      case 'b': m = m * B.inverse(); break;
      default: break;
    }
  }
  return m;
}

/// The modular torus pair with traces 3, 3 and tr AB = 3.
template <typename T>
std::array<M2<T>, 2> modular_pair() {
  return {M2<T>{T(1), T(1), T(1), T(2)}, M2<T>{T(1), T(-1), T(-1), T(2)}};
}

/// All slopes reached from {0/1, 1/0, 1/1} by at most `depth` flips, from
/// Farey sums: the children of the edge (a, b) are a + b and a - b.
inline std::vector<std::pair<std::int64_t, std::int64_t>> farey_slopes(int depth) {
  using S = std::pair<std::int64_t, std::int64_t>;
  auto norm = [](S s) {
    if (s.second < 0 || (s.second == 0 && s.first < 0)) s = {-s.first, -s.second};
    const auto g = std::gcd(s.first, s.second);
    return S{s.first / g, s.second / g};
  };
  struct Tri {
    S v[3];
  };
  std::vector<S> out{{0, 1}, {1, 1}, {1, 0}};
  struct Edge {
    S a, b, opp;
  };
  std::vector<Edge> frontier{{{0, 1}, {1, 0}, {1, 1}}, {{0, 1}, {1, 1}, {1, 0}}, {{1, 0}, {1, 1}, {0, 1}}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Edge> next;
    for (const auto& e : frontier) {
      const S sum = norm({e.a.first + e.b.first, e.a.second + e.b.second});
      const S diff = norm({e.a.first - e.b.first, e.a.second - e.b.second});
      const S n = sum == norm(e.opp) ? diff : sum;
      out.push_back(n);
      next.push_back({e.a, n, e.b});
      next.push_back({e.b, n, e.a});
    }
    frontier = std::move(next);
  }
  return out;
}

/// Larger root of t^2 + P t + Q for the fourth boundary trace, written out
/// directly from the boundary relation.
inline double fourth_boundary(double t1, double t2, double t3, double t12, double t23, double t31) {
  const double P = t1 * t23 + t2 * t31 + t3 * t12 + t1 * t2 * t3;
  const double Q = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t31 * t31 + t1 * t2 * t12 + t2 * t3 * t23 +
                   t3 * t1 * t31 - t12 * t23 * t31 - 4.0;
  return 0.5 * (-P + std::sqrt(P * P - 4.0 * Q));
}

inline double boundary_relation(double t1, double t2, double t3, double t4, double t12, double t23, double t31) {
  const double P = t1 * t23 + t2 * t31 + t3 * t12 + t1 * t2 * t3;
  const double Q = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t31 * t31 + t1 * t2 * t12 + t2 * t3 * t23 +
                   t3 * t1 * t31 - t12 * t23 * t31 - 4.0;
  return t4 * t4 + P * t4 + Q;
}

/// Admissible torus seed: x, y in (2.05, 6) and z between the roots of
/// z^2 - xyz + x^2 + y^2 = 0, so that xyz > x^2 + y^2 + z^2.
template <typename Rng>
std::array<double, 3> torus_seed(Rng& rng) {
  std::uniform_real_distribution<double> u(2.05, 6.0), v(0.1, 0.9);
  for (;;) {
    const double x = u(rng), y = u(rng);
    const double xy = x * y;
    const double disc = xy * xy - 4.0 * (x * x + y * y);
    if (disc <= 0.0) continue;
    const double lo = std::max(2.05, 0.5 * (xy - std::sqrt(disc))), hi = 0.5 * (xy + std::sqrt(disc));
    if (hi <= lo) continue;
    // Strictly between the roots, away from both ends.
    return {x, y, lo + (hi - lo) * v(rng)};
  }
}

/// Admissible four-holed tuple (t1, t2, t3, t4, t12, t23, t31) with t4 > 2.
template <typename Rng>
std::array<double, 7> four_holed_tuple(Rng& rng) {
  std::uniform_real_distribution<double> b(2.0, 5.0), c(2.2, 12.0);
  for (;;) {
    const double t1 = b(rng), t2 = b(rng), t3 = b(rng), t12 = c(rng), t23 = c(rng), t31 = c(rng);
    const double P = t1 * t23 + t2 * t31 + t3 * t12 + t1 * t2 * t3;
    const double Q = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t31 * t31 + t1 * t2 * t12 + t2 * t3 * t23 +
                     t3 * t1 * t31 - t12 * t23 * t31 - 4.0;
    if (P * P - 4.0 * Q < 0.0) continue;
    const double t4 = fourth_boundary(t1, t2, t3, t12, t23, t31);
    if (t4 > 2.05) return {t1, t2, t3, t4, t12, t23, t31};
  }
}

}  // namespace oracle
