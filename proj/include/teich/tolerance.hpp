#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace teich {

// Residuals are compared against eps * max(1, scale), where scale is the
// magnitude of the largest term entering the residual. Below unit scale the
// check is absolute, above it relative.
struct Tolerances {
  double det = 1e-9;       // unimodularity |det - 1|
  double identity = 1e-9;  // trace identities
  double relation = 1e-6;  // trace-function relations on seeds and tables
  double equality = 1e-9;  // equality loci (cusp cases)
  double glue = 1e-8;      // matching traces across glued pieces

  /// Defaults, optionally overridden by TEICHTRACE_TOL_{DET,IDENTITY,RELATION,EQUALITY,GLUE}.
  static Tolerances from_env() {
    Tolerances t;
    auto read = [](const char* name, double& slot) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        const double x = std::strtod(v, &end);
        if (end != v && x > 0.0) slot = x;
      }
    };
    read("TEICHTRACE_TOL_DET", t.det);
    read("TEICHTRACE_TOL_IDENTITY", t.identity);
    read("TEICHTRACE_TOL_RELATION", t.relation);
    read("TEICHTRACE_TOL_EQUALITY", t.equality);
    read("TEICHTRACE_TOL_GLUE", t.glue);
    return t;
  }
};

inline double scaled_residual(double residual, double scale) {
  return std::abs(residual) / std::max(1.0, std::abs(scale));
}

inline bool within(double residual, double scale, double eps) {
  return scaled_residual(residual, scale) <= eps;
}

}  // namespace teich
