#pragma once

/**
 * @file rep.hpp
 * @brief Surface signatures and representations of free surface groups.
 */

#include <string>
#include <string_view>
#include <vector>

#include "teich/error.hpp"
#include "teich/sl2.hpp"

namespace teich {

/// Signature (g, r, s): genus, geodesic boundary components, cusps.
struct SurfaceSig {
  int g = 0, r = 0, s = 0;

  int ends() const { return r + s; }
  int euler_characteristic() const { return 2 - 2 * g - r - s; }

  bool is_pants() const { return g == 0 && ends() == 3; }
  bool is_one_holed_torus() const { return g == 1 && ends() == 1; }
  bool is_four_holed_sphere() const { return g == 0 && ends() == 4; }
  bool is_two_holed_torus() const { return g == 1 && ends() == 2; }
  bool is_closed_genus_two() const { return g == 2 && ends() == 0; }

  /// One-holed torus or four-holed sphere: curves are indexed by slopes.
  bool is_farey() const { return is_one_holed_torus() || is_four_holed_sphere(); }

  bool supported() const {
    return g >= 0 && r >= 0 && s >= 0 &&
           (is_pants() || is_one_holed_torus() || is_four_holed_sphere() || is_two_holed_torus() ||
            (g == 2 && r == 0 && s == 0));
  }

  void validate() const {
    if (!supported()) throw Error(ErrorCode::PreconditionViolation, "unsupported signature " + str());
    if (euler_characteristic() >= 0) throw Error(ErrorCode::PreconditionViolation, "non-hyperbolic signature " + str());
  }

  /// "g,r,s".
  static SurfaceSig parse(std::string_view text) {
    SurfaceSig sig;
    int* slots[3] = {&sig.g, &sig.r, &sig.s};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t next = i < 2 ? text.find(',', pos) : text.size();
      if (next == std::string_view::npos) throw Error(ErrorCode::ParseError, "signature must be g,r,s");
      const std::string part(text.substr(pos, next - pos));
      std::size_t used = 0;
      try {
        *slots[i] = std::stoi(part, &used);
      } catch (const std::exception&) {
        used = std::string::npos;
      }
      if (part.empty() || used != part.size() || *slots[i] < 0)
        throw Error(ErrorCode::ParseError, "bad signature component '" + part + "'");
      pos = next + 1;
    }
    sig.validate();
    return sig;
  }

  std::string str() const { return std::to_string(g) + "," + std::to_string(r) + "," + std::to_string(s); }

  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;
};

/// Generators of a free group mapped to SL(2,R). `lifting[i]` is -1 when
/// generator i has been negated relative to the constructed lift.
struct Rep {
  SurfaceSig sig;
  std::vector<std::string> names;
  std::vector<Mat> gens;
  std::vector<int> lifting;

  Rep() = default;
  Rep(SurfaceSig s, std::vector<std::string> n, std::vector<Mat> g)
      : sig(s), names(std::move(n)), gens(std::move(g)), lifting(gens.size(), 1) {
    if (names.size() != gens.size()) throw Error(ErrorCode::PreconditionViolation, "names and generators differ in count");
  }

  std::size_t arity() const { return gens.size(); }

  Word word(std::string_view text) const { return parse_word(text, names); }

  Mat eval(const Word& w) const { return evaluate(std::span<const Mat>(gens), w); }
  Mat eval(std::string_view text) const { return eval(word(text)); }

  double trace(const Word& w) const { return eval(w).trace(); }
  double trace(std::string_view text) const { return trace(word(text)); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(name) + "'");
  }

  /// Largest |det - 1| over generators.
  double unimodularity_defect() const {
    double worst = 0.0;
    for (const auto& g : gens) worst = std::max(worst, std::abs(g.det() - 1.0));
    return worst;
  }

  void check_unimodular(double eps) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!(std::abs(gens[i].det() - 1.0) <= eps))
        throw Error(ErrorCode::SingularMatrix, "generator " + names[i] + " has det " + std::to_string(gens[i].det()));
  }

  /// Negates generator i and records it in the lifting.
  void negate(std::size_t i) {
    gens.at(i) = -gens[i];
    lifting[i] = -lifting[i];
  }
};

}  // namespace teich
