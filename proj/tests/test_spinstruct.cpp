#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "teich/curves.hpp"
#include "teich/fricke.hpp"
#include "teich/spinstruct.hpp"

using namespace teich;

namespace {

oracle::M2<double> to_m2(const Mat& m) { return {m.a11, m.a12, m.a21, m.a22}; }

// eta* read through the oracle's cutting-sequence words, independent of the
// library's curve words.
int oracle_eta_star(const Rep& torus, std::int64_t p, std::int64_t q) {
  const double t = oracle::eval(oracle::christoffel(p, q), to_m2(torus.gens[0]), to_m2(torus.gens[1])).tr();
  return t > 0 ? -1 : 1;
}

/// A torus pair with traces (3, 3, -3): a sign pattern no lift of a
/// Fuchsian torus group has.
Rep non_spin_torus() {
  const double l = (3 + std::sqrt(5.0)) / 2;
  const double a = (-3 - 3 / l) / (l - 1 / l), d = 3 - a;
  return Rep(SurfaceSig{1, 1, 0}, {"A", "B"}, {Mat::diagonal(l, 1 / l), Mat{a, a * d - 1, 1, d}});
}

}  // namespace

TEST(Eta, SignsAndEllipticRejection) {
  const Rep p = build_pants(-3, -3, -3);
  EXPECT_EQ(eta_from_rep(p, "A"), -1);
  EXPECT_EQ(eta_from_rep(p, "AB"), -1);
  const double c = std::cos(0.3), s = std::sin(0.3);
  const Rep rot(SurfaceSig{0, 3, 0}, {"A", "B"}, {Mat{c, -s, s, c}, Mat::identity()});
  try {
    eta_from_rep(rot, "A");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EllipticClass);
  }
  EXPECT_EQ(eta_from_rep(build_torus(3, 3, 3), "A"), 1);
  EXPECT_EQ(eta_from_rep(build_four_holed(2.5, 3, 4, four_holed_t4({2.5, 3, 4, 9, 10, 11}), 9, 10, 11), "A"), -1);
  // Parabolic classes keep a sign.
  EXPECT_EQ(eta_from_rep(build_pants(-2, -2, -2), "B"), -1);
}

TEST(SumClass, Examples) {
  EXPECT_EQ(sum_class(Slope(1, 0), Slope(0, 1)).curve, Slope(1, 1));
  EXPECT_FALSE(sum_class(Slope(1, 0), Slope(0, 1)).zero);
  EXPECT_TRUE(sum_class(Slope(1, 1), Slope(1, 1)).zero);
  EXPECT_TRUE(sum_class(Slope(1, 0), Slope(1, 2)).zero);
  EXPECT_EQ(sum_class(Slope(1, 2), Slope(1, 1)).curve, Slope(2, 3));
  EXPECT_EQ(sum_class(Slope(-1, 1), Slope(1, 2)).curve, Slope(0, 1));
}

TEST(SumClass, AgreesWithParityArithmetic) {
  const auto slopes = enumerate_farey(4).slopes();
  for (const auto& a : slopes)
    for (const auto& b : slopes) {
      const SpinClass c = sum_class(a, b);
      const auto pa = (a.p() % 2 + 2) % 2, qa = a.q() % 2, pb = (b.p() % 2 + 2) % 2, qb = b.q() % 2;
      const bool zero = (pa + pb) % 2 == 0 && (qa + qb) % 2 == 0;
      EXPECT_EQ(c.zero, zero) << a.str() << " + " << b.str();
      if (!zero) {
        EXPECT_EQ((c.curve.p() % 2 + 2) % 2, (pa + pb) % 2);
        EXPECT_EQ(c.curve.q() % 2, (qa + qb) % 2);
      }
    }
}

TEST(Pairing, TorusAndSphere) {
  EXPECT_EQ(spin_pairing(SurfaceSig{1, 1, 0}, Slope(1, 0), Slope(0, 1)), 1);
  EXPECT_EQ(spin_pairing(SurfaceSig{1, 1, 0}, Slope(1, 0), Slope(1, 2)), 0);
  EXPECT_EQ(spin_pairing(SurfaceSig{0, 4, 0}, Slope(1, 0), Slope(0, 1)), 0);
}

TEST(PantsLaw, ConstructedReps) {
  EXPECT_EQ(pants_law(build_pants(-3, -3, -3)).actual, -1);
  EXPECT_EQ(pants_law(build_pants(-2, -2, -2)).actual, -1);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(2.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    // One or three negative traces.
    double t[3] = {-u(rng), u(rng), u(rng)};
    if (i % 2) t[1] = -t[1], t[2] = -t[2];
    const Rep r = build_pants(t[0], t[1], t[2]);
    const LawRecord law = pants_law(r);
    EXPECT_TRUE(law.ok());
    for (const Rep& lift : enumerate_liftings(r)) EXPECT_TRUE(pants_law(lift).ok());
  }
}

TEST(PerpLaw, TorusReps) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    const auto [x, y, z] = oracle::torus_seed(rng);
    const Rep r = build_torus(x, y, z);
    EXPECT_EQ(perp_law(r).actual, 1);
    for (const Rep& lift : enumerate_liftings(r)) EXPECT_TRUE(perp_law(lift).ok());
  }
  EXPECT_FALSE(perp_law(non_spin_torus()).ok());
}

TEST(QuadraticLaw, ExhaustiveDepthThree) {
  const auto pairs = all_pairs(3);
  ASSERT_EQ(pairs.size(), 24U * 24U);
  for (const Rep& base : {build_torus(3, 3, 3), build_torus(4, 4, 4), build_torus(3.5, 4.0, 6.0)})
    for (const Rep& lift : enumerate_liftings(base)) {
      const SpinReport r = check_quadratic(lift, pairs);
      EXPECT_EQ(r.violations(), 0U);
      EXPECT_EQ(r.records.size(), pairs.size());
    }
  const Rep cusped = build_four_holed(2, 2, 2, 2, 7, 7, 7);
  const Rep generic = build_four_holed(2.5, 3, 4, four_holed_t4({2.5, 3, 4, 9, 10, 11}), 9, 10, 11);
  for (const Rep& base : {cusped, generic})
    for (const Rep& lift : enumerate_liftings(base)) EXPECT_TRUE(check_quadratic(lift, pairs).ok());
}

TEST(QuadraticLaw, DetectsNonSpinSigns) {
  const SpinReport r = check_quadratic(non_spin_torus(), all_pairs(1));
  EXPECT_GT(r.violations(), 0U);
  EXPECT_FALSE(r.ok());
}

TEST(QuadraticLaw, MatchesOracleWords) {
  // Same law, with eta* taken from cutting-sequence words and the class sum
  // computed by hand.
  std::mt19937_64 rng(47);
  for (int i = 0; i < 10; ++i) {
    const auto [x, y, z] = oracle::torus_seed(rng);
    for (const Rep& lift : enumerate_liftings(build_torus(x, y, z))) {
      for (const auto& [a, b] : all_pairs(2)) {
        const std::int64_t p = a.p() + b.p(), q = a.q() + b.q();
        const std::int64_t g = std::gcd(p, q);
        const int lhs = (g == 0 || g % 2 == 0) ? 1 : oracle_eta_star(lift, p / g, q / g);
        const int cross = static_cast<int>(((a.p() * b.q() - a.q() * b.p()) % 2 + 2) % 2);
        const int rhs = (cross ? -1 : 1) * oracle_eta_star(lift, a.p(), a.q()) * oracle_eta_star(lift, b.p(), b.q());
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(oracle_eta_star(lift, a.p(), a.q()), eta_star(lift, a));
      }
    }
  }
}

TEST(Liftings, TwoGenerators) {
  const Rep r = build_torus(3, 3, 3);
  const auto lifts = enumerate_liftings(r);
  ASSERT_EQ(lifts.size(), 4U);
  EXPECT_EQ(lifts[0].gens, r.gens);
  EXPECT_EQ(lifts[0].lifting, r.lifting);
}

TEST(Liftings, EnumerationAndLimit) {
  const Rep r = build_four_holed(2, 2, 2, 2, 7, 7, 7);
  const auto lifts = enumerate_liftings(r);
  ASSERT_EQ(lifts.size(), 8U);
  EXPECT_EQ(lifts[0].gens, r.gens);
  std::set<std::vector<int>> patterns;
  for (const auto& l : lifts) {
    std::vector<int> signs;
    for (const char* g : {"A", "B", "C"}) signs.push_back(eta_from_rep(l, g));
    patterns.insert(signs);
  }
  EXPECT_EQ(patterns.size(), 8U);
  EXPECT_EQ(lifts[5].lifting, (std::vector<int>{-1, 1, -1}));

  std::vector<std::string> names;
  for (int i = 0; i < 21; ++i) names.push_back("g" + std::to_string(i));
  const Rep big(SurfaceSig{0, 3, 0}, names, std::vector<Mat>(21, Mat::identity()));
  try {
    enumerate_liftings(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyGenerators);
  }
}

TEST(QuadraticLaw, RequiresSlopeSurface) {
  try {
    check_quadratic(build_pants(-3, -3, -3), all_pairs(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolation);
  }
}
