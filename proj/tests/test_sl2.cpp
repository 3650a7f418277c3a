#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "teich/sl2.hpp"

using namespace teich;

namespace {

const Mat kU{1, 1, 0, 1};  // [[1,1],[0,1]]
const Mat kL{1, 0, 1, 1};  // [[1,0],[1,1]]

void expect_near(const Mat& a, const Mat& b, double eps) {
  EXPECT_LE(max_abs_diff(a, b), eps) << a << " vs " << b;
}

}  // namespace

TEST(Mat2, Basics) {
  EXPECT_DOUBLE_EQ(tr(kU), 2.0);
  EXPECT_EQ(inv(kU), (Mat{1, -1, 0, 1}));
  EXPECT_EQ(mul(kU, kL), (Mat{2, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(Mat::identity().det(), 1.0);
  EXPECT_EQ(-kU, (Mat{-1, -1, 0, -1}));
}

TEST(Mat2, InverseOfNonUnimodularAndSingular) {
  const Mat m{2, 1, 1, 3};  // det 5
  expect_near(m * inv(m), Mat::identity(), 1e-15);
  EXPECT_THROW(inv(Mat{1, 2, 2, 4}), Error);
  EXPECT_THROW(inv(Mat{1e-13, 0, 0, 1e-13}), Error);
}

TEST(Word, ParseAndPrint) {
  const Word w = parse_word("ABA'B'");
  EXPECT_EQ(w.size(), 4U);
  EXPECT_EQ(w.str(), "ABA'B'");
  EXPECT_EQ(w.inverse().str(), "BAB'A'");
  EXPECT_TRUE(parse_word("AA'").empty());
  EXPECT_EQ((parse_word("AB") * parse_word("B'C")).str(), "AC");
  const std::vector<std::string> names{"x1", "x2"};
  EXPECT_EQ(parse_word("x1 x2'", names).str(names), "x1x2'");
  EXPECT_THROW(parse_word("A?"), Error);
  EXPECT_THROW(parse_word("y1", names), Error);
}

TEST(WordTrace, Examples) {
  const std::vector<Mat> gens{kU, kL};
  EXPECT_DOUBLE_EQ(word_trace(std::span<const Mat>(gens), Word{}), 2.0);
  EXPECT_DOUBLE_EQ(word_trace(std::span<const Mat>(gens), parse_word("A")), 2.0);
  EXPECT_DOUBLE_EQ(word_trace(std::span<const Mat>(gens), parse_word("AB")), 3.0);
  EXPECT_THROW(evaluate(std::span<const Mat>(gens), parse_word("C")), Error);
}

TEST(WordTrace, LeftToRightProduct) {
  const std::vector<Mat> gens{kU, kL};
  EXPECT_EQ(evaluate(std::span<const Mat>(gens), parse_word("AB")), kU * kL);
  EXPECT_EQ(evaluate(std::span<const Mat>(gens), parse_word("BA'")), kL * inv(kU));
}

TEST(Identities, TrivialAndParabolicExamples) {
  const auto id = Mat::identity();
  const IdentityReport r = identity_residuals(id, id, id);
  EXPECT_EQ(r.max_scaled(), 0.0);
  EXPECT_DOUBLE_EQ(commutator(kU, kL).trace(), 3.0);
  EXPECT_EQ(commutator(kU, kL), (Mat{3, -1, 1, 0}));
  EXPECT_EQ(identity_residuals(kU, kL, kU * kL).commutator.raw, 0.0);
}

TEST(Identities, RandomTriplesAndPairs) {
  std::mt19937_64 rng(11);
  double worst = 0.0, worst_root = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Mat a = random_unimodular(rng), b = random_unimodular(rng), c = random_unimodular(rng);
    const IdentityReport r = identity_residuals(a, b, c);
    worst = std::max(worst, r.max_scaled());
    worst_root = std::max({worst_root, std::abs(r.root_123.raw) / std::max(1.0, r.root_123.scale),
                           std::abs(r.root_132.raw) / std::max(1.0, r.root_132.scale)});
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_LT(worst_root, 1e-6);
  for (int i = 0; i < 2000; ++i) {
    const Mat a = random_unimodular(rng, 5.0), b = random_unimodular(rng, 5.0);
    EXPECT_LT(basic_identity_residual(a, b).scaled(), 1e-9);
  }
}

TEST(Identities, SuiteIsDeterministic) {
  const auto a = run_identity_suite(500, 99), b = run_identity_suite(500, 99);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.worst_sample, b.worst_sample);
  EXPECT_LT(a.max_residual, 1e-9);
}

TEST(Sampling, UnimodularWithinRange) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Mat m = random_unimodular(rng);
    EXPECT_NEAR(m.det(), 1.0, 1e-12);
    EXPECT_LE(std::abs(m.a12), 3.0);
    EXPECT_GE(std::abs(m.a11), 1e-3);
  }
}

TEST(Conjugation, PreservesWordTraces) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logscale(-6 * std::log(10.0), 6 * std::log(10.0));
  const Word w = parse_word("ABC'A'BBC");
  for (int i = 0; i < 500; ++i) {
    std::vector<Mat> g{random_unimodular(rng), random_unimodular(rng), random_unimodular(rng)};
    // Determinant between 1e-6 and 1e6 of either sign. Conditioning, not
    // the determinant, limits double precision, so the shape is drawn with
    // bounded condition number.
    Mat c = std::sqrt(std::exp(logscale(rng))) * random_unimodular(rng, 3.0, 0.5);
    if (i % 2) c = c * Mat::diagonal(1.0, -1.0);
    std::vector<Mat> h;
    for (const auto& m : g) h.push_back(conjugate(m, c));
    const double t0 = word_trace(std::span<const Mat>(g), w), t1 = word_trace(std::span<const Mat>(h), w);
    EXPECT_LE(std::abs(t0 - t1), 1e-9 * std::max(1.0, std::abs(t0))) << i;
  }
}

TEST(Jordan, ExampleAndDiagonalRejected) {
  const Mat a{2, 1, 1, 1};
  const JordanForm j = jordan_normalize(a);
  const double s5 = std::sqrt(5.0);
  EXPECT_NEAR(j.d.a11, (3 + s5) / 2, 1e-14);
  EXPECT_NEAR(j.d.a22, (3 - s5) / 2, 1e-14);
  expect_near(inv(j.c) * a * j.c, j.d, 1e-12);
  expect_near(j.c * j.d * inv(j.c), a, 1e-9);
  EXPECT_GT(std::abs(j.c.det()), 0.0);
  try {
    jordan_normalize(Mat::diagonal(2, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOffDiagonal);
  }
  try {
    jordan_normalize(kU);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHyperbolic);
  }
}

TEST(Jordan, PrintedBasisWithZeroEntryDoesNotDiagonalize) {
  // The closed form as printed has (2,1)-entry 0; with 1 there it works.
  const Mat a{2, 1, 1, 1};
  const double s = std::sqrt(5.0);
  const Mat printed{2 * a.a12 / (a.a22 - a.a11 + s), a.a11 - a.a22 - s, 0.0, 2 * a.a21};
  const Mat m = inv(printed) * a * printed;
  EXPECT_GT(std::abs(m.a12) + std::abs(m.a21), 1e-3);
}

TEST(Jordan, RandomRoundTrip) {
  std::mt19937_64 rng(17);
  int tested = 0;
  while (tested < 1000) {
    const Mat a = random_unimodular(rng);
    if (std::abs(a.trace()) <= 2.01 || std::abs(a.a12 * a.a21) < 1e-6) continue;
    const JordanForm j = jordan_normalize(a);
    expect_near(j.c * j.d * inv(j.c), a, 1e-9 * std::max(1.0, max_abs_entry(a)));
    ++tested;
  }
}

TEST(NormalizePair, ExampleAndAlreadyNormalized) {
  const Mat a{2, 1, 1, 1}, b{1, 1, 1, 2};
  const NormalizedPair n = normalize_pair(a, b);
  EXPECT_DOUBLE_EQ(std::abs(n.b.a21), 1.0);
  EXPECT_EQ(n.a.a12, 0.0);
  EXPECT_EQ(n.a.a21, 0.0);
  EXPECT_GT(std::abs(n.a.a11), 1.0);
  EXPECT_NEAR(n.b.trace(), b.trace(), 1e-12);
  EXPECT_NEAR((n.a * n.b).trace(), (a * b).trace(), 1e-12);

  const NormalizedPair again = normalize_pair(n.a, n.b);
  EXPECT_EQ(again.c, Mat::identity());
  EXPECT_EQ(again.a, n.a);
  expect_near(again.b, n.b, 0.0);
}

TEST(NormalizePair, ErrorCases) {
  try {
    normalize_pair(kU, kL);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHyperbolic);
  }
  // A commuting pair: the commutator is the identity.
  const Mat a{2, 1, 1, 1};
  try {
    normalize_pair(a, a * a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CommutatorParabolic);
  }
}

TEST(NormalizePair, RandomPairsKeepTracesAndSignOfLambda) {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 1000) {
    const Mat a = random_unimodular(rng), b = random_unimodular(rng);
    if (std::abs(a.trace()) <= 2.01) continue;
    if (std::abs(commutator(a, b).trace() - 2.0) < 1e-3) continue;
    const NormalizedPair n = normalize_pair(a, b);
    EXPECT_NEAR(n.a.trace(), a.trace(), 1e-9 * std::max(1.0, std::abs(a.trace())));
    EXPECT_NEAR(n.b.trace(), b.trace(), 1e-9 * std::max(1.0, std::abs(b.trace())));
    const double tab = (a * b).trace();
    EXPECT_NEAR((n.a * n.b).trace(), tab, 1e-8 * std::max(1.0, std::abs(tab)));
    EXPECT_EQ(n.b.a21, 1.0);
    EXPECT_GT(std::abs(n.a.a11), 1.0);
    EXPECT_EQ(n.lambda_sign, a.trace() > 0 ? 1 : -1);
    // The conjugator really carries (A, B) to the normalized pair.
    expect_near(conjugate(a, n.c), n.a, 1e-8 * std::max(1.0, max_abs_entry(n.a)));
    ++tested;
  }
}

TEST(NormalizePair, TriangularLeadingElement) {
  // One off-diagonal entry zero: the closed form does not apply, but the pair
  // still normalizes.
  const Mat a{3, 1, 0, 1.0 / 3}, b{1, 2, 1, 3};
  const NormalizedPair n = normalize_pair(a, b);
  EXPECT_NEAR(n.a.a11, 3.0, 1e-12);
  EXPECT_NEAR(n.b.trace(), 4.0, 1e-12);
  EXPECT_NEAR((n.a * n.b).trace(), (a * b).trace(), 1e-12);
}
