#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hilbertkit/errors.hpp"
#include "hilbertkit/projective.hpp"

namespace hilbert {
namespace {

using testing::vec2;

Vec line_point(double s) { return vec2(s, 0.5 * s - 0.2); }

TEST(CrossRatio, HandEvaluatedOnALine) {
  // a=0, x=1, y=2, b=3 gives (2/1)(2/1).
  EXPECT_NEAR(cross_ratio(line_point(0), line_point(1), line_point(2), line_point(3)), 4.0, 1e-12);
}

TEST(CrossRatio, EqualInnerPointsGiveOne) {
  EXPECT_DOUBLE_EQ(cross_ratio(line_point(-1), line_point(0.3), line_point(0.3), line_point(2)), 1.0);
}

TEST(CrossRatio, RejectsBadConfigurations) {
  EXPECT_THROW(cross_ratio(vec2(0, 0), vec2(1, 0), vec2(2, 1), vec2(3, 0)), Error);
  try {
    cross_ratio(line_point(0), line_point(0), line_point(1), line_point(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateConfiguration);
  }
}

TEST(CrossRatio, ProjectivelyInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int checked = 0;
  while (checked < 1000) {
    Mat m = Mat::Identity(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += 0.6 * u(rng);
    const ProjectiveMap T(m);
    const Vec p = vec2(u(rng), u(rng));
    const Vec d = vec2(u(rng), u(rng)).normalized();
    const Vec pts[4] = {p, p + 0.2 * d, p + 0.5 * d, p + 0.9 * d};
    // Keep the whole segment on one side of the line sent to infinity.
    const double w0 = m.row(2).dot((Vec(3) << pts[0], 1).finished());
    const double w3 = m.row(2).dot((Vec(3) << pts[3], 1).finished());
    if (w0 * w3 <= 0.0 || std::min(std::abs(w0), std::abs(w3)) < 0.1) continue;
    const double before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    const double after = cross_ratio(T.apply_affine(pts[0]), T.apply_affine(pts[1]), T.apply_affine(pts[2]),
                                     T.apply_affine(pts[3]));
    EXPECT_NEAR(after, before, 1e-9 * before);
    ++checked;
  }
}

TEST(HomogeneousPoint, CanonicalFormAndEquality) {
  const HomogeneousPoint p(testing::vec3(-2, 1, 2));
  EXPECT_NEAR(p.coords().norm(), 1.0, 1e-15);
  EXPECT_GT(p.coords()(0), 0.0);
  EXPECT_TRUE(p.approx_equal(HomogeneousPoint(testing::vec3(4, -2, -4))));
  EXPECT_THROW(HomogeneousPoint(Vec::Zero(3)), Error);
}

TEST(HomogeneousPoint, CanonicalizeIsBitwiseIdempotent) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    Vec v(4);
    for (int k = 0; k < 4; ++k) v(k) = g(rng) * std::pow(10.0, k - 2);
    const Vec once = canonicalize(v);
    const Vec twice = canonicalize(once);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(once(k), twice(k));
  }
}

TEST(ProjectiveMap, IdentityAndScaleInvariance) {
  const HomogeneousPoint p(testing::vec3(0.3, -0.1, 1.0));
  EXPECT_TRUE(ProjectiveMap::identity(2).apply(p).approx_equal(p, 1e-15));
  EXPECT_TRUE(ProjectiveMap(2.0 * Mat::Identity(3, 3)).apply(p).approx_equal(p, 1e-15));
}

TEST(ProjectiveMap, InverseRoundTrip) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Mat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
  const ProjectiveMap T(m);
  const ProjectiveMap Tinv = T.inverse();
  for (int i = 0; i < 100; ++i) {
    const HomogeneousPoint p(testing::vec3(g(rng), g(rng), g(rng)));
    EXPECT_TRUE(Tinv.apply(T.apply(p)).approx_equal(p, 1e-10));
  }
  EXPECT_LT((T * Tinv).distance_to(ProjectiveMap::identity(2)), 1e-12);
}

TEST(ProjectiveMap, RejectsSingularMatrices) {
  Mat m = Mat::Identity(3, 3);
  m(2, 2) = 0.0;
  EXPECT_THROW(ProjectiveMap{m}, Error);
  EXPECT_THROW(ProjectiveMap{Mat::Identity(5, 5)}, Error);
}

TEST(FractionalLinearMap, TrivialCases) {
  const Vec v = vec2(0.4, -1.3);
  EXPECT_LT((FractionalLinearMap::identity(2).apply(v) - v).norm(), 1e-15);
  const FractionalLinearMap half(Mat::Identity(2, 2), Vec::Zero(2), Vec::Zero(2), 2.0);
  EXPECT_LT((half.apply(v) - v / 2).norm(), 1e-15);
}

TEST(FractionalLinearMap, OutsideHalfSpaceIsRejected) {
  const FractionalLinearMap f(Mat::Identity(2, 2), Vec::Zero(2), vec2(1, 0), 0.5);
  EXPECT_FALSE(f.in_domain(vec2(-1, 0)));
  try {
    f.apply(vec2(-1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideDomain);
  }
}

TEST(FractionalLinearMap, AgreesWithHomogeneousLift) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat A(2, 2);
  A << 1.2, 0.3, -0.4, 0.9;
  const FractionalLinearMap f(A, vec2(0.1, -0.2), vec2(0.3, 0.2), 1.5);
  const ProjectiveMap T = f.to_projective();
  int checked = 0;
  while (checked < 100) {
    const Vec v = vec2(2 * u(rng), 2 * u(rng));
    if (!f.in_domain(v)) continue;
    const Vec direct = f.apply(v);
    EXPECT_LT((direct - T.apply_affine(v)).norm(), 1e-10 * (1.0 + direct.norm()));
    ++checked;
  }
}

TEST(FractionalLinearMap, PermutationWithSingularLinearPartIsInjective) {
  // Rows 1, 3, 2 of the identity: A = diag(1, 0) is singular.
  Mat P(3, 3);
  P << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  const FractionalLinearMap f(P.topLeftCorner(2, 2), P.topRightCorner(2, 1), P.bottomLeftCorner(1, 2).transpose(),
                              P(2, 2));
  EXPECT_DOUBLE_EQ(f.A().determinant(), 0.0);
  EXPECT_TRUE(f.is_injective());
  EXPECT_NO_THROW(f.to_projective());
}

TEST(FractionalLinearMap, InjectivityFollowsTheBlockMatrix) {
  EXPECT_TRUE(FractionalLinearMap::identity(2).is_injective());
  const FractionalLinearMap rank1(Mat::Zero(2, 2), Vec::Zero(2), Vec::Zero(2), 1.0);
  EXPECT_FALSE(rank1.is_injective());
  EXPECT_THROW(rank1.to_projective(), Error);
}

TEST(FractionalLinearMap, RoundTripThroughProjective) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = g(rng);
    const ProjectiveMap T(m);
    const Vec chart = Vec::Zero(3);
    const auto f = FractionalLinearMap::from_projective(T, chart);
    EXPECT_TRUE(f.in_domain(chart));
    EXPECT_LT(f.to_projective().distance_to(T), 1e-10);
  }
  EXPECT_EQ(FractionalLinearMap::from_projective(ProjectiveMap::identity(2), Vec::Zero(2)).block_matrix().isDiagonal(), true);
}

TEST(Collinearity, DefectVanishesOnLines) {
  EXPECT_LT(collinearity_defect({vec2(0, 0), vec2(1, 1), vec2(3, 3)}), 1e-15);
  EXPECT_GT(collinearity_defect({vec2(0, 0), vec2(1, 1), vec2(3, 2)}), 0.05);
}

}  // namespace
}  // namespace hilbert
