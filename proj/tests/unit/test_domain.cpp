#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hilbertkit/domain.hpp"
#include "hilbertkit/errors.hpp"

namespace hilbert {
namespace {

using testing::vec2;
using testing::vec3;

TEST(Domain, DiskMembershipIsOpen) {
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_TRUE(disk.contains(vec2(0, 0)));
  EXPECT_FALSE(disk.contains(vec2(1, 0)));
  EXPECT_FALSE(disk.contains(vec2(0.8, 0.8)));
}

TEST(Domain, DiameterOfTheDisk) {
  const auto disk = ConvexDomain::unit_ball(2);
  const Chord ch = disk.boundary_intersections(vec2(0, 0), vec2(0.5, 0));
  EXPECT_LT((ch.a - vec2(-1, 0)).norm(), 1e-12);
  EXPECT_LT((ch.b - vec2(1, 0)).norm(), 1e-12);
  EXPECT_LT(ch.t_a, 0.0);
  EXPECT_GT(ch.t_b, 1.0);
}

TEST(Domain, AxisAlignedEllipseChord) {
  Mat Q(2, 2);
  Q << 0.25, 0, 0, 1;  // semi-axes 2 and 1
  const auto e = ConvexDomain::ellipse(Vec::Zero(2), Q);
  const Chord ch = e.boundary_intersections(vec2(0, 0), vec2(1, 0));
  EXPECT_LT((ch.a - vec2(-2, 0)).norm(), 1e-12);
  EXPECT_LT((ch.b - vec2(2, 0)).norm(), 1e-12);
}

// Independent root: bisect the p-norm gauge along the chord.
double bisect_gauge(double p, const Vec& x, const Vec& d, double lo, double hi) {
  auto f = [&](double t) {
    const Vec v = x + t * d;
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
    return s - 1.0;
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Domain, PBallChordMatchesBisection) {
  const auto ball = ConvexDomain::pball(4.0, Vec::Zero(2), 1.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vec x = ball.random_interior_point(rng());
    const Vec y = ball.random_interior_point(rng());
    const Chord ch = ball.boundary_intersections(x, y);
    const Vec d = y - x;
    const double tb = bisect_gauge(4.0, x, d, 1.0, 1e3);
    const double ta = bisect_gauge(4.0, x, d, -1e3, 0.0);
    EXPECT_NEAR(ch.t_b, tb, 1e-12 * std::max(1.0, std::abs(tb)));
    EXPECT_NEAR(ch.t_a, ta, 1e-12 * std::max(1.0, std::abs(ta)));
    EXPECT_LT(std::abs(ball.boundary_residual(ch.a)), 1e-12);
    EXPECT_LT(std::abs(ball.boundary_residual(ch.b)), 1e-12);
  }
}

TEST(Domain, ChordErrors) {
  const auto disk = ConvexDomain::unit_ball(2);
  try {
    disk.boundary_intersections(vec2(0.1, 0), vec2(0.1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoUniqueLine);
  }
  try {
    disk.boundary_intersections(vec2(0.1, 0), vec2(1.5, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideDomain);
  }
}

TEST(Domain, ChordSymmetryUnderSwap) {
  std::mt19937_64 rng(4);
  const auto e = testing::random_ellipse(rng);
  for (int i = 0; i < 100; ++i) {
    const Vec x = e.random_interior_point(rng());
    const Vec y = e.random_interior_point(rng());
    const Chord xy = e.boundary_intersections(x, y);
    const Chord yx = e.boundary_intersections(y, x);
    EXPECT_LT((xy.a - yx.b).norm(), 1e-12);
    EXPECT_LT((xy.b - yx.a).norm(), 1e-12);
    EXPECT_FALSE(e.contains(xy.a));
    EXPECT_FALSE(e.contains(xy.b));
  }
}

TEST(Domain, RejectsDegenerateShapes) {
  Mat Q(2, 2);
  Q << 1, 0, 0, 0;
  EXPECT_THROW(ConvexDomain::ellipse(Vec::Zero(2), Q), Error);
  EXPECT_THROW(ConvexDomain::pball(1.0, Vec::Zero(2), 1.0), Error);
  EXPECT_THROW(ConvexDomain::pball(2.0, Vec::Zero(2), -1.0), Error);
  Mat far = Mat::Identity(3, 3);
  far(2, 0) = 2.0;  // sends a line through the disk to infinity
  EXPECT_THROW(ConvexDomain::transformed(ConvexDomain::unit_ball(2), ProjectiveMap(far)), Error);
}

TEST(Domain, TransformedMembershipMatchesPullBack) {
  std::mt19937_64 rng(9);
  const auto base = testing::random_ellipse(rng);
  const ProjectiveMap T = testing::random_chart_map(rng, base);
  const auto image = ConvexDomain::transformed(base, T);
  const ProjectiveMap Tinv = T.inverse();
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  int inside = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = vec2(u(rng), u(rng));
    bool expected = false;
    const Vec h = Tinv.matrix() * (Vec(3) << x, 1).finished();
    if (std::abs(h(2)) > 1e-12) expected = base.contains(h.head(2) / h(2));
    EXPECT_EQ(image.contains(x), expected);
    inside += expected;
  }
  EXPECT_GT(inside, 10);
}

TEST(Domain, TransformedChordsCommuteWithTheMap) {
  std::mt19937_64 rng(10);
  const auto base = testing::random_ellipse(rng);
  const ProjectiveMap T = testing::random_chart_map(rng, base);
  const auto image = ConvexDomain::transformed(base, T);
  for (int i = 0; i < 100; ++i) {
    const Vec x = base.random_interior_point(rng());
    const Vec y = base.random_interior_point(rng());
    const Chord ch = base.boundary_intersections(x, y);
    const Chord mapped = image.boundary_intersections(T.apply_affine(x), T.apply_affine(y));
    EXPECT_LT((mapped.a - T.apply_affine(ch.a)).norm(), 1e-9);
    EXPECT_LT((mapped.b - T.apply_affine(ch.b)).norm(), 1e-9);
  }
}

TEST(Domain, RandomInteriorPointsAreDeterministic) {
  std::mt19937_64 rng(12);
  const auto base = testing::random_ellipse(rng);
  const auto image = ConvexDomain::transformed(base, testing::random_chart_map(rng, base));
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_TRUE(disk.contains(disk.random_interior_point(0)));
  EXPECT_EQ(disk.random_interior_point(7), disk.random_interior_point(7));
  for (std::uint64_t s = 0; s < 100; ++s) EXPECT_TRUE(image.contains(image.random_interior_point(s)));
}

TEST(Domain, StrictConvexityValidator) {
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_GT(disk.validate_strict_convexity(1000, 1).min_margin, 0.0);
  EXPECT_GT(ConvexDomain::pball(1.5, Vec::Zero(2), 1.0).validate_strict_convexity(500, 2).min_margin, 0.0);
  EXPECT_GT(ConvexDomain::unit_ball(3).validate_strict_convexity(200, 3).min_margin, 0.0);
  EXPECT_THROW(disk.validate_strict_convexity(2, 0), Error);
}

TEST(Domain, BallInSpace) {
  const auto ball = ConvexDomain::unit_ball(3);
  const Chord ch = ball.boundary_intersections(vec3(0, 0, 0), vec3(0, 0, 0.3));
  EXPECT_LT((ch.b - vec3(0, 0, 1)).norm(), 1e-12);
  for (const Vec& p : ball.boundary_samples(50)) EXPECT_LT(std::abs(ball.boundary_residual(p)), 1e-12);
}

}  // namespace
}  // namespace hilbert
