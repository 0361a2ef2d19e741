#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hilbertkit/errors.hpp"
#include "hilbertkit/rigidity.hpp"

namespace hilbert {
namespace {

using testing::vec2;
using testing::vec3;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidConfig;
}

SampledLineMap with_origin(SampledLineMap m, const ProjectiveMap& T) {
  const int n = m.dim();
  m.inputs.push_back(Vec::Zero(n));
  m.outputs.push_back(T.apply_affine(Vec::Zero(n)));
  return m;
}

TEST(Between, RelativeTolerance) {
  EXPECT_TRUE(between(vec2(0, 0), vec2(1, 1), vec2(2, 2)));
  EXPECT_FALSE(between(vec2(0, 0), vec2(3, 3), vec2(2, 2)));
  EXPECT_FALSE(between(vec2(0, 0), vec2(1, 1.001), vec2(2, 2)));
}

TEST(Separating, DiskDiameter) {
  const auto disk = ConvexDomain::unit_ball(2);
  const auto cfg = construct_separating(disk, vec2(-0.5, 0), vec2(0, 0), vec2(0.5, 0));
  const auto chk = check_separating(disk, cfg);
  EXPECT_TRUE(chk.incidence);
  EXPECT_TRUE(chk.bc_meet_inside);
  EXPECT_TRUE(chk.a_separated);
  EXPECT_LT(std::abs(disk.boundary_residual(cfg.x)), 1e-12);
  EXPECT_LT(std::abs(disk.boundary_residual(cfg.y)), 1e-12);
  EXPECT_LT(std::abs(disk.boundary_residual(cfg.z)), 1e-12);
}

TEST(Separating, RejectsBadInput) {
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_EQ(kind_of([&] { construct_separating(disk, vec2(0, 0), vec2(-0.5, 0), vec2(0.5, 0)); }),
            ErrorKind::Precondition);
  EXPECT_EQ(kind_of([&] { construct_separating(disk, vec2(-0.5, 0), vec2(0, 0.1), vec2(0.5, 0)); }),
            ErrorKind::Precondition);
  EXPECT_EQ(kind_of([&] { construct_separating(disk, vec2(-0.5, 0), vec2(0, 0), vec2(1.5, 0)); }),
            ErrorKind::Precondition);
}

TEST(Separating, RandomEllipsesAndBalls) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 4 == 3 ? 3 : 2;
    const auto e = testing::random_ellipse(rng, n);
    const Vec p = e.random_interior_point(rng());
    const Vec q = e.random_interior_point(rng());
    const Chord L = e.boundary_intersections(p, q);
    double s[3] = {0.05 + 0.9 * u(rng), 0.05 + 0.9 * u(rng), 0.05 + 0.9 * u(rng)};
    std::sort(s, s + 3);
    if (s[1] - s[0] < 1e-3 || s[2] - s[1] < 1e-3) continue;
    auto at = [&](double t) { return Vec(L.a + t * (L.b - L.a)); };
    const auto cfg = construct_separating(e, at(s[0]), at(s[1]), at(s[2]));
    EXPECT_TRUE(check_separating(e, cfg).all()) << "trial " << trial;
    if (n == 3) EXPECT_EQ(cfg.normal.size(), 3);
  }
}

TEST(OrderChecks, IsometrySamplesHold) {
  std::mt19937_64 rng(8);
  const auto disk = ConvexDomain::unit_ball(2);
  const ProjectiveMap T(testing::random_disk_isometry(rng));
  const auto m = sample_projective_map(T, disk, 6, 7, 3);
  EXPECT_NO_THROW(m.validate());
  const auto order = check_order_preserving(m);
  const auto interval = check_interval_preserving(m);
  EXPECT_EQ(order.kind, VerdictKind::Holds);
  EXPECT_EQ(interval.kind, VerdictKind::Holds);
  EXPECT_EQ(order.groups_checked, 6);
  // The inverse sends lines to lines as well.
  EXPECT_EQ(check_interval_preserving(m.reversed()).kind, VerdictKind::Holds);
  EXPECT_EQ(check_order_preserving(m.reversed()).kind, VerdictKind::Holds);
}

TEST(OrderChecks, SwappedPairGivesAWitness) {
  const auto disk = ConvexDomain::unit_ball(2);
  auto m = sample_projective_map(ProjectiveMap::identity(2), disk, 3, 5, 1);
  const auto& g = m.lines[1];
  std::swap(m.outputs[g[1]], m.outputs[g[3]]);
  const auto v = check_order_preserving(m);
  ASSERT_EQ(v.kind, VerdictKind::Violated);
  const std::vector<int> group(g.begin(), g.end());
  for (int idx : v.witness) EXPECT_NE(std::find(group.begin(), group.end(), idx), group.end());
  const auto& in = m.inputs;
  EXPECT_TRUE(between(in[v.witness[0]], in[v.witness[1]], in[v.witness[2]]));
  EXPECT_FALSE(between(m.outputs[v.witness[0]], m.outputs[v.witness[1]], m.outputs[v.witness[2]]));
  EXPECT_EQ(check_interval_preserving(m).kind, VerdictKind::Violated);
}

TEST(OrderChecks, SmallGroupsAreVacuous) {
  SampledLineMap m;
  m.inputs = {vec2(0, 0), vec2(0.1, 0)};
  m.outputs = m.inputs;
  m.lines = {{0, 1}};
  EXPECT_EQ(check_order_preserving(m).kind, VerdictKind::Vacuous);
  EXPECT_EQ(check_interval_preserving(m).kind, VerdictKind::Vacuous);
  EXPECT_TRUE(check_interval_preserving(m).holds());
}

TEST(OrderChecks, NonCollinearOutputsAreAGeodesicViolation) {
  const auto disk = ConvexDomain::unit_ball(2);
  auto m = sample_projective_map(ProjectiveMap::identity(2), disk, 2, 5, 2);
  m.outputs[m.lines[0][2]] += vec2(0.05, -0.05);
  EXPECT_EQ(kind_of([&] { check_order_preserving(m); }), ErrorKind::GeodesicViolation);
}

TEST(OrderChecks, NudgedImageBreaksIntervals) {
  const auto disk = ConvexDomain::unit_ball(2);
  auto m = sample_projective_map(ProjectiveMap::identity(2), disk, 2, 5, 4);
  const auto& g = m.lines[0];
  const Vec dir = (m.outputs[g[4]] - m.outputs[g[0]]).normalized();
  m.outputs[g[2]] += 1e-3 * vec2(-dir(1), dir(0));
  EXPECT_EQ(check_interval_preserving(m).kind, VerdictKind::Violated);
}

TEST(OrderChecks, IntervalImpliesOrderOnGeneratedSuites) {
  std::mt19937_64 rng(12);
  const auto disk = ConvexDomain::unit_ball(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = sample_projective_map(ProjectiveMap(testing::random_disk_isometry(rng)), disk, 4, 5, rng());
    if (trial % 2) std::swap(m.outputs[m.lines[0][1]], m.outputs[m.lines[0][2]]);
    if (check_interval_preserving(m).holds()) EXPECT_TRUE(check_order_preserving(m).holds());
  }
}

TEST(Fit, IdentityFromFourPairs) {
  const std::vector<Vec> pts = {vec2(0, 0), vec2(0.5, 0), vec2(0, 0.5), vec2(0.3, 0.4)};
  const auto fit = fit_projective_map(pts, pts);
  EXPECT_LT(fit.map.distance_to(ProjectiveMap::identity(2)), 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
}

TEST(Fit, RecoversDomainPreservingMaps) {
  std::mt19937_64 rng(13);
  const auto disk = ConvexDomain::unit_ball(2);
  for (int trial = 0; trial < 20; ++trial) {
    const ProjectiveMap T(testing::random_disk_isometry(rng));
    const auto m = sample_projective_map(T, disk, 10, 5, rng());
    const auto fit = fit_projective_map(m.inputs, m.outputs);
    EXPECT_LT(fit.map.distance_to(T), 1e-6);
    // Refitting on the fitted images gives the same map.
    std::vector<Vec> again;
    for (const Vec& x : m.inputs) again.push_back(fit.map.apply_affine(x));
    EXPECT_LT(fit_projective_map(m.inputs, again).map.distance_to(fit.map), 1e-8);
  }
}

TEST(Fit, ThreeDimensionalMaps) {
  std::mt19937_64 rng(14);
  const auto e = testing::random_ellipse(rng, 3);
  const ProjectiveMap T = testing::random_chart_map(rng, e);
  const auto m = sample_projective_map(T, e, 8, 4, 1);
  EXPECT_LT(fit_projective_map(m.inputs, m.outputs).map.distance_to(T), 1e-8);
}

TEST(Fit, CollinearInputsAreDegenerate) {
  std::vector<Vec> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(vec2(0.1 * i, 0.05 * i));
  EXPECT_EQ(kind_of([&] { fit_projective_map(pts, pts); }), ErrorKind::FitDegeneracy);
  EXPECT_EQ(kind_of([&] { fit_projective_map({vec2(0, 0), vec2(1, 0), vec2(0, 1)}, {vec2(0, 0), vec2(1, 0), vec2(0, 1)}); }),
            ErrorKind::FitDegeneracy);
}

TEST(DomainPreservation, Reports) {
  std::mt19937_64 rng(15);
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_LT(verify_domain_preserved(ProjectiveMap(testing::rotation3(0.4)), disk, 64).boundary_defect, 1e-10);
  Mat shift = Mat::Identity(3, 3);
  shift(0, 2) = 0.3;
  const auto bad = verify_domain_preserved(ProjectiveMap(shift), disk, 64);
  EXPECT_GT(bad.boundary_defect, 0.1);
  const auto base = testing::random_ellipse(rng);
  const ProjectiveMap T = testing::random_chart_map(rng, base);
  const auto image = ConvexDomain::transformed(base, T);
  // T maps base onto image, so T^-1 T = id preserves image and a conjugate of
  // an isometry of the base preserves image.
  EXPECT_LT(verify_domain_preserved(ProjectiveMap::identity(2), image, 64).boundary_defect, 1e-9);
}

TEST(Isometry, DefectsOfKnownMaps) {
  const auto disk = ConvexDomain::unit_ball(2);
  EXPECT_LT(verify_isometry(ProjectiveMap(testing::rotation3(0.9)), disk, 200, 1), 1e-10);
  EXPECT_LT(verify_isometry(ProjectiveMap(testing::boost3(1.0)), disk, 200, 2), 1e-8);
  EXPECT_LT(verify_isometry(ProjectiveMap::identity(2), disk, 50, 3), 1e-15);
  Mat shift = Mat::Identity(3, 3);
  shift(0, 2) = 0.3;
  EXPECT_EQ(kind_of([&] { verify_isometry(ProjectiveMap(shift), disk, 10, 4); }), ErrorKind::Precondition);
}

TEST(DiskOrthogonal, RotationAndIdentity) {
  const auto disk = ConvexDomain::unit_ball(2);
  const ProjectiveMap R(testing::rotation3(0.7));
  const auto r = disk_recover_orthogonal(with_origin(sample_projective_map(R, disk, 5, 5, 9), R));
  EXPECT_LT(r.orthogonality_defect, 1e-6);
  EXPECT_NEAR(r.B(1, 0), std::sin(0.7), 1e-9);
  EXPECT_NEAR(r.B(0, 0), std::cos(0.7), 1e-9);
  const ProjectiveMap I = ProjectiveMap::identity(2);
  const auto id = disk_recover_orthogonal(with_origin(sample_projective_map(I, disk, 5, 5, 10), I));
  EXPECT_LT((id.B - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DiskOrthogonal, BoostIsRejected) {
  const auto disk = ConvexDomain::unit_ball(2);
  const ProjectiveMap B(testing::boost3(0.5));
  const auto m = with_origin(sample_projective_map(B, disk, 5, 5, 11), B);
  EXPECT_EQ(kind_of([&] { disk_recover_orthogonal(m); }), ErrorKind::Precondition);
}

TEST(DiskOrthogonal, NonIsometryFixingTheOriginIsRejected) {
  const auto disk = ConvexDomain::unit_ball(2);
  Mat m = Mat::Identity(3, 3);
  m(2, 0) = 0.4;  // fixes 0 but has a denominator part
  const ProjectiveMap T(m);
  // Keep the samples near the origin so that every image stays in the disk.
  SampledLineMap s = sample_projective_map(ProjectiveMap::identity(2), disk, 5, 5, 12);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.inputs[i] *= 0.4;
    s.outputs[i] = T.apply_affine(s.inputs[i]);
  }
  s = with_origin(s, T);
  EXPECT_EQ(kind_of([&] { disk_recover_orthogonal(s); }), ErrorKind::NotDiskIsometry);
}

TEST(Subspaces, PlanesStayPlanes) {
  std::mt19937_64 rng(16);
  const auto ball = ConvexDomain::unit_ball(3);
  const ProjectiveMap T = testing::random_chart_map(rng, ball);
  SampledLineMap m;
  std::vector<std::vector<int>> planes(2);
  for (int i = 0; i < 6; ++i) {
    const double s = 0.1 * i - 0.25;
    const Vec p = vec3(s, 0.2 * s * s, 0.0);  // z = 0 plane
    const Vec q = vec3(0.3 * s + 0.2 * s * s, s, 0.5 * s);  // plane y - 2z = 0
    for (const auto& [pt, plane] : {std::pair{p, 0}, std::pair{q, 1}}) {
      planes[plane].push_back(static_cast<int>(m.inputs.size()));
      m.inputs.push_back(pt);
      m.outputs.push_back(T.apply_affine(pt));
    }
  }
  EXPECT_EQ(subspace_preservation_check(m, planes).kind, VerdictKind::Holds);
  m.outputs[planes[0][3]] += 1e-3 * T.apply_affine(vec3(0, 0, 0.1)) - 1e-3 * T.apply_affine(vec3(0, 0, 0));
  EXPECT_EQ(subspace_preservation_check(m, planes).kind, VerdictKind::Violated);
  EXPECT_EQ(subspace_preservation_check(m, {{0, 1, 2}}).kind, VerdictKind::Vacuous);
}

}  // namespace
}  // namespace hilbert
