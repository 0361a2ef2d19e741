#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hilbertkit/errors.hpp"
#include "hilbertkit/metric.hpp"
#include "hilbertkit/surface_group.hpp"

namespace hilbert {
namespace {

using testing::vec2;

const SurfaceGroup& preset() {
  static const SurfaceGroup g = standard_genus2_group();
  return g;
}

Mat sl2(double a, double b, double c) {
  // det = 1 by construction.
  Mat m(2, 2);
  m << a, b, c, (1 + b * c) / a;
  return m;
}

TEST(Words, ParseAndPrint) {
  const GroupWord w = GroupWord::parse("a1b1A1B1");
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(w.str(), "a1b1A1B1");
  EXPECT_EQ(GroupWord::parse("a1A1").str(), "1");
  EXPECT_TRUE(GroupWord::parse("").empty());
  EXPECT_EQ(w.inverse().str(), "b1a1B1A1");
  EXPECT_THROW(GroupWord::parse("x3"), Error);
}

TEST(Words, CanonicalFormIdentifiesRotationsAndInverses) {
  const GroupWord w = GroupWord::parse("b1a2A1");
  EXPECT_EQ(GroupWord::parse("a2A1b1").canonical(), w.canonical());
  EXPECT_EQ(w.inverse().canonical(), w.canonical());
  EXPECT_EQ(GroupWord::parse("B1a1a2b1").canonical(), GroupWord::parse("a1a2").canonical());
  EXPECT_EQ(GroupWord::parse("a1b1a1b1").power(), 2);
  EXPECT_EQ(GroupWord::parse("a1b1").power(), 1);
}

TEST(Sl2, HomomorphismAndSpectrum) {
  EXPECT_LT((sl2_to_so21(Mat::Identity(2, 2)) - Mat::Identity(3, 3)).norm(), 1e-15);
  const double lambda = 3.0;
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::sqrt(lambda);
  d(1, 1) = 1 / std::sqrt(lambda);
  Eigen::EigenSolver<Mat> es(sl2_to_so21(d));
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], 1 / lambda, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  EXPECT_NEAR(ev[2], lambda, 1e-12);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Mat m1 = sl2(u(rng), v(rng), v(rng));
    const Mat m2 = sl2(u(rng), v(rng), v(rng));
    const Mat lhs = sl2_to_so21(m1 * m2);
    EXPECT_LT((lhs - sl2_to_so21(m1) * sl2_to_so21(m2)).norm(), 1e-12 * lhs.norm());
  }
}

Mat embedded_boost() {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::exp(1.0);
  d(1, 1) = std::exp(-1.0);
  return sl2_to_so21(d);
}

TEST(Hyperbolic, BoostData) {
  const auto disk = ConvexDomain::unit_ball(2);
  const Mat M = embedded_boost();
  EXPECT_EQ(classify(M, disk), ElementType::Hyperbolic);
  EXPECT_EQ(classify(Mat::Identity(3, 3), disk), ElementType::Identity);
  EXPECT_EQ(classify(testing::rotation3(0.5), disk), ElementType::Other);
  EXPECT_NEAR(translation_length(M), 4.0, 1e-12);
  EXPECT_NEAR(translation_length(M.inverse()), 4.0, 1e-12);
  EXPECT_NEAR(translation_length(M * M), 8.0, 1e-12);
  const auto [rep, att] = axis(M, disk);
  EXPECT_NEAR(std::abs(rep(0)), 1.0, 1e-12);
  EXPECT_NEAR(rep(0), -att(0), 1e-12);
  EXPECT_NEAR(rep(1), 0.0, 1e-12);
  const auto [rep_inv, att_inv] = axis(M.inverse(), disk);
  EXPECT_LT((rep_inv - att).norm(), 1e-12);
  EXPECT_LT((att_inv - rep).norm(), 1e-12);
  for (int i = 0; i < 10; ++i) {
    const Vec x = rep + (0.05 + 0.09 * i) * (att - rep);
    const Vec h = M * (Vec(3) << x, 1).finished();
    EXPECT_NEAR(hilbert_distance(disk, x, h.head(2) / h(2)), 4.0, 1e-8);
  }
  EXPECT_THROW(translation_length(testing::rotation3(0.3)), Error);
}

TEST(Hyperbolic, ConjugationEquivariance) {
  const auto disk = ConvexDomain::unit_ball(2);
  std::mt19937_64 rng(2);
  const Mat M = embedded_boost();
  for (int i = 0; i < 20; ++i) {
    const Mat g = testing::random_disk_isometry(rng);
    const Mat C = g * M * g.inverse();
    EXPECT_NEAR(translation_length(C), translation_length(M), 1e-9);
    const auto [r, a] = axis(C, disk);
    const auto [r0, a0] = axis(M, disk);
    const ProjectiveMap G(g);
    EXPECT_LT((r - G.apply_affine(r0)).norm(), 1e-8);
    EXPECT_LT((a - G.apply_affine(a0)).norm(), 1e-8);
  }
}

TEST(Preset, Invariants) {
  const auto& g = preset();
  EXPECT_EQ(g.genus(), 2);
  EXPECT_EQ(g.generators().size(), 4u);
  EXPECT_LT((g.evaluate(g.relator()) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-8);
  for (const auto& w : g.ball(4)) {
    if (w.empty()) continue;
    EXPECT_EQ(classify(g.evaluate(w), g.domain()), ElementType::Hyperbolic) << w.str();
  }
  EXPECT_LT((g.evaluate(GroupWord{}) - Mat::Identity(3, 3)).norm(), 1e-15);
  const GroupWord w = GroupWord::parse("a1b2");
  EXPECT_LT((g.evaluate(w) * g.evaluate(w.inverse()) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Preset, BadGroupsAreRejected) {
  const auto& g = preset();
  auto gens = g.generators();
  gens[0] = gens[0] * testing::rotation3(0.01);
  EXPECT_THROW(SurfaceGroup(2, gens, g.basepoint(), g.domain()), Error);
  EXPECT_THROW(SurfaceGroup(1, {gens[0], gens[1]}, g.basepoint(), g.domain()), Error);
}

TEST(Enumerate, GeneratorsAtLengthOne) {
  const auto items = enumerate_closed_geodesics(preset(), 1);
  ASSERT_EQ(items.size(), 4u);
  std::set<std::string> words;
  for (const auto& c : items) words.insert(c.word.str());
  EXPECT_EQ(words, (std::set<std::string>{"a1", "b1", "a2", "b2"}));
}

TEST(Enumerate, LengthThreeIsConsistent) {
  const auto& g = preset();
  const auto items = enumerate_closed_geodesics(g, 3);
  std::set<std::string> words;
  double last = 0.0;
  for (const auto& c : items) {
    EXPECT_TRUE(words.insert(c.word.str()).second) << "duplicate " << c.word.str();
    EXPECT_EQ(words.count(c.word.inverse().canonical().str()), 1u);
    EXPECT_GT(c.length, 0.0);
    EXPECT_GE(c.length, last - 1e-8);
    last = c.length;
    EXPECT_LT(std::abs(g.domain().boundary_residual(c.repelling)), 1e-8);
    EXPECT_LT(std::abs(g.domain().boundary_residual(c.attracting)), 1e-8);
    const Vec x = 0.5 * (c.repelling + c.attracting);
    const Vec h = c.rep * (Vec(3) << x, 1).finished();
    const Vec gx = h.head(2) / h(2);
    EXPECT_NEAR(hilbert_distance(g.domain(), x, gx), c.length, 1e-8) << c.word.str();
    // The image stays on the axis chord.
    const Vec d = (c.attracting - c.repelling).normalized();
    const Vec off = gx - c.repelling;
    EXPECT_LT(std::abs(off(0) * d(1) - off(1) * d(0)), 1e-8);
  }
}

TEST(Reduction, ReturnsToTheBasepoint) {
  const auto& g = preset();
  const auto r0 = dirichlet_reduce(g, g.basepoint());
  EXPECT_TRUE(r0.word.empty());
  for (const char* text : {"a1", "B2", "b1a2"}) {
    const GroupWord w = GroupWord::parse(text);
    const auto r = dirichlet_reduce(g, g.act(w, g.basepoint()));
    EXPECT_EQ(r.word, w.inverse()) << text;
    EXPECT_LT((r.point - g.basepoint()).norm(), 1e-9);
  }
}

TEST(Reduction, DeepPointsSatisfyTheLocalCondition) {
  const auto& g = preset();
  std::mt19937_64 rng(3);
  const auto words = g.ball(3);
  for (int i = 0; i < 20; ++i) {
    const GroupWord w = words[rng() % words.size()];
    const Vec p = g.act(w, g.act(GroupWord::parse("a1"), vec2(0.05, 0.02)));
    const auto r = dirichlet_reduce(g, p);
    EXPECT_LT((g.act(r.word, p) - r.point).norm(), 1e-6);
    const double d0 = hilbert_distance(g.domain(), r.point, g.basepoint());
    for (int gen = 0; gen < 4; ++gen) {
      for (int e : {1, -1}) {
        const Vec q = g.act(GroupWord({Letter{gen, e}}), r.point);
        EXPECT_GE(hilbert_distance(g.domain(), q, g.basepoint()), d0 - 1e-9);
      }
    }
  }
}

TEST(Reduction, CutoffIsReported) {
  const auto& g = preset();
  const Vec deep = g.act(GroupWord::parse("a1a1a1a1b1b1"), g.basepoint());
  try {
    dirichlet_reduce(g, deep, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
  }
}

}  // namespace
}  // namespace hilbert
