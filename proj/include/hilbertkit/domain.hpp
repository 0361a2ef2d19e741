#pragma once

// Strictly convex open domains in an affine chart of RP^2 or RP^3.

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hilbertkit/projective.hpp"

namespace hilbert {

struct Ellipse {
  Vec center;
  Mat form;  // symmetric positive definite; interior is (x-c)^T Q (x-c) < 1
};

struct PBall {
  double p = 2.0;  // 1 < p < inf
  Vec center;
  double radius = 1.0;
};

class ConvexDomain;

struct Transformed {
  std::shared_ptr<const ConvexDomain> base;  // never itself Transformed
  ProjectiveMap map;
  ProjectiveMap inverse;
};

/// The two boundary points of the line through x and y, with parameters
/// along x + t (y - x): the line reads a, x, y, b with t_a < 0 < 1 < t_b.
struct Chord {
  Vec a;
  Vec b;
  double t_a = 0.0;
  double t_b = 0.0;
};

struct StrictConvexityReport {
  int samples = 0;
  double min_margin = 0.0;  // smallest interior margin of a chord midpoint
  Vec witness_p;
  Vec witness_q;
};

class ConvexDomain {
 public:
  enum class Kind { Ellipse, PBall, Transformed };

  static ConvexDomain ellipse(const Vec& center, const Mat& form);
  static ConvexDomain unit_ball(int n);
  static ConvexDomain pball(double p, const Vec& center, double radius);
  /// The image T(base). Throws InvalidConfig unless the closure of the image
  /// stays inside the standard affine chart.
  static ConvexDomain transformed(const ConvexDomain& base, const ProjectiveMap& map);

  Kind kind() const;
  int dim() const;
  const Ellipse* as_ellipse() const { return std::get_if<Ellipse>(&shape_); }
  const PBall* as_pball() const { return std::get_if<PBall>(&shape_); }
  const Transformed* as_transformed() const { return std::get_if<Transformed>(&shape_); }

  /// A distinguished interior point (the image of the base center for
  /// transformed domains).
  Vec center() const;

  /// Gauge residual: negative inside, zero on the boundary, positive outside.
  double boundary_residual(const Vec& x) const;
  double interior_margin(const Vec& x) const { return -boundary_residual(x); }

  /// Open domain: the boundary is excluded.
  bool contains(const Vec& x) const;

  /// Boundary point reached from the interior point `from` along `direction`.
  Vec ray_exit(const Vec& from, const Vec& direction) const;

  /// Throws NoUniqueLine if x == y, OutsideDomain if either is not interior.
  Chord boundary_intersections(const Vec& x, const Vec& y) const;

  /// Parameters (t_lo < 0 < t_hi) of the boundary along x + t d, for interior x.
  std::pair<double, double> line_parameters(const Vec& x, const Vec& d) const;

  /// Deterministic in `seed`; always strictly interior.
  Vec random_interior_point(std::uint64_t seed) const;

  /// `count` boundary points: equally spaced chart angles about center() in
  /// the plane, a Fibonacci lattice of directions in space.
  std::vector<Vec> boundary_samples(int count) const;

  /// Samples random boundary chords and checks every midpoint is interior.
  /// Throws StrictnessViolation naming the first offending chord.
  StrictConvexityReport validate_strict_convexity(int sample_count, std::uint64_t seed = 0) const;

 private:
  explicit ConvexDomain(std::variant<Ellipse, PBall, Transformed> shape) : shape_(std::move(shape)) {}

  std::variant<Ellipse, PBall, Transformed> shape_;
};

/// Pull x back through a transformed domain's map; nullopt if it lands at infinity.
std::optional<Vec> pull_back(const Transformed& t, const Vec& x);

}  // namespace hilbert
