#include "hilbertkit/metric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hilbertkit/errors.hpp"

namespace hilbert {

namespace {

// Distance from x to x + s d when the chord reads t_a < 0 <= s < t_b.
double chord_distance(double t_a, double t_b, double s) {
  return std::log1p(s / (-t_a)) + std::log1p(s / (t_b - s));
}

bool same_point(const Vec& x, const Vec& y) { return (x - y).norm() <= 1e-15 * (1.0 + x.norm()); }

}  // namespace

double hilbert_distance(const ConvexDomain& omega, const Vec& x, const Vec& y) {
  if (x.size() != omega.dim() || y.size() != omega.dim()) {
    throw Error(ErrorKind::InvalidConfig, "dimension mismatch");
  }
  if (!omega.contains(x) || !omega.contains(y)) {
    throw Error(ErrorKind::OutsideDomain, "distance is defined for interior points only");
  }
  if (same_point(x, y)) return 0.0;
  const Chord chord = omega.boundary_intersections(x, y);
  // With s = 1: (1 - t_a)/(-t_a) * t_b/(t_b - 1).
  return std::log1p(1.0 / (-chord.t_a)) + std::log1p(1.0 / (chord.t_b - 1.0));
}

Vec point_at_distance(const ConvexDomain& omega, const Vec& x, const Vec& direction, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::Precondition, "geodesic parameter must be >= 0");
  if (t == 0.0) {
    if (!omega.contains(x)) throw Error(ErrorKind::OutsideDomain, "start point is not interior");
    return x;
  }
  const auto [t_a, t_b] = omega.line_parameters(x, direction);
  // The cross ratio is multiplicative along the chord, so d(x, x + s d) = t
  // solves in closed form.
  const double et = std::exp(t);
  double s = -t_a * t_b * std::expm1(t) / (t_b - et * t_a);
  if (!std::isfinite(s) || !(s < t_b)) {
    throw Error(ErrorKind::BoundaryOverflow, "distance " + std::to_string(t) + " runs past the boundary");
  }
  const double tolerance = 1e-10 * std::max(1.0, t);
  if (std::abs(chord_distance(t_a, t_b, s) - t) > tolerance) {
    double lo = 0.0;
    double hi = t_b;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (chord_distance(t_a, t_b, mid) < t ? lo : hi) = mid;
    }
    s = lo;
  }
  const Vec z = x + s * direction;
  if (!omega.contains(z)) {
    throw Error(ErrorKind::BoundaryOverflow, "distance " + std::to_string(t) + " leaves the interior");
  }
  return z;
}

Vec geodesic_point(const ConvexDomain& omega, const Vec& x, const Vec& y, double t) {
  if (same_point(x, y)) throw Error(ErrorKind::NoUniqueLine, "x and y coincide");
  if (!omega.contains(y)) throw Error(ErrorKind::OutsideDomain, "y is not interior");
  return point_at_distance(omega, x, y - x, t);
}

std::vector<Vec> ball_boundary_sample(const ConvexDomain& omega, const Vec& center, double radius, int k) {
  if (k < 3) throw Error(ErrorKind::Precondition, "ball sampling needs k >= 3");
  if (!(radius >= 0.0)) throw Error(ErrorKind::Precondition, "ball radius must be nonnegative");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(k));
  const int n = omega.dim();
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < k; ++i) {
    Vec d(n);
    if (n == 2) {
      const double theta = 2.0 * std::numbers::pi * i / k;
      d << std::cos(theta), std::sin(theta);
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / k;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      d << r * std::cos(golden * i), r * std::sin(golden * i), z;
    }
    out.push_back(point_at_distance(omega, center, d, radius));
  }
  return out;
}

void MetricSampleReport::record(const ConvexDomain& omega, const std::array<Vec, 3>& triple,
                                const std::array<Vec, 3>& collinear) {
  const auto& [x, y, z] = triple;
  const double xy = hilbert_distance(omega, x, y);
  const double sym = std::abs(xy - hilbert_distance(omega, y, x));
  const double tri = std::max(0.0, hilbert_distance(omega, x, z) - xy - hilbert_distance(omega, y, z));
  const auto& [p, q, r] = collinear;
  const double add =
      std::abs(hilbert_distance(omega, p, r) - hilbert_distance(omega, p, q) - hilbert_distance(omega, q, r));
  ++samples;
  if (samples == 1 || sym > symmetry_defect) {
    symmetry_defect = sym;
    symmetry_witness = triple;
  }
  if (samples == 1 || tri > triangle_defect) {
    triangle_defect = tri;
    triangle_witness = triple;
  }
  if (samples == 1 || add > additivity_defect) {
    additivity_defect = add;
    additivity_witness = collinear;
  }
}

MetricSampleReport metric_axiom_suite(const ConvexDomain& omega, int sample_count, std::uint64_t seed) {
  if (sample_count < 3) throw Error(ErrorKind::Precondition, "axiom suite needs at least 3 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.05, 0.95);
  MetricSampleReport report;
  for (int i = 0; i < sample_count; ++i) {
    const Vec x = omega.random_interior_point(rng());
    const Vec y = omega.random_interior_point(rng());
    const Vec z = omega.random_interior_point(rng());
    const Vec between = x + uniform(rng) * (z - x);
    report.record(omega, {x, y, z}, {x, between, z});
  }
  return report;
}

}  // namespace hilbert
