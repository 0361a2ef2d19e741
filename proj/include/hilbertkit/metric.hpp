#pragma once

// Cross-ratio distance on a strictly convex domain, and its chord geodesics.

#include <array>
#include <cstdint>
#include <vector>

#include "hilbertkit/domain.hpp"

namespace hilbert {

/// log[(|ay|/|ax|)(|bx|/|by|)], with no 1/2 factor: on the unit disk this is
/// twice the Klein-model hyperbolic distance. Throws OutsideDomain.
double hilbert_distance(const ConvexDomain& omega, const Vec& x, const Vec& y);

/// The point z on the ray from x through y with d(x, z) = t. t may exceed
/// d(x, y). Throws BoundaryOverflow when z cannot be kept interior.
Vec geodesic_point(const ConvexDomain& omega, const Vec& x, const Vec& y, double t);

/// Same, along an explicit chart direction.
Vec point_at_distance(const ConvexDomain& omega, const Vec& x, const Vec& direction, double t);

/// k points at distance `radius` from `center`, in equally spaced chart
/// directions (a Fibonacci lattice of directions in dimension 3).
std::vector<Vec> ball_boundary_sample(const ConvexDomain& omega, const Vec& center, double radius, int k);

struct MetricSampleReport {
  int samples = 0;
  double symmetry_defect = 0.0;    // max |d(x,y) - d(y,x)|
  double triangle_defect = 0.0;    // max (d(x,z) - d(x,y) - d(y,z))^+
  double additivity_defect = 0.0;  // max |d(x,z) - d(x,y) - d(y,z)|, y between x and z
  std::array<Vec, 3> symmetry_witness;
  std::array<Vec, 3> triangle_witness;
  std::array<Vec, 3> additivity_witness;

  /// Folds one general triple and one collinear triple into the maxima.
  void record(const ConvexDomain& omega, const std::array<Vec, 3>& triple, const std::array<Vec, 3>& collinear);
  bool passes(double tolerance) const {
    return symmetry_defect < tolerance && triangle_defect < tolerance && additivity_defect < tolerance;
  }
};

MetricSampleReport metric_axiom_suite(const ConvexDomain& omega, int sample_count, std::uint64_t seed);

}  // namespace hilbert
