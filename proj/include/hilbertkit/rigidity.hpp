#pragma once

// Line-preserving maps: order and interval checks on samples, the separating
// lines construction, projective fitting and isometry verification.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hilbertkit/domain.hpp"

namespace hilbert {

/// A finite tabulation x_i -> f(x_i), with index groups of inputs sharing a line.
struct SampledLineMap {
  std::vector<Vec> inputs;
  std::vector<Vec> outputs;
  std::vector<std::vector<int>> lines;

  std::size_t size() const { return inputs.size(); }
  int dim() const { return inputs.empty() ? 0 : static_cast<int>(inputs.front().size()); }

  /// Throws Precondition on repeated inputs/outputs or non-collinear groups.
  void validate() const;

  /// Outputs become inputs; groups are kept.
  SampledLineMap reversed() const;
};

/// `line_count` random chords of omega with `points_per_line` points each,
/// pushed through T.
SampledLineMap sample_projective_map(const ProjectiveMap& T, const ConvexDomain& omega, int line_count,
                                     int points_per_line, std::uint64_t seed);

/// y lies between x and z: |xy| + |yz| - |xz| < 1e-9 |xz|.
bool between(const Vec& x, const Vec& y, const Vec& z, double tolerance = 1e-9);

enum class VerdictKind { Holds, Violated, Vacuous };

std::string_view to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Vacuous;
  std::array<int, 3> witness{-1, -1, -1};  // sample indices (x, y, z) with y the middle input
  int groups_checked = 0;
  int groups_skipped = 0;  // too small to say anything
  std::string detail;

  bool holds() const { return kind != VerdictKind::Violated; }
};

/// Throws GeodesicViolation when a group's outputs are not collinear.
Verdict check_order_preserving(const SampledLineMap& m);

/// Images of points between x and y must lie on the segment [f(x), f(y)].
/// Images pushed off the segment (or off the line) give a Violated verdict.
Verdict check_interval_preserving(const SampledLineMap& m);

/// Images of coplanar input groups (>= 4 points) stay coplanar. Dimension 3.
Verdict subspace_preservation_check(const SampledLineMap& m, const std::vector<std::vector<int>>& planes);

struct FitResult {
  ProjectiveMap map;
  double residual = 0.0;  // max reprojection error over the pairs
};

/// Normalized direct linear fit of a projective map to >= n + 2 pairs.
/// Throws FitDegeneracy when the configuration does not determine the map.
FitResult fit_projective_map(const std::vector<Vec>& inputs, const std::vector<Vec>& outputs);

struct DomainPreservationReport {
  int boundary_samples = 0;
  int interior_samples = 0;
  double boundary_defect = 0.0;  // max radial distance from T(boundary sample) to the boundary
  bool interior_preserved = true;
};

DomainPreservationReport verify_domain_preserved(const ProjectiveMap& T, const ConvexDomain& omega,
                                                 int sample_count);

/// Max |d(Tx, Ty) - d(x, y)| over random pairs. Throws Precondition unless
/// T preserves omega to 1e-6.
double verify_isometry(const ProjectiveMap& T, const ConvexDomain& omega, int pair_count, std::uint64_t seed);

struct OrthogonalRecovery {
  Mat B;
  double orthogonality_defect = 0.0;  // ||B^T B - I||_inf
  double fit_residual = 0.0;
};

/// For a sampled map of the unit ball fixing the origin: fit, check that the
/// translation and denominator parts vanish, and return the linear part.
/// Throws Precondition when 0 -> 0 is missing, NotDiskIsometry when b or c
/// does not vanish.
OrthogonalRecovery disk_recover_orthogonal(const SampledLineMap& m);

/// The configuration of separating lines for a, b, c in order on a line L.
/// In dimension 3 the lines L_b and L_c are widened to planes H_b, H_c
/// through `normal`.
struct SeparatingConfiguration {
  Vec a, b, c;
  Chord L;
  Vec x, y, z;  // boundary witnesses
  Chord L_a;    // from y through a to x
  Chord L_b;    // from y through b
  Chord L_c;    // from x through c to z
  Vec normal;   // empty in dimension 2
};

SeparatingConfiguration construct_separating(const ConvexDomain& omega, const Vec& a, const Vec& b, const Vec& c);

struct SeparationCheck {
  bool incidence = false;      // a on L_a, b on H_b, c on H_c
  bool bc_meet_inside = false;  // H_b and H_c meet inside omega
  bool a_separated = false;     // L_a misses H_b and H_c inside omega
  double bc_margin = 0.0;      // interior margin of the H_b, H_c meeting point
  bool all() const { return incidence && bc_meet_inside && a_separated; }
};

SeparationCheck check_separating(const ConvexDomain& omega, const SeparatingConfiguration& config,
                                 double tolerance = 1e-9);

}  // namespace hilbert
