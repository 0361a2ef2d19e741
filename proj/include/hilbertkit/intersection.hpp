#pragma once

// Crossings of closed geodesics on a surface: boundary linking of lifts,
// an independent tracing oracle, the crossing graph and the filling test.

#include <array>
#include <string>
#include <vector>

#include "hilbertkit/surface_group.hpp"

namespace hilbert {

struct GeodesicCollection {
  std::vector<ClosedGeodesic> items;
  std::string label;

  /// Throws InvalidConfig on an empty collection or repeated canonical words.
  void validate() const;
  static GeodesicCollection from_words(const SurfaceGroup& g, const std::vector<std::string>& words,
                                       std::string label = {});
};

/// Axis coordinate u(x) = log(|rx| / |xa|) along the chord from the repelling
/// point r to the attracting point a. Differences of u are Hilbert distances.
double axis_coordinate(const ClosedGeodesic& c, const Vec& x);
Vec axis_point(const ClosedGeodesic& c, double u);
/// Period of the point set: length / power.
double primitive_length(const ClosedGeodesic& c);
/// u of the Euclidean foot of the basepoint on the axis; parameters are
/// measured from here.
double axis_origin(const SurfaceGroup& g, const ClosedGeodesic& c);

struct CrossingPoint {
  Vec surface_point;  // representative in the fundamental domain
  Vec lift;           // chart point on the reference window of the second geodesic
  std::array<int, 2> geodesic{0, 1};
  std::array<double, 2> parameter{0.0, 0.0};  // in [0, primitive length), from axis_origin
  std::array<Vec, 2> tangent;                  // unit chart directions at `lift`
  double angle = 0.0;                          // in (0, pi/2]
};

/// True iff the endpoint pairs interleave in the angular order about the
/// domain center. Throws SameAxis for identical pairs.
bool axes_linked(const ConvexDomain& omega, const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2);
bool axes_linked(const ConvexDomain& omega, const ClosedGeodesic& gamma, const ClosedGeodesic& delta);

/// Crossings of gamma with delta found among lifts g(axis gamma), |g| <= cutoff.
/// A lower bound certified only up to the cutoff. Incidence 0 is gamma,
/// 1 is delta. Throws Precondition when gamma and delta are the same set.
std::vector<CrossingPoint> intersection_points(const SurfaceGroup& g, const ClosedGeodesic& gamma,
                                               const ClosedGeodesic& delta, int cutoff);

/// Transverse self-crossings, one per point of the surface.
std::vector<CrossingPoint> self_intersections(const SurfaceGroup& g, const ClosedGeodesic& gamma, int cutoff);

struct SimplicityVerdict {
  bool simple = true;
  int cutoff = 0;
  std::vector<CrossingPoint> witnesses;
};

SimplicityVerdict is_simple(const SurfaceGroup& g, const ClosedGeodesic& gamma, int cutoff);

struct TraceResult {
  int count = 0;
  std::vector<Vec> points;  // in the fundamental domain
  int pieces = 0;           // fundamental-domain segments traced
};

/// Follows the axis through copies of the fundamental domain for `periods`
/// periods and counts transverse self-crossings in the quotient.
/// Throws Tracing when the walk gets too close to the boundary.
TraceResult trace_geodesic_oracle(const SurfaceGroup& g, const ClosedGeodesic& gamma, int periods = 1);

/// Same for crossings between two geodesics.
TraceResult trace_pair_oracle(const SurfaceGroup& g, const ClosedGeodesic& gamma, const ClosedGeodesic& delta);

/// Whether two fundamental-domain points agree in the quotient, directly or
/// across one side pairing.
bool same_surface_point(const SurfaceGroup& g, const Vec& x, const Vec& y, double tolerance = 1e-7);

struct Arc {
  int geodesic = 0;
  int from = 0;  // vertex index
  int to = 0;
  double t_from = 0.0;
  double t_to = 0.0;  // may wrap past the primitive length
};

/// Crossings as 4-valent vertices, geodesic pieces between consecutive
/// crossings as arcs. End ids are 4 * vertex + 2 * branch + (incoming ? 1 : 0).
struct CrossingGraph {
  int genus = 0;
  int cutoff = 0;
  std::vector<CrossingPoint> vertices;
  std::vector<Arc> arcs;
  std::vector<std::array<int, 4>> rotation;  // ends at each vertex, counterclockwise
  std::vector<int> arc_of_end;               // end id -> arc index
  int crossing_free = 0;                     // geodesics without crossings
  int faces = 0;

  int V() const { return static_cast<int>(vertices.size()); }
  /// Arcs plus one closed edge per crossing-free geodesic.
  int E() const { return static_cast<int>(arcs.size()) + crossing_free; }
  int F() const { return faces; }
  int euler() const { return V() - E() + F(); }
};

/// Throws Tangency on crossings closer than 1e-8 along a geodesic or at
/// angles below 1e-6.
CrossingGraph build_crossing_graph(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff);

struct FillingVerdict {
  bool filling = false;
  int V = 0;
  int E = 0;
  int F = 0;
  int euler = 0;
  int target = 0;  // 2 - 2 genus
  int cutoff = 0;
  std::string reason;
};

/// Filling iff every complementary region is a disk, i.e. V - E + F equals
/// 2 - 2 genus for the traced faces. A collection with a crossing-free
/// member, or no crossings at all, never fills.
FillingVerdict is_filling(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff);
FillingVerdict is_filling(const CrossingGraph& graph);

struct WindowClassification {
  enum class Label { ClosedLike, NonClosedLike, Indeterminate };
  Label label = Label::Indeterminate;
  std::vector<int> counts;  // crossings with lifts of the collection per window
  double window = 0.0;
  int cutoff = 0;
};

std::string_view to_string(WindowClassification::Label label);

/// Heuristic: counts crossings of the chord between two boundary points with
/// lifts of the collection over three consecutive windows of flow length T
/// centered on the basepoint's foot. Equal counts read as closed-like.
WindowClassification classify_against_filling(const SurfaceGroup& g, const Vec& p, const Vec& q,
                                              const GeodesicCollection& c, double window, int cutoff);

struct LaminationVerdict {
  bool lamination = true;
  int cutoff = 0;
  std::string reason;
};

/// Every item simple and every pair disjoint, at the cutoff.
LaminationVerdict verify_finite_lamination(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff);

}  // namespace hilbert
