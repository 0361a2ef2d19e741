#pragma once

// JSON schemas for domains, maps, groups, collections and samples.

#include <string>
#include <vector>

#include <json.hpp>

#include "hilbertkit/intersection.hpp"
#include "hilbertkit/rigidity.hpp"

namespace hilbert::io {

using nlohmann::json;

json to_json(const Vec& v);
json to_json(const Mat& m);
Vec vec_from_json(const json& j);
Mat mat_from_json(const json& j);

/// "0.5,0" or "0.5 0" style chart points.
Vec parse_point(const std::string& text);

/// {"type": "ellipse", "center": [...], "form": [[...]]}
/// {"type": "pball", "p": 4, "center": [...], "radius": 1}
/// {"type": "transformed", "base": {...}, "mat": [[...]]}
/// {"type": "disk"} is the unit disk; "center"/"form" default to 0 / I.
ConvexDomain domain_from_json(const json& j);
json domain_to_json(const ConvexDomain& d);

ProjectiveMap map_from_json(const json& j);  // {"mat": [[...]]}
json map_to_json(const ProjectiveMap& m);
FractionalLinearMap flt_from_json(const json& j);  // {"A", "b", "c", "d"}
json flt_to_json(const FractionalLinearMap& f);

/// {"genus": 2, "generators": [[[...]]], "basepoint": [...], "domain": {...}}
/// or {"preset": "genus2-octagon"}.
SurfaceGroup group_from_json(const json& j);
json group_to_json(const SurfaceGroup& g);

/// {"label": "...", "words": ["a1", ...]}
GeodesicCollection collection_from_json(const SurfaceGroup& g, const json& j);

/// [{"in": [...], "out": [...], "line": "L0"}, ...] or {"pairs": [...],
/// "planes": [[indices]]}. Pairs sharing a line label form a line group.
struct SampleFile {
  SampledLineMap map;
  std::vector<std::vector<int>> planes;
};
SampleFile samples_from_json(const json& j);
json samples_to_json(const SampledLineMap& m);

json crossing_to_json(const CrossingPoint& c);
json geodesic_to_json(const ClosedGeodesic& c);

json read_file(const std::string& path);

}  // namespace hilbert::io
