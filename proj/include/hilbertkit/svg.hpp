#pragma once

// Deterministic SVG pictures of planar chart scenes.

#include <string>
#include <vector>

#include "hilbertkit/domain.hpp"

namespace hilbert {

struct Scene {
  // Chart viewport and output size.
  double xmin = -1.1;
  double xmax = 1.1;
  double ymin = -1.1;
  double ymax = 1.1;
  int size = 512;
  double stroke = 1.5;
  bool labels = true;

  struct Path {
    std::vector<Vec> points;
    bool closed = true;
    std::string color = "#222222";
  };
  struct Segment {
    Vec from;
    Vec to;
    std::string color = "#1f5fbf";
  };
  struct Marker {
    Vec at;
    std::string label;
    std::string color = "#c0392b";
  };

  std::vector<Path> paths;
  std::vector<Segment> segments;
  std::vector<Marker> markers;

  /// Boundary of a planar domain as a closed path.
  void add_domain(const ConvexDomain& omega, int samples = 256);
  void add_chord(const Vec& from, const Vec& to, std::string color = "#1f5fbf");
  void add_point(const Vec& at, std::string label = {}, std::string color = "#c0392b");
  /// Frame the viewport around the domain with a 5% margin.
  void fit_to(const ConvexDomain& omega);
};

struct SvgDocument {
  std::string text;
  std::vector<std::string> warnings;  // clipped or dropped elements
};

SvgDocument render_svg(const Scene& scene);

}  // namespace hilbert
