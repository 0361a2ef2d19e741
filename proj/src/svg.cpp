#include "hilbertkit/svg.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "hilbertkit/errors.hpp"

namespace hilbert {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool inside(const Scene& s, const Vec& p) {
  return p(0) >= s.xmin && p(0) <= s.xmax && p(1) >= s.ymin && p(1) <= s.ymax;
}

// Liang-Barsky clip of p + t (q - p), t in [0, 1].
std::optional<std::pair<Vec, Vec>> clip(const Scene& s, const Vec& p, const Vec& q) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec d = q - p;
  const double edges[4][2] = {{-d(0), p(0) - s.xmin}, {d(0), s.xmax - p(0)}, {-d(1), p(1) - s.ymin}, {d(1), s.ymax - p(1)}};
  for (const auto& [den, num] : edges) {
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = num / den;
    if (den < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(Vec(p + t0 * d), Vec(p + t1 * d));
}

}  // namespace

void Scene::add_domain(const ConvexDomain& omega, int samples) {
  if (omega.dim() != 2) throw Error(ErrorKind::InvalidConfig, "only planar domains can be drawn");
  paths.push_back({omega.boundary_samples(samples), true, "#222222"});
}

void Scene::add_chord(const Vec& from, const Vec& to, std::string color) { segments.push_back({from, to, std::move(color)}); }

void Scene::add_point(const Vec& at, std::string label, std::string color) {
  markers.push_back({at, std::move(label), std::move(color)});
}

void Scene::fit_to(const ConvexDomain& omega) {
  const auto pts = omega.boundary_samples(256);
  xmin = ymin = std::numeric_limits<double>::infinity();
  xmax = ymax = -std::numeric_limits<double>::infinity();
  for (const Vec& p : pts) {
    xmin = std::min(xmin, p(0));
    xmax = std::max(xmax, p(0));
    ymin = std::min(ymin, p(1));
    ymax = std::max(ymax, p(1));
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
}

SvgDocument render_svg(const Scene& s) {
  if (!(s.xmax > s.xmin) || !(s.ymax > s.ymin) || s.size <= 0) {
    throw Error(ErrorKind::InvalidConfig, "empty viewport");
  }
  SvgDocument doc;
  const double scale = s.size / std::max(s.xmax - s.xmin, s.ymax - s.ymin);
  const double width = (s.xmax - s.xmin) * scale;
  const double height = (s.ymax - s.ymin) * scale;
  auto px = [&](const Vec& p) { return fmt((p(0) - s.xmin) * scale); };
  auto py = [&](const Vec& p) { return fmt((s.ymax - p(1)) * scale); };  // chart y points up

  std::string& out = doc.text;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  for (std::size_t i = 0; i < s.paths.size(); ++i) {
    const auto& path = s.paths[i];
    if (path.points.empty()) continue;
    bool clipped = false;
    std::string d;
    for (std::size_t k = 0; k < path.points.size(); ++k) {
      Vec p = path.points[k];
      if (!inside(s, p)) {
        clipped = true;
        p(0) = std::clamp(p(0), s.xmin, s.xmax);
        p(1) = std::clamp(p(1), s.ymin, s.ymax);
      }
      d += (k == 0 ? "M" : " L") + px(p) + " " + py(p);
    }
    if (path.closed) d += " Z";
    if (clipped) doc.warnings.push_back("path " + std::to_string(i) + " clipped to the viewport");
    out += "  <path d=\"" + d + "\" fill=\"none\" stroke=\"" + escape(path.color) + "\" stroke-width=\"" +
           fmt(s.stroke) + "\"/>\n";
  }
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const auto& seg = s.segments[i];
    const auto c = clip(s, seg.from, seg.to);
    if (!c) {
      doc.warnings.push_back("segment " + std::to_string(i) + " lies outside the viewport");
      continue;
    }
    if (!inside(s, seg.from) || !inside(s, seg.to)) {
      doc.warnings.push_back("segment " + std::to_string(i) + " clipped to the viewport");
    }
    out += "  <line x1=\"" + px(c->first) + "\" y1=\"" + py(c->first) + "\" x2=\"" + px(c->second) + "\" y2=\"" +
           py(c->second) + "\" stroke=\"" + escape(seg.color) + "\" stroke-width=\"" + fmt(s.stroke) + "\"/>\n";
  }
  for (std::size_t i = 0; i < s.markers.size(); ++i) {
    const auto& m = s.markers[i];
    if (!inside(s, m.at)) {
      doc.warnings.push_back("point " + std::to_string(i) + " lies outside the viewport");
      continue;
    }
    out += "  <circle cx=\"" + px(m.at) + "\" cy=\"" + py(m.at) + "\" r=\"" + fmt(2.0 * s.stroke) + "\" fill=\"" +
           escape(m.color) + "\"/>\n";
    if (s.labels && !m.label.empty()) {
      out += "  <text x=\"" + fmt((m.at(0) - s.xmin) * scale + 4.0 * s.stroke) + "\" y=\"" +
             fmt((s.ymax - m.at(1)) * scale - 4.0 * s.stroke) + "\" font-family=\"serif\" font-size=\"" +
             fmt(8.0 * s.stroke + 2.0) + "\">" + escape(m.label) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return doc;
}

}  // namespace hilbert
