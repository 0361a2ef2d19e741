#include "hilbertkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hilbertkit/errors.hpp"

namespace hilbert::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidConfig, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorKind::InvalidConfig, std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidConfig, "expected a nonempty number array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorKind::InvalidConfig, "expected a row-major array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorKind::InvalidConfig, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], "matrix entry");
    }
  }
  return m;
}

Vec parse_point(const std::string& text) {
  std::string cleaned = text;
  for (char& ch : cleaned) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream is(cleaned);
  std::vector<double> values;
  std::string token;
  while (is >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw Error(ErrorKind::InvalidConfig, "cannot read point \"" + text + "\"");
    values.push_back(v);
  }
  if (values.size() < 2 || values.size() > 3) {
    throw Error(ErrorKind::InvalidConfig, "point \"" + text + "\" needs 2 or 3 coordinates");
  }
  return Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ConvexDomain domain_from_json(const json& j) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "disk" || type == "ball") {
    const int dim = j.value("dim", type == "disk" ? 2 : 3);
    return ConvexDomain::unit_ball(dim);
  }
  if (type == "ellipse") {
    const Vec center = vec_from_json(require(j, "center"));
    const Mat form = j.contains("form") ? mat_from_json(j.at("form")) : Mat::Identity(center.size(), center.size());
    return ConvexDomain::ellipse(center, form);
  }
  if (type == "pball") {
    const Vec center = j.contains("center") ? vec_from_json(j.at("center")) : Vec::Zero(j.value("dim", 2));
    return ConvexDomain::pball(number(require(j, "p"), "p"), center, j.value("radius", 1.0));
  }
  if (type == "transformed") {
    return ConvexDomain::transformed(domain_from_json(require(j, "base")), ProjectiveMap(mat_from_json(require(j, "mat"))));
  }
  throw Error(ErrorKind::InvalidConfig, "unknown domain type \"" + type + "\"");
}

json domain_to_json(const ConvexDomain& d) {
  if (const auto* e = d.as_ellipse()) return {{"type", "ellipse"}, {"center", to_json(e->center)}, {"form", to_json(e->form)}};
  if (const auto* b = d.as_pball()) {
    return {{"type", "pball"}, {"p", b->p}, {"center", to_json(b->center)}, {"radius", b->radius}};
  }
  const auto* t = d.as_transformed();
  return {{"type", "transformed"}, {"base", domain_to_json(*t->base)}, {"mat", to_json(t->map.matrix())}};
}

ProjectiveMap map_from_json(const json& j) { return ProjectiveMap(mat_from_json(j.is_object() ? require(j, "mat") : j)); }

json map_to_json(const ProjectiveMap& m) { return {{"mat", to_json(m.matrix())}}; }

FractionalLinearMap flt_from_json(const json& j) {
  return FractionalLinearMap(mat_from_json(require(j, "A")), vec_from_json(require(j, "b")),
                             vec_from_json(require(j, "c")), number(require(j, "d"), "d"));
}

json flt_to_json(const FractionalLinearMap& f) {
  return {{"A", to_json(f.A())}, {"b", to_json(f.b())}, {"c", to_json(f.c())}, {"d", f.d()}};
}

SurfaceGroup group_from_json(const json& j) {
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "genus2-octagon") return standard_genus2_group();
    throw Error(ErrorKind::InvalidConfig, "unknown preset \"" + preset + "\"");
  }
  const int genus = require(j, "genus").get<int>();
  std::vector<Mat> gens;
  for (const auto& g : require(j, "generators")) gens.push_back(mat_from_json(g));
  const Vec basepoint = j.contains("basepoint") ? vec_from_json(j.at("basepoint")) : Vec::Zero(2);
  const ConvexDomain domain = j.contains("domain") ? domain_from_json(j.at("domain")) : ConvexDomain::unit_ball(2);
  return SurfaceGroup(genus, std::move(gens), basepoint, domain, j.value("hyperbolic_check_length", 2));
}

json group_to_json(const SurfaceGroup& g) {
  json gens = json::array();
  for (const auto& m : g.generators()) gens.push_back(to_json(m));
  return {{"genus", g.genus()},
          {"generators", gens},
          {"basepoint", to_json(g.basepoint())},
          {"domain", domain_to_json(g.domain())}};
}

GeodesicCollection collection_from_json(const SurfaceGroup& g, const json& j) {
  std::vector<std::string> words;
  const json& list = j.is_array() ? j : require(j, "words");
  for (const auto& w : list) words.push_back(w.get<std::string>());
  return GeodesicCollection::from_words(g, words, j.is_object() ? j.value("label", "") : "");
}

SampleFile samples_from_json(const json& j) {
  const json& pairs = j.is_array() ? j : require(j, "pairs");
  SampleFile out;
  std::map<std::string, std::size_t> group_of_label;
  for (const auto& p : pairs) {
    const int index = static_cast<int>(out.map.inputs.size());
    out.map.inputs.push_back(vec_from_json(require(p, "in")));
    out.map.outputs.push_back(vec_from_json(require(p, "out")));
    if (p.contains("line")) {
      const std::string label = p.at("line").is_string() ? p.at("line").get<std::string>() : p.at("line").dump();
      auto [it, fresh] = group_of_label.try_emplace(label, out.map.lines.size());
      if (fresh) out.map.lines.emplace_back();
      out.map.lines[it->second].push_back(index);
    }
  }
  if (j.is_object() && j.contains("planes")) {
    for (const auto& plane : j.at("planes")) out.planes.push_back(plane.get<std::vector<int>>());
  }
  return out;
}

json samples_to_json(const SampledLineMap& m) {
  std::vector<int> line_of(m.size(), -1);
  for (std::size_t g = 0; g < m.lines.size(); ++g) {
    for (int idx : m.lines[g]) line_of[static_cast<std::size_t>(idx)] = static_cast<int>(g);
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json p = {{"in", to_json(m.inputs[i])}, {"out", to_json(m.outputs[i])}};
    if (line_of[i] >= 0) p["line"] = "L" + std::to_string(line_of[i]);
    pairs.push_back(std::move(p));
  }
  return {{"pairs", pairs}};
}

json crossing_to_json(const CrossingPoint& c) {
  return {{"surface_point", to_json(c.surface_point)},
          {"lift", to_json(c.lift)},
          {"geodesics", {c.geodesic[0], c.geodesic[1]}},
          {"parameters", {c.parameter[0], c.parameter[1]}},
          {"angle", c.angle}};
}

json geodesic_to_json(const ClosedGeodesic& c) {
  return {{"word", c.word.str()},
          {"length", c.length},
          {"primitive", c.primitive()},
          {"repelling", to_json(c.repelling)},
          {"attracting", to_json(c.attracting)},
          {"matrix", to_json(c.rep)}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
}

}  // namespace hilbert::io
