#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hilbertkit/errors.hpp"
#include "hilbertkit/io.hpp"
#include "hilbertkit/metric.hpp"
#include "hilbertkit/svg.hpp"

namespace hilbert::cli {

namespace {

using io::json;
using io::to_json;

constexpr double kDefaultTolerance = 1e-9;

double default_tolerance() {
  const char* env = std::getenv("HILBERTKIT_TOLERANCE");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || v >= 1.0) {
    throw Error(ErrorKind::InvalidConfig, std::string("HILBERTKIT_TOLERANCE must be a number in (0, 1), got ") + env);
  }
  return v;
}

struct Options {
  std::string domain;
  std::string group;
  std::string collection;
  std::string samples;
  std::string map;
  std::string out;
  std::string x, y, a, b, c, p, q, center, word, word_b;
  std::vector<std::string> lines;
  std::vector<std::string> points;
  std::string preset = "genus2-octagon";
  double t = 0.0;
  double radius = 1.0;
  double window = 0.0;
  double max_defect = 1e-8;
  std::optional<double> tolerance;
  int count = 0;
  int k = 64;
  int max_len = 2;
  int cutoff = 6;
  bool oracle = false;
  std::uint64_t seed = 0;

  std::string svg;
  int size = 512;
  double stroke = 1.5;
  bool no_labels = false;
};

struct Context {
  Options opt;
  double tol = kDefaultTolerance;
};

json tolerances(const Context& ctx, json extra = json::object()) {
  json t = {{"tolerance", ctx.tol},
            {"point_equality", tol::kPointEquality},
            {"collinearity", tol::kCollinearity},
            {"betweenness", 1e-9}};
  for (auto& [key, value] : extra.items()) t[key] = value;
  return t;
}

ConvexDomain load_domain(const Context& ctx) {
  return io::domain_from_json(io::read_file(ctx.opt.domain));
}

SurfaceGroup load_group(const Context& ctx) {
  if (ctx.opt.group.empty()) return standard_genus2_group();
  return io::group_from_json(io::read_file(ctx.opt.group));
}

Vec point(const std::string& text, int dim) {
  Vec v = io::parse_point(text);
  if (v.size() != dim) {
    throw Error(ErrorKind::InvalidConfig,
                "point \"" + text + "\" has " + std::to_string(v.size()) + " coordinates, domain has " +
                    std::to_string(dim));
  }
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidConfig, "cannot write " + path);
  os << text;
}

Scene make_scene(const Context& ctx, const ConvexDomain& omega) {
  Scene s;
  s.size = ctx.opt.size;
  s.stroke = ctx.opt.stroke;
  s.labels = !ctx.opt.no_labels;
  s.fit_to(omega);
  s.add_domain(omega);
  return s;
}

// Writes the picture when --svg was given and notes it in the report.
void emit_svg(const Context& ctx, const Scene& scene, json& report) {
  if (ctx.opt.svg.empty()) return;
  const SvgDocument doc = render_svg(scene);
  write_text(ctx.opt.svg, doc.text);
  report["svg"] = {{"path", ctx.opt.svg}, {"warnings", doc.warnings}};
}

bool planar_svg(const Context& ctx, const ConvexDomain& omega, json& report) {
  if (ctx.opt.svg.empty()) return false;
  if (omega.dim() != 2) {
    report["svg"] = {{"path", nullptr}, {"warnings", {"pictures are drawn for planar domains only"}}};
    return false;
  }
  return true;
}

json chord_json(const Chord& ch) {
  return {{"a", to_json(ch.a)}, {"b", to_json(ch.b)}, {"t_a", ch.t_a}, {"t_b", ch.t_b}};
}

// ---- body and metric ----

json cmd_body_validate(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const auto report = omega.validate_strict_convexity(ctx.opt.count, ctx.opt.seed);
  return {{"command", "body validate"},
          {"domain", io::domain_to_json(omega)},
          {"dim", omega.dim()},
          {"strictly_convex", true},
          {"samples", report.samples},
          {"min_margin", report.min_margin},
          {"seed", ctx.opt.seed},
          {"tolerances", tolerances(ctx)}};
}

json cmd_dist(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const Vec x = point(ctx.opt.x, omega.dim());
  const Vec y = point(ctx.opt.y, omega.dim());
  json report = {{"command", "dist"},
                 {"x", to_json(x)},
                 {"y", to_json(y)},
                 {"distance", hilbert_distance(omega, x, y)},
                 {"tolerances", tolerances(ctx)}};
  if ((x - y).norm() > tol::kPointEquality) {
    const Chord ch = omega.boundary_intersections(x, y);
    report["chord"] = chord_json(ch);
    if (planar_svg(ctx, omega, report)) {
      Scene s = make_scene(ctx, omega);
      s.add_chord(ch.a, ch.b);
      s.add_point(ch.a, "a", "#222222");
      s.add_point(x, "x");
      s.add_point(y, "y");
      s.add_point(ch.b, "b", "#222222");
      emit_svg(ctx, s, report);
    }
  }
  return report;
}

json cmd_geodesic(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const Vec x = point(ctx.opt.x, omega.dim());
  const Vec y = point(ctx.opt.y, omega.dim());
  const Vec z = geodesic_point(omega, x, y, ctx.opt.t);
  json report = {{"command", "geodesic"},
                 {"x", to_json(x)},
                 {"y", to_json(y)},
                 {"t", ctx.opt.t},
                 {"point", to_json(z)},
                 {"distance_check", std::abs(hilbert_distance(omega, x, z) - ctx.opt.t)},
                 {"tolerances", tolerances(ctx)}};
  if (planar_svg(ctx, omega, report)) {
    const Chord ch = omega.boundary_intersections(x, y);
    Scene s = make_scene(ctx, omega);
    s.add_chord(ch.a, ch.b);
    s.add_point(x, "x");
    s.add_point(y, "y");
    s.add_point(z, "z", "#1f5fbf");
    emit_svg(ctx, s, report);
  }
  return report;
}

json cmd_ball(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const Vec center = point(ctx.opt.center, omega.dim());
  const auto pts = ball_boundary_sample(omega, center, ctx.opt.radius, ctx.opt.k);
  double defect = 0.0;
  json arr = json::array();
  for (const Vec& p : pts) {
    defect = std::max(defect, std::abs(hilbert_distance(omega, center, p) - ctx.opt.radius));
    arr.push_back(to_json(p));
  }
  json report = {{"command", "ball"},
                 {"center", to_json(center)},
                 {"radius", ctx.opt.radius},
                 {"k", ctx.opt.k},
                 {"points", arr},
                 {"radius_defect", defect},
                 {"tolerances", tolerances(ctx)}};
  if (planar_svg(ctx, omega, report)) {
    Scene s = make_scene(ctx, omega);
    s.paths.push_back({pts, true, "#1f5fbf"});
    s.add_point(center, "c");
    emit_svg(ctx, s, report);
  }
  return report;
}

json witness_json(const std::array<Vec, 3>& w) {
  json arr = json::array();
  for (const Vec& v : w) {
    if (v.size() > 0) arr.push_back(to_json(v));
  }
  return arr;
}

json cmd_axioms(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const auto r = metric_axiom_suite(omega, ctx.opt.count, ctx.opt.seed);
  return {{"command", "axioms"},
          {"samples", r.samples},
          {"seed", ctx.opt.seed},
          {"symmetry_defect", r.symmetry_defect},
          {"triangle_defect", r.triangle_defect},
          {"additivity_defect", r.additivity_defect},
          {"witnesses",
           {{"symmetry", witness_json(r.symmetry_witness)},
            {"triangle", witness_json(r.triangle_witness)},
            {"additivity", witness_json(r.additivity_witness)}}},
          {"passes", r.passes(ctx.tol)},
          {"tolerances", tolerances(ctx)}};
}

// ---- rigidity ----

json cmd_separate(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  const Vec a = point(ctx.opt.a, omega.dim());
  const Vec b = point(ctx.opt.b, omega.dim());
  const Vec c = point(ctx.opt.c, omega.dim());
  const auto cfg = construct_separating(omega, a, b, c);
  const auto chk = check_separating(omega, cfg, ctx.tol);
  json report = {{"command", "separate"},
                 {"a", to_json(a)},
                 {"b", to_json(b)},
                 {"c", to_json(c)},
                 {"L", chord_json(cfg.L)},
                 {"x", to_json(cfg.x)},
                 {"y", to_json(cfg.y)},
                 {"z", to_json(cfg.z)},
                 {"L_a", chord_json(cfg.L_a)},
                 {"L_b", chord_json(cfg.L_b)},
                 {"L_c", chord_json(cfg.L_c)},
                 {"check",
                  {{"incidence", chk.incidence},
                   {"bc_meet_inside", chk.bc_meet_inside},
                   {"a_separated", chk.a_separated},
                   {"bc_margin", chk.bc_margin},
                   {"all", chk.all()}}},
                 {"tolerances", tolerances(ctx)}};
  if (cfg.normal.size() > 0) report["normal"] = to_json(cfg.normal);
  if (planar_svg(ctx, omega, report)) {
    Scene s = make_scene(ctx, omega);
    s.add_chord(cfg.L.a, cfg.L.b, "#222222");
    s.add_chord(cfg.L_a.a, cfg.L_a.b);
    s.add_chord(cfg.L_b.a, cfg.L_b.b);
    s.add_chord(cfg.L_c.a, cfg.L_c.b);
    s.add_point(a, "a");
    s.add_point(b, "b");
    s.add_point(c, "c");
    s.add_point(cfg.x, "x", "#222222");
    s.add_point(cfg.y, "y", "#222222");
    s.add_point(cfg.z, "z", "#222222");
    emit_svg(ctx, s, report);
  }
  return report;
}

json verdict_json(const Verdict& v) {
  json w = nullptr;
  if (v.witness[0] >= 0) w = {v.witness[0], v.witness[1], v.witness[2]};
  return {{"verdict", to_string(v.kind)},
          {"holds", v.holds()},
          {"witness", w},
          {"groups_checked", v.groups_checked},
          {"groups_skipped", v.groups_skipped},
          {"detail", v.detail}};
}

json cmd_check_order(const Context& ctx) {
  const auto file = io::samples_from_json(io::read_file(ctx.opt.samples));
  json report = {{"command", "check-order"},
                 {"pairs", file.map.inputs.size()},
                 {"order", verdict_json(check_order_preserving(file.map))},
                 {"interval", verdict_json(check_interval_preserving(file.map))},
                 {"tolerances", tolerances(ctx, {{"output_collinearity", 1e-6}})}};
  if (!file.planes.empty()) report["subspace"] = verdict_json(subspace_preservation_check(file.map, file.planes));
  return report;
}

json cmd_fit(const Context& ctx) {
  const auto file = io::samples_from_json(io::read_file(ctx.opt.samples));
  const auto fit = fit_projective_map(file.map.inputs, file.map.outputs);
  return {{"command", "fit"},
          {"pairs", file.map.inputs.size()},
          {"matrix", to_json(fit.map.matrix())},
          {"residual", fit.residual},
          {"tolerances", tolerances(ctx, {{"fit_degeneracy", 1e-10}})}};
}

json cmd_verify_isometry(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  std::optional<ProjectiveMap> T;
  json source;
  if (!ctx.opt.map.empty()) {
    T = io::map_from_json(io::read_file(ctx.opt.map));
    source = {{"map", ctx.opt.map}};
  } else if (!ctx.opt.samples.empty()) {
    const auto file = io::samples_from_json(io::read_file(ctx.opt.samples));
    const auto fit = fit_projective_map(file.map.inputs, file.map.outputs);
    T = fit.map;
    source = {{"samples", ctx.opt.samples}, {"fit_residual", fit.residual}};
  } else {
    throw Error(ErrorKind::InvalidConfig, "verify-isometry needs --map or --samples");
  }
  const auto pres = verify_domain_preserved(*T, omega, 64);
  const double defect = verify_isometry(*T, omega, ctx.opt.count, ctx.opt.seed);
  return {{"command", "verify-isometry"},
          {"source", source},
          {"matrix", to_json(T->matrix())},
          {"boundary_defect", pres.boundary_defect},
          {"interior_preserved", pres.interior_preserved},
          {"pairs", ctx.opt.count},
          {"seed", ctx.opt.seed},
          {"defect", defect},
          {"isometry", defect < ctx.opt.max_defect},
          {"tolerances", tolerances(ctx, {{"max_defect", ctx.opt.max_defect}, {"domain_preservation", 1e-6}})}};
}

json cmd_disk_orthogonal(const Context& ctx) {
  const auto file = io::samples_from_json(io::read_file(ctx.opt.samples));
  const auto r = disk_recover_orthogonal(file.map);
  return {{"command", "disk-orthogonal"},
          {"B", to_json(r.B)},
          {"orthogonality_defect", r.orthogonality_defect},
          {"fit_residual", r.fit_residual},
          {"orthogonal", r.orthogonality_defect < 1e-6},
          {"tolerances", tolerances(ctx, {{"translation_part", 1e-6}, {"orthogonality", 1e-6}})}};
}

// "x1,y1;x2,y2" -> the two points.
std::pair<Vec, Vec> point_pair(const std::string& text, int dim) {
  const auto cut = text.find(';');
  if (cut == std::string::npos) throw Error(ErrorKind::InvalidConfig, "expected \"p;q\", got \"" + text + "\"");
  return {point(text.substr(0, cut), dim), point(text.substr(cut + 1), dim)};
}

json cmd_render(const Context& ctx) {
  const ConvexDomain omega = load_domain(ctx);
  if (omega.dim() != 2) throw Error(ErrorKind::InvalidConfig, "render draws planar domains only");
  Scene s = make_scene(ctx, omega);
  for (const auto& text : ctx.opt.lines) {
    const auto [p, q] = point_pair(text, 2);
    const Chord ch = omega.boundary_intersections(p, q);
    s.add_chord(ch.a, ch.b);
  }
  for (const auto& text : ctx.opt.points) {
    const auto at = text.find('@');
    s.add_point(point(text.substr(0, at), 2), at == std::string::npos ? std::string() : text.substr(at + 1));
  }
  json report = {{"command", "render"},
                 {"chords", s.segments.size()},
                 {"points", s.markers.size()},
                 {"tolerances", tolerances(ctx)}};
  emit_svg(ctx, s, report);
  return report;
}

// ---- surfaces ----

json cmd_surface_new(const Context& ctx) {
  if (ctx.opt.preset != "genus2-octagon") {
    throw Error(ErrorKind::InvalidConfig, "unknown preset \"" + ctx.opt.preset + "\"");
  }
  const SurfaceGroup g = standard_genus2_group();
  json group = io::group_to_json(g);
  if (!ctx.opt.out.empty()) write_text(ctx.opt.out, group.dump(2) + "\n");
  return {{"command", "surface new"},
          {"preset", ctx.opt.preset},
          {"group", group},
          {"tolerances", tolerances(ctx, {{"relator", 1e-8}, {"boundary", 1e-8}})}};
}

Scene surface_scene(const Context& ctx, const SurfaceGroup& g) {
  Scene s = make_scene(ctx, g.domain());
  s.add_point(g.basepoint(), "o", "#222222");
  return s;
}

void add_axis(Scene& s, const ClosedGeodesic& c, std::string color = "#1f5fbf") {
  s.add_chord(c.repelling, c.attracting, std::move(color));
}

json cmd_surface_enumerate(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const auto items = enumerate_closed_geodesics(g, ctx.opt.max_len);
  json arr = json::array();
  for (const auto& c : items) arr.push_back(io::geodesic_to_json(c));
  json report = {{"command", "surface enumerate"},
                 {"max_len", ctx.opt.max_len},
                 {"count", items.size()},
                 {"geodesics", arr},
                 {"tolerances", tolerances(ctx, {{"conjugacy_match", 1e-8}, {"spectral_gap", 1e-9}})}};
  if (planar_svg(ctx, g.domain(), report)) {
    Scene s = surface_scene(ctx, g);
    for (const auto& c : items) add_axis(s, c);
    emit_svg(ctx, s, report);
  }
  return report;
}

json crossings_json(const std::vector<CrossingPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(io::crossing_to_json(p));
  return arr;
}

json cmd_surface_intersect(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const ClosedGeodesic ga = make_closed_geodesic(g, GroupWord::parse(ctx.opt.word));
  const ClosedGeodesic gb = make_closed_geodesic(g, GroupWord::parse(ctx.opt.word_b));
  const bool self = ga.word == gb.word;
  const auto pts = self ? self_intersections(g, ga, ctx.opt.cutoff) : intersection_points(g, ga, gb, ctx.opt.cutoff);
  json report = {{"command", "surface intersect"},
                 {"a", ga.word.str()},
                 {"b", gb.word.str()},
                 {"self", self},
                 {"cutoff", ctx.opt.cutoff},
                 {"count", pts.size()},
                 {"crossings", crossings_json(pts)},
                 {"lower_bound", true},
                 {"tolerances", tolerances(ctx, {{"dedupe", 1e-7}, {"tangency_angle", 1e-6}})}};
  if (ctx.opt.oracle) {
    const TraceResult tr = self ? trace_geodesic_oracle(g, ga) : trace_pair_oracle(g, ga, gb);
    report["oracle"] = {{"count", tr.count}, {"pieces", tr.pieces}, {"agrees", tr.count == static_cast<int>(pts.size())}};
  }
  if (planar_svg(ctx, g.domain(), report)) {
    Scene s = surface_scene(ctx, g);
    add_axis(s, ga);
    if (!self) add_axis(s, gb, "#27ae60");
    for (const auto& p : pts) s.add_point(p.surface_point);
    emit_svg(ctx, s, report);
  }
  return report;
}

json cmd_surface_simple(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const ClosedGeodesic c = make_closed_geodesic(g, GroupWord::parse(ctx.opt.word));
  const auto v = is_simple(g, c, ctx.opt.cutoff);
  json report = {{"command", "surface simple"},
                 {"word", c.word.str()},
                 {"simple", v.simple},
                 {"cutoff", v.cutoff},
                 {"witnesses", crossings_json(v.witnesses)},
                 {"tolerances", tolerances(ctx, {{"dedupe", 1e-7}, {"tangency_angle", 1e-6}})}};
  if (planar_svg(ctx, g.domain(), report)) {
    Scene s = surface_scene(ctx, g);
    add_axis(s, c);
    for (const auto& p : v.witnesses) s.add_point(p.surface_point);
    emit_svg(ctx, s, report);
  }
  return report;
}

GeodesicCollection load_collection(const Context& ctx, const SurfaceGroup& g) {
  return io::collection_from_json(g, io::read_file(ctx.opt.collection));
}

json words_json(const GeodesicCollection& c) {
  json arr = json::array();
  for (const auto& item : c.items) arr.push_back(item.word.str());
  return arr;
}

json cmd_surface_filling(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const GeodesicCollection col = load_collection(ctx, g);
  const CrossingGraph graph = build_crossing_graph(g, col, ctx.opt.cutoff);
  const FillingVerdict v = is_filling(graph);
  json report = {{"command", "surface filling"},
                 {"label", col.label},
                 {"words", words_json(col)},
                 {"filling", v.filling},
                 {"V", v.V},
                 {"E", v.E},
                 {"F", v.F},
                 {"euler", v.euler},
                 {"target", v.target},
                 {"reason", v.reason},
                 {"cutoff", v.cutoff},
                 {"vertices", crossings_json(graph.vertices)},
                 {"tolerances", tolerances(ctx, {{"dedupe", 1e-7}, {"tangency_angle", 1e-6}, {"tangency_gap", 1e-8}})}};
  if (planar_svg(ctx, g.domain(), report)) {
    Scene s = surface_scene(ctx, g);
    for (const auto& item : col.items) add_axis(s, item);
    for (const auto& p : graph.vertices) s.add_point(p.surface_point);
    emit_svg(ctx, s, report);
  }
  return report;
}

json cmd_surface_classify(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const GeodesicCollection col = load_collection(ctx, g);
  Vec p;
  Vec q;
  double window = ctx.opt.window;
  std::string source;
  if (!ctx.opt.word.empty()) {
    const ClosedGeodesic c = make_closed_geodesic(g, GroupWord::parse(ctx.opt.word));
    p = c.repelling;
    q = c.attracting;
    if (window <= 0.0) window = primitive_length(c);
    source = c.word.str();
  } else if (!ctx.opt.p.empty() && !ctx.opt.q.empty()) {
    p = point(ctx.opt.p, g.domain().dim());
    q = point(ctx.opt.q, g.domain().dim());
    if (std::abs(g.domain().boundary_residual(p)) > 1e-8 || std::abs(g.domain().boundary_residual(q)) > 1e-8) {
      throw Error(ErrorKind::Precondition, "--p and --q must lie on the boundary");
    }
  } else {
    throw Error(ErrorKind::InvalidConfig, "surface classify needs --word or both --p and --q");
  }
  const auto r = classify_against_filling(g, p, q, col, window, ctx.opt.cutoff);
  json report = {{"command", "surface classify"},
                 {"p", to_json(p)},
                 {"q", to_json(q)},
                 {"label", to_string(r.label)},
                 {"counts", r.counts},
                 {"window", r.window},
                 {"cutoff", r.cutoff},
                 {"collection", words_json(col)},
                 {"tolerances", tolerances(ctx, {{"dedupe", 1e-9}})}};
  if (!source.empty()) report["word"] = source;
  if (planar_svg(ctx, g.domain(), report)) {
    Scene s = surface_scene(ctx, g);
    s.add_chord(p, q, "#c0392b");
    for (const auto& item : col.items) add_axis(s, item);
    emit_svg(ctx, s, report);
  }
  return report;
}

json cmd_surface_lamination(const Context& ctx) {
  const SurfaceGroup g = load_group(ctx);
  const GeodesicCollection col = load_collection(ctx, g);
  const auto v = verify_finite_lamination(g, col, ctx.opt.cutoff);
  return {{"command", "surface lamination"},
          {"label", col.label},
          {"words", words_json(col)},
          {"lamination", v.lamination},
          {"reason", v.reason},
          {"cutoff", v.cutoff},
          {"tolerances", tolerances(ctx, {{"dedupe", 1e-7}})}};
}

// ---- wiring ----

using Action = std::function<json(const Context&)>;

void add_render_options(CLI::App* sub, Options& o) {
  sub->add_option("--svg", o.svg, "write an SVG picture to this path");
  sub->add_option("--size", o.size, "picture size in pixels")->check(CLI::Range(16, 16384));
  sub->add_option("--stroke", o.stroke, "stroke width")->check(CLI::Range(0.05, 50.0));
  sub->add_flag("--no-labels", o.no_labels, "omit point labels");
}

CLI::Option* add_domain_option(CLI::App* sub, Options& o) {
  return sub->add_option("--domain", o.domain, "domain JSON file")->required()->check(CLI::ExistingFile);
}

void add_group_option(CLI::App* sub, Options& o) {
  sub->add_option("--group", o.group, "group JSON file (default: genus2-octagon preset)")
      ->check(CLI::ExistingFile);
}

void add_cutoff_option(CLI::App* sub, Options& o) {
  sub->add_option("--cutoff", o.cutoff, "word length cutoff for lifts")->check(CLI::Range(1, 10));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  Options& o = ctx.opt;
  Action action;

  CLI::App app{"Hilbert geometry and convex projective surfaces", args.empty() ? "hilbertkit" : args[0]};
  app.require_subcommand(1);
  app.add_option("--tolerance", o.tolerance, "verdict tolerance (default 1e-9 or HILBERTKIT_TOLERANCE)")
      ->check(CLI::Range(1e-15, 1e-1));

  auto bind = [&](CLI::App* sub, Action fn) { sub->callback([&action, fn] { action = fn; }); };

  auto* body = app.add_subcommand("body", "convex body utilities")->require_subcommand(1);
  {
    auto* s = body->add_subcommand("validate", "sample chord midpoints for strict convexity");
    add_domain_option(s, o);
    s->add_option("--samples", o.count, "number of chords")->check(CLI::Range(3, 1000000));
    s->add_option("--seed", o.seed, "random seed")->required();
    s->preparse_callback([&o](std::size_t) { o.count = 200; });
    bind(s, cmd_body_validate);
  }
  {
    auto* s = app.add_subcommand("dist", "Hilbert distance between two points");
    add_domain_option(s, o);
    s->add_option("--x", o.x, "point, e.g. 0,0")->required();
    s->add_option("--y", o.y, "point")->required();
    add_render_options(s, o);
    bind(s, cmd_dist);
  }
  {
    auto* s = app.add_subcommand("geodesic", "point at distance t from x towards y");
    add_domain_option(s, o);
    s->add_option("--x", o.x)->required();
    s->add_option("--y", o.y)->required();
    s->add_option("--t", o.t, "distance along the chord")->required()->check(CLI::Range(0.0, 700.0));
    add_render_options(s, o);
    bind(s, cmd_geodesic);
  }
  {
    auto* s = app.add_subcommand("ball", "sample the boundary of a Hilbert ball");
    add_domain_option(s, o);
    s->add_option("--center", o.center)->required();
    s->add_option("--radius", o.radius)->required()->check(CLI::Range(0.0, 700.0));
    s->add_option("--k", o.k, "number of points")->check(CLI::Range(3, 100000));
    add_render_options(s, o);
    bind(s, cmd_ball);
  }
  {
    auto* s = app.add_subcommand("axioms", "sampled metric axiom defects");
    add_domain_option(s, o);
    s->add_option("--samples", o.count, "number of triples")->check(CLI::Range(1, 1000000));
    s->add_option("--seed", o.seed, "random seed")->required();
    s->preparse_callback([&o](std::size_t) { o.count = 500; });
    bind(s, cmd_axioms);
  }
  {
    auto* s = app.add_subcommand("separate", "separating lines for a, b, c in order on a line");
    add_domain_option(s, o);
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
    s->add_option("--c", o.c)->required();
    add_render_options(s, o);
    bind(s, cmd_separate);
  }
  {
    auto* s = app.add_subcommand("check-order", "order, interval and subspace checks on samples");
    s->add_option("--samples", o.samples, "sample JSON file")->required()->check(CLI::ExistingFile);
    bind(s, cmd_check_order);
  }
  {
    auto* s = app.add_subcommand("fit", "fit a projective map to samples");
    s->add_option("--samples", o.samples, "sample JSON file")->required()->check(CLI::ExistingFile);
    bind(s, cmd_fit);
  }
  {
    auto* s = app.add_subcommand("verify-isometry", "max metric defect of a map over random pairs");
    add_domain_option(s, o);
    auto* m = s->add_option("--map", o.map, "map JSON file")->check(CLI::ExistingFile);
    s->add_option("--samples", o.samples, "fit the map from samples instead")->check(CLI::ExistingFile)->excludes(m);
    s->add_option("--pairs", o.count, "number of pairs")->check(CLI::Range(1, 1000000));
    s->add_option("--seed", o.seed, "random seed")->required();
    s->add_option("--max-defect", o.max_defect, "isometry threshold")->check(CLI::Range(1e-15, 1.0));
    s->preparse_callback([&o](std::size_t) { o.count = 100; });
    bind(s, cmd_verify_isometry);
  }
  {
    auto* s = app.add_subcommand("disk-orthogonal", "recover the orthogonal part of a disk map fixing 0");
    s->add_option("--samples", o.samples, "sample JSON file")->required()->check(CLI::ExistingFile);
    bind(s, cmd_disk_orthogonal);
  }
  {
    auto* s = app.add_subcommand("render", "draw a domain with chords and points");
    add_domain_option(s, o);
    s->add_option("--line", o.lines, "full chord through p;q, repeatable");
    s->add_option("--point", o.points, "point x,y[@label], repeatable");
    add_render_options(s, o);
    s->get_option("--svg")->required();
    bind(s, cmd_render);
  }

  auto* surface = app.add_subcommand("surface", "closed surfaces and their geodesics")->require_subcommand(1);
  {
    auto* s = surface->add_subcommand("new", "write a preset group");
    s->add_option("--preset", o.preset, "preset name")->check(CLI::IsMember({"genus2-octagon"}));
    s->add_option("--out", o.out, "output path");
    bind(s, cmd_surface_new);
  }
  {
    auto* s = surface->add_subcommand("enumerate", "closed geodesics up to a word length");
    add_group_option(s, o);
    s->add_option("--max-len", o.max_len, "maximum word length")->check(CLI::Range(1, 6));
    add_render_options(s, o);
    bind(s, cmd_surface_enumerate);
  }
  {
    auto* s = surface->add_subcommand("intersect", "crossings of two closed geodesics");
    add_group_option(s, o);
    s->add_option("--a", o.word, "first word")->required();
    s->add_option("--b", o.word_b, "second word")->required();
    add_cutoff_option(s, o);
    s->add_flag("--oracle", o.oracle, "cross-check with the tracing oracle");
    add_render_options(s, o);
    bind(s, cmd_surface_intersect);
  }
  {
    auto* s = surface->add_subcommand("simple", "is a closed geodesic simple");
    add_group_option(s, o);
    s->add_option("--word", o.word)->required();
    add_cutoff_option(s, o);
    add_render_options(s, o);
    bind(s, cmd_surface_simple);
  }
  {
    auto* s = surface->add_subcommand("filling", "does a collection fill the surface");
    add_group_option(s, o);
    s->add_option("--collection", o.collection, "collection JSON file")->required()->check(CLI::ExistingFile);
    add_cutoff_option(s, o);
    add_render_options(s, o);
    bind(s, cmd_surface_filling);
  }
  {
    auto* s = surface->add_subcommand("classify", "window crossing counts against a collection");
    add_group_option(s, o);
    s->add_option("--collection", o.collection, "collection JSON file")->required()->check(CLI::ExistingFile);
    s->add_option("--word", o.word, "use the axis of this word");
    s->add_option("--p", o.p, "boundary point");
    s->add_option("--q", o.q, "boundary point");
    s->add_option("--window", o.window, "window length (default: primitive length of --word)")
        ->check(CLI::Range(0.0, 100.0));
    add_cutoff_option(s, o);
    add_render_options(s, o);
    bind(s, cmd_surface_classify);
  }
  {
    auto* s = surface->add_subcommand("lamination", "are the items simple and pairwise disjoint");
    add_group_option(s, o);
    s->add_option("--collection", o.collection, "collection JSON file")->required()->check(CLI::ExistingFile);
    add_cutoff_option(s, o);
    bind(s, cmd_surface_lamination);
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("hilbertkit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    const bool invalid_value = dynamic_cast<const CLI::ValidationError*>(&e) != nullptr ||
                               dynamic_cast<const CLI::ConversionError*>(&e) != nullptr;
    return invalid_value ? kInvalid : kUsage;
  }

  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    return code;
  };
  try {
    ctx.tol = o.tolerance ? *o.tolerance : default_tolerance();
    if (!action) return fail("usage", "no command", kUsage);
    out << action(ctx).dump(2) << "\n";
    return kOk;
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())), e.what(), is_numeric(e.kind()) ? kNumeric : kInvalid);
  } catch (const json::exception& e) {
    return fail("invalid-config", e.what(), kInvalid);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInvalid);
  }
}

}  // namespace hilbert::cli
