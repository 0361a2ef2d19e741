#include "hilbertkit/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "hilbertkit/errors.hpp"

namespace hilbert {

namespace {

using M3 = Eigen::Matrix3d;
using V3 = Eigen::Vector3d;

constexpr double kTransversality = 1e-6;
constexpr double kParameterTolerance = 1e-7;
constexpr double kTangencyTolerance = 1e-8;

Vec apply(const M3& m, const Vec& p) {
  const V3 h = m * V3(p(0), p(1), 1.0);
  Vec out(2);
  out << h(0) / h(2), h(1) / h(2);
  return out;
}

double wrap(double u, double period) {
  double r = std::fmod(u, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

double circular_gap(double x, double y, double period) {
  const double d = std::abs(x - y);
  return std::min(d, period - d);
}

double boundary_angle(const ConvexDomain& omega, const Vec& p) {
  const Vec c = omega.center();
  return std::atan2(p(1) - c(1), p(0) - c(0));
}

bool same_pair(const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2, double tolerance) {
  const double direct = std::max((p1 - p2).norm(), (q1 - q2).norm());
  const double swapped = std::max((p1 - q2).norm(), (q1 - p2).norm());
  return std::min(direct, swapped) <= tolerance;
}

// Meeting point of two chords known to cross.
Vec meet(const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2) {
  Eigen::Matrix2d m;
  m.col(0) = q1 - p1;
  m.col(1) = p2 - q2;
  const Eigen::Vector2d st = m.partialPivLu().solve(Eigen::Vector2d(p2 - p1));
  return p1 + st(0) * (q1 - p1);
}

double chord_coordinate(const Vec& r, const Vec& a, const Vec& x) {
  const Vec d = a - r;
  const double s = (x - r).dot(d) / d.squaredNorm();
  return std::log(s) - std::log1p(-s);
}

int cancellation(const std::vector<Letter>& g, const std::vector<Letter>& w) {
  int c = 0;
  const int n = static_cast<int>(g.size());
  const int m = static_cast<int>(w.size());
  while (c < n && c < m && g[n - 1 - c] == w[c].inverse()) ++c;
  return c;
}

// Visits every freely reduced g with |g| <= cutoff that is shortest among
// g w and g w^-1, passing g and g^-1.
void for_each_lift(const SurfaceGroup& group, const GroupWord& w, int cutoff,
                   const std::function<void(const M3&, const M3&)>& visit) {
  const std::vector<Letter> fwd = w.letters();
  const std::vector<Letter> back = w.inverse().letters();
  const int m = static_cast<int>(fwd.size());
  const int letters = 2 * static_cast<int>(group.generators().size());
  std::vector<M3> mats, invs;
  for (int k = 0; k < letters; ++k) {
    const Letter l{k / 2, k % 2 == 0 ? 1 : -1};
    mats.push_back(group.letter_matrix(l));
    invs.push_back(group.letter_matrix(l.inverse()));
  }
  std::vector<Letter> word;
  std::function<void(const M3&, const M3&)> dfs = [&](const M3& g, const M3& gi) {
    if (2 * cancellation(word, fwd) <= m && 2 * cancellation(word, back) <= m) visit(g, gi);
    if (static_cast<int>(word.size()) == cutoff) return;
    for (int k = 0; k < letters; ++k) {
      const Letter l{k / 2, k % 2 == 0 ? 1 : -1};
      if (!word.empty() && word.back() == l.inverse()) continue;
      word.push_back(l);
      dfs(g * mats[k], invs[k] * gi);
      word.pop_back();
    }
  };
  dfs(M3::Identity(), M3::Identity());
}

struct Event {
  Vec x;
  double param_gamma;
  double param_delta;
  Vec tangent_gamma;
  Vec tangent_delta;
  double angle;
};

std::vector<Event> lift_events(const SurfaceGroup& group, const ClosedGeodesic& gamma, const ClosedGeodesic& delta,
                               int cutoff) {
  if (cutoff < 1) throw Error(ErrorKind::Precondition, "cutoff must be at least 1");
  const ConvexDomain& omega = group.domain();
  const double period_g = primitive_length(gamma);
  const double period_d = primitive_length(delta);
  const double origin_g = axis_origin(group, gamma);
  const double origin_d = axis_origin(group, delta);
  const Vec tangent_d = (delta.attracting - delta.repelling).normalized();
  const double ar = boundary_angle(omega, delta.repelling);
  const double aa = boundary_angle(omega, delta.attracting);
  const double lo_angle = std::min(ar, aa);
  const double hi_angle = std::max(ar, aa);
  auto inside_arc = [&](double t) { return lo_angle < t && t < hi_angle; };

  std::vector<Event> events;
  for_each_lift(group, gamma.word, cutoff, [&](const M3& g, const M3& gi) {
    const Vec p = apply(g, gamma.repelling);
    const Vec q = apply(g, gamma.attracting);
    if (same_pair(p, q, delta.repelling, delta.attracting, 1e-9)) return;
    if (inside_arc(boundary_angle(omega, p)) == inside_arc(boundary_angle(omega, q))) return;
    const Vec x = meet(p, q, delta.repelling, delta.attracting);
    const double u_d = chord_coordinate(delta.repelling, delta.attracting, x) - origin_d;
    if (!(u_d >= -0.5 * period_d - 1e-9 && u_d < 0.5 * period_d - 1e-9)) return;
    const double u_g = axis_coordinate(gamma, apply(gi, x)) - origin_g;
    Event e;
    e.x = x;
    e.param_delta = wrap(u_d, period_d);
    e.param_gamma = wrap(u_g, period_g);
    for (const Event& seen : events) {
      if (circular_gap(seen.param_delta, e.param_delta, period_d) < kParameterTolerance &&
          circular_gap(seen.param_gamma, e.param_gamma, period_g) < kParameterTolerance) {
        return;
      }
    }
    e.tangent_gamma = (q - p).normalized();
    e.tangent_delta = tangent_d;
    e.angle = std::acos(std::min(1.0, std::abs(e.tangent_gamma.dot(tangent_d))));
    if (e.angle < kTransversality) {
      throw Error(ErrorKind::Tangency, "lifts of " + gamma.word.str() + " and " + delta.word.str() +
                                           " meet at angle " + std::to_string(e.angle));
    }
    events.push_back(std::move(e));
  });
  return events;
}

CrossingPoint to_crossing(const SurfaceGroup& group, const Event& e) {
  CrossingPoint c;
  c.lift = e.x;
  c.surface_point = dirichlet_reduce(group, e.x).point;
  c.parameter = {e.param_gamma, e.param_delta};
  c.tangent = {e.tangent_gamma, e.tangent_delta};
  c.angle = e.angle;
  return c;
}

Vec sigmoid_point(const ClosedGeodesic& c, double u) {
  const double s = 1.0 / (1.0 + std::exp(-u));
  if (s < 1e-10 || s > 1.0 - 1e-10) {
    throw Error(ErrorKind::Tracing, "walk along " + c.word.str() + " reached u = " + std::to_string(u) +
                                        ", too close to the boundary");
  }
  return c.repelling + s * (c.attracting - c.repelling);
}

struct Piece {
  double u0;
  double u1;
  M3 w;
  Vec p0;
  Vec p1;
};

bool same_element(const M3& x, const M3& y) {
  return (x - y).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff());
}

// Splits [u_start, u_end] of the axis into maximal runs reduced by one element.
std::vector<Piece> trace_pieces(const SurfaceGroup& group, const ClosedGeodesic& c, double u_start, double u_end) {
  auto element_at = [&](double u) {
    const Reduction r = dirichlet_reduce(group, sigmoid_point(c, u));
    return M3(group.evaluate(r.word));
  };
  std::vector<std::pair<double, M3>> breaks;  // (u where element starts, element)
  std::function<void(double, const M3&, double, const M3&)> split = [&](double ul, const M3& wl, double ur,
                                                                       const M3& wr) {
    if (same_element(wl, wr)) return;
    if (ur - ul < 1e-12) {
      breaks.emplace_back(0.5 * (ul + ur), wr);
      return;
    }
    const double um = 0.5 * (ul + ur);
    const M3 wm = element_at(um);
    split(ul, wl, um, wm);
    split(um, wm, ur, wr);
  };
  const double step = 0.02;
  const int samples = std::max(2, static_cast<int>(std::ceil((u_end - u_start) / step)) + 1);
  double prev_u = u_start;
  M3 prev_w = element_at(u_start);
  breaks.emplace_back(u_start, prev_w);
  for (int k = 1; k < samples; ++k) {
    const double u = u_start + (u_end - u_start) * k / (samples - 1);
    const M3 w = element_at(u);
    split(prev_u, prev_w, u, w);
    prev_u = u;
    prev_w = w;
  }
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double a = breaks[i].first;
    const double b = i + 1 < breaks.size() ? breaks[i + 1].first : u_end;
    // Slivers left by sample points sitting on a side have no usable direction.
    if (b - a < 1e-7) continue;
    const M3& w = breaks[i].second;
    pieces.push_back({a, b, w, apply(w, sigmoid_point(c, a)), apply(w, sigmoid_point(c, b))});
  }
  return pieces;
}

std::optional<Vec> segment_crossing(const Piece& x, const Piece& y) {
  const Vec d1 = x.p1 - x.p0;
  const Vec d2 = y.p1 - y.p0;
  const double cross = d1(0) * d2(1) - d1(1) * d2(0);
  if (std::abs(cross) < 1e-8 * d1.norm() * d2.norm()) return std::nullopt;
  const Vec r = y.p0 - x.p0;
  const double s = (r(0) * d2(1) - r(1) * d2(0)) / cross;
  const double t = (r(0) * d1(1) - r(1) * d1(0)) / cross;
  const double slack = 1e-9;
  if (s < -slack || s > 1 + slack || t < -slack || t > 1 + slack) return std::nullopt;
  return Vec(x.p0 + s * d1);
}

// Parameter of a traced crossing z on the axis, read off the piece's preimage.
double piece_parameter(const SurfaceGroup& group, const ClosedGeodesic& c, const Piece& piece, const Vec& z) {
  return wrap(axis_coordinate(c, apply(piece.w.inverse(), z)) - axis_origin(group, c), primitive_length(c));
}

// Crossings are told apart by their parameter pairs, which keeps branches
// through a common point separate.
struct TracedCrossing {
  Vec point;
  double s;
  double t;
};

void add_unique(std::vector<TracedCrossing>& found, const TracedCrossing& x, double period_s, double period_t,
                bool unordered) {
  constexpr double tol = 1e-6;
  for (const auto& y : found) {
    if (circular_gap(x.s, y.s, period_s) < tol && circular_gap(x.t, y.t, period_t) < tol) return;
    if (unordered && circular_gap(x.s, y.t, period_s) < tol && circular_gap(x.t, y.s, period_t) < tol) return;
  }
  found.push_back(x);
}

std::vector<Piece> one_period(const SurfaceGroup& group, const ClosedGeodesic& c, int periods) {
  const double origin = axis_origin(group, c);
  const double span = primitive_length(c) * periods;
  return trace_pieces(group, c, origin - 0.5 * primitive_length(c), origin - 0.5 * primitive_length(c) + span);
}

}  // namespace

void GeodesicCollection::validate() const {
  if (items.empty()) throw Error(ErrorKind::InvalidConfig, "collection is empty");
  std::set<GroupWord> seen;
  for (const auto& c : items) {
    if (!seen.insert(c.word).second) throw Error(ErrorKind::InvalidConfig, "collection repeats " + c.word.str());
  }
}

GeodesicCollection GeodesicCollection::from_words(const SurfaceGroup& g, const std::vector<std::string>& words,
                                                  std::string label) {
  GeodesicCollection c;
  c.label = std::move(label);
  for (const auto& w : words) c.items.push_back(make_closed_geodesic(g, GroupWord::parse(w)));
  c.validate();
  return c;
}

double axis_coordinate(const ClosedGeodesic& c, const Vec& x) { return chord_coordinate(c.repelling, c.attracting, x); }

Vec axis_point(const ClosedGeodesic& c, double u) {
  const double s = 1.0 / (1.0 + std::exp(-u));
  return c.repelling + s * (c.attracting - c.repelling);
}

double primitive_length(const ClosedGeodesic& c) { return c.length / c.power; }

double axis_origin(const SurfaceGroup& g, const ClosedGeodesic& c) {
  const Vec d = c.attracting - c.repelling;
  const double s = (g.basepoint() - c.repelling).dot(d) / d.squaredNorm();
  return std::log(s) - std::log1p(-s);
}

bool axes_linked(const ConvexDomain& omega, const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2) {
  if (same_pair(p1, q1, p2, q2, 1e-12)) throw Error(ErrorKind::SameAxis, "the two axes coincide");
  const double a = boundary_angle(omega, p1);
  const double b = boundary_angle(omega, q1);
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  auto inside = [&](const Vec& p) {
    const double t = boundary_angle(omega, p);
    return lo < t && t < hi;
  };
  return inside(p2) != inside(q2);
}

bool axes_linked(const ConvexDomain& omega, const ClosedGeodesic& gamma, const ClosedGeodesic& delta) {
  return axes_linked(omega, gamma.repelling, gamma.attracting, delta.repelling, delta.attracting);
}

std::vector<CrossingPoint> intersection_points(const SurfaceGroup& g, const ClosedGeodesic& gamma,
                                               const ClosedGeodesic& delta, int cutoff) {
  if (gamma.word == delta.word || same_pair(gamma.repelling, gamma.attracting, delta.repelling, delta.attracting, 1e-9)) {
    throw Error(ErrorKind::Precondition, "intersection_points needs two different geodesics; use self_intersections");
  }
  std::vector<CrossingPoint> out;
  for (const Event& e : lift_events(g, gamma, delta, cutoff)) out.push_back(to_crossing(g, e));
  return out;
}

std::vector<CrossingPoint> self_intersections(const SurfaceGroup& g, const ClosedGeodesic& gamma, int cutoff) {
  const auto events = lift_events(g, gamma, gamma, cutoff);
  const double period = primitive_length(gamma);
  // Each crossing shows up twice, once from each branch.
  std::vector<bool> used(events.size(), false);
  std::vector<CrossingPoint> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (!used[j] && circular_gap(events[i].param_gamma, events[j].param_delta, period) < kParameterTolerance &&
          circular_gap(events[i].param_delta, events[j].param_gamma, period) < kParameterTolerance) {
        used[j] = true;
        break;
      }
    }
    out.push_back(to_crossing(g, events[i]));
  }
  return out;
}

SimplicityVerdict is_simple(const SurfaceGroup& g, const ClosedGeodesic& gamma, int cutoff) {
  SimplicityVerdict v;
  v.cutoff = cutoff;
  v.witnesses = self_intersections(g, gamma, cutoff);
  v.simple = v.witnesses.empty();
  return v;
}

bool same_surface_point(const SurfaceGroup& g, const Vec& x, const Vec& y, double tolerance) {
  if ((x - y).norm() <= tolerance) return true;
  const int letters = 2 * static_cast<int>(g.generators().size());
  for (int k = 0; k < letters; ++k) {
    const M3 m = g.letter_matrix(Letter{k / 2, k % 2 == 0 ? 1 : -1});
    if ((apply(m, x) - y).norm() <= tolerance) return true;
  }
  return false;
}

TraceResult trace_geodesic_oracle(const SurfaceGroup& g, const ClosedGeodesic& gamma, int periods) {
  if (periods < 1) throw Error(ErrorKind::Precondition, "periods must be at least 1");
  const auto pieces = one_period(g, gamma, periods);
  const double period = primitive_length(gamma);
  std::vector<TracedCrossing> found;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (const auto z = segment_crossing(pieces[i], pieces[j])) {
        add_unique(found,
                   {dirichlet_reduce(g, *z).point, piece_parameter(g, gamma, pieces[i], *z),
                    piece_parameter(g, gamma, pieces[j], *z)},
                   period, period, true);
      }
    }
  }
  TraceResult r;
  r.pieces = static_cast<int>(pieces.size());
  for (const auto& f : found) r.points.push_back(f.point);
  r.count = static_cast<int>(r.points.size());
  return r;
}

TraceResult trace_pair_oracle(const SurfaceGroup& g, const ClosedGeodesic& gamma, const ClosedGeodesic& delta) {
  const auto pg = one_period(g, gamma, 1);
  const auto pd = one_period(g, delta, 1);
  std::vector<TracedCrossing> found;
  for (const Piece& x : pg) {
    for (const Piece& y : pd) {
      if (const auto z = segment_crossing(x, y)) {
        add_unique(found,
                   {dirichlet_reduce(g, *z).point, piece_parameter(g, gamma, x, *z), piece_parameter(g, delta, y, *z)},
                   primitive_length(gamma), primitive_length(delta), false);
      }
    }
  }
  TraceResult r;
  r.pieces = static_cast<int>(pg.size() + pd.size());
  for (const auto& f : found) r.points.push_back(f.point);
  r.count = static_cast<int>(r.points.size());
  return r;
}

CrossingGraph build_crossing_graph(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff) {
  c.validate();
  CrossingGraph graph;
  graph.genus = g.genus();
  graph.cutoff = cutoff;
  const int n = static_cast<int>(c.items.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto found = i == j ? self_intersections(g, c.items[i], cutoff)
                          : intersection_points(g, c.items[i], c.items[j], cutoff);
      for (auto& p : found) {
        p.geodesic = {i, j};
        graph.vertices.push_back(std::move(p));
      }
    }
  }
  struct Occurrence {
    double t;
    int vertex;
    int branch;
  };
  graph.arc_of_end.assign(4 * graph.vertices.size(), -1);
  for (int i = 0; i < n; ++i) {
    std::vector<Occurrence> occ;
    for (int v = 0; v < graph.V(); ++v) {
      for (int b = 0; b < 2; ++b) {
        if (graph.vertices[v].geodesic[b] == i) occ.push_back({graph.vertices[v].parameter[b], v, b});
      }
    }
    if (occ.empty()) {
      ++graph.crossing_free;
      continue;
    }
    std::sort(occ.begin(), occ.end(), [](const Occurrence& x, const Occurrence& y) { return x.t < y.t; });
    const double period = primitive_length(c.items[i]);
    for (std::size_t k = 0; k < occ.size(); ++k) {
      const Occurrence& from = occ[k];
      const Occurrence& to = occ[(k + 1) % occ.size()];
      double t_to = to.t;
      if (k + 1 == occ.size()) t_to += period;
      if (occ.size() > 1 && t_to - from.t < kTangencyTolerance) {
        throw Error(ErrorKind::Tangency, "two crossings coincide along " + c.items[i].word.str());
      }
      const int arc = static_cast<int>(graph.arcs.size());
      graph.arcs.push_back({i, from.vertex, to.vertex, from.t, t_to});
      graph.arc_of_end[4 * from.vertex + 2 * from.branch] = arc;
      graph.arc_of_end[4 * to.vertex + 2 * to.branch + 1] = arc;
    }
  }
  for (int v = 0; v < graph.V(); ++v) {
    const auto& p = graph.vertices[v];
    std::array<std::pair<double, int>, 4> ends;
    for (int b = 0; b < 2; ++b) {
      ends[2 * b] = {std::atan2(p.tangent[b](1), p.tangent[b](0)), 4 * v + 2 * b};
      ends[2 * b + 1] = {std::atan2(-p.tangent[b](1), -p.tangent[b](0)), 4 * v + 2 * b + 1};
    }
    std::sort(ends.begin(), ends.end());
    graph.rotation.push_back({ends[0].second, ends[1].second, ends[2].second, ends[3].second});
  }
  // Faces: leave along an end, arrive at the arc's other end, turn to the
  // next end counterclockwise.
  auto other_end = [&](int end) {
    const Arc& a = graph.arcs[graph.arc_of_end[end]];
    const bool outgoing = end % 2 == 0;
    const int v = outgoing ? a.to : a.from;
    for (int b = 0; b < 2; ++b) {
      const int candidate = 4 * v + 2 * b + (outgoing ? 1 : 0);
      if (graph.vertices[v].geodesic[b] == a.geodesic && graph.arc_of_end[candidate] == graph.arc_of_end[end]) {
        return candidate;
      }
    }
    throw Error(ErrorKind::NumericDegeneracy, "crossing graph is inconsistent");
  };
  auto next_ccw = [&](int end) {
    const auto& rot = graph.rotation[end / 4];
    const auto it = std::find(rot.begin(), rot.end(), end);
    return rot[(std::distance(rot.begin(), it) + 1) % 4];
  };
  std::vector<bool> seen(graph.arc_of_end.size(), false);
  for (std::size_t d = 0; d < seen.size(); ++d) {
    if (seen[d]) continue;
    ++graph.faces;
    int cur = static_cast<int>(d);
    while (!seen[cur]) {
      seen[cur] = true;
      cur = next_ccw(other_end(cur));
    }
  }
  return graph;
}

FillingVerdict is_filling(const CrossingGraph& graph) {
  FillingVerdict v;
  v.V = graph.V();
  v.E = graph.E();
  v.F = graph.F();
  v.euler = graph.euler();
  v.target = 2 - 2 * graph.genus;
  v.cutoff = graph.cutoff;
  if (graph.V() == 0) {
    v.reason = "no crossings; a crossing-free collection never fills a surface of genus >= 2";
  } else if (graph.crossing_free > 0) {
    v.reason = std::to_string(graph.crossing_free) + " geodesic(s) cross nothing";
  } else {
    v.filling = v.euler == v.target;
    v.reason = v.filling ? "every complementary region is a disk"
                         : "V - E + F exceeds 2 - 2g: some complementary region is not a disk";
  }
  return v;
}

FillingVerdict is_filling(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff) {
  return is_filling(build_crossing_graph(g, c, cutoff));
}

std::string_view to_string(WindowClassification::Label label) {
  switch (label) {
    case WindowClassification::Label::ClosedLike: return "closed-like";
    case WindowClassification::Label::NonClosedLike: return "non-closed-like";
    case WindowClassification::Label::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

WindowClassification classify_against_filling(const SurfaceGroup& g, const Vec& p, const Vec& q,
                                              const GeodesicCollection& c, double window, int cutoff) {
  WindowClassification out;
  out.window = window;
  out.cutoff = cutoff;
  if (!(window > 0.0)) return out;
  if ((p - q).norm() <= 1e-12) throw Error(ErrorKind::Precondition, "endpoint pair must be distinct");
  const ConvexDomain& omega = g.domain();
  const double foot = chord_coordinate(p, q, g.basepoint());
  const double start = foot - 1.5 * window;
  out.counts.assign(3, 0);
  for (std::size_t ci = 0; ci < c.items.size(); ++ci) {
    const ClosedGeodesic& item = c.items[ci];
    std::vector<double> found;
    for_each_lift(g, item.word, cutoff, [&](const M3& m, const M3&) {
      const Vec r = apply(m, item.repelling);
      const Vec a = apply(m, item.attracting);
      if (same_pair(r, a, p, q, 1e-9)) return;
      if (!axes_linked(omega, r, a, p, q)) return;
      const double u = chord_coordinate(p, q, meet(r, a, p, q));
      const int k = static_cast<int>(std::floor((u - start) / window));
      if (k < 0 || k > 2) return;
      for (double f : found) {
        if (std::abs(f - u) < 1e-9) return;
      }
      found.push_back(u);
      ++out.counts[k];
    });
  }
  const bool constant = std::all_of(out.counts.begin(), out.counts.end(), [&](int k) { return k == out.counts[0]; });
  out.label = constant ? WindowClassification::Label::ClosedLike : WindowClassification::Label::NonClosedLike;
  return out;
}

LaminationVerdict verify_finite_lamination(const SurfaceGroup& g, const GeodesicCollection& c, int cutoff) {
  c.validate();
  LaminationVerdict v;
  v.cutoff = cutoff;
  for (const auto& item : c.items) {
    if (!is_simple(g, item, cutoff).simple) {
      v.lamination = false;
      v.reason = item.word.str() + " is not simple";
      return v;
    }
  }
  for (std::size_t i = 0; i < c.items.size(); ++i) {
    for (std::size_t j = i + 1; j < c.items.size(); ++j) {
      if (!intersection_points(g, c.items[i], c.items[j], cutoff).empty()) {
        v.lamination = false;
        v.reason = c.items[i].word.str() + " crosses " + c.items[j].word.str();
        return v;
      }
    }
  }
  v.reason = "all items simple and pairwise disjoint";
  return v;
}

}  // namespace hilbert
