#include "hilbertkit/domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hilbertkit/errors.hpp"

namespace hilbert {

namespace {

constexpr double kOnBoundary = 4 * std::numeric_limits<double>::epsilon();

void check_dimension(Eigen::Index n) {
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::InvalidConfig, "domains live in dimension 2 or 3, got " + std::to_string(n));
  }
}

double ellipse_gauge(const Ellipse& e, const Vec& x) {
  const Vec v = x - e.center;
  return std::sqrt(std::max(0.0, v.dot(e.form * v)));
}

// ||v / r||_p computed without overflow for large p.
double pball_gauge(const PBall& b, const Vec& x) {
  const Vec v = (x - b.center).cwiseAbs() / b.radius;
  const double m = v.maxCoeff();
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::pow(v(i) / m, b.p);
  return m * std::pow(sum, 1.0 / b.p);
}

// Derivative of the gauge along d at x (x away from the center).
double pball_gauge_slope(const PBall& b, const Vec& x, const Vec& d) {
  const Vec v = (x - b.center) / b.radius;
  const double g = pball_gauge(b, x);
  if (g == 0.0) return 0.0;
  double num = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i)) / g;
    if (a == 0.0) continue;
    num += std::pow(a, b.p - 1.0) * (v(i) < 0 ? -1.0 : 1.0) * d(i) / b.radius;
  }
  return num;
}

std::pair<double, double> ellipse_line(const Ellipse& e, const Vec& x, const Vec& d) {
  const Vec v = x - e.center;
  const Vec Qd = e.form * d;
  const double alpha = d.dot(Qd);
  const double beta = v.dot(Qd);
  const double gamma = v.dot(e.form * v) - 1.0;
  if (!(alpha > 0.0)) throw Error(ErrorKind::NumericDegeneracy, "zero direction for chord");
  const double sq = std::sqrt(std::max(0.0, beta * beta - alpha * gamma));
  // Cancellation-free roots of alpha t^2 + 2 beta t + gamma = 0.
  if (beta >= 0.0) {
    const double q = -(beta + sq);
    return {q / alpha, gamma / q};
  }
  const double q = -beta + sq;
  return {gamma / q, q / alpha};
}

// Positive root of gauge(x + t d) = 1 by bracketed bisection then Newton.
double pball_exit(const PBall& b, const Vec& x, const Vec& d) {
  const double dn = d.norm();
  if (!(dn > 0.0)) throw Error(ErrorKind::NumericDegeneracy, "zero direction for chord");
  auto f = [&](double t) { return pball_gauge(b, x + t * d) - 1.0; };
  double lo = 0.0;
  double hi = b.radius / dn;
  int guard = 0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw Error(ErrorKind::NumericDegeneracy, "failed to bracket p-ball boundary");
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int step = 0; step < 2; ++step) {
    const double slope = pball_gauge_slope(b, x + t * d, d);
    if (!(std::abs(slope) > 0.0)) break;
    const double next = t - f(t) / slope;
    const double width = hi - lo;
    if (!(next >= lo - width) || !(next <= hi + width)) break;
    t = next;
  }
  return t;
}

// Range of the affine functional y -> w.y + s over the closure of a base domain.
std::pair<double, double> functional_range(const ConvexDomain& base, const Vec& w, double s) {
  if (const auto* e = base.as_ellipse()) {
    const double mid = w.dot(e->center) + s;
    const double spread = std::sqrt(std::max(0.0, w.dot(e->form.ldlt().solve(w))));
    return {mid - spread, mid + spread};
  }
  const auto* b = base.as_pball();
  const double mid = w.dot(b->center) + s;
  const double q = b->p / (b->p - 1.0);
  double dual = 0.0;
  const double m = w.cwiseAbs().maxCoeff();
  if (m > 0.0) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) sum += std::pow(std::abs(w(i)) / m, q);
    dual = m * std::pow(sum, 1.0 / q);
  }
  return {mid - b->radius * dual, mid + b->radius * dual};
}

Vec random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec d(n);
  do {
    for (int i = 0; i < n; ++i) d(i) = normal(rng);
  } while (d.norm() < 1e-12);
  return d.normalized();
}

std::string format_point(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

}  // namespace

std::optional<Vec> pull_back(const Transformed& t, const Vec& x) {
  const auto n = x.size();
  const Mat& inv = t.inverse.matrix();
  const Vec image = inv.leftCols(n) * x + inv.col(n);
  const double w = image(n);
  if (std::abs(w) <= 1e-14 * image.norm()) return std::nullopt;
  return Vec(image.head(n) / w);
}

ConvexDomain ConvexDomain::ellipse(const Vec& center, const Mat& form) {
  check_dimension(center.size());
  if (form.rows() != center.size() || form.cols() != center.size()) {
    throw Error(ErrorKind::InvalidConfig, "ellipse form must be an n x n matrix");
  }
  if (!form.allFinite() || !center.allFinite()) {
    throw Error(ErrorKind::InvalidConfig, "ellipse data must be finite");
  }
  if ((form - form.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, form.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::InvalidConfig, "ellipse form must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Mat> eig(form);
  const Vec& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * std::max(1.0, ev.maxCoeff()))) {
    throw Error(ErrorKind::InvalidConfig, "ellipse form must be positive definite (bounded, strictly convex)");
  }
  return ConvexDomain(Ellipse{center, 0.5 * (form + form.transpose())});
}

ConvexDomain ConvexDomain::unit_ball(int n) { return ellipse(Vec::Zero(n), Mat::Identity(n, n)); }

ConvexDomain ConvexDomain::pball(double p, const Vec& center, double radius) {
  check_dimension(center.size());
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidConfig, "p-ball exponent must satisfy 1 < p < infinity");
  }
  if (!(radius > 0.0) || !std::isfinite(radius) || !center.allFinite()) {
    throw Error(ErrorKind::InvalidConfig, "p-ball needs a finite center and positive radius");
  }
  return ConvexDomain(PBall{p, center, radius});
}

ConvexDomain ConvexDomain::transformed(const ConvexDomain& base, const ProjectiveMap& map) {
  if (map.dim() != base.dim()) throw Error(ErrorKind::InvalidConfig, "map and domain dimensions differ");
  if (const auto* inner = base.as_transformed()) {
    return transformed(*inner->base, map * inner->map);
  }
  const int n = base.dim();
  const Mat& m = map.matrix();
  const auto [lo, hi] = functional_range(base, m.row(n).head(n).transpose(), m(n, n));
  const double margin = 1e-9 * std::max(std::abs(lo), std::abs(hi)) + 1e-12;
  if (!(lo > margin) && !(hi < -margin)) {
    throw Error(ErrorKind::InvalidConfig, "image of the domain closure leaves the affine chart");
  }
  return ConvexDomain(Transformed{std::make_shared<const ConvexDomain>(base), map, map.inverse()});
}

ConvexDomain::Kind ConvexDomain::kind() const {
  if (as_ellipse()) return Kind::Ellipse;
  if (as_pball()) return Kind::PBall;
  return Kind::Transformed;
}

int ConvexDomain::dim() const {
  if (const auto* e = as_ellipse()) return static_cast<int>(e->center.size());
  if (const auto* b = as_pball()) return static_cast<int>(b->center.size());
  return as_transformed()->map.dim();
}

Vec ConvexDomain::center() const {
  if (const auto* e = as_ellipse()) return e->center;
  if (const auto* b = as_pball()) return b->center;
  const auto* t = as_transformed();
  return t->map.apply_affine(t->base->center());
}

double ConvexDomain::boundary_residual(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorKind::InvalidConfig, "point has the wrong dimension");
  if (const auto* e = as_ellipse()) return ellipse_gauge(*e, x) - 1.0;
  if (const auto* b = as_pball()) return pball_gauge(*b, x) - 1.0;
  const auto* t = as_transformed();
  const auto y = pull_back(*t, x);
  if (!y) return std::numeric_limits<double>::infinity();
  return t->base->boundary_residual(*y);
}

bool ConvexDomain::contains(const Vec& x) const {
  if (!x.allFinite()) return false;
  // Points within rounding of the boundary count as boundary points.
  return boundary_residual(x) < -kOnBoundary;
}

std::pair<double, double> ConvexDomain::line_parameters(const Vec& x, const Vec& d) const {
  if (x.size() != dim() || d.size() != dim()) throw Error(ErrorKind::InvalidConfig, "dimension mismatch");
  if (!contains(x)) throw Error(ErrorKind::OutsideDomain, "chord origin " + format_point(x) + " is not interior");
  if (const auto* e = as_ellipse()) return ellipse_line(*e, x, d);
  if (const auto* b = as_pball()) {
    const Vec back = -d;
    return {-pball_exit(*b, x, back), pball_exit(*b, x, d)};
  }
  // Pull the homogeneous line X0 + t D back to the base, solve there, and
  // convert the base parameter s to t through the induced Moebius relation.
  const auto* t = as_transformed();
  const auto n = x.size();
  const Mat& inv = t->inverse.matrix();
  const Vec p0 = inv.leftCols(n) * x + inv.col(n);
  const Vec q = inv.leftCols(n) * d;
  const double p0w = p0(n);
  const double qw = q(n);
  const Vec base_x = p0.head(n) / p0w;
  const Vec base_d = (q.head(n) * p0w - p0.head(n) * qw) / (p0w * p0w);
  const auto [s_lo, s_hi] = t->base->line_parameters(base_x, base_d);
  auto to_t = [&](double s) { return s * p0w / (p0w - s * qw); };
  return {to_t(s_lo), to_t(s_hi)};
}

Vec ConvexDomain::ray_exit(const Vec& from, const Vec& direction) const {
  const auto [lo, hi] = line_parameters(from, direction);
  (void)lo;
  return from + hi * direction;
}

Chord ConvexDomain::boundary_intersections(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorKind::InvalidConfig, "dimension mismatch");
  const Vec d = y - x;
  if (d.norm() <= 1e-15 * (1.0 + x.norm())) {
    throw Error(ErrorKind::NoUniqueLine, "x and y coincide; the chord is not unique");
  }
  if (!contains(x) || !contains(y)) {
    throw Error(ErrorKind::OutsideDomain, "chord endpoints must be interior: " + format_point(x) + ", " +
                                              format_point(y));
  }
  const auto [lo, hi] = line_parameters(x, d);
  return Chord{x + lo * d, x + hi * d, lo, hi};
}

Vec ConvexDomain::random_interior_point(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const Vec c = center();
  const Vec dir = random_direction(rng, dim());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double frac = 0.95 * std::pow(uniform(rng), 1.0 / dim());
  const auto [lo, hi] = line_parameters(c, dir);
  (void)lo;
  return c + frac * hi * dir;
}

std::vector<Vec> ConvexDomain::boundary_samples(int count) const {
  std::vector<Vec> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  const Vec c = center();
  if (dim() == 2) {
    for (int k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      Vec d(2);
      d << std::cos(theta), std::sin(theta);
      out.push_back(ray_exit(c, d));
    }
    return out;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec d(3);
    d << r * std::cos(golden * k), r * std::sin(golden * k), z;
    out.push_back(ray_exit(c, d));
  }
  return out;
}

StrictConvexityReport ConvexDomain::validate_strict_convexity(int sample_count, std::uint64_t seed) const {
  if (sample_count < 3) throw Error(ErrorKind::Precondition, "strict convexity check needs at least 3 samples");
  std::mt19937_64 rng(seed);
  const Vec c = center();
  StrictConvexityReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  while (report.samples < sample_count) {
    const Vec p = ray_exit(c, random_direction(rng, dim()));
    const Vec q = ray_exit(c, random_direction(rng, dim()));
    if ((p - q).norm() < 1e-9) continue;
    const double margin = interior_margin(0.5 * (p + q));
    ++report.samples;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.witness_p = p;
      report.witness_q = q;
    }
    if (!(margin > 0.0)) {
      throw Error(ErrorKind::StrictnessViolation,
                  "midpoint of boundary chord " + format_point(p) + " -- " + format_point(q) + " is not interior");
    }
  }
  return report;
}

}  // namespace hilbert
