#include "hilbertkit/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hilbertkit/errors.hpp"
#include "hilbertkit/metric.hpp"

namespace hilbert {

namespace {

// Image groups this far from a line contradict line preservation outright.
constexpr double kGeodesicCollinearity = 1e-6;

std::string triple_text(int i, int j, int k) {
  std::ostringstream os;
  os << '(' << i << ", " << j << ", " << k << ')';
  return os.str();
}

// Indices of a collinear group sorted along the line.
std::vector<int> sorted_along_line(const std::vector<Vec>& pts, const std::vector<int>& group) {
  const Vec& origin = pts[group.front()];
  Vec dir = Vec::Zero(origin.size());
  for (int idx : group) {
    const Vec d = pts[idx] - origin;
    if (d.norm() > dir.norm()) dir = d;
  }
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(group.size());
  for (int idx : group) keyed.emplace_back((pts[idx] - origin).dot(dir), idx);
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(keyed.size());
  for (const auto& [key, idx] : keyed) out.push_back(idx);
  return out;
}

void check_indices(const SampledLineMap& m, const std::vector<int>& group) {
  for (int idx : group) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= m.size()) {
      throw Error(ErrorKind::Precondition, "line group refers to sample " + std::to_string(idx));
    }
  }
}

// Every y sorted between x and z on the source must map between f(x), f(z).
Verdict betweenness_verdict(const SampledLineMap& m, bool require_collinear_images) {
  if (m.inputs.size() != m.outputs.size()) throw Error(ErrorKind::Precondition, "inputs and outputs differ in count");
  Verdict v;
  for (const auto& group : m.lines) {
    check_indices(m, group);
    if (group.size() < 3) {
      ++v.groups_skipped;
      continue;
    }
    ++v.groups_checked;
    if (require_collinear_images) {
      std::vector<Vec> images;
      for (int idx : group) images.push_back(m.outputs[idx]);
      if (collinearity_defect(images) > kGeodesicCollinearity) {
        throw Error(ErrorKind::GeodesicViolation,
                    "images of the line group starting at sample " + std::to_string(group.front()) +
                        " are not collinear");
      }
    }
    const auto order = sorted_along_line(m.inputs, group);
    const int k = static_cast<int>(order.size());
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        for (int l = j + 1; l < k; ++l) {
          const int x = order[i], y = order[j], z = order[l];
          if (!between(m.outputs[x], m.outputs[y], m.outputs[z])) {
            v.kind = VerdictKind::Violated;
            v.witness = {x, y, z};
            v.detail = "image of sample " + std::to_string(y) + " leaves the segment of samples " +
                       triple_text(x, y, z);
            return v;
          }
        }
      }
    }
  }
  v.kind = v.groups_checked > 0 ? VerdictKind::Holds : VerdictKind::Vacuous;
  return v;
}

// Similarity taking the centroid to 0 and the RMS radius to sqrt(2).
Mat normalizing_transform(const std::vector<Vec>& pts) {
  const auto n = pts.front().size();
  Vec centroid = Vec::Zero(n);
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  double sq = 0.0;
  for (const auto& p : pts) sq += (p - centroid).squaredNorm();
  const double rms = std::sqrt(sq / static_cast<double>(pts.size()));
  if (!(rms > 0.0)) throw Error(ErrorKind::FitDegeneracy, "all points coincide");
  const double scale = std::sqrt(2.0) / rms;
  Mat t = Mat::Identity(n + 1, n + 1);
  t.topLeftCorner(n, n) *= scale;
  t.topRightCorner(n, 1) = -scale * centroid;
  return t;
}

Vec apply_h(const Mat& t, const Vec& p) {
  const auto n = p.size();
  const Vec h = t.leftCols(n) * p + t.col(n);
  return h.head(n) / h(n);
}

double radial_defect(const ConvexDomain& omega, const Vec& q) {
  const Vec c = omega.center();
  const Vec dir = q - c;
  if (dir.norm() < 1e-14) {
    Vec any = Vec::Zero(c.size());
    any(0) = 1.0;
    return (omega.ray_exit(c, any) - c).norm();
  }
  const Vec e = omega.ray_exit(c, dir);
  return std::abs(dir.norm() - (e - c).norm());
}

Chord chord_along(const ConvexDomain& omega, const Vec& p, const Vec& d) {
  const auto [lo, hi] = omega.line_parameters(p, d);
  return Chord{p + lo * d, p + hi * d, lo, hi};
}

double point_line_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec u = (b - a).normalized();
  const Vec r = p - a;
  return (r - r.dot(u) * u).norm();
}

// Meeting point of the lines p + s u and q + t v in a common plane.
std::optional<Vec> meet_lines(const Vec& p, const Vec& u, const Vec& q, const Vec& v) {
  Eigen::Matrix<double, Eigen::Dynamic, 2> m(p.size(), 2);
  m.col(0) = u;
  m.col(1) = -v;
  const Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (s(1) <= 1e-12 * s(0)) return std::nullopt;
  const Vec st = svd.solve(q - p);
  return Vec(p + st(0) * u);
}

std::optional<Vec> meet_line_plane(const Vec& p, const Vec& u, const Vec& q, const Vec& plane_normal) {
  const double denom = u.dot(plane_normal);
  if (std::abs(denom) <= 1e-12 * u.norm() * plane_normal.norm()) return std::nullopt;
  return Vec(p + ((q - p).dot(plane_normal) / denom) * u);
}

Vec cross3(const Vec& a, const Vec& b) {
  Vec out(3);
  out << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
  return out;
}

}  // namespace

void SampledLineMap::validate() const {
  if (inputs.size() != outputs.size()) throw Error(ErrorKind::Precondition, "inputs and outputs differ in count");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = i + 1; j < inputs.size(); ++j) {
      if ((inputs[i] - inputs[j]).norm() <= tol::kPointEquality) {
        throw Error(ErrorKind::Precondition, "repeated input at samples " + std::to_string(i) + ", " + std::to_string(j));
      }
      if ((outputs[i] - outputs[j]).norm() <= tol::kPointEquality) {
        throw Error(ErrorKind::Precondition,
                    "map is not injective on samples " + std::to_string(i) + ", " + std::to_string(j));
      }
    }
  }
  for (const auto& group : lines) {
    check_indices(*this, group);
    std::vector<Vec> pts;
    for (int idx : group) pts.push_back(inputs[idx]);
    if (collinearity_defect(pts) > tol::kCollinearity) {
      throw Error(ErrorKind::Precondition, "inputs of a line group are not collinear");
    }
  }
}

SampledLineMap SampledLineMap::reversed() const { return SampledLineMap{outputs, inputs, lines}; }

SampledLineMap sample_projective_map(const ProjectiveMap& T, const ConvexDomain& omega, int line_count,
                                     int points_per_line, std::uint64_t seed) {
  if (line_count < 1 || points_per_line < 1) throw Error(ErrorKind::Precondition, "empty sample request");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.05, 0.95);
  SampledLineMap m;
  for (int l = 0; l < line_count; ++l) {
    Vec p = omega.random_interior_point(rng());
    Vec q = omega.random_interior_point(rng());
    while ((p - q).norm() < 1e-3) q = omega.random_interior_point(rng());
    const Chord chord = omega.boundary_intersections(p, q);
    std::vector<double> params;
    for (int k = 0; k < points_per_line; ++k) params.push_back(chord.t_a + uniform(rng) * (chord.t_b - chord.t_a));
    std::sort(params.begin(), params.end());
    std::vector<int> group;
    for (double s : params) {
      const Vec x = p + s * (q - p);
      group.push_back(static_cast<int>(m.inputs.size()));
      m.inputs.push_back(x);
      m.outputs.push_back(T.apply_affine(x));
    }
    m.lines.push_back(std::move(group));
  }
  return m;
}

bool between(const Vec& x, const Vec& y, const Vec& z, double tolerance) {
  const double xz = (z - x).norm();
  return (y - x).norm() + (z - y).norm() - xz < tolerance * xz;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::Violated: return "violated";
    case VerdictKind::Vacuous: return "vacuous";
  }
  return "unknown";
}

Verdict check_order_preserving(const SampledLineMap& m) { return betweenness_verdict(m, true); }

Verdict check_interval_preserving(const SampledLineMap& m) { return betweenness_verdict(m, false); }

Verdict subspace_preservation_check(const SampledLineMap& m, const std::vector<std::vector<int>>& planes) {
  if (m.dim() != 3) throw Error(ErrorKind::Precondition, "subspace check needs samples in dimension 3");
  auto planarity = [](const std::vector<Vec>& pts) {
    Mat diffs(static_cast<Eigen::Index>(pts.size() - 1), 3);
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.row(static_cast<Eigen::Index>(i - 1)) = (pts[i] - pts[0]).transpose();
    const Eigen::JacobiSVD<Mat> svd(diffs);
    const Vec& s = svd.singularValues();
    return s.size() < 3 || s(0) == 0.0 ? 0.0 : s(2) / s(0);
  };
  Verdict v;
  for (const auto& group : planes) {
    check_indices(m, group);
    if (group.size() < 4) {
      ++v.groups_skipped;
      continue;
    }
    std::vector<Vec> in, out;
    for (int idx : group) {
      in.push_back(m.inputs[idx]);
      out.push_back(m.outputs[idx]);
    }
    if (planarity(in) > tol::kCollinearity) throw Error(ErrorKind::Precondition, "plane group inputs are not coplanar");
    ++v.groups_checked;
    if (planarity(out) > tol::kCollinearity) {
      v.kind = VerdictKind::Violated;
      v.witness = {group[0], group[1], group[2]};
      v.detail = "images of the plane group starting at sample " + std::to_string(group.front()) + " are not coplanar";
      return v;
    }
  }
  v.kind = v.groups_checked > 0 ? VerdictKind::Holds : VerdictKind::Vacuous;
  return v;
}

FitResult fit_projective_map(const std::vector<Vec>& inputs, const std::vector<Vec>& outputs) {
  if (inputs.size() != outputs.size() || inputs.empty()) {
    throw Error(ErrorKind::Precondition, "fit needs matching, nonempty input and output lists");
  }
  const auto n = inputs.front().size();
  if (n != 2 && n != 3) throw Error(ErrorKind::InvalidConfig, "fit works in dimension 2 or 3");
  const auto count = static_cast<Eigen::Index>(inputs.size());
  if (count < n + 2) {
    throw Error(ErrorKind::FitDegeneracy, "need at least " + std::to_string(n + 2) + " correspondences");
  }
  const Mat t_in = normalizing_transform(inputs);
  const Mat t_out = normalizing_transform(outputs);
  const Eigen::Index unknowns = (n + 1) * (n + 1);
  // Each pair contributes y_i (row_n . X) - (row_i . X) = 0, i < n.
  Mat system = Mat::Zero(std::max(count * n, unknowns), unknowns);
  for (Eigen::Index k = 0; k < count; ++k) {
    const Vec x = apply_h(t_in, inputs[static_cast<std::size_t>(k)]);
    const Vec y = apply_h(t_out, outputs[static_cast<std::size_t>(k)]);
    Vec hx(n + 1);
    hx << x, 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index row = k * n + i;
      system.block(row, i * (n + 1), 1, n + 1) = -hx.transpose();
      system.block(row, n * (n + 1), 1, n + 1) = y(i) * hx.transpose();
    }
  }
  const Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  if (s(unknowns - 2) < 1e-10 * s(0)) {
    throw Error(ErrorKind::FitDegeneracy, "correspondences do not determine a unique projective map");
  }
  const Vec h = svd.matrixV().col(unknowns - 1);
  Mat H(n + 1, n + 1);
  for (Eigen::Index r = 0; r <= n; ++r) H.row(r) = h.segment(r * (n + 1), n + 1).transpose();
  const Mat T = t_out.inverse() * H * t_in;
  FitResult result{ProjectiveMap(T), 0.0};
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    double err = std::numeric_limits<double>::infinity();
    try {
      err = (result.map.apply_affine(inputs[k]) - outputs[k]).norm();
    } catch (const Error&) {
    }
    result.residual = std::max(result.residual, err);
  }
  return result;
}

DomainPreservationReport verify_domain_preserved(const ProjectiveMap& T, const ConvexDomain& omega,
                                                 int sample_count) {
  if (T.dim() != omega.dim()) throw Error(ErrorKind::InvalidConfig, "map and domain dimensions differ");
  DomainPreservationReport report;
  for (const Vec& p : omega.boundary_samples(sample_count)) {
    ++report.boundary_samples;
    double defect = std::numeric_limits<double>::infinity();
    try {
      defect = radial_defect(omega, T.apply_affine(p));
    } catch (const Error&) {
    }
    report.boundary_defect = std::max(report.boundary_defect, defect);
  }
  for (int i = 0; i < sample_count; ++i) {
    ++report.interior_samples;
    const Vec x = omega.random_interior_point(static_cast<std::uint64_t>(i));
    bool inside = false;
    try {
      inside = omega.contains(T.apply_affine(x));
    } catch (const Error&) {
    }
    report.interior_preserved = report.interior_preserved && inside;
  }
  return report;
}

double verify_isometry(const ProjectiveMap& T, const ConvexDomain& omega, int pair_count, std::uint64_t seed) {
  const auto pres = verify_domain_preserved(T, omega, 64);
  if (!(pres.boundary_defect <= 1e-6) || !pres.interior_preserved) {
    throw Error(ErrorKind::Precondition, "map does not preserve the domain (boundary defect " +
                                             std::to_string(pres.boundary_defect) + ")");
  }
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < pair_count; ++i) {
    const Vec x = omega.random_interior_point(rng());
    const Vec y = omega.random_interior_point(rng());
    const double before = hilbert_distance(omega, x, y);
    const double after = hilbert_distance(omega, T.apply_affine(x), T.apply_affine(y));
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

OrthogonalRecovery disk_recover_orthogonal(const SampledLineMap& m) {
  if (m.inputs.size() != m.outputs.size() || m.inputs.empty()) {
    throw Error(ErrorKind::Precondition, "empty or mismatched sample");
  }
  const int n = m.dim();
  bool has_origin = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.inputs[i].norm() < 1.0) || !(m.outputs[i].norm() < 1.0)) {
      throw Error(ErrorKind::Precondition, "samples must lie in the unit ball");
    }
    if (m.inputs[i].norm() <= 1e-12) {
      if (m.outputs[i].norm() > 1e-9) throw Error(ErrorKind::Precondition, "sample does not fix the origin");
      has_origin = true;
    }
  }
  if (!has_origin) throw Error(ErrorKind::Precondition, "sample lacks the pair 0 -> 0");
  const FitResult fit = fit_projective_map(m.inputs, m.outputs);
  const auto flt = FractionalLinearMap::from_projective(fit.map, Vec::Zero(n));
  const double d = flt.d();
  const double b_size = (flt.b() / d).cwiseAbs().maxCoeff();
  const double c_size = (flt.c() / d).cwiseAbs().maxCoeff();
  if (b_size > 1e-6 || c_size > 1e-6) {
    throw Error(ErrorKind::NotDiskIsometry, "fitted map has nonzero translation or denominator part (|b| = " +
                                                std::to_string(b_size) + ", |c| = " + std::to_string(c_size) + ")");
  }
  OrthogonalRecovery out;
  out.B = flt.A() / d;
  out.orthogonality_defect = (out.B.transpose() * out.B - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  out.fit_residual = fit.residual;
  return out;
}

SeparatingConfiguration construct_separating(const ConvexDomain& omega, const Vec& a, const Vec& b, const Vec& c) {
  const int n = omega.dim();
  if (a.size() != n || b.size() != n || c.size() != n) throw Error(ErrorKind::InvalidConfig, "dimension mismatch");
  for (const Vec* p : {&a, &b, &c}) {
    if (!omega.contains(*p)) throw Error(ErrorKind::Precondition, "separating construction needs interior points");
  }
  const double scale = std::max((c - a).norm(), 1e-300);
  if ((b - a).norm() <= tol::kPointEquality * scale || (c - b).norm() <= tol::kPointEquality * scale ||
      (c - a).norm() <= tol::kPointEquality) {
    throw Error(ErrorKind::Precondition, "a, b, c must be distinct");
  }
  if (collinearity_defect({a, b, c}) > tol::kCollinearity) {
    throw Error(ErrorKind::Precondition, "a, b, c must be collinear");
  }
  if (!between(a, b, c)) throw Error(ErrorKind::Precondition, "b must lie between a and c");

  SeparatingConfiguration s;
  s.a = a;
  s.b = b;
  s.c = c;
  s.L = omega.boundary_intersections(a, c);
  const Vec u = (c - a).normalized();
  // A unit direction perpendicular to L; in dimension 3 it spans the
  // construction plane together with L.
  Vec perp(n);
  if (n == 2) {
    perp << -u(1), u(0);
  } else {
    Eigen::Index k;
    u.cwiseAbs().minCoeff(&k);
    Vec e = Vec::Zero(3);
    e(k) = 1.0;
    perp = (e - e.dot(u) * u).normalized();
    s.normal = cross3(u, perp).normalized();
  }
  const Vec mid = 0.5 * (s.L.a + s.L.b);
  s.x = omega.ray_exit(mid, perp);
  s.L_a = chord_along(omega, a, s.x - a);
  s.y = s.L_a.a;
  s.L_c = chord_along(omega, c, s.x - c);
  s.z = s.L_c.a;
  s.L_b = chord_along(omega, b, b - s.y);
  return s;
}

SeparationCheck check_separating(const ConvexDomain& omega, const SeparatingConfiguration& s, double tolerance) {
  SeparationCheck r;
  const double scale = std::max({1.0, s.L.a.norm(), s.L.b.norm()});
  r.incidence = point_line_distance(s.a, s.L_a.a, s.L_a.b) <= tolerance * scale &&
                point_line_distance(s.b, s.L_b.a, s.L_b.b) <= tolerance * scale &&
                point_line_distance(s.c, s.L_c.a, s.L_c.b) <= tolerance * scale;
  const Vec ua = s.L_a.b - s.L_a.a;
  const Vec ub = s.L_b.b - s.L_b.a;
  const Vec uc = s.L_c.b - s.L_c.a;
  auto inside = [&](const std::optional<Vec>& p) { return p && omega.interior_margin(*p) > tolerance; };
  if (s.normal.size() == 0) {
    const auto bc = meet_lines(s.L_b.a, ub, s.L_c.a, uc);
    r.bc_margin = bc ? omega.interior_margin(*bc) : -std::numeric_limits<double>::infinity();
    r.bc_meet_inside = inside(bc);
    r.a_separated = !inside(meet_lines(s.L_a.a, ua, s.L_b.a, ub)) && !inside(meet_lines(s.L_a.a, ua, s.L_c.a, uc));
    return r;
  }
  // Planes H_b, H_c contain their chords and the normal direction.
  const Vec nb = cross3(ub, s.normal);
  const Vec nc = cross3(uc, s.normal);
  // Their common line passes through the meeting point of L_b and L_c.
  const auto bc = meet_lines(s.L_b.a, ub, s.L_c.a, uc);
  const bool on_both = bc && std::abs((*bc - s.L_b.a).dot(nb.normalized())) <= tolerance * scale &&
                       std::abs((*bc - s.L_c.a).dot(nc.normalized())) <= tolerance * scale;
  r.bc_margin = bc ? omega.interior_margin(*bc) : -std::numeric_limits<double>::infinity();
  r.bc_meet_inside = on_both && inside(bc);
  r.a_separated = !inside(meet_line_plane(s.L_a.a, ua, s.L_b.a, nb)) && !inside(meet_line_plane(s.L_a.a, ua, s.L_c.a, nc));
  return r;
}

}  // namespace hilbert
