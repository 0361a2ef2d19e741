#include "hilbertkit/projective.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hilbertkit/errors.hpp"

namespace hilbert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Flip the sign so that the first entry whose magnitude exceeds `floor`
// (row-major order) is positive.
template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>& m, double floor) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      if (std::abs(v) > floor) {
        if (v < 0) m = -m;
        return;
      }
    }
  }
}

void check_dimension(Eigen::Index n, const char* what) {
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::InvalidConfig,
                std::string(what) + " must live in dimension 2 or 3, got " + std::to_string(n));
  }
}

}  // namespace

Vec canonicalize(const Vec& v) {
  const double norm = v.norm();
  if (!(norm > tol::kZeroVector) || !std::isfinite(norm)) {
    throw Error(ErrorKind::NumericDegeneracy, "homogeneous vector is zero or not finite");
  }
  Vec out = v;
  // A vector already at unit norm is left untouched so that repeated
  // canonicalization is bitwise stable.
  if (std::abs(norm - 1.0) > 8 * kEps) out /= norm;
  fix_sign(out, 1e-12);
  return out;
}

HomogeneousPoint::HomogeneousPoint(const Vec& coords) : coords_(canonicalize(coords)) {
  check_dimension(coords_.size() - 1, "homogeneous point");
}

HomogeneousPoint HomogeneousPoint::from_affine(const Vec& affine) {
  Vec h(affine.size() + 1);
  h.head(affine.size()) = affine;
  h(affine.size()) = 1.0;
  return HomogeneousPoint(h);
}

Vec HomogeneousPoint::affine() const {
  const auto n = coords_.size() - 1;
  const double w = coords_(n);
  if (std::abs(w) <= 1e-14) {
    throw Error(ErrorKind::NumericDegeneracy, "point lies on the hyperplane at infinity of the chart");
  }
  return coords_.head(n) / w;
}

bool HomogeneousPoint::approx_equal(const HomogeneousPoint& other, double tolerance) const {
  if (coords_.size() != other.coords_.size()) return false;
  // Near-zero leading coordinates can flip the canonical sign, so compare both.
  const double direct = (coords_ - other.coords_).cwiseAbs().maxCoeff();
  const double flipped = (coords_ + other.coords_).cwiseAbs().maxCoeff();
  return std::min(direct, flipped) <= tolerance;
}

ProjectiveMap::ProjectiveMap(const Mat& mat) {
  if (mat.rows() != mat.cols()) {
    throw Error(ErrorKind::InvalidConfig, "projective map matrix must be square");
  }
  check_dimension(mat.rows() - 1, "projective map");
  const double norm = mat.norm();
  if (!(norm > tol::kZeroVector) || !std::isfinite(norm)) {
    throw Error(ErrorKind::NotInvertible, "projective map matrix is zero or not finite");
  }
  mat_ = mat;
  if (std::abs(norm - 1.0) > 8 * kEps) mat_ /= norm;
  fix_sign(mat_, 1e-12);
  if (std::abs(mat_.determinant()) <= tol::kInjectivity) {
    throw Error(ErrorKind::NotInvertible, "projective map matrix is singular");
  }
}

ProjectiveMap ProjectiveMap::identity(int n) { return ProjectiveMap(Mat::Identity(n + 1, n + 1)); }

HomogeneousPoint ProjectiveMap::apply(const HomogeneousPoint& p) const {
  if (p.coords().size() != mat_.rows()) {
    throw Error(ErrorKind::InvalidConfig, "dimension mismatch between map and point");
  }
  const Vec image = mat_ * p.coords();
  if (image.norm() <= 1e-14 * p.coords().norm()) {
    throw Error(ErrorKind::NumericDegeneracy, "projective image collapsed below tolerance");
  }
  return HomogeneousPoint(image);
}

Vec ProjectiveMap::apply_affine(const Vec& x) const {
  const auto n = mat_.rows() - 1;
  if (x.size() != n) throw Error(ErrorKind::InvalidConfig, "dimension mismatch between map and point");
  const Vec image = mat_.leftCols(n) * x + mat_.col(n);
  const double w = image(n);
  if (std::abs(w) <= 1e-14 * image.norm()) {
    throw Error(ErrorKind::NumericDegeneracy, "image leaves the affine chart");
  }
  return image.head(n) / w;
}

ProjectiveMap ProjectiveMap::inverse() const { return ProjectiveMap(mat_.inverse()); }

ProjectiveMap ProjectiveMap::operator*(const ProjectiveMap& rhs) const {
  return ProjectiveMap(mat_ * rhs.mat_);
}

double ProjectiveMap::distance_to(const ProjectiveMap& other) const {
  if (other.mat_.rows() != mat_.rows()) return std::numeric_limits<double>::infinity();
  return std::min((mat_ - other.mat_).norm(), (mat_ + other.mat_).norm());
}

FractionalLinearMap::FractionalLinearMap(Mat A, Vec b, Vec c, double d)
    : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), d_(d) {
  const auto n = b_.size();
  check_dimension(n, "fractional linear map");
  if (A_.rows() != n || A_.cols() != n || c_.size() != n) {
    throw Error(ErrorKind::InvalidConfig, "fractional linear map blocks have inconsistent sizes");
  }
}

FractionalLinearMap FractionalLinearMap::identity(int n) {
  return FractionalLinearMap(Mat::Identity(n, n), Vec::Zero(n), Vec::Zero(n), 1.0);
}

Mat FractionalLinearMap::block_matrix() const {
  const auto n = b_.size();
  Mat m(n + 1, n + 1);
  m.topLeftCorner(n, n) = A_;
  m.topRightCorner(n, 1) = b_;
  m.bottomLeftCorner(1, n) = c_.transpose();
  m(n, n) = d_;
  return m;
}

bool FractionalLinearMap::in_domain(const Vec& v) const { return c_.dot(v) + d_ > tol::kDenominator; }

Vec FractionalLinearMap::apply(const Vec& v) const {
  if (v.size() != b_.size()) throw Error(ErrorKind::InvalidConfig, "dimension mismatch");
  const double denom = c_.dot(v) + d_;
  if (denom <= tol::kDenominator) {
    throw Error(ErrorKind::OutsideDomain, "point outside the half-space <c,v> + d > 0");
  }
  return (A_ * v + b_) / denom;
}

bool FractionalLinearMap::is_injective() const {
  const Mat m = block_matrix();
  const double scale = std::pow(m.norm(), static_cast<double>(m.rows()));
  return std::abs(m.determinant()) > tol::kInjectivity * scale;
}

ProjectiveMap FractionalLinearMap::to_projective() const {
  if (!is_injective()) {
    throw Error(ErrorKind::NotInvertible, "block matrix [[A, b], [c^T, d]] is not invertible");
  }
  return ProjectiveMap(block_matrix());
}

FractionalLinearMap FractionalLinearMap::from_projective(const ProjectiveMap& T, const Vec& chart_point) {
  Mat m = T.matrix();
  const auto n = m.rows() - 1;
  if (chart_point.size() != n) throw Error(ErrorKind::InvalidConfig, "chart point has the wrong dimension");
  const double denom = m.row(n).head(n).dot(chart_point) + m(n, n);
  if (std::abs(denom) <= tol::kDenominator * m.row(n).norm()) {
    throw Error(ErrorKind::Precondition, "last row of the matrix annihilates the chart point");
  }
  if (denom < 0) m = -m;
  return FractionalLinearMap(m.topLeftCorner(n, n), m.topRightCorner(n, 1), m.bottomLeftCorner(1, n).transpose(),
                             m(n, n));
}

double collinearity_defect(const std::vector<Vec>& points) {
  if (points.size() < 3) return 0.0;
  const auto n = points.front().size();
  Mat diffs(static_cast<Eigen::Index>(points.size() - 1), n);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != n) throw Error(ErrorKind::InvalidConfig, "points have mixed dimensions");
    diffs.row(static_cast<Eigen::Index>(i - 1)) = (points[i] - points[0]).transpose();
  }
  const Eigen::JacobiSVD<Mat> svd(diffs);
  const Vec& s = svd.singularValues();
  if (s.size() < 2 || s(0) == 0.0) return 0.0;
  return s(1) / s(0);
}

double cross_ratio(const Vec& a, const Vec& x, const Vec& y, const Vec& b) {
  if (collinearity_defect({a, x, y, b}) > tol::kCollinearity) {
    throw Error(ErrorKind::Collinearity, "cross ratio needs four collinear points");
  }
  const double ax = (x - a).norm();
  const double ay = (y - a).norm();
  const double bx = (x - b).norm();
  const double by = (y - b).norm();
  const double scale = std::max({ax, ay, bx, by});
  if (ax <= 1e-15 * scale || by <= 1e-15 * scale || scale == 0.0) {
    throw Error(ErrorKind::DegenerateConfiguration, "cross ratio undefined when a = x or b = y");
  }
  return (ay / ax) * (bx / by);
}

}  // namespace hilbert
