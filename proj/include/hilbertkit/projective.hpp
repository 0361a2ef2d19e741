#pragma once

// Homogeneous-coordinate algebra on RP^n for n = 2, 3.

#include <vector>

#include <Eigen/Dense>

namespace hilbert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace tol {
inline constexpr double kPointEquality = 1e-9;
inline constexpr double kCollinearity = 1e-9;
inline constexpr double kInjectivity = 1e-12;
inline constexpr double kDenominator = 1e-12;
inline constexpr double kZeroVector = 1e-300;
}  // namespace tol

/// Unit Euclidean norm, first significant coordinate positive. Idempotent
/// bit for bit on its own output.
Vec canonicalize(const Vec& v);

class HomogeneousPoint {
 public:
  /// Throws NumericDegeneracy when every coordinate is zero.
  explicit HomogeneousPoint(const Vec& coords);

  static HomogeneousPoint from_affine(const Vec& affine);

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()) - 1; }

  /// Dehomogenize in the standard chart (last coordinate = 1).
  Vec affine() const;

  bool approx_equal(const HomogeneousPoint& other, double tolerance = tol::kPointEquality) const;

 private:
  Vec coords_;
};

class ProjectiveMap {
 public:
  /// Stored canonically: unit Frobenius norm, first significant entry positive.
  explicit ProjectiveMap(const Mat& mat);

  static ProjectiveMap identity(int n);

  const Mat& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()) - 1; }

  HomogeneousPoint apply(const HomogeneousPoint& p) const;
  /// Affine in, affine out. Throws NumericDegeneracy if the image leaves the chart.
  Vec apply_affine(const Vec& x) const;

  ProjectiveMap inverse() const;
  ProjectiveMap operator*(const ProjectiveMap& rhs) const;

  /// Up-to-scale comparison of canonical matrices (relative Frobenius).
  double distance_to(const ProjectiveMap& other) const;

 private:
  Mat mat_;
};

/// v -> (A v + b) / (<c, v> + d), defined on the half-space <c, v> + d > 0.
class FractionalLinearMap {
 public:
  FractionalLinearMap(Mat A, Vec b, Vec c, double d);

  static FractionalLinearMap identity(int n);

  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }
  const Vec& c() const { return c_; }
  double d() const { return d_; }
  int dim() const { return static_cast<int>(b_.size()); }

  Mat block_matrix() const;
  bool in_domain(const Vec& v) const;
  Vec apply(const Vec& v) const;

  bool is_injective() const;
  ProjectiveMap to_projective() const;

  /// Splits T into its blocks, signed so that `chart_point` lies in the
  /// half-space of definition.
  static FractionalLinearMap from_projective(const ProjectiveMap& T, const Vec& chart_point);

 private:
  Mat A_;
  Vec b_;
  Vec c_;
  double d_;
};

/// (|ay| / |ax|) * (|bx| / |by|) for collinear a, x, y, b in that order.
double cross_ratio(const Vec& a, const Vec& x, const Vec& y, const Vec& b);

/// Second singular value of the differences p_i - p_0, relative to the first.
/// Zero for collinear points.
double collinearity_defect(const std::vector<Vec>& points);

}  // namespace hilbert
