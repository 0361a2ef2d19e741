#pragma once

// Holonomy groups of closed convex projective surfaces: words, hyperbolic
// elements, axes, closed geodesics and fundamental-domain reduction.

#include <string>
#include <string_view>
#include <vector>

#include "hilbertkit/domain.hpp"

namespace hilbert {

/// One generator or its inverse. Generators are numbered a1, b1, a2, b2, ...
struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1

  /// Position in the alphabet a1 < A1 < b1 < B1 < a2 < ... used for ordering.
  int index() const { return 2 * gen + (exp < 0 ? 1 : 0); }
  Letter inverse() const { return {gen, -exp}; }
  bool operator==(const Letter&) const = default;
};

class GroupWord {
 public:
  GroupWord() = default;
  /// Freely reduces on construction.
  explicit GroupWord(const std::vector<Letter>& letters);

  /// Tokens like "a1", "B2"; uppercase is the inverse. "" and "1" are the identity.
  static GroupWord parse(std::string_view text);

  std::string str() const;
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int max_generator() const;

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;

  /// Strips inverse pairs from the two ends.
  GroupWord cyclically_reduced() const;
  /// Least rotation of the cyclic reduction of the word and of its inverse.
  GroupWord canonical() const;
  /// Largest k with the cyclically reduced word a k-th power of a shorter one.
  int power() const;

  bool operator==(const GroupWord& other) const { return letters_ == other.letters_; }
  bool operator<(const GroupWord& other) const;

 private:
  std::vector<Letter> letters_;
};

enum class ElementType { Identity, Hyperbolic, Other };

std::string_view to_string(ElementType type);

/// Spectral data of a hyperbolic element with det 1.
struct HyperbolicData {
  double lambda_max = 0.0;
  double lambda_mid = 0.0;
  double lambda_min = 0.0;
  Vec repelling;   // chart point of the lambda_min eigendirection
  Vec attracting;  // chart point of the lambda_max eigendirection
  double length = 0.0;
};

/// Scales M to determinant 1.
Mat unit_determinant(const Mat& m);

ElementType classify(const Mat& m, const ConvexDomain& omega);

/// log(lambda_max / lambda_min). Throws NotHyperbolic for non-real or
/// non-distinct spectra.
double translation_length(const Mat& m);

/// (repelling, attracting) fixed points. Throws NotHyperbolic, or
/// AxisInconsistency when the fixed points are off the boundary.
std::pair<Vec, Vec> axis(const Mat& m, const ConvexDomain& omega);

/// Uses a separately computed inverse for the repelling data, which keeps
/// precision for long words.
HyperbolicData hyperbolic_data(const Mat& m, const Mat& m_inverse, const ConvexDomain& omega);

/// Adjoint action of SL(2, R) on traceless matrices, in coordinates where
/// the invariant cone is x^2 + y^2 < w^2.
Mat sl2_to_so21(const Mat& m);

class SurfaceGroup {
 public:
  /// Validates: unit determinant (after scaling), relator trivial to 1e-8,
  /// generators preserve the boundary to 1e-8, all nontrivial words up to
  /// `hyperbolic_check_length` hyperbolic. Throws InvalidConfig.
  SurfaceGroup(int genus, std::vector<Mat> generators, Vec basepoint, ConvexDomain domain,
               int hyperbolic_check_length = 2);

  int genus() const { return genus_; }
  const std::vector<Mat>& generators() const { return generators_; }
  const Vec& basepoint() const { return basepoint_; }
  const ConvexDomain& domain() const { return domain_; }

  const Mat& letter_matrix(const Letter& l) const { return l.exp > 0 ? generators_[l.gen] : inverses_[l.gen]; }

  /// [a1, b1] ... [ag, bg] with [a, b] = a b a^-1 b^-1.
  GroupWord relator() const;

  /// Product of the letters left to right, determinant 1.
  Mat evaluate(const GroupWord& w) const;

  /// Apply a word to a chart point.
  Vec act(const GroupWord& w, const Vec& p) const;

  /// All freely reduced words of length <= n, shortest first, then by letters.
  std::vector<GroupWord> ball(int n) const;

 private:
  int genus_;
  std::vector<Mat> generators_;
  std::vector<Mat> inverses_;
  Vec basepoint_;
  ConvexDomain domain_;
};

/// Genus 2 from the regular octagon with interior angles pi/4 in the Klein
/// disk, basepoint at the center. Side pairings map side 2 to 0, 3 to 1,
/// 6 to 4 and 7 to 5.
SurfaceGroup standard_genus2_group();

struct ClosedGeodesic {
  GroupWord word;  // canonical
  Mat rep;
  Mat rep_inverse;
  Vec repelling;
  Vec attracting;
  double length = 0.0;
  int power = 1;
  bool primitive() const { return power == 1; }
};

/// Throws NotHyperbolic for the identity or a non-hyperbolic element.
ClosedGeodesic make_closed_geodesic(const SurfaceGroup& g, const GroupWord& w);

/// One item per conjugacy class of cyclically reduced words of length <=
/// max_len, with a class and its inverse identified. Sorted by length.
std::vector<ClosedGeodesic> enumerate_closed_geodesics(const SurfaceGroup& g, int max_len);

struct Reduction {
  Vec point;      // word applied to the input
  GroupWord word;
};

/// Greedy descent towards the basepoint over the generators and inverses.
/// Throws NonConvergence after `cutoff` steps.
Reduction dirichlet_reduce(const SurfaceGroup& g, const Vec& p, int cutoff = 1000);

}  // namespace hilbert
