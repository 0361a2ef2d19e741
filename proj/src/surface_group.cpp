#include "hilbertkit/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

#include "hilbertkit/errors.hpp"
#include "hilbertkit/metric.hpp"

namespace hilbert {

namespace {

constexpr double kSpectralGap = 1e-9;
constexpr double kAxisTolerance = 1e-8;

std::vector<Letter> free_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (const Letter& l : in) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

struct Spectrum {
  double lambda[3];  // moduli, descending
  Vec dominant;      // homogeneous eigenvector of lambda[0]
};

// Fails with nullopt for complex or non-distinct spectra.
std::optional<Spectrum> real_spectrum(const Mat& m) {
  const Eigen::Matrix3d m3 = m;
  const Eigen::EigenSolver<Eigen::Matrix3d> es(m3);
  if (es.info() != Eigen::Success) return std::nullopt;
  const auto& values = es.eigenvalues();
  double top = 0.0;
  for (int i = 0; i < 3; ++i) top = std::max(top, std::abs(values(i)));
  std::array<int, 3> order{0, 1, 2};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(values(i).imag()) > kSpectralGap * top) return std::nullopt;
  }
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::abs(values(i).real()) > std::abs(values(j).real()); });
  Spectrum s;
  for (int i = 0; i < 3; ++i) s.lambda[i] = std::abs(values(order[i]).real());
  if (!(s.lambda[2] > 0.0) || s.lambda[0] - s.lambda[1] <= kSpectralGap * s.lambda[0] ||
      s.lambda[1] - s.lambda[2] <= kSpectralGap * s.lambda[1]) {
    return std::nullopt;
  }
  Vec v = es.eigenvectors().col(order[0]).real();
  // A few power steps polish the eigenvector.
  for (int k = 0; k < 4; ++k) {
    const Vec next = m * v;
    if (!(next.norm() > 0.0)) break;
    v = next.normalized();
  }
  s.dominant = v;
  return s;
}

std::optional<Vec> chart_point(const Vec& h) {
  const auto n = h.size() - 1;
  if (std::abs(h(n)) <= 1e-14 * h.norm()) return std::nullopt;
  return Vec(h.head(n) / h(n));
}

// Fixed point must sit on the boundary.
bool on_boundary(const ConvexDomain& omega, const std::optional<Vec>& p) {
  return p && std::abs(omega.boundary_residual(*p)) <= kAxisTolerance;
}

Vec apply3(const Mat& m, const Vec& p) {
  Vec h(p.size() + 1);
  h << p, 1.0;
  const Vec out = m * h;
  return out.head(p.size()) / out(p.size());
}

Mat sl2_rotation(double t) {
  Mat r(2, 2);
  r << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return r;
}

Mat sl2_boost(double t) {
  Mat b = Mat::Zero(2, 2);
  b(0, 0) = std::exp(t / 2);
  b(1, 1) = std::exp(-t / 2);
  return b;
}

bool same_unordered_pair(const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2, double tolerance) {
  const double direct = std::max((p1 - p2).norm(), (q1 - q2).norm());
  const double swapped = std::max((p1 - q2).norm(), (q1 - p2).norm());
  return std::min(direct, swapped) <= tolerance;
}

}  // namespace

GroupWord::GroupWord(const std::vector<Letter>& letters) : letters_(free_reduce(letters)) {
  for (const Letter& l : letters_) {
    if (l.gen < 0 || (l.exp != 1 && l.exp != -1)) throw Error(ErrorKind::InvalidConfig, "malformed letter");
  }
}

GroupWord GroupWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (text.substr(i) == "1" || text.substr(i) == "e") return GroupWord();
  while (i < text.size()) {
    const char c = text[i];
    int offset;
    if (c == 'a' || c == 'A') {
      offset = 0;
    } else if (c == 'b' || c == 'B') {
      offset = 1;
    } else {
      throw Error(ErrorKind::InvalidConfig, "unexpected character '" + std::string(1, c) + "' in word");
    }
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw Error(ErrorKind::InvalidConfig, "letter without handle index in word");
    const int handle = std::stoi(std::string(text.substr(start, i - start)));
    if (handle < 1) throw Error(ErrorKind::InvalidConfig, "handle indices start at 1");
    letters.push_back({2 * (handle - 1) + offset, std::isupper(static_cast<unsigned char>(c)) ? -1 : 1});
    skip_space();
  }
  return GroupWord(letters);
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const Letter& l : letters_) {
    const char base = (l.gen % 2 == 0) ? 'a' : 'b';
    out += l.exp > 0 ? base : static_cast<char>(std::toupper(base));
    out += std::to_string(l.gen / 2 + 1);
  }
  return out;
}

int GroupWord::max_generator() const {
  int m = -1;
  for (const Letter& l : letters_) m = std::max(m, l.gen);
  return m;
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  GroupWord w;
  w.letters_ = std::move(out);
  return w;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(all);
}

GroupWord GroupWord::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  GroupWord w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                    letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return w;
}

bool GroupWord::operator<(const GroupWord& other) const {
  return std::lexicographical_compare(letters_.begin(), letters_.end(), other.letters_.begin(), other.letters_.end(),
                                      [](const Letter& x, const Letter& y) { return x.index() < y.index(); });
}

GroupWord GroupWord::canonical() const {
  const GroupWord c = cyclically_reduced();
  if (c.empty()) return c;
  GroupWord best = c;
  for (const GroupWord& base : {c, c.inverse()}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      GroupWord rot;
      rot.letters_.assign(base.letters_.begin() + static_cast<std::ptrdiff_t>(r), base.letters_.end());
      rot.letters_.insert(rot.letters_.end(), base.letters_.begin(),
                          base.letters_.begin() + static_cast<std::ptrdiff_t>(r));
      if (rot < best) best = rot;
    }
  }
  return best;
}

int GroupWord::power() const {
  const GroupWord c = cyclically_reduced();
  const std::size_t n = c.size();
  if (n == 0) return 1;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c.letters_[i] == c.letters_[i - p];
    if (periodic) return static_cast<int>(n / p);
  }
  return 1;
}

std::string_view to_string(ElementType type) {
  switch (type) {
    case ElementType::Identity: return "identity";
    case ElementType::Hyperbolic: return "hyperbolic";
    case ElementType::Other: return "other";
  }
  return "unknown";
}

Mat unit_determinant(const Mat& m) {
  const double det = m.determinant();
  if (!std::isfinite(det) || det == 0.0) throw Error(ErrorKind::NotInvertible, "matrix is singular");
  return m / std::cbrt(det);
}

ElementType classify(const Mat& m, const ConvexDomain& omega) {
  const Mat u = unit_determinant(m);
  if ((u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= 1e-10) return ElementType::Identity;
  const auto fwd = real_spectrum(u);
  if (!fwd) return ElementType::Other;
  const auto back = real_spectrum(u.inverse());
  if (!back) return ElementType::Other;
  if (!on_boundary(omega, chart_point(fwd->dominant)) || !on_boundary(omega, chart_point(back->dominant))) {
    return ElementType::Other;
  }
  return ElementType::Hyperbolic;
}

double translation_length(const Mat& m) {
  const Mat u = unit_determinant(m);
  const auto fwd = real_spectrum(u);
  const auto back = real_spectrum(u.inverse());
  if (!fwd || !back) throw Error(ErrorKind::NotHyperbolic, "spectrum is not real with distinct moduli");
  return std::log(fwd->lambda[0]) + std::log(back->lambda[0]);
}

HyperbolicData hyperbolic_data(const Mat& m, const Mat& m_inverse, const ConvexDomain& omega) {
  const Mat u = unit_determinant(m);
  const Mat ui = unit_determinant(m_inverse);
  const auto fwd = real_spectrum(u);
  const auto back = real_spectrum(ui);
  if (!fwd || !back) throw Error(ErrorKind::NotHyperbolic, "spectrum is not real with distinct moduli");
  const auto attracting = chart_point(fwd->dominant);
  const auto repelling = chart_point(back->dominant);
  if (!on_boundary(omega, attracting) || !on_boundary(omega, repelling)) {
    throw Error(ErrorKind::AxisInconsistency, "fixed points of the element are off the boundary");
  }
  HyperbolicData d;
  d.lambda_max = fwd->lambda[0];
  d.lambda_min = 1.0 / back->lambda[0];
  d.lambda_mid = fwd->lambda[1];
  d.attracting = *attracting;
  d.repelling = *repelling;
  d.length = std::log(fwd->lambda[0]) + std::log(back->lambda[0]);
  return d;
}

std::pair<Vec, Vec> axis(const Mat& m, const ConvexDomain& omega) {
  const auto d = hyperbolic_data(m, m.inverse(), omega);
  return {d.repelling, d.attracting};
}

Mat sl2_to_so21(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::InvalidConfig, "expected a 2x2 matrix");
  const Mat mi = m.inverse();
  // Basis of traceless matrices: [[0,1],[1,0]], [[1,0],[0,-1]], [[0,1],[-1,0]].
  std::array<Mat, 3> basis;
  basis[0] = (Mat(2, 2) << 0, 1, 1, 0).finished();
  basis[1] = (Mat(2, 2) << 1, 0, 0, -1).finished();
  basis[2] = (Mat(2, 2) << 0, 1, -1, 0).finished();
  Mat out(3, 3);
  for (int j = 0; j < 3; ++j) {
    const Mat y = m * basis[j] * mi;
    out(0, j) = 0.5 * (y(0, 1) + y(1, 0));
    out(1, j) = y(0, 0);
    out(2, j) = 0.5 * (y(0, 1) - y(1, 0));
  }
  return out;
}

SurfaceGroup::SurfaceGroup(int genus, std::vector<Mat> generators, Vec basepoint, ConvexDomain domain,
                           int hyperbolic_check_length)
    : genus_(genus), basepoint_(std::move(basepoint)), domain_(std::move(domain)) {
  if (genus < 2) throw Error(ErrorKind::InvalidConfig, "genus must be at least 2");
  if (generators.size() != static_cast<std::size_t>(2 * genus)) {
    throw Error(ErrorKind::InvalidConfig, "a genus " + std::to_string(genus) + " group needs " +
                                              std::to_string(2 * genus) + " generators");
  }
  if (domain_.dim() != 2) throw Error(ErrorKind::InvalidConfig, "surface groups act on a planar domain");
  if (basepoint_.size() != 2 || !domain_.contains(basepoint_)) {
    throw Error(ErrorKind::InvalidConfig, "basepoint must be interior");
  }
  for (auto& g : generators) {
    if (g.rows() != 3 || g.cols() != 3 || !g.allFinite()) {
      throw Error(ErrorKind::InvalidConfig, "generators must be finite 3x3 matrices");
    }
    try {
      generators_.push_back(unit_determinant(g));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidConfig, "generator is singular");
    }
    inverses_.push_back(generators_.back().inverse());
  }
  const Mat r = evaluate(relator());
  if ((r - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-8) {
    throw Error(ErrorKind::InvalidConfig, "relator does not evaluate to the identity");
  }
  const auto samples = domain_.boundary_samples(64);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (const Mat* m : {&generators_[i], &inverses_[i]}) {
      for (const Vec& p : samples) {
        if (!(std::abs(domain_.boundary_residual(apply3(*m, p))) <= 1e-8)) {
          throw Error(ErrorKind::InvalidConfig, "generator " + std::to_string(i) + " does not preserve the boundary");
        }
      }
    }
  }
  for (const GroupWord& w : ball(hyperbolic_check_length)) {
    if (w.empty()) continue;
    if (classify(evaluate(w), domain_) != ElementType::Hyperbolic) {
      throw Error(ErrorKind::InvalidConfig, "word " + w.str() + " is not hyperbolic");
    }
  }
}

GroupWord SurfaceGroup::relator() const {
  std::vector<Letter> letters;
  for (int h = 0; h < genus_; ++h) {
    const int a = 2 * h;
    const int b = 2 * h + 1;
    letters.insert(letters.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  return GroupWord(letters);
}

Mat SurfaceGroup::evaluate(const GroupWord& w) const {
  if (w.max_generator() >= static_cast<int>(generators_.size())) {
    throw Error(ErrorKind::InvalidConfig, "word " + w.str() + " uses a generator the group lacks");
  }
  Mat out = Mat::Identity(3, 3);
  for (const Letter& l : w.letters()) out = out * letter_matrix(l);
  return w.empty() ? out : unit_determinant(out);
}

Vec SurfaceGroup::act(const GroupWord& w, const Vec& p) const { return apply3(evaluate(w), p); }

std::vector<GroupWord> SurfaceGroup::ball(int n) const {
  std::vector<GroupWord> out{GroupWord()};
  std::vector<std::vector<Letter>> layer{{}};
  const int letters = 2 * static_cast<int>(generators_.size());
  for (int len = 1; len <= n; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer) {
      for (int k = 0; k < letters; ++k) {
        const Letter l{k / 2, k % 2 == 0 ? 1 : -1};
        if (!w.empty() && w.back() == l.inverse()) continue;
        auto ext = w;
        ext.push_back(l);
        next.push_back(std::move(ext));
      }
    }
    for (const auto& w : next) out.emplace_back(w);
    layer = std::move(next);
  }
  return out;
}

SurfaceGroup standard_genus2_group() {
  const double rho = std::acosh(1.0 + std::sqrt(2.0));
  const double pi = std::numbers::pi;
  const Mat half_turn = sl2_boost(rho) * sl2_rotation(pi) * sl2_boost(-rho);
  // SL(2) rotation by -t turns the chart counterclockwise by t.
  auto turn = [&](int k) { return sl2_rotation(-k * pi / 4); };
  auto pairing = [&](int i, int j) { return Mat(turn(i) * half_turn * turn(j).inverse()); };
  const Mat A = pairing(0, 2);
  const Mat B = pairing(1, 3);
  const Mat C = pairing(4, 6);
  const Mat D = pairing(5, 7);
  std::vector<Mat> gens{sl2_to_so21(A), sl2_to_so21(B.inverse()), sl2_to_so21(C), sl2_to_so21(D.inverse())};
  return SurfaceGroup(2, std::move(gens), Vec::Zero(2), ConvexDomain::unit_ball(2), 4);
}

ClosedGeodesic make_closed_geodesic(const SurfaceGroup& g, const GroupWord& w) {
  ClosedGeodesic c;
  c.word = w.canonical();
  if (c.word.empty()) throw Error(ErrorKind::NotHyperbolic, "the identity has no axis");
  c.rep = g.evaluate(c.word);
  c.rep_inverse = g.evaluate(c.word.inverse());
  const auto d = hyperbolic_data(c.rep, c.rep_inverse, g.domain());
  c.repelling = d.repelling;
  c.attracting = d.attracting;
  c.length = d.length;
  c.power = c.word.power();
  return c;
}

std::vector<ClosedGeodesic> enumerate_closed_geodesics(const SurfaceGroup& g, int max_len) {
  if (max_len < 1) throw Error(ErrorKind::Precondition, "maximum word length must be at least 1");
  std::set<GroupWord> classes;
  for (const GroupWord& w : g.ball(max_len)) {
    if (w.empty() || w.letters().front() == w.letters().back().inverse()) continue;
    classes.insert(w.canonical());
  }
  std::vector<ClosedGeodesic> items;
  items.reserve(classes.size());
  for (const GroupWord& w : classes) items.push_back(make_closed_geodesic(g, w));

  // Distinct cyclic words can still be conjugate through the relator; merge
  // those whose axes differ by a short element.
  std::vector<Mat> conjugators;
  for (const GroupWord& w : g.ball(std::min(max_len, 4))) conjugators.push_back(g.evaluate(w));
  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<std::size_t> by_length(items.size());
  std::iota(by_length.begin(), by_length.end(), 0);
  std::sort(by_length.begin(), by_length.end(),
            [&](std::size_t i, std::size_t j) { return items[i].length < items[j].length; });
  for (std::size_t s = 0; s < by_length.size(); ++s) {
    for (std::size_t t = s + 1; t < by_length.size(); ++t) {
      const auto& p = items[by_length[s]];
      const auto& q = items[by_length[t]];
      if (q.length - p.length > 1e-9 * std::max(1.0, p.length)) break;
      if (find(by_length[s]) == find(by_length[t])) continue;
      for (const Mat& h : conjugators) {
        if (same_unordered_pair(apply3(h, p.repelling), apply3(h, p.attracting), q.repelling, q.attracting, 1e-8)) {
          parent[find(by_length[t])] = find(by_length[s]);
          break;
        }
      }
    }
  }
  std::map<std::size_t, std::size_t> keep;  // root -> least member
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::size_t r = find(i);
    auto it = keep.find(r);
    if (it == keep.end() || items[i].word < items[it->second].word) keep[r] = i;
  }
  std::vector<ClosedGeodesic> out;
  for (const auto& [root, idx] : keep) out.push_back(items[idx]);
  std::sort(out.begin(), out.end(), [](const ClosedGeodesic& x, const ClosedGeodesic& y) {
    if (std::abs(x.length - y.length) > 1e-9 * std::max(1.0, x.length)) return x.length < y.length;
    return x.word < y.word;
  });
  return out;
}

Reduction dirichlet_reduce(const SurfaceGroup& g, const Vec& p, int cutoff) {
  const ConvexDomain& omega = g.domain();
  if (!omega.contains(p)) throw Error(ErrorKind::OutsideDomain, "point to reduce is not interior");
  Reduction r{p, GroupWord()};
  std::vector<Letter> applied;  // innermost first
  double current = hilbert_distance(omega, r.point, g.basepoint());
  const int letters = 2 * static_cast<int>(g.generators().size());
  for (int step = 0;; ++step) {
    double best = current;
    Vec best_point;
    Letter best_letter;
    for (int k = 0; k < letters; ++k) {
      const Letter l{k / 2, k % 2 == 0 ? 1 : -1};
      const Vec q = apply3(g.letter_matrix(l), r.point);
      if (!omega.contains(q)) continue;
      const double d = hilbert_distance(omega, q, g.basepoint());
      if (d < best - 1e-12) {
        best = d;
        best_point = q;
        best_letter = l;
      }
    }
    if (best_point.size() == 0) break;
    if (step >= cutoff) {
      throw Error(ErrorKind::NonConvergence,
                  "reduction did not settle within " + std::to_string(cutoff) + " steps");
    }
    r.point = best_point;
    current = best;
    applied.push_back(best_letter);
  }
  std::reverse(applied.begin(), applied.end());
  r.word = GroupWord(applied);
  return r;
}

}  // namespace hilbert
