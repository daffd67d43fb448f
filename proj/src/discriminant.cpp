#include "mvcap/discriminant.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mvcap/bounds.hpp"
#include "mvcap/error.hpp"

namespace mvcap {

MatrixTuple make_matrix_tuple(std::vector<Mat> matrices) {
  const int n = static_cast<int>(matrices.size());
  require(n >= 1, ErrorKind::InvalidArgument, "matrix tuple: at least one matrix is required");
  for (int i = 0; i < n; ++i) {
    const Mat& a = matrices[static_cast<std::size_t>(i)];
    const std::string tag = "matrix tuple: A" + std::to_string(i + 1);
    require(a.rows() == n && a.cols() == n, ErrorKind::DimensionMismatch, tag + " must be " + std::to_string(n) + "x" + std::to_string(n));
    require(a.allFinite(), ErrorKind::InvalidArgument, tag + " has non-finite entries");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::InvalidArgument, tag + " is not symmetric");
    const Mat sym = 0.5 * (a + a.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    require(lmin >= -1e-10 * scale, ErrorKind::InvalidArgument, tag + " is not positive semidefinite");
    matrices[static_cast<std::size_t>(i)] = sym;
  }
  return MatrixTuple{std::move(matrices)};
}

double det_poly_eval(const MatrixTuple& a, const Vec& x) {
  const int n = a.size();
  require(x.size() == n, ErrorKind::DimensionMismatch, "det_poly_eval: weight vector has the wrong length");
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m += x(i) * a[i];
  return determinant(m);
}

double mixed_discriminant_polarization(const MatrixTuple& a) {
  const int n = a.size();
  require(n <= 12, ErrorKind::InvalidArgument, "mixed_discriminant_polarization: n above 12");
  // Gray-code walk keeps one running sum; summation order is fixed, so the result is deterministic.
  Mat sum = Mat::Zero(n, n);
  double total = 0.0;
  unsigned mask = 0;
  for (unsigned k = 1; k < (1u << n); ++k) {
    const int bit = std::countr_zero(k);
    if (mask & (1u << bit)) sum -= a[bit]; else sum += a[bit];
    mask ^= 1u << bit;
    const int size = std::popcount(mask);
    total += ((n - size) % 2 == 0 ? 1.0 : -1.0) * determinant(sum);
  }
  return total;
}

bool fully_indecomposable(const MatrixTuple& a) {
  const int n = a.size();
  require(n <= 20, ErrorKind::InvalidArgument, "fully_indecomposable: n above 20");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Mat sum = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sum += a[i];
    if (numeric_rank(sum, 1e-10) <= std::popcount(mask)) return false;
  }
  return true;
}

Mat DeterminantObjective::weighted(const Vec& y) const {
  const int n = a_.size();
  require(y.size() == n, ErrorKind::DimensionMismatch, "determinant objective: point has the wrong length");
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m += std::exp(y(i)) * a_[i];
  return m;
}

OracleValue DeterminantObjective::value(const Vec& y) {
  ++value_calls;
  const Eigen::LDLT<Mat> ldlt(weighted(y));
  const Vec d = ldlt.vectorD();
  if ((d.array() <= 0.0).any()) return {-std::numeric_limits<double>::infinity(), {}};
  return {d.array().log().sum(), {}};
}

OracleGradient DeterminantObjective::gradient(const Vec& y) {
  ++gradient_calls;
  const int n = a_.size();
  const Mat m = weighted(y);
  const Eigen::LDLT<Mat> ldlt(m);
  require(ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 1e-10 * std::max(1.0, m.norm())).all(),
          ErrorKind::IllConditioned, "determinant objective: weighted sum is singular");
  Vec g(n);
  for (int i = 0; i < n; ++i) g(i) = std::exp(y(i)) * ldlt.solve(a_[i]).trace();
  return {g, {}};
}

namespace {

MatrixTuple substitute(const MatrixTuple& a, int i, int j) {
  MatrixTuple out = a;
  out.matrices[static_cast<std::size_t>(j)] = a[i];
  return out;
}

}  // namespace

CapacityReport det_capacity(const MatrixTuple& a, const SolverOptions& opt) {
  const int n = a.size();
  require(opt.epsilon > 0.0 && opt.epsilon < 1.0, ErrorKind::InvalidArgument, "det_capacity: epsilon must lie in (0, 1)");
  require(n <= 12, ErrorKind::InvalidArgument, "det_capacity: n above 12");
  std::vector<double> factors;
  std::vector<int> dims;
  for (int k = 1; k <= n; ++k) {
    factors.push_back(g_factor(k));
    dims.push_back(k);
  }
  DeterminantObjective f(a);
  if (n == 1) {
    MinimizeResult m;
    m.y = Vec::Zero(1);
    m.value = f.value(m.y).value;
    require(std::isfinite(m.value), ErrorKind::Precondition, "det_capacity: the single matrix vanishes");
    m.certified = true;
    CapacityReport r = make_report(m, factors, dims, opt);
    r.value_calls = f.value_calls;
    return r;
  }
  require(fully_indecomposable(a), ErrorKind::Precondition,
          "det_capacity: tuple is not fully indecomposable (rank(sum_S A_i) <= |S| for some S)");

  const double u = det_poly_eval(a, Vec::Ones(n));
  double stf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) stf = std::min(stf, mixed_discriminant_polarization(substitute(a, i, j)));
  require(stf > 0.0, ErrorKind::Precondition, "det_capacity: some D(A^ij) vanishes");

  MinimizeOptions mo;
  mo.method = opt.method;
  mo.epsilon = opt.epsilon;
  mo.max_iterations = opt.max_iterations;
  mo.radius = std::max(1.0, std::sqrt(static_cast<double>(n)) * std::log(2.0 * u / stf));
  const MinimizeResult m = minimize_on_hyperplane(f, mo);
  SolverOptions ro = opt;
  ro.oracle = OracleKind::Exact;
  CapacityReport r = make_report(m, factors, dims, ro);
  r.value_calls = f.value_calls;
  r.gradient_calls = f.gradient_calls;
  return r;
}

std::string to_string(Normalization n) { return n == Normalization::Partial ? "partial" : "classical"; }

double unit_ball_volume(int n) {
  require(n >= 0, ErrorKind::InvalidArgument, "unit_ball_volume: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

BarvinokBracket barvinok_bracket(const std::vector<Mat>& factors, BarvinokConvention convention) {
  const int n = static_cast<int>(factors.size());
  require(n >= 1, ErrorKind::InvalidArgument, "barvinok_bracket: no factors");
  std::vector<Mat> grams;
  for (const Mat& f : factors) {
    require(f.rows() == n && f.cols() == n, ErrorKind::DimensionMismatch, "barvinok_bracket: factors must be n x n");
    grams.push_back(f * f.transpose());
  }
  BarvinokBracket b;
  b.convention = convention;
  double d = std::max(0.0, mixed_discriminant_polarization(make_matrix_tuple(std::move(grams))));
  if (convention.discriminant == Normalization::Classical) d /= factorial(n);
  b.discriminant = d;
  const double vn = unit_ball_volume(n);
  b.upper = vn * std::sqrt(d);
  b.lower = std::pow(3.0, -0.5 * (n + 1)) * b.upper;
  return b;
}

ConvexBody polygonal_ellipse(const Mat& a, int sides) {
  require(a.rows() == 2 && a.cols() == 2, ErrorKind::DimensionMismatch, "polygonal_ellipse: factor must be 2 x 2");
  require(sides >= 3, ErrorKind::InvalidArgument, "polygonal_ellipse: at least three sides");
  std::vector<Vec> pts;
  for (int k = 0; k < sides; ++k) {
    const double t = 2.0 * std::numbers::pi * k / sides;
    pts.push_back(a * Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return ConvexBody::vpolytope(std::move(pts));
}

double planar_mixed_volume(const ConvexBody& p, const ConvexBody& q, Normalization norm) {
  require(p.ambient_dim() == 2 && q.ambient_dim() == 2, ErrorKind::DimensionMismatch, "planar_mixed_volume: bodies must lie in R^2");
  const double sum = volume_exact(minkowski_combine({1.0, 1.0}, {p, q}));
  // Vol(P+Q) - Vol(P) - Vol(Q) is the coefficient of l1*l2, i.e. the derivative normalization.
  const double partial = sum - volume_exact(p) - volume_exact(q);
  return norm == Normalization::Partial ? partial : 0.5 * partial;
}

Mat random_ellipse_factor(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> axis(0.5, 2.0), angle(0.0, std::numbers::pi);
  const double t = angle(rng);
  Mat r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const double s1 = axis(rng), s2 = axis(rng);
  return r * Eigen::Vector2d(s1, s2).asDiagonal();
}

ConventionResolution resolve_barvinok_convention(int random_pairs, std::uint64_t seed) {
  require(random_pairs >= 0, ErrorKind::InvalidArgument, "resolve_barvinok_convention: negative sample count");
  std::vector<std::pair<Mat, Mat>> pairs{{Mat::Identity(2, 2), Mat::Identity(2, 2)}};
  for (int k = 0; k < random_pairs; ++k) {
    const std::uint64_t s = splitmix64(seed + 2 * static_cast<std::uint64_t>(k));
    pairs.emplace_back(random_ellipse_factor(s), random_ellipse_factor(splitmix64(s + 1)));
  }
  std::vector<double> v_partial;
  for (const auto& [a, b] : pairs) v_partial.push_back(planar_mixed_volume(polygonal_ellipse(a), polygonal_ellipse(b), Normalization::Partial));

  ConventionResolution res;
  res.samples = static_cast<int>(pairs.size());
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (Normalization vn : {Normalization::Classical, Normalization::Partial}) {
    for (Normalization dn : {Normalization::Classical, Normalization::Partial}) {
      ConventionCandidate c;
      c.convention = {vn, dn};
      c.contains_all = true;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double v = vn == Normalization::Partial ? v_partial[k] : 0.5 * v_partial[k];
        const BarvinokBracket br = barvinok_bracket({pairs[k].first, pairs[k].second}, c.convention);
        c.contains_all = c.contains_all && v >= br.lower * (1.0 - 1e-3) && v <= br.upper * (1.0 + 1e-3);
        c.worst_upper_ratio = std::max(c.worst_upper_ratio, br.upper / v);
      }
      if (c.contains_all && c.worst_upper_ratio < best) {
        best = c.worst_upper_ratio;
        res.chosen = c.convention;
        found = true;
      }
      res.candidates.push_back(c);
    }
  }
  require(found, ErrorKind::IllConditioned, "resolve_barvinok_convention: no normalization pair contains every sample");
  return res;
}

}  // namespace mvcap
