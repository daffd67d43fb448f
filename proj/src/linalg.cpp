#include "mvcap/linalg.hpp"

#include <cmath>

namespace mvcap {

int numeric_rank(const Mat& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double smax = s(0);
  if (smax <= 1e-300) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax && s(i) > 1e-14) ++r;
  return r;
}

Mat orthonormal_basis(const Mat& columns, double rel_tol) {
  if (columns.cols() == 0) return Mat(columns.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  int r = 0;
  double smax = s.size() ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (smax > 1e-300 && s(i) > rel_tol * smax && s(i) > 1e-14) ++r;
  return svd.matrixU().leftCols(r);
}

Mat orthonormal_complement(const Mat& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  if (k == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - k);
}

Mat zero_sum_basis(int n) {
  Mat q(n, std::max(0, n - 1));
  // Helmert-style basis: column k is proportional to (1,...,1,-k,0,...,0).
  for (int k = 1; k < n; ++k) {
    Vec c = Vec::Zero(n);
    for (int i = 0; i < k; ++i) c(i) = 1.0;
    c(k) = -static_cast<double>(k);
    q.col(k - 1) = c / c.norm();
  }
  return q;
}

Vec generalized_cross(const Mat& rows) {
  const Eigen::Index d = rows.cols();
  Vec n(d);
  Mat minor(d - 1, d - 1);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index c = 0, cc = 0; c < d; ++c) {
      if (c == j) continue;
      minor.col(cc++) = rows.col(c);
    }
    double det = d == 1 ? 1.0 : minor.partialPivLu().determinant();
    n(j) = ((j % 2) ? -1.0 : 1.0) * det;
  }
  return n;
}

double determinant(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return n <= 60 ? std::round(r) : r;
}

Vec to_vec(std::span<const double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace mvcap
