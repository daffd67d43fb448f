#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace mvcap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Numerical rank: singular values above `rel_tol * sigma_max` (and above a tiny absolute floor).
int numeric_rank(const Mat& m, double rel_tol = 1e-9);

/// Orthonormal basis (as columns) of the column span of `columns`.
Mat orthonormal_basis(const Mat& columns, double rel_tol = 1e-9);

/// Orthonormal basis of the orthogonal complement of the span of the (orthonormal) columns of `basis`.
Mat orthonormal_complement(const Mat& basis);

/// n x (n-1) matrix whose columns are an orthonormal basis of {y : sum(y) = 0}.
Mat zero_sum_basis(int n);

/// Generalized cross product: unit-free normal of the hyperplane spanned by d-1 vectors in R^d
/// (rows of `rows`). The result is orthogonal to every row.
Vec generalized_cross(const Mat& rows);

double determinant(const Mat& m);

double factorial(int n);
double binomial(int n, int k);

Vec to_vec(std::span<const double> xs);
std::vector<double> to_std(const Vec& v);

/// Enumerate all k-subsets of {0,...,n-1} in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// SplitMix64 step; used to derive independent stream seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mvcap
