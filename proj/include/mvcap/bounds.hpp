#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "mvcap/geometry.hpp"

namespace mvcap {

/// Arity sentinel for the limit n -> infinity (binomial terms become t^i / i!).
inline constexpr int kInfiniteArity = std::numeric_limits<int>::max();

/// 1 + sum_{i<=k} C(n,i) (x/n)^i.
double sv_eval(int n, int k, double x);
/// 1 / inf_{x>0} sv_{n,k}(x) / x.
double lambda_factor(int n, int k);
/// ((k-1)/k)^(k-1); g(1) = 1.
double g_factor(int k);
/// Closed form 1 / (1 + sqrt(2) sqrt((n-1)/n)).
double lambda_two_closed_form(int n);

/// (a_i/C(n,i))^2 >= (a_{i-1}/C(n,i-1)) (a_{i+1}/C(n,i+1)) for 0 < i < m.
bool newton_check(const std::vector<double>& coeffs, int n);

/// inf_{t>0} R(t)/t for R(t) = sum_j coeffs[j] t^j with nonnegative coefficients.
double univariate_capacity(const std::vector<double>& coeffs);

struct BoundFactors {
  int n = 0;
  std::vector<int> aff_sorted;     // descending
  std::vector<int> d;              // D(i) = min(i, aff(i)), 1-based i
  std::vector<double> lambdas;     // lambda(i, D(i))
  double product = 1.0;
  double vdw_factor = 1.0;         // n!/n^n
};

BoundFactors bound_factors(const std::vector<int>& aff_dims);

struct LowerBounds {
  BoundFactors factors;
  double vdw = 0.0;
  double svg = 0.0;
  std::optional<double> schrijver;
  std::optional<int> schrijver_k;
};

/// When `k` is absent the smallest k satisfying the profile hypothesis is used.
LowerBounds lower_bounds_report(double cap, const std::vector<int>& aff_dims, std::optional<int> k = std::nullopt);

/// (k!/k^k) lambda(n,k)^(n-k).
double schrijver_factor(int n, int k);

struct NewtonDegrees {
  std::vector<int> d;
  double product_bound = 1.0;
};

/// d(i) = max coordinate sum over the vertices of the i-th integer polytope.
NewtonDegrees newton_polytope_degrees(const BodyTuple& tuple, const GeometryConfig& cfg = {});

}  // namespace mvcap
