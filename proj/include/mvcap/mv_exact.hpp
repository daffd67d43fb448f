#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvcap/geometry.hpp"

namespace mvcap {

/// Homogeneous polynomial with nonnegative coefficients, stored sparsely by exponent vector.
struct PolyCoefficients {
  int n = 0;
  int degree = 0;
  std::map<std::vector<int>, double> entries;

  /// Adds c to the coefficient of x^alpha (validates arity and total degree).
  void add(const std::vector<int>& alpha, double c);
  double coefficient(const std::vector<int>& alpha) const;
  double evaluate(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  /// log p(e^y) and its gradient, computed with a log-sum-exp shift.
  double log_value(const Vec& y) const;
  Vec log_gradient(const Vec& y) const;
  /// Largest exponent of variable i over the support.
  int variable_degree(int i) const;
};

PolyCoefficients product_of_variables(int n);
/// (x_1 + ... + x_n)^d expanded with multinomial coefficients.
PolyCoefficients power_of_sum(int n, int d);

enum class MixedVolumeMethod { Polarization, Permanent, SegmentDeterminant };
std::string to_string(MixedVolumeMethod m);

/// Mixed volume in the derivative normalization (n! times the classical one).
struct MixedVolumeResult {
  double value = 0.0;
  MixedVolumeMethod method = MixedVolumeMethod::Polarization;
};

double minkowski_poly_eval(const BodyTuple& tuple, const Vec& x, const GeometryConfig& cfg = {});
/// Volume of sum_{i in subset} K_i.
double subset_volume(const BodyTuple& tuple, std::uint32_t mask, const GeometryConfig& cfg = {});

MixedVolumeResult mixed_volume_polarization(const BodyTuple& tuple, const GeometryConfig& cfg = {});
/// Tuple with K_j replaced by K_i.
BodyTuple substitute(const BodyTuple& tuple, int i, int j);
/// K_i = prod_j [0, a(i, j)].
BodyTuple box_tuple(const Mat& a);

double permanent_ryser(const Mat& a);
MixedVolumeResult mixed_volume_segments(const std::vector<Vec>& vectors);

/// dV/dx_i at x by interpolating the restriction to coordinate i at aff(i)+1 Chebyshev nodes.
double partial_derivative_exact(const BodyTuple& tuple, const Vec& x, int i, const GeometryConfig& cfg = {});

/// Full coefficient table from finite differences on the integer lattice.
PolyCoefficients minkowski_coefficients(const BodyTuple& tuple, const GeometryConfig& cfg = {});

/// q_i: differentiate once in each of x_{i+1..n}, then set them to zero.
PolyCoefficients derivative_truncation(const PolyCoefficients& poly, int keep);

struct PolyCapacity {
  double cap = 0.0;
  double log_cap = 0.0;
  Vec minimizer;   // positive x with prod x_i = 1
  bool attained = true;
  bool diverged = false;
  int iterations = 0;
};

/// inf_{x > 0} p(x) / prod x_i for degree == arity, minimized over sum(y) = 0.
PolyCapacity polynomial_capacity(const PolyCoefficients& poly, double tol = 1e-10);

}  // namespace mvcap
