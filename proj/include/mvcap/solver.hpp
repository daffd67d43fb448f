#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvcap/capacity.hpp"
#include "mvcap/hyperplane.hpp"

namespace mvcap {

struct SolverOptions {
  double epsilon = 1e-4;
  OracleKind oracle = OracleKind::Exact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  MinimizerMethod method = MinimizerMethod::Ellipsoid;
  std::size_t max_iterations = 0;
  /// Total failure probability budget for randomized oracles.
  double failure_budget = 0.25;
  GeometryConfig geometry;
};

/// Bracket mv_lower <= V(K) <= mv_upper * exp(additive_gap); mv_upper = cap_estimate.
struct CapacityReport {
  double cap_estimate = 0.0;
  Vec minimizer_y;
  double additive_gap = 0.0;
  double mv_lower = 0.0;
  double mv_upper = 0.0;
  std::vector<double> factors;
  std::vector<int> factor_dims;  // D(i) matching `factors`
  std::string oracle_mode = "exact";
  std::string method = "ellipsoid";
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool certified = false;
  bool zero_certificate = false;
  std::size_t value_calls = 0;
  std::size_t gradient_calls = 0;
  double radius = 0.0;
  double var_estimate = 0.0;
  double epsilon = 0.0;
  double failure_prob_per_call = 0.0;
  int blocks = 1;
};

struct IndecomposabilityResult {
  bool indecomposable = true;
  std::vector<int> certificate;  // violating subset (0-based), empty when indecomposable
  int certificate_aff = 0;
};

IndecomposabilityResult indecomposability_check(const BodyTuple& tuple);

/// V(K^{ij}) for i != j (K_j replaced by K_i); the diagonal holds V(K).
Mat kij_values(const BodyTuple& tuple, const GeometryConfig& cfg = {});
std::vector<std::vector<bool>> kij_positivity(const BodyTuple& tuple, const GeometryConfig& cfg = {});

struct DecompositionBlock {
  std::vector<int> indices;  // positions in the original tuple
  Mat basis;                 // n x k orthonormal basis of the block subspace (original coordinates)
  BodyTuple tuple;           // bodies expressed in `basis` coordinates (R^k)
};

struct DecompositionResult {
  std::vector<DecompositionBlock> blocks;
  std::vector<std::vector<int>> certificates;  // violating subsets used for each split
  bool zero = false;
  std::vector<int> zero_subset;
};

DecompositionResult decompose(const BodyTuple& tuple, const GeometryConfig& cfg = {});

/// sqrt(n) log(2 U / Stf), floored at 1.
double search_radius(const BodyTuple& tuple, const GeometryConfig& cfg = {});
double search_radius(const PolyCoefficients& poly);

/// Requires an indecomposable tuple.
CapacityReport minimize_capacity(const BodyTuple& tuple, const SolverOptions& options = {});
/// Decomposes, solves every block and multiplies the block results.
CapacityReport approx_mixed_volume(const BodyTuple& tuple, const SolverOptions& options = {});

/// Shared tail: turns a minimizer result plus bound factors into a report.
CapacityReport make_report(const MinimizeResult& m, std::vector<double> factors, std::vector<int> dims,
                           const SolverOptions& options);

}  // namespace mvcap
