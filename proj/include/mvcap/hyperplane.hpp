#pragma once

#include <cstddef>
#include <string>

#include "mvcap/capacity.hpp"

namespace mvcap {

enum class MinimizerMethod { Ellipsoid, ProjectedGradient };
std::string to_string(MinimizerMethod m);

struct MinimizeOptions {
  MinimizerMethod method = MinimizerMethod::Ellipsoid;
  double epsilon = 1e-4;
  double radius = 1.0;
  std::size_t max_iterations = 0;  // 0: derived from dimension, epsilon and radius
  int max_doublings = 10;
  /// Sample multiplier for the final re-evaluation of the best point (noisy objectives only).
  int final_sample_factor = 4;
};

/// Minimization of a convex f over {sum y = 0, |y| <= r}.
///
/// `gap` is a bound G with  min f >= value - G  and  f(y) <= value + G, holding
/// deterministically for exact objectives and on the event that every oracle call met its
/// stated quality for noisy ones.
struct MinimizeResult {
  Vec y;
  double value = 0.0;
  double gap = 0.0;
  bool certified = false;
  std::size_t iterations = 0;
  double radius = 0.0;
  double var_estimate = 0.0;
  int doublings = 0;
};

/// 2 * (max - min) of f over the 2n points +-r (e_i - 1/n) / |e_i - 1/n|.
double estimate_variation(LogObjective& f, double r);

/// Iteration cap used when MinimizeOptions::max_iterations is 0.
std::size_t default_iteration_cap(int n, double epsilon, double radius);

MinimizeResult minimize_on_hyperplane(LogObjective& f, const MinimizeOptions& options);

}  // namespace mvcap
