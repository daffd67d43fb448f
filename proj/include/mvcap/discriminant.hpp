#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvcap/capacity.hpp"
#include "mvcap/solver.hpp"

namespace mvcap {

/// n symmetric positive semidefinite n x n matrices.
struct MatrixTuple {
  std::vector<Mat> matrices;
  int size() const { return static_cast<int>(matrices.size()); }
  const Mat& operator[](int i) const { return matrices[static_cast<std::size_t>(i)]; }
};

/// Checks shape, symmetry (1e-12 relative) and eigenvalues >= -1e-10 (relative).
MatrixTuple make_matrix_tuple(std::vector<Mat> matrices);

/// det(sum x_i A_i).
double det_poly_eval(const MatrixTuple& a, const Vec& x);
/// Mixed discriminant in the derivative normalization.
double mixed_discriminant_polarization(const MatrixTuple& a);
/// rank(sum_{i in S} A_i) > |S| for every proper nonempty S.
bool fully_indecomposable(const MatrixTuple& a);

/// log det(sum e^{y_i} A_i); gradient gamma_i = e^{y_i} tr(M^{-1} A_i) via linear solves.
class DeterminantObjective : public LogObjective {
 public:
  explicit DeterminantObjective(MatrixTuple a) : a_(std::move(a)) {}
  int arity() const override { return a_.size(); }
  OracleValue value(const Vec& y) override;
  OracleGradient gradient(const Vec& y) override;

 private:
  Mat weighted(const Vec& y) const;
  MatrixTuple a_;
};

/// Capacity of Det_A with bracket (n!/n^n) Cap <= D <= Cap.
CapacityReport det_capacity(const MatrixTuple& a, const SolverOptions& options = {});

enum class Normalization { Partial, Classical };
std::string to_string(Normalization n);

struct BarvinokConvention {
  Normalization volume = Normalization::Classical;
  Normalization discriminant = Normalization::Classical;
};

struct BarvinokBracket {
  double lower = 0.0;
  double upper = 0.0;
  double discriminant = 0.0;  // in the convention's normalization
  BarvinokConvention convention;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Bracket for V(E_{A_1}, ..., E_{A_n}) with E_A = A * (unit ball); D is taken of A_i A_i^T.
BarvinokBracket barvinok_bracket(const std::vector<Mat>& factors, BarvinokConvention convention);

/// Regular `sides`-gon inscribed in the ellipse A * (unit disk).
ConvexBody polygonal_ellipse(const Mat& a, int sides = 256);

struct ConventionCandidate {
  BarvinokConvention convention;
  bool contains_all = false;
  double worst_upper_ratio = 0.0;  // max over samples of upper / V
};

struct ConventionResolution {
  BarvinokConvention chosen;
  std::vector<ConventionCandidate> candidates;
  int samples = 0;
};

/// Tests all four (volume, discriminant) normalization pairs on n = 2 polygonal ellipses
/// (identical unit disks plus `random_pairs` random pairs) and picks the tightest pair whose
/// bracket contains every sample within a factor 1 +- 1e-3.
ConventionResolution resolve_barvinok_convention(int random_pairs = 8, std::uint64_t seed = 7);

/// Random 2 x 2 factor: rotation times diag(a, b), a, b in [0.5, 2].
Mat random_ellipse_factor(std::uint64_t seed);

/// Mixed volume of two convex bodies in R^2 in the given normalization.
double planar_mixed_volume(const ConvexBody& p, const ConvexBody& q, Normalization norm);

}  // namespace mvcap
