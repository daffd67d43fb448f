#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mvcap/geometry.hpp"
#include "mvcap/mv_exact.hpp"

namespace mvcap {

/// Cav: f^(1/n) concave on the positive orthant; Vex: f^(1/n) convex.
enum class FunctionalClass { Cav, Vex, Unknown };
std::string to_string(FunctionalClass c);

/// Positive n-homogeneous functional on the open positive orthant.
class HomogeneousFunctional {
 public:
  virtual ~HomogeneousFunctional() = default;
  virtual int arity() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual FunctionalClass declared_class() const = 0;
};

class PolynomialFunctional : public HomogeneousFunctional {
 public:
  PolynomialFunctional(PolyCoefficients p, FunctionalClass cls) : p_(std::move(p)), cls_(cls) {}
  int arity() const override { return p_.n; }
  double value(const Vec& x) const override { return p_.evaluate(x); }
  Vec gradient(const Vec& x) const override { return p_.gradient(x); }
  FunctionalClass declared_class() const override { return cls_; }
  const PolyCoefficients& polynomial() const { return p_; }

 private:
  PolyCoefficients p_;
  FunctionalClass cls_;
};

/// (sum x_i^p)^(n/p); for p >= 1 its n-th root is a norm, hence in Vex.
class PowerMeanFunctional : public HomogeneousFunctional {
 public:
  PowerMeanFunctional(int n, double p) : n_(n), p_(p) {}
  int arity() const override { return n_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  FunctionalClass declared_class() const override { return p_ >= 1.0 ? FunctionalClass::Vex : FunctionalClass::Unknown; }

 private:
  int n_;
  double p_;
};

/// Minkowski polynomial of a tuple, through its coefficient table (class Cav).
std::unique_ptr<PolynomialFunctional> minkowski_functional(const BodyTuple& tuple, const GeometryConfig& cfg = {});

/// gamma_i = x_i d_i f / f.
Vec scaling_gamma(const HomogeneousFunctional& f, const Vec& x);
/// y_i = x_i / gamma_i.
Vec sh_step(const HomogeneousFunctional& f, const Vec& x);
/// x divided by its geometric mean.
Vec nor(const Vec& x);

struct ScalingState {
  Vec x;
  double f_value = 0.0;
  Vec gamma;
};

struct SinkhornTrajectory {
  std::vector<ScalingState> states;
  bool converged = false;
  /// f(SH(x_k)) for every step taken (before normalization).
  std::vector<double> sh_values;
};

/// X_{k+1} = Nor(SH(X_k)) until max|gamma - 1| <= tol. A Cav functional whose value increases
/// by more than 1e-9 (relative) raises ClassViolation. If `csv` is given, the trajectory is
/// written as iteration,f_value,max_gamma_deviation.
SinkhornTrajectory sinkhorn_iterate(const HomogeneousFunctional& f, const Vec& x0, int max_iters, double tol,
                                    std::ostream* csv = nullptr);

struct NearOptimality {
  double sum = 0.0;  // sum (1 - gamma_i)^2
  double bound = 0.0;
  bool holds = true;
};

/// Requires 0 < epsilon <= 1/10.
NearOptimality near_optimality_check(const ScalingState& state, double epsilon);

/// d - d^2/m if d <= m/2, else m/4.
double root_concave_bound(double d, double m);

struct SecondDerivativeProbe {
  double estimate = 0.0;       // central difference, h = 1e-4
  int degree = 0;              // degree of the restriction in x_i
  int homogeneity = 0;         // m
  double log_concave_bound = 0.0;  // degree
  double root_concave_bound = 0.0; // f(degree, m)
  double quadratic_bound = 0.0;    // degree^2 / 4
  double certified = 0.0;          // smallest applicable bound
};

/// Second derivative of t -> log f(..., x_i e^t, ...) at t = 0 for a polynomial with
/// nonnegative coefficients. `root_concave` states that the restriction is m-th root concave.
SecondDerivativeProbe second_derivative_probe(const PolyCoefficients& poly, int i, const Vec& y, bool root_concave);

/// Empirical class test: second differences of f^(1/n) along `lines` random segments.
FunctionalClass empirical_class(const HomogeneousFunctional& f, int lines, std::uint64_t seed);

}  // namespace mvcap
