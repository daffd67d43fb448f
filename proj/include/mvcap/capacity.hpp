#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "mvcap/geometry.hpp"
#include "mvcap/mv_exact.hpp"

namespace mvcap {

/// Additive error bounds attached to one oracle answer; each holds with probability 1 - failure_prob.
struct OracleQuality {
  double value_err = 0.0;
  double grad_err = 0.0;  // l2
  double failure_prob = 0.0;
};

struct OracleValue {
  double value = 0.0;
  OracleQuality quality;
};

struct OracleGradient {
  Vec gamma;
  OracleQuality quality;
};

/// f(y) = log p(e^y) for an n-homogeneous p. Defined on all of R^n; minimized on sum(y) = 0.
class LogObjective {
 public:
  virtual ~LogObjective() = default;
  virtual int arity() const = 0;
  virtual OracleValue value(const Vec& y) = 0;
  virtual OracleGradient gradient(const Vec& y) = 0;
  virtual bool noisy() const { return false; }

  std::size_t value_calls = 0;
  std::size_t gradient_calls = 0;
};

class PolynomialObjective : public LogObjective {
 public:
  explicit PolynomialObjective(PolyCoefficients p) : p_(std::move(p)) {}
  int arity() const override { return p_.n; }
  OracleValue value(const Vec& y) override;
  OracleGradient gradient(const Vec& y) override;
  const PolyCoefficients& polynomial() const { return p_; }

 private:
  PolyCoefficients p_;
};

/// Exact Minkowski objective. With `compile` the coefficient table is extracted once and all
/// later calls are polynomial evaluations; otherwise every call goes to the volume oracle.
class MinkowskiExactObjective : public LogObjective {
 public:
  MinkowskiExactObjective(BodyTuple tuple, bool compile, GeometryConfig cfg = {});
  int arity() const override { return tuple_.size(); }
  OracleValue value(const Vec& y) override;
  OracleGradient gradient(const Vec& y) override;
  const std::optional<PolyCoefficients>& compiled() const { return poly_; }

 private:
  BodyTuple tuple_;
  GeometryConfig cfg_;
  std::optional<PolyCoefficients> poly_;
};

/// Hit-or-miss objective. Call k uses seed splitmix64(master + k); `z_score` converts the
/// standard error into the per-call additive bound.
class MinkowskiMcObjective : public LogObjective {
 public:
  MinkowskiMcObjective(BodyTuple tuple, std::uint64_t samples, std::uint64_t seed, double z_score,
                       GeometryConfig cfg = {});
  int arity() const override { return tuple_.size(); }
  OracleValue value(const Vec& y) override;
  OracleGradient gradient(const Vec& y) override;
  bool noisy() const override { return true; }
  /// Value at y with a multiple of the base sample count (fresh seed).
  OracleValue value_with_samples(const Vec& y, std::uint64_t samples);
  double failure_prob() const { return failure_prob_; }
  std::uint64_t samples() const { return samples_; }

 private:
  BodyTuple tuple_;
  std::uint64_t samples_;
  std::uint64_t seed_;
  double z_;
  double failure_prob_;
  GeometryConfig cfg_;
  std::uint64_t counter_ = 0;
};

enum class OracleKind { Exact, MonteCarlo };

struct OracleSpec {
  OracleKind kind = OracleKind::Exact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  double z_score = 1.96;
};

/// Direct geometric evaluation of f at a zero-sum y.
OracleValue objective_eval(const BodyTuple& tuple, const Vec& y, const OracleSpec& mode = {},
                           const GeometryConfig& cfg = {});
/// gamma_i = x_i dV/dx_i / V at x = e^y via interpolated partial derivatives.
Vec objective_gradient(const BodyTuple& tuple, const Vec& y, const GeometryConfig& cfg = {});

/// One-sided difference at step 2 sqrt(a/n) of the unconstrained extension of f.
double fd_gradient_component(const std::function<double(const Vec&)>& f, const Vec& y, int i, double a);
double fd_gradient_component(const BodyTuple& tuple, const Vec& y, int i, double a, const GeometryConfig& cfg = {});
double fd_error_bound(int n, double a);

/// |f(y + delta) - f(y)| <= n |delta|_2 + 1e-8.
bool lipschitz_bound_check(const BodyTuple& tuple, const Vec& y, const Vec& delta, const GeometryConfig& cfg = {});

/// Two-sided standard normal quantile for failure probability delta.
double z_for_failure(double delta);

}  // namespace mvcap
