#include "mvcap/capacity.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "mvcap/error.hpp"

namespace mvcap {

namespace {

void require_zero_sum(const Vec& y, int n) {
  require(y.size() == n, ErrorKind::DimensionMismatch, "objective: point has the wrong length");
  require(std::abs(y.sum()) <= 1e-10 * std::max(1.0, y.lpNorm<1>()), ErrorKind::InvalidArgument,
          "objective: point is not on the zero-sum hyperplane");
}

double log_of_volume(double v) {
  require(v > 0.0, ErrorKind::Precondition,
          "objective: the scaled Minkowski sum has zero volume (tuple is not full-dimensional after summation)");
  return std::log(v);
}

}  // namespace

OracleValue PolynomialObjective::value(const Vec& y) {
  ++value_calls;
  const double v = p_.log_value(y);
  require(std::isfinite(v), ErrorKind::Precondition, "objective: polynomial vanishes");
  return {v, {}};
}

OracleGradient PolynomialObjective::gradient(const Vec& y) {
  ++gradient_calls;
  return {p_.log_gradient(y), {}};
}

MinkowskiExactObjective::MinkowskiExactObjective(BodyTuple tuple, bool compile, GeometryConfig cfg)
    : tuple_(std::move(tuple)), cfg_(cfg) {
  if (compile) poly_ = minkowski_coefficients(tuple_, cfg_);
}

OracleValue MinkowskiExactObjective::value(const Vec& y) {
  ++value_calls;
  if (poly_) {
    const double v = poly_->log_value(y);
    require(std::isfinite(v), ErrorKind::Precondition, "objective: Minkowski polynomial vanishes");
    return {v, {}};
  }
  return {log_of_volume(minkowski_poly_eval(tuple_, y.array().exp().matrix(), cfg_)), {}};
}

OracleGradient MinkowskiExactObjective::gradient(const Vec& y) {
  ++gradient_calls;
  if (poly_) return {poly_->log_gradient(y), {}};
  return {objective_gradient(tuple_, y, cfg_), {}};
}

MinkowskiMcObjective::MinkowskiMcObjective(BodyTuple tuple, std::uint64_t samples, std::uint64_t seed, double z_score,
                                           GeometryConfig cfg)
    : tuple_(std::move(tuple)), samples_(samples), seed_(seed), z_(z_score), cfg_(cfg) {
  require(samples_ >= 1, ErrorKind::InvalidArgument, "mc objective: sample count must be positive");
  require(z_ > 0.0, ErrorKind::InvalidArgument, "mc objective: z score must be positive");
  boost::math::normal_distribution<double> nd;
  failure_prob_ = 2.0 * boost::math::cdf(boost::math::complement(nd, z_));
}

OracleValue MinkowskiMcObjective::value_with_samples(const Vec& y, std::uint64_t samples) {
  ++value_calls;
  const ConvexBody sum = minkowski_combine(to_std(y.array().exp().matrix()), tuple_.bodies, cfg_);
  const McEstimate est = volume_mc(sum, samples, splitmix64(seed_ + counter_++), cfg_);
  require(est.hits > 0, ErrorKind::IllConditioned, "mc objective: no sample hit the body");
  // Rigorous log-space conversion of the z-sigma interval (slightly above the first-order value).
  const double rel = z_ * est.std_err / est.estimate;
  const double a = rel < 1.0 ? -std::log1p(-rel) : std::numeric_limits<double>::infinity();
  return {std::log(est.estimate), {a, 0.0, failure_prob_}};
}

OracleValue MinkowskiMcObjective::value(const Vec& y) { return value_with_samples(y, samples_); }

OracleGradient MinkowskiMcObjective::gradient(const Vec& y) {
  ++gradient_calls;
  const int n = arity();
  const OracleValue base = value(y);
  const double a0 = base.quality.value_err;
  const double delta = 2.0 * std::sqrt(std::max(a0, 1e-12) / n);
  Vec gamma(n);
  double err2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec yi = y;
    yi(i) += delta;
    const OracleValue vi = value(yi);
    gamma(i) = (vi.value - base.value) / delta;
    const double e = (a0 + vi.quality.value_err) / delta + 0.5 * n * delta;
    err2 += e * e;
  }
  return {gamma, {a0, std::sqrt(err2), (n + 1) * failure_prob_}};
}

OracleValue objective_eval(const BodyTuple& tuple, const Vec& y, const OracleSpec& mode, const GeometryConfig& cfg) {
  require_zero_sum(y, tuple.size());
  if (mode.kind == OracleKind::MonteCarlo) {
    MinkowskiMcObjective obj(tuple, mode.samples, mode.seed, mode.z_score, cfg);
    return obj.value(y);
  }
  return {log_of_volume(minkowski_poly_eval(tuple, y.array().exp().matrix(), cfg)), {}};
}

Vec objective_gradient(const BodyTuple& tuple, const Vec& y, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(y.size() == n, ErrorKind::DimensionMismatch, "objective_gradient: point has the wrong length");
  const Vec x = y.array().exp();
  const double v = minkowski_poly_eval(tuple, x, cfg);
  log_of_volume(v);
  Vec gamma(n);
  for (int i = 0; i < n; ++i) gamma(i) = x(i) * partial_derivative_exact(tuple, x, i, cfg) / v;
  return gamma;
}

double fd_error_bound(int n, double a) { return 2.0 * std::sqrt(n * a); }

double fd_gradient_component(const std::function<double(const Vec&)>& f, const Vec& y, int i, double a) {
  require(a > 0.0, ErrorKind::InvalidArgument, "fd_gradient_component: value error bound must be positive");
  require(i >= 0 && i < y.size(), ErrorKind::InvalidArgument, "fd_gradient_component: index out of range");
  const double delta = 2.0 * std::sqrt(a / static_cast<double>(y.size()));
  Vec yi = y;
  yi(i) += delta;
  return (f(yi) - f(y)) / delta;
}

double fd_gradient_component(const BodyTuple& tuple, const Vec& y, int i, double a, const GeometryConfig& cfg) {
  auto f = [&](const Vec& p) { return log_of_volume(minkowski_poly_eval(tuple, p.array().exp().matrix(), cfg)); };
  return fd_gradient_component(f, y, i, a);
}

bool lipschitz_bound_check(const BodyTuple& tuple, const Vec& y, const Vec& delta, const GeometryConfig& cfg) {
  const Vec y2 = y + delta;
  const double f1 = objective_eval(tuple, y, {}, cfg).value;
  const double f2 = objective_eval(tuple, y2, {}, cfg).value;
  return std::abs(f2 - f1) <= tuple.size() * delta.norm() + 1e-8;
}

double z_for_failure(double delta) {
  require(delta > 0.0 && delta < 1.0, ErrorKind::InvalidArgument, "z_for_failure: delta must lie in (0, 1)");
  boost::math::normal_distribution<double> nd;
  return boost::math::quantile(nd, 1.0 - 0.5 * delta);
}

}  // namespace mvcap
