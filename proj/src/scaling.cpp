#include "mvcap/scaling.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "mvcap/error.hpp"

namespace mvcap {

std::string to_string(FunctionalClass c) {
  switch (c) {
    case FunctionalClass::Cav:
      return "cav";
    case FunctionalClass::Vex:
      return "vex";
    case FunctionalClass::Unknown:
      break;
  }
  return "unknown";
}

double PowerMeanFunctional::value(const Vec& x) const {
  return std::pow(x.array().pow(p_).sum(), n_ / p_);
}

Vec PowerMeanFunctional::gradient(const Vec& x) const {
  const double s = x.array().pow(p_).sum();
  return n_ * std::pow(s, n_ / p_ - 1.0) * x.array().pow(p_ - 1.0).matrix();
}

std::unique_ptr<PolynomialFunctional> minkowski_functional(const BodyTuple& tuple, const GeometryConfig& cfg) {
  return std::make_unique<PolynomialFunctional>(minkowski_coefficients(tuple, cfg), FunctionalClass::Cav);
}

Vec scaling_gamma(const HomogeneousFunctional& f, const Vec& x) {
  require(x.size() == f.arity() && (x.array() > 0.0).all(), ErrorKind::InvalidArgument,
          "scaling: x must be a positive vector of the functional's arity");
  const double v = f.value(x);
  require(v > 0.0, ErrorKind::ClassViolation, "scaling: functional is not positive at x");
  return x.cwiseProduct(f.gradient(x)) / v;
}

Vec sh_step(const HomogeneousFunctional& f, const Vec& x) {
  const Vec g = scaling_gamma(f, x);
  require((g.array() > 0.0).all(), ErrorKind::ClassViolation,
          "sh_step: a partial derivative vanishes; the functional is outside the positive class");
  return x.cwiseQuotient(g);
}

Vec nor(const Vec& x) {
  require((x.array() > 0.0).all(), ErrorKind::InvalidArgument, "nor: x must be positive");
  const double log_gm = x.array().log().mean();
  return x * std::exp(-log_gm);
}

namespace {

ScalingState make_state(const HomogeneousFunctional& f, const Vec& x) {
  return {x, f.value(x), scaling_gamma(f, x)};
}

double gamma_deviation(const ScalingState& s) { return (s.gamma.array() - 1.0).abs().maxCoeff(); }

}  // namespace

SinkhornTrajectory sinkhorn_iterate(const HomogeneousFunctional& f, const Vec& x0, int max_iters, double tol,
                                    std::ostream* csv) {
  require(max_iters >= 0, ErrorKind::InvalidArgument, "sinkhorn_iterate: negative iteration budget");
  require(tol > 0.0, ErrorKind::InvalidArgument, "sinkhorn_iterate: tolerance must be positive");
  SinkhornTrajectory tr;
  tr.states.push_back(make_state(f, nor(x0)));
  auto emit = [&](std::size_t k) {
    if (!csv) return;
    const auto& s = tr.states[k];
    *csv << k << ',' << s.f_value << ',' << gamma_deviation(s) << '\n';
  };
  if (csv) *csv << "iteration,f_value,max_gamma_deviation\n";
  emit(0);
  for (int k = 0; k < max_iters; ++k) {
    const ScalingState& cur = tr.states.back();
    if (gamma_deviation(cur) <= tol) break;
    const Vec y = sh_step(f, cur.x);
    const double fy = f.value(y);
    tr.sh_values.push_back(fy);
    if (f.declared_class() == FunctionalClass::Cav && fy > cur.f_value * (1.0 + 1e-9))
      throw Error(ErrorKind::ClassViolation, "sinkhorn_iterate: value increased under SH for a functional declared Cav");
    tr.states.push_back(make_state(f, nor(y)));
    emit(tr.states.size() - 1);
  }
  tr.converged = gamma_deviation(tr.states.back()) <= tol;
  return tr;
}

NearOptimality near_optimality_check(const ScalingState& state, double epsilon) {
  require(epsilon > 0.0 && epsilon <= 0.1, ErrorKind::Precondition, "near_optimality_check: epsilon must lie in (0, 0.1]");
  NearOptimality r;
  r.sum = (1.0 - state.gamma.array()).square().sum();
  r.bound = 10.0 * epsilon;
  r.holds = r.sum <= r.bound;
  return r;
}

double root_concave_bound(double d, double m) { return d <= 0.5 * m ? d - d * d / m : 0.25 * m; }

SecondDerivativeProbe second_derivative_probe(const PolyCoefficients& poly, int i, const Vec& y, bool root_concave) {
  require(i >= 0 && i < poly.n, ErrorKind::InvalidArgument, "second_derivative_probe: index out of range");
  require(y.size() == poly.n, ErrorKind::DimensionMismatch, "second_derivative_probe: point has the wrong length");
  constexpr double h = 1e-4;
  Vec yp = y, ym = y;
  yp(i) += h;
  ym(i) -= h;
  SecondDerivativeProbe r;
  r.estimate = (poly.log_value(yp) - 2.0 * poly.log_value(y) + poly.log_value(ym)) / (h * h);
  r.degree = poly.variable_degree(i);
  r.homogeneity = poly.degree;
  r.log_concave_bound = r.degree;
  r.root_concave_bound = root_concave_bound(r.degree, r.homogeneity);
  r.quadratic_bound = 0.25 * r.degree * r.degree;
  r.certified = root_concave ? std::min({r.log_concave_bound, r.root_concave_bound, r.quadratic_bound}) : r.quadratic_bound;
  return r;
}

FunctionalClass empirical_class(const HomogeneousFunctional& f, int lines, std::uint64_t seed) {
  const int n = f.arity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 2.0), s(-0.4, 0.4);
  bool concave = true, convex = true;
  for (int k = 0; k < lines; ++k) {
    Vec x(n), v(n);
    for (int j = 0; j < n; ++j) {
      x(j) = u(rng);
      v(j) = s(rng) * x(j);
    }
    auto h = [&](double t) { return std::pow(f.value(x + t * v), 1.0 / n); };
    const double h0 = h(0.0);
    const double d2 = h(1.0) - 2.0 * h0 + h(-1.0);
    const double tol = 1e-9 * std::max(1.0, h0);
    concave = concave && d2 <= tol;
    convex = convex && d2 >= -tol;
  }
  if (concave) return FunctionalClass::Cav;
  if (convex) return FunctionalClass::Vex;
  return FunctionalClass::Unknown;
}

}  // namespace mvcap
