#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mvcap/capacity.hpp"
#include "mvcap/error.hpp"
#include "mvcap/mv_exact.hpp"

using namespace mvcap;

namespace {

BodyTuple identity_segments(int n) {
  std::vector<ConvexBody> b;
  for (int i = 0; i < n; ++i) b.push_back(ConvexBody::segment(Vec::Zero(n), Vec::Unit(n, i)));
  return make_body_tuple(b);
}

BodyTuple two_squares() {
  const ConvexBody sq = ConvexBody::box(Vec::Zero(2), Vec::Ones(2));
  return make_body_tuple({sq, sq});
}

Vec zero_sum(std::mt19937_64& rng, int n, double scale) {
  Vec y = fixtures::uniform_vec(rng, n, -scale, scale);
  return y.array() - y.mean();
}

}  // namespace

TEST_CASE("objective values") {
  CHECK(objective_eval(identity_segments(3), Vec::Zero(3)).value == doctest::Approx(0.0));
  for (double t : {0.0, 0.3, -1.2}) {
    const double expect = 2.0 * std::log(std::exp(t) + std::exp(-t));
    CHECK(objective_eval(two_squares(), Eigen::Vector2d(t, -t)).value == doctest::Approx(expect));
  }
  CHECK_THROWS_AS(objective_eval(two_squares(), Eigen::Vector2d(0.1, 0.0)), Error);

  std::mt19937_64 rng(1);
  const BodyTuple t = fixtures::random_tuple(rng, 3, false);
  MinkowskiExactObjective f(t, false);
  const Vec y = zero_sum(rng, 3, 0.5);
  CHECK(f.value(y.array() + 0.7).value - f.value(y).value == doctest::Approx(3 * 0.7));
}

TEST_CASE("objective gradient") {
  CHECK((objective_gradient(identity_segments(3), Vec::Zero(3)) - Vec::Ones(3)).norm() < 1e-9);
  CHECK((objective_gradient(two_squares(), Vec::Zero(2)) - Vec::Ones(2)).norm() < 1e-9);
  const Vec g = objective_gradient(two_squares(), Eigen::Vector2d(std::log(3.0), -std::log(3.0)));
  CHECK(g(0) == doctest::Approx(1.8));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 3;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const Vec y = zero_sum(rng, n, 0.5);
    const Vec gamma = objective_gradient(t, y);
    CHECK(gamma.sum() == doctest::Approx(n).epsilon(1e-7));
    for (int i = 0; i < n; ++i) {
      CHECK(gamma(i) >= -1e-7);
      CHECK(gamma(i) <= affine_dimension(t[i]) + 1e-7);
    }
    // Central differences of the unconstrained extension.
    const double h = 1e-5;
    for (int i = 0; i < n; ++i) {
      MinkowskiExactObjective f(t, false);
      Vec yp = y, ym = y;
      yp(i) += h;
      ym(i) -= h;
      CHECK(std::abs((f.value(yp).value - f.value(ym).value) / (2 * h) - gamma(i)) <= 1e-4);
    }
  }
}

TEST_CASE("compiled and direct exact objectives agree") {
  std::mt19937_64 rng(3);
  const BodyTuple t = fixtures::random_tuple(rng, 3);
  MinkowskiExactObjective direct(t, false), compiled(t, true);
  REQUIRE(compiled.compiled().has_value());
  const Vec y = zero_sum(rng, 3, 0.8);
  CHECK(compiled.value(y).value == doctest::Approx(direct.value(y).value).epsilon(1e-9));
  CHECK((compiled.gradient(y).gamma - direct.gradient(y).gamma).norm() < 1e-7);
}

TEST_CASE("finite-difference gradient components") {
  CHECK(fd_gradient_component(identity_segments(3), Vec::Zero(3), 0, 1e-12) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(fd_gradient_component(two_squares(), Vec::Zero(2), 0, 1e-6) - 1.0) <= fd_error_bound(2, 1e-6));
  CHECK_THROWS_AS(fd_gradient_component(two_squares(), Vec::Zero(2), 0, 0.0), Error);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> la(-8, -3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 2;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const Vec y = zero_sum(rng, n, 0.5);
    const double a = std::pow(10.0, la(rng));
    const int i = trial % n;
    const double exact = objective_gradient(t, y)(i);
    CHECK(std::abs(fd_gradient_component(t, y, i, a) - exact) <= fd_error_bound(n, a));
  }
}

TEST_CASE("Lipschitz bound, convexity and coordinate curvature") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const Vec y = zero_sum(rng, n, 0.5);
    CHECK(lipschitz_bound_check(t, y, Vec::Zero(n)));
    const Vec d = zero_sum(rng, n, 1.0).normalized() * 0.3;
    CHECK(lipschitz_bound_check(t, y, d));
    const int i = trial % n;
    Vec adv = -Vec::Constant(n, 1.0 / n);
    adv(i) += 1.0;
    CHECK(lipschitz_bound_check(t, y, adv.normalized() * 0.3));

    MinkowskiExactObjective f(t, true);
    const double h = 1e-3;
    const double c0 = f.value(y).value;
    const double along = f.value(y + h * d / 0.3).value - 2 * c0 + f.value(y - h * d / 0.3).value;
    CHECK(along >= -1e-7);
    Vec e = Vec::Zero(n);
    e(i) = h;
    const double q2 = (f.value(y + e).value - 2 * c0 + f.value(y - e).value) / (h * h);
    CHECK(q2 >= -1e-6);
    CHECK(q2 <= affine_dimension(t[i]) + 1e-6);
  }
}

TEST_CASE("Monte Carlo objective reports its quality and is seed-deterministic") {
  // Boxes sum to a box, which the hit-or-miss estimator measures exactly.
  const OracleSpec mc{OracleKind::MonteCarlo, 100000, 42, 1.96};
  const OracleValue box = objective_eval(two_squares(), Eigen::Vector2d(0.2, -0.2), mc);
  CHECK(box.quality.value_err == 0.0);
  CHECK(box.value == doctest::Approx(2.0 * std::log(std::exp(0.2) + std::exp(-0.2))));

  const ConvexBody tri = ConvexBody::vpolytope({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  const BodyTuple t = make_body_tuple({tri, ConvexBody::box(Vec::Zero(2), Vec::Ones(2))});
  const OracleValue a = objective_eval(t, Eigen::Vector2d(0.2, -0.2), mc);
  const OracleValue b = objective_eval(t, Eigen::Vector2d(0.2, -0.2), mc);
  CHECK(a.value == b.value);
  CHECK(a.quality.value_err > 0.0);
  const double exact = objective_eval(t, Eigen::Vector2d(0.2, -0.2)).value;
  CHECK(std::abs(a.value - exact) <= 2 * a.quality.value_err);

  const ConvexBody z = ConvexBody::zonotope(Vec::Zero(2), {Eigen::Vector2d(1, 0.2), Eigen::Vector2d(0.3, 1)});
  MinkowskiMcObjective f(make_body_tuple({z, ConvexBody::box(Vec::Zero(2), Vec::Ones(2))}), 100000, 7, 3.0);
  const OracleGradient g = f.gradient(Vec::Zero(2));
  CHECK(g.quality.grad_err > 0.0);
  const Vec exact_g = objective_gradient(make_body_tuple({z, ConvexBody::box(Vec::Zero(2), Vec::Ones(2))}), Vec::Zero(2));
  CHECK((g.gamma - exact_g).norm() <= g.quality.grad_err);
}

TEST_CASE("normal quantile for the failure budget") {
  CHECK(z_for_failure(0.05) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(z_for_failure(1e-6) > 4.8);
}

TEST_CASE("upper-bound property of every evaluated point") {
  std::mt19937_64 rng(6);
  const BodyTuple t = fixtures::random_tuple(rng, 3, false);
  const PolyCoefficients p = minkowski_coefficients(t);
  const double cap = polynomial_capacity(p, 1e-10).cap;
  for (int k = 0; k < 10; ++k) {
    const Vec y = zero_sum(rng, 3, 1.0);
    CHECK(std::exp(objective_eval(t, y).value) >= cap * (1 - 1e-9));
  }
}
