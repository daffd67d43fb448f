#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
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

}  // namespace

TEST_CASE("Minkowski polynomial evaluation") {
  CHECK(minkowski_poly_eval(identity_segments(4), Vec::Ones(4)) == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int k = 0; k < 5; ++k) {
    const double a = u(rng), b = u(rng);
    CHECK(minkowski_poly_eval(two_squares(), Eigen::Vector2d(a, b)) == doctest::Approx((a + b) * (a + b)));
  }
  const BodyTuple t = fixtures::random_tuple(rng, 3);
  const double base = minkowski_poly_eval(t, Vec::Ones(3));
  CHECK(minkowski_poly_eval(t, Vec::Constant(3, 1.7)) == doctest::Approx(std::pow(1.7, 3) * base).epsilon(1e-9));
}

TEST_CASE("mixed volume by polarization") {
  CHECK(mixed_volume_polarization(identity_segments(4)).value == doctest::Approx(1.0));
  CHECK(mixed_volume_polarization(two_squares()).value == doctest::Approx(2.0));
  CHECK(mixed_volume_polarization(box_tuple(Mat::Ones(3, 3))).value == doctest::Approx(6.0));
}

TEST_CASE("permanent and segment mixed volumes") {
  CHECK(permanent_ryser(Mat::Identity(4, 4)) == 1.0);
  CHECK(permanent_ryser(Mat::Ones(4, 4)) == doctest::Approx(24.0));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 5; ++k) {
    const Mat a = fixtures::random_nonnegative(rng, 4);
    CHECK(mixed_volume_polarization(box_tuple(a)).value == doctest::Approx(permanent_ryser(a)).epsilon(1e-9));
  }
  CHECK(mixed_volume_segments({Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)}).value == doctest::Approx(1.0));
  const std::vector<Vec> s{Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)};
  CHECK(mixed_volume_segments(s).value == doctest::Approx(1.0));
  const BodyTuple st = make_body_tuple({ConvexBody::segment(Vec::Zero(2), s[0]), ConvexBody::segment(Vec::Zero(2), s[1])});
  CHECK(mixed_volume_polarization(st).value == doctest::Approx(1.0));
  CHECK(mixed_volume_segments({Eigen::Vector2d(1, 2), Eigen::Vector2d(2, 4)}).value == 0.0);
}

TEST_CASE("partial derivatives and the Euler identity") {
  CHECK(partial_derivative_exact(identity_segments(3), Vec::Ones(3), 1) == doctest::Approx(1.0));
  CHECK(partial_derivative_exact(two_squares(), Vec::Ones(2), 0) == doctest::Approx(4.0));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 2;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const Vec x = fixtures::uniform_vec(rng, n, 0.5, 2.0);
    double euler = 0.0;
    for (int i = 0; i < n; ++i) euler += x(i) * partial_derivative_exact(t, x, i);
    CHECK(euler == doctest::Approx(n * minkowski_poly_eval(t, x)).epsilon(1e-8));
  }
}

TEST_CASE("coefficient extraction") {
  const PolyCoefficients sq = minkowski_coefficients(two_squares());
  CHECK(sq.coefficient({2, 0}) == doctest::Approx(1.0));
  CHECK(sq.coefficient({1, 1}) == doctest::Approx(2.0));
  CHECK(sq.coefficient({0, 2}) == doctest::Approx(1.0));

  const PolyCoefficients id = minkowski_coefficients(identity_segments(3));
  CHECK(id.entries.size() == 1);
  CHECK(id.coefficient({1, 1, 1}) == doctest::Approx(1.0));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + trial % 3;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const PolyCoefficients p = minkowski_coefficients(t);
    const double mv = mixed_volume_polarization(t).value;
    CHECK(p.coefficient(std::vector<int>(static_cast<std::size_t>(n), 1)) == doctest::Approx(mv).epsilon(1e-8));
    for (int i = 0; i < n; ++i) CHECK(p.variable_degree(i) <= affine_dimension(t[i]));
    const Vec x = fixtures::uniform_vec(rng, n, 0.5, 2.0);
    CHECK(p.evaluate(x) == doctest::Approx(minkowski_poly_eval(t, x)).epsilon(1e-8));
    for (const auto& [alpha, c] : p.entries) CHECK(c >= 0.0);
  }
}

TEST_CASE("derivative truncation") {
  std::mt19937_64 rng(5);
  const BodyTuple t = fixtures::random_tuple(rng, 3);
  const PolyCoefficients p = minkowski_coefficients(t);
  const PolyCoefficients q1 = derivative_truncation(p, 1);
  CHECK(q1.n == 1);
  CHECK(q1.coefficient({1}) == doctest::Approx(mixed_volume_polarization(t).value).epsilon(1e-8));
  const PolyCoefficients q3 = derivative_truncation(p, 3);
  CHECK(q3.entries == p.entries);
  const PolyCoefficients q2 = derivative_truncation(product_of_variables(4), 2);
  CHECK(q2.entries.size() == 1);
  CHECK(q2.coefficient({1, 1}) == 1.0);
}

TEST_CASE("polynomial capacity") {
  const PolyCapacity a = polynomial_capacity(product_of_variables(3));
  CHECK(a.cap == doctest::Approx(1.0));
  CHECK((a.minimizer - Vec::Ones(3)).norm() < 1e-6);
  CHECK(polynomial_capacity(power_of_sum(2, 2)).cap == doctest::Approx(4.0));
  Mat ds(3, 3);
  ds << 0.2, 0.3, 0.5, 0.5, 0.2, 0.3, 0.3, 0.5, 0.2;
  const PolyCoefficients p = minkowski_coefficients(box_tuple(ds));
  CHECK(polynomial_capacity(p, 1e-10).cap == doctest::Approx(1.0).epsilon(1e-8));

  // x1^2 has no x1 x2 term: the infimum is 0 and is not attained.
  PolyCoefficients deg;
  deg.n = 2;
  deg.degree = 2;
  deg.add({2, 0}, 1.0);
  const PolyCapacity z = polynomial_capacity(deg);
  CHECK(z.cap == 0.0);
  CHECK(z.diverged);
}

TEST_CASE("mixed volume invariants") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    const double mv = mixed_volume_polarization(t).value;
    CHECK(mv >= 0.0);
    std::vector<ConvexBody> rev(t.bodies.rbegin(), t.bodies.rend());
    CHECK(mixed_volume_polarization(make_body_tuple(rev)).value == doctest::Approx(mv).epsilon(1e-9));

    // Additivity in the first slot.
    const ConvexBody s = fixtures::random_body(rng, n, 1);
    const ConvexBody tt = fixtures::random_body(rng, n, 0);
    auto with_first = [&](const ConvexBody& b) {
      std::vector<ConvexBody> v = t.bodies;
      v[0] = b;
      return mixed_volume_polarization(make_body_tuple(v)).value;
    };
    CHECK(with_first(minkowski_combine({1, 1}, {s, tt})) == doctest::Approx(with_first(s) + with_first(tt)).epsilon(1e-8));

    // Monotonicity: enlarging every body cannot decrease the mixed volume.
    std::vector<ConvexBody> bigger;
    for (const auto& b : t.bodies)
      bigger.push_back(minkowski_combine({1, 1}, {b, ConvexBody::box(Vec::Zero(n), Vec::Constant(n, 0.1))}));
    CHECK(mixed_volume_polarization(make_body_tuple(bigger)).value >= mv - 1e-8 * std::max(1.0, mv));
  }
}

TEST_CASE("polarization rejects large arity") {
  CHECK_THROWS_AS(mixed_volume_polarization(identity_segments(13)), Error);
}
