#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mvcap/bounds.hpp"
#include "mvcap/error.hpp"
#include "mvcap/mv_exact.hpp"
#include "mvcap/solver.hpp"

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

BodyTuple full_boxes(int n) {
  std::vector<ConvexBody> b;
  for (int i = 0; i < n; ++i) b.push_back(ConvexBody::box(Vec::Zero(n), Vec::Constant(n, 1.0 + 0.1 * i)));
  return make_body_tuple(b);
}

}  // namespace

TEST_CASE("indecomposability") {
  const auto seg = indecomposability_check(identity_segments(3));
  CHECK_FALSE(seg.indecomposable);
  CHECK(seg.certificate == std::vector<int>{0});
  CHECK(indecomposability_check(full_boxes(3)).indecomposable);
}

TEST_CASE("indecomposability with a rank certificate in R^3") {
  const Vec z = Vec::Zero(3);
  const BodyTuple t = make_body_tuple({ConvexBody::segment(z, Vec::Unit(3, 0)), ConvexBody::segment(z, 2 * Vec::Unit(3, 0)),
                                       ConvexBody::box(z, Vec::Ones(3))});
  const auto r = indecomposability_check(t);
  CHECK_FALSE(r.indecomposable);
  CHECK(r.certificate == std::vector<int>{0});
  const Mat v = kij_values(t);
  CHECK(v(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("K^ij positivity") {
  for (const auto& row : kij_positivity(full_boxes(3)))
    for (bool b : row) CHECK(b);
  const auto seg = kij_positivity(identity_segments(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK_FALSE(seg[i][j]);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const BodyTuple t = fixtures::random_tuple(rng, n);
    bool all = true;
    const auto p = kij_positivity(t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) all = all && p[i][j];
    CHECK(all == indecomposability_check(t).indecomposable);
  }
}

TEST_CASE("decomposition") {
  const DecompositionResult seg = decompose(identity_segments(3));
  CHECK(seg.blocks.size() == 3);
  for (const auto& b : seg.blocks) CHECK(mixed_volume_polarization(b.tuple).value == doctest::Approx(1.0));

  const Vec z = Vec::Zero(4);
  Vec a(4), b(4), c(4), d(4);
  a << 1, 1, 0, 0;
  b << 1, -1, 0, 0;
  c << 0, 0, 2, 1;
  d << 0, 0, 0, 1;
  const BodyTuple bd = make_body_tuple({ConvexBody::segment(z, a), ConvexBody::segment(z, c), ConvexBody::segment(z, b),
                                        ConvexBody::segment(z, d)});
  const DecompositionResult r = decompose(bd);
  CHECK_FALSE(r.zero);
  double prod = 1.0;
  int total = 0;
  for (const auto& blk : r.blocks) {
    prod *= mixed_volume_polarization(blk.tuple).value;
    total += static_cast<int>(blk.indices.size());
  }
  CHECK(total == 4);
  CHECK(prod == doctest::Approx(mixed_volume_polarization(bd).value).epsilon(1e-6));

  const Vec z2 = Vec::Zero(2);
  const DecompositionResult zero = decompose(make_body_tuple(
      {ConvexBody::segment(z2, Vec::Unit(2, 0)), ConvexBody::segment(z2, 3 * Vec::Unit(2, 0))}));
  CHECK(zero.zero);
}

TEST_CASE("decomposition of a mixed tuple preserves the mixed volume") {
  const Vec z = Vec::Zero(3);
  Vec u(3);
  u << 1, 2, 0;
  std::vector<Vec> tri{Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0.2, 0.3, 1.5)};
  const BodyTuple t = make_body_tuple({ConvexBody::segment(z, u), ConvexBody::vpolytope(tri), ConvexBody::box(z, Vec::Ones(3))});
  const DecompositionResult r = decompose(t);
  double prod = 1.0;
  for (const auto& blk : r.blocks) prod *= mixed_volume_polarization(blk.tuple).value;
  CHECK(r.blocks.size() == 2);
  CHECK(prod == doctest::Approx(mixed_volume_polarization(t).value).epsilon(1e-6));
}

TEST_CASE("search radius") {
  CHECK(search_radius(two_squares()) == doctest::Approx(std::sqrt(2.0) * std::log(4.0)));
  CHECK_THROWS_AS(search_radius(identity_segments(3)), Error);
}

TEST_CASE("capacity of simple tuples") {
  SolverOptions opt;
  opt.epsilon = 1e-4;
  const CapacityReport sq = minimize_capacity(two_squares(), opt);
  CHECK(sq.cap_estimate == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(sq.minimizer_y.norm() < 1e-2);
  CHECK(sq.certified);

  Mat ds(3, 3);
  ds << 0.2, 0.3, 0.5, 0.5, 0.2, 0.3, 0.3, 0.5, 0.2;
  CHECK(minimize_capacity(box_tuple(ds), opt).cap_estimate == doctest::Approx(1.0).epsilon(1e-3));

  const ConvexBody simplex = ConvexBody::vpolytope({Vec::Zero(3), Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)});
  const BodyTuple st = make_body_tuple({simplex, simplex, simplex});
  const CapacityReport s = minimize_capacity(st, opt);
  CHECK(s.cap_estimate == doctest::Approx(4.5).epsilon(1e-4));
  CHECK(mixed_volume_polarization(st).value / s.cap_estimate == doctest::Approx(6.0 / 27.0).epsilon(1e-4));

  Mat a = Mat::Identity(3, 3) + 0.1 * Mat::Ones(3, 3);
  const BodyTuple pb = box_tuple(a);
  const CapacityReport p = minimize_capacity(pb, opt);
  CHECK(p.certified);
  CHECK(p.minimizer_y.norm() < 0.95 * p.radius);
}

TEST_CASE("approx_mixed_volume brackets") {
  SolverOptions opt;
  const CapacityReport seg = approx_mixed_volume(identity_segments(3), opt);
  CHECK(seg.mv_lower == doctest::Approx(1.0));
  CHECK(seg.mv_upper == doctest::Approx(1.0));
  CHECK(seg.additive_gap == 0.0);

  std::mt19937_64 rng(10);
  const Mat a = fixtures::random_nonnegative(rng, 4, 0.1, 1.0);
  const CapacityReport box = approx_mixed_volume(box_tuple(a), opt);
  const double perm = permanent_ryser(a);
  CHECK(box.mv_lower <= perm);
  CHECK(perm <= box.mv_upper * std::exp(box.additive_gap));

  const Vec z2 = Vec::Zero(2);
  const CapacityReport zero = approx_mixed_volume(make_body_tuple(
      {ConvexBody::segment(z2, Vec::Unit(2, 0)), ConvexBody::segment(z2, 3 * Vec::Unit(2, 0))}));
  CHECK(zero.zero_certificate);
  CHECK(zero.mv_upper == 0.0);
}

TEST_CASE("bracket validity, method agreement, relabeling and scaling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const BodyTuple t = fixtures::random_tuple(rng, n, false);
    SolverOptions opt;
    opt.epsilon = 1e-6;
    const CapacityReport r = minimize_capacity(t, opt);
    const double mv = mixed_volume_polarization(t).value;
    CHECK(r.mv_lower <= mv);
    CHECK(mv <= r.mv_upper * (1 + 1e-6));

    SolverOptions pg = opt;
    pg.method = MinimizerMethod::ProjectedGradient;
    const CapacityReport g = minimize_capacity(t, pg);
    CHECK(std::abs(std::log(r.cap_estimate) - std::log(g.cap_estimate)) <= 2 * opt.epsilon + 1e-9);

    std::vector<ConvexBody> rev(t.bodies.rbegin(), t.bodies.rend());
    const CapacityReport rr = minimize_capacity(make_body_tuple(rev), opt);
    CHECK(rr.cap_estimate == doctest::Approx(r.cap_estimate).epsilon(1e-5));
    CHECK((rr.minimizer_y.reverse() - r.minimizer_y).norm() < 1e-2);

    const Vec scale = fixtures::uniform_vec(rng, n, 0.5, 2.0);
    std::vector<ConvexBody> scaled;
    for (int i = 0; i < n; ++i) scaled.push_back(minkowski_combine({scale(i)}, {t[i]}));
    const CapacityReport rs = minimize_capacity(make_body_tuple(scaled), opt);
    CHECK(rs.cap_estimate == doctest::Approx(r.cap_estimate * scale.prod()).epsilon(1e-5));
    Vec shift = -scale.array().log();
    shift.array() -= shift.mean();
    CHECK((rs.minimizer_y - (r.minimizer_y + shift)).norm() < 1e-2);
  }
}

TEST_CASE("equality case for translated dilates") {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 4; ++n) {
    const ConvexBody k = fixtures::random_body(rng, n, 1);
    std::vector<ConvexBody> bodies;
    for (int i = 0; i < n; ++i) {
      const double a = 0.5 + 0.4 * i;
      bodies.push_back(translate(minkowski_combine({a}, {k}), fixtures::uniform_vec(rng, n, -1, 1)));
    }
    const BodyTuple t = make_body_tuple(bodies);
    SolverOptions opt;
    opt.epsilon = 1e-8;
    const CapacityReport r = minimize_capacity(t, opt);
    const double ratio = mixed_volume_polarization(t).value / r.cap_estimate;
    CHECK(ratio == doctest::Approx(factorial(n) / std::pow(n, n)).epsilon(1e-4));
  }
}

TEST_CASE("invalid solver inputs") {
  SolverOptions bad;
  bad.epsilon = 1.5;
  CHECK_THROWS_AS(minimize_capacity(two_squares(), bad), Error);
  CHECK_THROWS_AS(minimize_capacity(identity_segments(3)), Error);
}

TEST_CASE("zero certificates name a collapsing subset") {
  const Vec z2 = Vec::Zero(2);
  const DecompositionResult r = decompose(make_body_tuple(
      {ConvexBody::segment(z2, Vec::Unit(2, 0)), ConvexBody::segment(z2, 3 * Vec::Unit(2, 0))}));
  REQUIRE(r.zero);
  CHECK(r.zero_subset == std::vector<int>{0, 1});
  CHECK(affine_dimension_of_sum(make_body_tuple({ConvexBody::segment(z2, Vec::Unit(2, 0)),
                                                 ConvexBody::segment(z2, 3 * Vec::Unit(2, 0))}),
                                r.zero_subset) < 2);
}
