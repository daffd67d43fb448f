#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mvcap/error.hpp"
#include "mvcap/geometry.hpp"

using namespace mvcap;

namespace {

Vec v2(double a, double b) { return Eigen::Vector2d(a, b); }

ConvexBody simplex2() { return ConvexBody::vpolytope({v2(0, 0), v2(1, 0), v2(0, 1)}); }

ConvexBody regular_polygon(int m, double r = 1.0) {
  std::vector<Vec> pts;
  for (int k = 0; k < m; ++k) pts.push_back(v2(r * std::cos(2 * M_PI * k / m), r * std::sin(2 * M_PI * k / m)));
  return ConvexBody::vpolytope(pts);
}

Mat random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a;
}

bool same_vertex_sets(std::vector<Vec> a, std::vector<Vec> b) {
  if (a.size() != b.size()) return false;
  for (const Vec& p : a) {
    bool found = std::any_of(b.begin(), b.end(), [&](const Vec& q) { return (p - q).norm() < 1e-9; });
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("affine dimension") {
  CHECK(affine_dimension(ConvexBody::segment(v2(0, 0), v2(1, 1))) == 1);
  CHECK(affine_dimension(ConvexBody::box(Vec::Zero(3), Vec::Ones(3))) == 3);
  CHECK(affine_dimension(ConvexBody::point(Vec::Zero(3))) == 0);
  CHECK(affine_dimension(ConvexBody::box(Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(1, 1, 2))) == 2);
  CHECK(affine_dimension(ConvexBody::vpolytope({v2(0, 0), v2(1, 1), v2(2, 2)})) == 1);
}

TEST_CASE("minkowski_combine representation closure") {
  const ConvexBody s = minkowski_combine({1, 1}, {ConvexBody::box(Vec::Zero(2), Vec::Ones(2)),
                                                  ConvexBody::box(Vec::Zero(2), 2 * Vec::Ones(2))});
  REQUIRE(s.is_box());
  const Box& b = std::get<Box>(s.rep());
  CHECK((b.lower - Vec::Zero(2)).norm() == 0.0);
  CHECK((b.upper - 3 * Vec::Ones(2)).norm() == 0.0);

  const ConvexBody sq = minkowski_combine({1, 1}, {ConvexBody::segment(v2(0, 0), v2(1, 0)),
                                                   ConvexBody::segment(v2(0, 0), v2(0, 1))});
  REQUIRE(sq.is_zonotope());
  CHECK(std::get<Zonotope>(sq.rep()).generators.size() == 2);
  CHECK(volume_exact(sq) == doctest::Approx(1.0));

  const ConvexBody dil = minkowski_combine({2}, {simplex2()});
  REQUIRE(dil.is_vpolytope());
  CHECK(same_vertex_sets(std::get<VPolytope>(dil.rep()).vertices, {v2(0, 0), v2(2, 0), v2(0, 2)}));

  CHECK_THROWS_AS(minkowski_combine({1, 1}, {simplex2(), ConvexBody::point(Vec::Zero(3))}), Error);
}

TEST_CASE("minkowski_combine is order invariant") {
  const ConvexBody a = simplex2();
  const ConvexBody b = ConvexBody::segment(v2(0, 0), v2(1, 2));
  const ConvexBody c = ConvexBody::box(v2(-1, 0), v2(0, 0.5));
  const auto abc = vertices(minkowski_combine({1, 1, 1}, {a, b, c}));
  const auto cba = vertices(minkowski_combine({1, 1, 1}, {c, b, a}));
  const auto nested = vertices(minkowski_combine({1, 1}, {minkowski_combine({1, 1}, {a, b}), c}));
  CHECK(same_vertex_sets(abc, cba));
  CHECK(same_vertex_sets(abc, nested));
}

TEST_CASE("volume_exact examples") {
  CHECK(volume_exact(ConvexBody::box(Vec::Zero(3), Vec::Ones(3))) == 1.0);
  const ConvexBody z = ConvexBody::zonotope(Vec::Zero(2), {v2(1, 0), v2(0, 1), v2(1, 1)});
  CHECK(volume_exact(z) == doctest::Approx(3.0));
  CHECK(volume_exact(to_vpolytope(z)) == doctest::Approx(3.0));
  CHECK(vertices(to_vpolytope(z)).size() == 6);
  CHECK(volume_exact(simplex2()) == doctest::Approx(0.5));
  CHECK(volume_exact(ConvexBody::segment(v2(0, 0), v2(1, 1))) == 0.0);
}

TEST_CASE("vpolytope construction drops duplicate and interior vertices") {
  const ConvexBody p = ConvexBody::vpolytope({v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 0), v2(0.2, 0.2), v2(0.5, 0.5)});
  CHECK(std::get<VPolytope>(p.rep()).vertices.size() == 3);
}

TEST_CASE("volume invariants: translation, linear maps, representation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<Vec> gens;
    for (int k = 0; k < n + 2; ++k) gens.push_back(Vec::NullaryExpr(n, [&] { return u(rng); }));
    const ConvexBody z = ConvexBody::zonotope(Vec::Zero(n), gens);
    const double vol = volume_exact(z);
    CHECK(volume_exact(translate(z, Vec::Constant(n, 3.0))) == doctest::Approx(vol).epsilon(1e-12));
    CHECK(volume_exact(to_vpolytope(z)) == doctest::Approx(vol).epsilon(1e-9));
    const Mat a = random_matrix(rng, n);
    CHECK(volume_exact(linear_map(a, z)) == doctest::Approx(std::abs(a.determinant()) * vol).epsilon(1e-9));
    const ConvexBody p = to_vpolytope(z);
    CHECK(volume_exact(linear_map(a, p)) == doctest::Approx(std::abs(a.determinant()) * vol).epsilon(1e-9));

    Vec lo = Vec::NullaryExpr(n, [&] { return u(rng); });
    Vec hi = lo + Vec::NullaryExpr(n, [&] { return 1.0 + u(rng); });
    const ConvexBody b = ConvexBody::box(lo, hi);
    CHECK(volume_exact(to_vpolytope(b)) == doctest::Approx(volume_exact(b)).epsilon(1e-9));
  }
}

TEST_CASE("volume_mc") {
  const McEstimate cube = volume_mc(ConvexBody::box(Vec::Zero(3), Vec::Ones(3)), 100000, 1);
  CHECK(cube.estimate == 1.0);

  const McEstimate s = volume_mc(simplex2(), 1000000, 2);
  CHECK(std::abs(s.estimate - 0.5) <= 3 * s.half_width);

  const ConvexBody poly = regular_polygon(64);
  const McEstimate p = volume_mc(poly, 1000000, 3);
  CHECK(std::abs(p.estimate - volume_exact(poly)) <= 3 * p.half_width);

  const McEstimate again = volume_mc(poly, 1000000, 3);
  CHECK(again.estimate == p.estimate);

  CHECK_THROWS_AS(volume_mc(ConvexBody::segment(v2(0, 0), v2(1, 1)), 1000, 1), Error);
}

TEST_CASE("volume_mc coverage over seeded trials") {
  const ConvexBody z = ConvexBody::zonotope(Vec::Zero(3), {Eigen::Vector3d(1, 0, 0.3), Eigen::Vector3d(0.2, 1, 0),
                                                         Eigen::Vector3d(0, 0.4, 1), Eigen::Vector3d(0.5, 0.5, 0.5)});
  const double exact = volume_exact(z);
  int covered = 0;
  const int trials = 40;
  for (int s = 0; s < trials; ++s) {
    const McEstimate e = volume_mc(z, 20000, 100 + s);
    covered += std::abs(e.estimate - exact) <= 4 * e.half_width;
  }
  CHECK(covered >= static_cast<int>(0.95 * trials));
}

TEST_CASE("support_value") {
  CHECK(support_value(ConvexBody::box(Vec::Zero(2), Vec::Ones(2)), v2(1, 1)) == 2.0);
  CHECK(support_value(ConvexBody::segment(v2(0, 0), v2(1, 1)), v2(1, -1)) == 0.0);
  CHECK(support_value(ConvexBody::zonotope(Vec::Zero(2), {v2(1, 0), v2(0, 1)}), v2(-1, -1)) == 0.0);
  CHECK(support_value(simplex2(), v2(2, 3)) == 3.0);
}

TEST_CASE("invalid bodies are rejected") {
  CHECK_THROWS_AS(ConvexBody::box(v2(1, 0), v2(0, 1)), Error);
  CHECK_THROWS_AS(ConvexBody::vpolytope({}), Error);
  CHECK_THROWS_AS(make_body_tuple({simplex2()}), Error);
}
