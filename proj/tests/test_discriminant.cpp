#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mvcap/discriminant.hpp"
#include "mvcap/error.hpp"
#include "mvcap/mv_exact.hpp"

using namespace mvcap;

namespace {

Mat random_psd(std::mt19937_64& rng, int n, int rank) {
  std::normal_distribution<double> g;
  Mat f(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) f(i, j) = g(rng);
  return f * f.transpose();
}

Mat random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat a = Mat::NullaryExpr(n, n, [&] { return g(rng); });
  return Eigen::HouseholderQR<Mat>(a).householderQ();
}

MatrixTuple diagonal_tuple(const Mat& b) {
  std::vector<Mat> m;
  for (int i = 0; i < b.rows(); ++i) m.push_back(b.row(i).transpose().asDiagonal());
  return make_matrix_tuple(m);
}

MatrixTuple unit_projections(int n) {
  std::vector<Mat> m;
  for (int i = 0; i < n; ++i) m.push_back(Vec::Unit(n, i) * Vec::Unit(n, i).transpose());
  return make_matrix_tuple(m);
}

}  // namespace

TEST_CASE("matrix tuple validation") {
  Mat asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(make_matrix_tuple({asym, Mat::Identity(2, 2)}), Error);
  CHECK_THROWS_AS(make_matrix_tuple({-Mat::Identity(2, 2), Mat::Identity(2, 2)}), Error);
  CHECK_THROWS_AS(make_matrix_tuple({Mat::Identity(3, 3), Mat::Identity(3, 3)}), Error);
}

TEST_CASE("determinantal polynomial") {
  const Vec x = Eigen::Vector3d(0.5, 2.0, 3.0);
  CHECK(det_poly_eval(unit_projections(3), x) == doctest::Approx(3.0));
  const MatrixTuple ii = make_matrix_tuple({Mat::Identity(2, 2), Mat::Identity(2, 2)});
  CHECK(det_poly_eval(ii, Eigen::Vector2d(1.5, 0.5)) == doctest::Approx(4.0));
  std::mt19937_64 rng(41);
  std::vector<Mat> m;
  for (int i = 0; i < 3; ++i) m.push_back(random_psd(rng, 3, 3));
  const MatrixTuple t = make_matrix_tuple(m);
  CHECK(det_poly_eval(t, Vec::Ones(3)) == doctest::Approx((m[0] + m[1] + m[2]).determinant()));
}

TEST_CASE("mixed discriminant") {
  CHECK(mixed_discriminant_polarization(unit_projections(4)) == doctest::Approx(1.0));
  CHECK(mixed_discriminant_polarization(make_matrix_tuple({Mat::Identity(2, 2), Mat::Identity(2, 2)})) == doctest::Approx(2.0));
  std::mt19937_64 rng(42);
  for (int k = 0; k < 5; ++k) {
    const Mat b = fixtures::random_nonnegative(rng, 4);
    CHECK(mixed_discriminant_polarization(diagonal_tuple(b)) == doctest::Approx(permanent_ryser(b)).epsilon(1e-10));
  }
  for (int k = 0; k < 5; ++k) {
    const int n = 2 + k % 3;
    std::vector<Mat> m, c;
    const Mat q = random_orthogonal(rng, n);
    for (int i = 0; i < n; ++i) {
      m.push_back(random_psd(rng, n, 1 + i % n));
      Mat r = q * m.back() * q.transpose();
      c.push_back(0.5 * (r + r.transpose()));
    }
    const double d = mixed_discriminant_polarization(make_matrix_tuple(m));
    CHECK(d >= -1e-9);
    CHECK(mixed_discriminant_polarization(make_matrix_tuple(c)) == doctest::Approx(d).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("full indecomposability") {
  CHECK_FALSE(fully_indecomposable(unit_projections(3)));
  CHECK(fully_indecomposable(make_matrix_tuple({Mat::Identity(3, 3), Mat::Identity(3, 3), Mat::Identity(3, 3)})));
}

TEST_CASE("determinant objective gradient matches finite differences") {
  std::mt19937_64 rng(43);
  std::vector<Mat> m;
  for (int i = 0; i < 3; ++i) m.push_back(random_psd(rng, 3, 2));
  DeterminantObjective f(make_matrix_tuple(m));
  const Vec y = Eigen::Vector3d(0.2, -0.5, 0.3);
  const Vec g = f.gradient(y).gamma;
  CHECK(g.sum() == doctest::Approx(3.0));
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Vec yp = y, ym = y;
    yp(i) += h;
    ym(i) -= h;
    CHECK((f.value(yp).value - f.value(ym).value) / (2 * h) == doctest::Approx(g(i)).epsilon(1e-6));
  }
}

TEST_CASE("determinant capacity") {
  SolverOptions opt;
  opt.epsilon = 1e-6;
  Mat ds(3, 3);
  ds << 0.2, 0.3, 0.5, 0.5, 0.2, 0.3, 0.3, 0.5, 0.2;
  CHECK(det_capacity(diagonal_tuple(ds), opt).cap_estimate == doctest::Approx(1.0).epsilon(1e-6));

  std::vector<Mat> pert;
  for (int i = 0; i < 3; ++i) pert.push_back(Vec::Unit(3, i) * Vec::Unit(3, i).transpose() + 0.01 * Mat::Identity(3, 3));
  const MatrixTuple pt = make_matrix_tuple(pert);
  const CapacityReport r = det_capacity(pt, opt);
  const double d = mixed_discriminant_polarization(pt);
  CHECK(r.cap_estimate >= d * (1 - 1e-9));
  CHECK(r.cap_estimate <= d * 27.0 / 6.0 * (1 + 1e-9));

  const MatrixTuple same = make_matrix_tuple(std::vector<Mat>(3, Mat::Identity(3, 3) / 3.0));
  CHECK(det_capacity(same, opt).minimizer_y.norm() < 1e-3);

  CHECK_THROWS_AS(det_capacity(unit_projections(3), opt), Error);

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<Mat> m;
    for (int i = 0; i < n; ++i) m.push_back(random_psd(rng, n, 1 + (i + trial) % n));
    const MatrixTuple t = make_matrix_tuple(m);
    if (!fully_indecomposable(t)) continue;
    const CapacityReport c = det_capacity(t, opt);
    const double dd = mixed_discriminant_polarization(t);
    CHECK(dd >= factorial(n) / std::pow(n, n) * c.cap_estimate * std::exp(-c.additive_gap) * (1 - 1e-9));
    CHECK(dd <= c.cap_estimate * (1 + 1e-9));
  }
}

TEST_CASE("diagonal tuples reproduce permanent results") {
  std::mt19937_64 rng(45);
  const Mat b = fixtures::random_nonnegative(rng, 3, 0.1, 1.0);
  SolverOptions opt;
  opt.epsilon = 1e-8;
  const double det_cap = det_capacity(diagonal_tuple(b), opt).cap_estimate;
  const double box_cap = polynomial_capacity(minkowski_coefficients(box_tuple(b)), 1e-12).cap;
  CHECK(det_cap == doctest::Approx(box_cap).epsilon(1e-7));
}

TEST_CASE("Barvinok bracket") {
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));

  const BarvinokConvention partial{Normalization::Partial, Normalization::Partial};
  const BarvinokBracket b = barvinok_bracket({Mat::Identity(2, 2), Mat::Identity(2, 2)}, partial);
  CHECK(b.discriminant == doctest::Approx(2.0));
  CHECK(b.upper == doctest::Approx(M_PI * std::sqrt(2.0)));
  CHECK(b.lower == doctest::Approx(std::pow(3.0, -1.5) * M_PI * std::sqrt(2.0)));

  const ConvexBody disk = polygonal_ellipse(Mat::Identity(2, 2));
  CHECK(planar_mixed_volume(disk, disk, Normalization::Partial) == doctest::Approx(2 * M_PI).epsilon(1e-3));
  CHECK(planar_mixed_volume(disk, disk, Normalization::Classical) == doctest::Approx(M_PI).epsilon(1e-3));

  Mat degenerate(2, 2);
  degenerate << 1, 0, 0, 0;
  const BarvinokBracket z = barvinok_bracket({degenerate, degenerate}, BarvinokConvention{});
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
}

TEST_CASE("Barvinok normalization resolution") {
  const ConventionResolution r = resolve_barvinok_convention(8, 7);
  CHECK(r.candidates.size() == 4);
  CHECK(r.samples == 9);
  CHECK(r.chosen.volume == Normalization::Classical);
  CHECK(r.chosen.discriminant == Normalization::Classical);
  for (const auto& c : r.candidates)
    if (c.convention.volume == Normalization::Partial && c.convention.discriminant == Normalization::Partial)
      CHECK_FALSE(c.contains_all);
}
