#include "mvcap/mv_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvcap/error.hpp"
#include "mvcap/permanent.hpp"

namespace mvcap {

void PolyCoefficients::add(const std::vector<int>& alpha, double c) {
  require(static_cast<int>(alpha.size()) == n, ErrorKind::DimensionMismatch, "polynomial: exponent arity mismatch");
  require(std::accumulate(alpha.begin(), alpha.end(), 0) == degree, ErrorKind::InvalidArgument,
          "polynomial: exponent has the wrong total degree");
  require(std::all_of(alpha.begin(), alpha.end(), [](int a) { return a >= 0; }), ErrorKind::InvalidArgument,
          "polynomial: negative exponent");
  require(std::isfinite(c) && c >= 0.0, ErrorKind::InvalidArgument, "polynomial: coefficients must be nonnegative");
  if (c == 0.0) return;
  entries[alpha] += c;
}

double PolyCoefficients::coefficient(const std::vector<int>& alpha) const {
  auto it = entries.find(alpha);
  return it == entries.end() ? 0.0 : it->second;
}

double PolyCoefficients::evaluate(const Vec& x) const {
  require(x.size() == n, ErrorKind::DimensionMismatch, "polynomial: point arity mismatch");
  double s = 0.0;
  for (const auto& [alpha, c] : entries) {
    double t = c;
    for (int i = 0; i < n; ++i) t *= std::pow(x(i), alpha[static_cast<std::size_t>(i)]);
    s += t;
  }
  return s;
}

Vec PolyCoefficients::gradient(const Vec& x) const {
  require(x.size() == n, ErrorKind::DimensionMismatch, "polynomial: point arity mismatch");
  Vec g = Vec::Zero(n);
  for (const auto& [alpha, c] : entries) {
    for (int i = 0; i < n; ++i) {
      const int ai = alpha[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      double t = c * ai;
      for (int j = 0; j < n; ++j) t *= std::pow(x(j), alpha[static_cast<std::size_t>(j)] - (j == i ? 1 : 0));
      g(i) += t;
    }
  }
  return g;
}

namespace {

// Exponents (log c + alpha . y) of the nonzero terms.
std::vector<double> log_terms(const PolyCoefficients& p, const Vec& y) {
  std::vector<double> out;
  out.reserve(p.entries.size());
  for (const auto& [alpha, c] : p.entries) {
    double t = std::log(c);
    for (int i = 0; i < p.n; ++i) t += alpha[static_cast<std::size_t>(i)] * y(i);
    out.push_back(t);
  }
  return out;
}

}  // namespace

double PolyCoefficients::log_value(const Vec& y) const {
  require(y.size() == n, ErrorKind::DimensionMismatch, "polynomial: point arity mismatch");
  if (entries.empty()) return -std::numeric_limits<double>::infinity();
  auto t = log_terms(*this, y);
  const double m = *std::max_element(t.begin(), t.end());
  double s = 0.0;
  for (double v : t) s += std::exp(v - m);
  return m + std::log(s);
}

Vec PolyCoefficients::log_gradient(const Vec& y) const {
  require(y.size() == n, ErrorKind::DimensionMismatch, "polynomial: point arity mismatch");
  Vec g = Vec::Zero(n);
  if (entries.empty()) return g;
  auto t = log_terms(*this, y);
  const double m = *std::max_element(t.begin(), t.end());
  double s = 0.0;
  std::size_t k = 0;
  for (const auto& [alpha, c] : entries) {
    const double w = std::exp(t[k++] - m);
    s += w;
    for (int i = 0; i < n; ++i) g(i) += w * alpha[static_cast<std::size_t>(i)];
  }
  return g / s;
}

int PolyCoefficients::variable_degree(int i) const {
  int d = 0;
  for (const auto& [alpha, c] : entries) d = std::max(d, alpha[static_cast<std::size_t>(i)]);
  return d;
}

PolyCoefficients product_of_variables(int n) {
  PolyCoefficients p{n, n, {}};
  p.add(std::vector<int>(static_cast<std::size_t>(n), 1), 1.0);
  return p;
}

PolyCoefficients power_of_sum(int n, int d) {
  PolyCoefficients p{n, d, {}};
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  // Enumerate compositions of d into n parts; coefficient d! / prod alpha_i!.
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      alpha[static_cast<std::size_t>(i)] = left;
      double c = factorial(d);
      for (int a : alpha) c /= factorial(a);
      p.add(alpha, c);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      alpha[static_cast<std::size_t>(i)] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return p;
}

std::string to_string(MixedVolumeMethod m) {
  switch (m) {
    case MixedVolumeMethod::Polarization:
      return "polarization";
    case MixedVolumeMethod::Permanent:
      return "permanent";
    case MixedVolumeMethod::SegmentDeterminant:
      return "determinant-of-segments";
  }
  return "unknown";
}

double minkowski_poly_eval(const BodyTuple& tuple, const Vec& x, const GeometryConfig& cfg) {
  require(x.size() == tuple.size(), ErrorKind::DimensionMismatch, "minkowski_poly_eval: weight count mismatch");
  require((x.array() > 0.0).all(), ErrorKind::InvalidArgument, "minkowski_poly_eval: weights must be positive");
  return volume_exact(minkowski_combine(to_std(x), tuple.bodies, cfg), cfg);
}

double subset_volume(const BodyTuple& tuple, std::uint32_t mask, const GeometryConfig& cfg) {
  const int n = tuple.size();
  std::vector<int> subset;
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) {
      subset.push_back(i);
      w[static_cast<std::size_t>(i)] = 1.0;
    }
  if (subset.empty() || affine_dimension_of_sum(tuple, subset) < n) return 0.0;
  return volume_exact(minkowski_combine(w, tuple.bodies, cfg), cfg);
}

MixedVolumeResult mixed_volume_polarization(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(n <= 12, ErrorKind::InvalidArgument, "mixed_volume_polarization: n above 12");
  double total = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const double v = subset_volume(tuple, mask, cfg);
    total += ((n - __builtin_popcount(mask)) % 2 == 0) ? v : -v;
  }
  return {std::max(0.0, total), MixedVolumeMethod::Polarization};
}

BodyTuple substitute(const BodyTuple& tuple, int i, int j) {
  BodyTuple out = tuple;
  out.bodies[static_cast<std::size_t>(j)] = tuple.bodies[static_cast<std::size_t>(i)];
  return out;
}

BodyTuple box_tuple(const Mat& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "box_tuple: matrix must be square");
  std::vector<ConvexBody> bodies;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    bodies.push_back(ConvexBody::box(Vec::Zero(a.cols()), a.row(i).transpose()));
  return make_body_tuple(std::move(bodies));
}

double permanent_ryser(const Mat& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "permanent: matrix must be square");
  require(a.rows() <= 20, ErrorKind::InvalidArgument, "permanent: n above 20");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) rows[static_cast<std::size_t>(i)] = to_std(a.row(i).transpose());
  return ryser_permanent(rows);
}

MixedVolumeResult mixed_volume_segments(const std::vector<Vec>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Mat m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    require(vectors[static_cast<std::size_t>(k)].size() == n, ErrorKind::DimensionMismatch,
            "mixed_volume_segments: need n vectors in R^n");
    m.col(k) = vectors[static_cast<std::size_t>(k)];
  }
  return {std::abs(determinant(m)), MixedVolumeMethod::SegmentDeterminant};
}

double partial_derivative_exact(const BodyTuple& tuple, const Vec& x, int i, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(i >= 0 && i < n, ErrorKind::InvalidArgument, "partial_derivative_exact: index out of range");
  require(x.size() == n && (x.array() > 0.0).all(), ErrorKind::InvalidArgument,
          "partial_derivative_exact: x must be a positive n-vector");
  const int d = affine_dimension(tuple[i]);
  if (d == 0) return 0.0;
  // Nodes s_k in [-1, 1]; coordinate i takes x_i * (1 + s_k / 2).
  Vec s(d + 1), vals(d + 1);
  for (int k = 0; k <= d; ++k) {
    s(k) = std::cos((2.0 * k + 1.0) * M_PI / (2.0 * (d + 1)));
    Vec xk = x;
    xk(i) = x(i) * (1.0 + 0.5 * s(k));
    vals(k) = minkowski_poly_eval(tuple, xk, cfg);
  }
  Mat vander(d + 1, d + 1);
  for (int k = 0; k <= d; ++k)
    for (int p = 0; p <= d; ++p) vander(k, p) = std::pow(s(k), p);
  Eigen::JacobiSVD<Mat> svd(vander);
  const Vec& sv = svd.singularValues();
  require(sv(sv.size() - 1) > 1e-10 * sv(0), ErrorKind::IllConditioned,
          "partial_derivative_exact: interpolation system is ill-conditioned");
  Vec coef = vander.colPivHouseholderQr().solve(vals);
  return coef(1) / (0.5 * x(i));
}

PolyCoefficients minkowski_coefficients(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(n <= 8, ErrorKind::InvalidArgument, "minkowski_coefficients: n above 8");
  std::vector<int> aff(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) aff[static_cast<std::size_t>(i)] = affine_dimension(tuple[i]);

  std::map<std::vector<int>, double> cache;
  auto lattice_value = [&](const std::vector<int>& c) {
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    std::vector<double> w(c.begin(), c.end());
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (c[static_cast<std::size_t>(i)] > 0) support.push_back(i);
    double v = 0.0;
    if (!support.empty() && affine_dimension_of_sum(tuple, support) == n)
      v = volume_exact(minkowski_combine(w, tuple.bodies, cfg), cfg);
    cache.emplace(c, v);
    return v;
  };

  std::vector<std::pair<std::vector<int>, double>> raw;
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  auto each_alpha = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left != 0) return;
      // Mixed forward difference at the origin equals alpha! times the coefficient.
      double acc = 0.0;
      std::vector<int> c(static_cast<std::size_t>(n), 0);
      auto each_c = [&](auto&& inner, int j) -> void {
        if (j == n) {
          double weight = 1.0;
          int size = 0;
          for (int q = 0; q < n; ++q) {
            weight *= binomial(alpha[static_cast<std::size_t>(q)], c[static_cast<std::size_t>(q)]);
            size += c[static_cast<std::size_t>(q)];
          }
          acc += ((n - size) % 2 == 0 ? 1.0 : -1.0) * weight * lattice_value(c);
          return;
        }
        for (int v = 0; v <= alpha[static_cast<std::size_t>(j)]; ++v) {
          c[static_cast<std::size_t>(j)] = v;
          inner(inner, j + 1);
        }
      };
      each_c(each_c, 0);
      double denom = 1.0;
      for (int a : alpha) denom *= factorial(a);
      raw.emplace_back(alpha, acc / denom);
      return;
    }
    for (int a = 0; a <= std::min(left, aff[static_cast<std::size_t>(i)]); ++a) {
      alpha[static_cast<std::size_t>(i)] = a;
      self(self, i + 1, left - a);
    }
    alpha[static_cast<std::size_t>(i)] = 0;
  };
  each_alpha(each_alpha, 0, n);

  double scale = 0.0;
  for (const auto& [c, v] : cache) scale = std::max(scale, v);
  const double tol = 1e-9 * std::max(1.0, scale);
  PolyCoefficients p{n, n, {}};
  for (const auto& [a, v] : raw) {
    require(v >= -tol, ErrorKind::IllConditioned,
            "minkowski_coefficients: negative coefficient " + std::to_string(v) + " beyond tolerance");
    if (v > tol) p.add(a, v);
  }
  return p;
}

PolyCoefficients derivative_truncation(const PolyCoefficients& poly, int keep) {
  require(poly.degree == poly.n, ErrorKind::Precondition, "derivative_truncation: degree must equal arity");
  require(keep >= 1 && keep <= poly.n, ErrorKind::InvalidArgument, "derivative_truncation: keep out of range");
  if (keep == poly.n) return poly;
  PolyCoefficients q{keep, keep, {}};
  for (const auto& [alpha, c] : poly.entries) {
    bool ok = true;
    for (int j = keep; j < poly.n; ++j) ok = ok && alpha[static_cast<std::size_t>(j)] == 1;
    if (ok) q.add(std::vector<int>(alpha.begin(), alpha.begin() + keep), c);
  }
  return q;
}

PolyCapacity polynomial_capacity(const PolyCoefficients& poly, double tol) {
  require(poly.degree == poly.n, ErrorKind::Precondition, "polynomial_capacity: degree must equal arity");
  require(!poly.entries.empty(), ErrorKind::Precondition, "polynomial_capacity: polynomial is identically zero");
  const int n = poly.n;
  PolyCapacity out;
  if (n == 1) {
    out.cap = poly.entries.begin()->second;
    out.log_cap = std::log(out.cap);
    out.minimizer = Vec::Ones(1);
    return out;
  }
  const Mat q = zero_sum_basis(n);
  auto f = [&](const Vec& z) { return poly.log_value(q * z); };
  auto g = [&](const Vec& z) -> Vec { return q.transpose() * poly.log_gradient(q * z); };
  constexpr double kDivergenceRadius = 50.0;
  const double gtol = std::min(1e-9, tol);

  Vec z = Vec::Zero(n - 1);
  double fz = f(z);
  Vec gz = g(z);
  double step = 1.0;
  int it = 0;
  for (; it < 20000; ++it) {
    const double gn2 = gz.squaredNorm();
    if (std::sqrt(gn2) <= gtol) break;
    double t = step;
    Vec zn = z - t * gz;
    double fn = f(zn);
    while (fn > fz - 1e-4 * t * gn2 && t > 1e-18) {
      t *= 0.5;
      zn = z - t * gz;
      fn = f(zn);
    }
    if (!(fn < fz)) break;  // no further decrease representable
    Vec gn = g(zn);
    const Vec sk = zn - z, yk = gn - gz;
    const double sy = sk.dot(yk);
    step = sy > 0.0 ? std::clamp(sk.squaredNorm() / sy, 1e-10, 1e10) : std::min(2.0 * t, 1e10);
    z = zn;
    fz = fn;
    gz = gn;
    if (z.norm() > kDivergenceRadius) {
      out.diverged = true;
      out.attained = false;
      // Asymptotic slope along the escape direction: negative means f is unbounded below.
      const Vec u = q * z / z.norm();
      double slope = -std::numeric_limits<double>::infinity();
      for (const auto& [alpha, c] : poly.entries) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += alpha[static_cast<std::size_t>(i)] * u(i);
        slope = std::max(slope, s);
      }
      if (slope < -1e-6) {
        out.cap = 0.0;
        out.log_cap = -std::numeric_limits<double>::infinity();
        out.minimizer = (q * z).array().exp();
        out.iterations = it + 1;
        return out;
      }
      break;
    }
  }
  out.iterations = it;
  out.log_cap = fz;
  out.cap = std::exp(fz);
  out.minimizer = (q * z).array().exp();
  return out;
}

}  // namespace mvcap
