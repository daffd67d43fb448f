#include "mvcap/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "mvcap/error.hpp"

namespace mvcap {

namespace {

void check_nk(int n, int k) {
  require(k >= 1 && k <= n, ErrorKind::InvalidArgument,
          "bound factors: need 1 <= k <= n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

// C(n,i) / n^i, or 1/i! for the infinite arity.
double sv_term(int n, int i) {
  double t = 1.0;
  for (int j = 0; j < i; ++j) {
    if (n != kInfiniteArity) t *= static_cast<double>(n - j) / n;
    t /= (j + 1);
  }
  return t;
}

}  // namespace

double sv_eval(int n, int k, double x) {
  check_nk(n, k);
  require(x >= 0.0, ErrorKind::InvalidArgument, "sv_eval: x must be nonnegative");
  double s = 0.0;
  for (int i = k; i >= 0; --i) s = s * x + sv_term(n, i);
  return s;
}

double lambda_factor(int n, int k) {
  check_nk(n, k);
  // sv_{n,1}(x)/x = 1/x + 1 decreases to 1 without attaining it.
  if (k == 1) return 1.0;
  std::vector<double> t(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) t[static_cast<std::size_t>(i)] = sv_term(n, i);
  auto sv = [&](double x) {
    double s = 0.0;
    for (int i = k; i >= 0; --i) s = s * x + t[static_cast<std::size_t>(i)];
    return s;
  };
  // Golden section on log x; the ratio is strictly unimodal.
  double a = std::log(1e-6);
  double b = std::log(n == kInfiniteArity ? 20.0 * k : 10.0 * n);
  auto phi = [&](double s) { return std::log(sv(std::exp(s))) - s; };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = phi(d);
    }
  }
  // Newton polish on F(x) = x sv'(x) - sv(x) = sum (i-1) t_i x^i, increasing for x > 0.
  double x = std::exp(0.5 * (a + b));
  for (int it = 0; it < 50; ++it) {
    double f = 0.0, df = 0.0;
    for (int i = 0; i <= k; ++i) {
      f += (i - 1) * t[static_cast<std::size_t>(i)] * std::pow(x, i);
      if (i >= 1) df += i * (i - 1) * t[static_cast<std::size_t>(i)] * std::pow(x, i - 1);
    }
    if (!(df > 0.0)) break;
    const double step = f / df;
    const double xn = x - step;
    if (!(xn > 0.0)) break;
    x = xn;
    if (std::abs(step) <= 1e-16 * x) break;
  }
  return x / sv(x);
}

double g_factor(int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "g_factor: k must be positive");
  if (k == 1) return 1.0;
  return std::pow(static_cast<double>(k - 1) / k, k - 1);
}

double lambda_two_closed_form(int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "lambda_two_closed_form: n must be at least 2");
  const double ratio = n == kInfiniteArity ? 1.0 : static_cast<double>(n - 1) / n;
  return 1.0 / (1.0 + std::sqrt(2.0) * std::sqrt(ratio));
}

bool newton_check(const std::vector<double>& a, int n) {
  const int m = static_cast<int>(a.size()) - 1;
  require(m <= n, ErrorKind::InvalidArgument, "newton_check: more coefficients than n + 1");
  for (double v : a) require(v >= 0.0, ErrorKind::InvalidArgument, "newton_check: negative coefficient");
  // Coefficients computed by polarization carry absolute noise on the scale of the largest one.
  double scale = 0.0;
  for (int i = 0; i <= m; ++i) scale = std::max(scale, a[static_cast<std::size_t>(i)] / binomial(n, i));
  for (int i = 1; i < m; ++i) {
    const double bm = a[static_cast<std::size_t>(i - 1)] / binomial(n, i - 1);
    const double b0 = a[static_cast<std::size_t>(i)] / binomial(n, i);
    const double bp = a[static_cast<std::size_t>(i + 1)] / binomial(n, i + 1);
    const double lhs = b0 * b0, rhs = bm * bp;
    if (lhs < rhs - 1e-10 * scale * scale) return false;
  }
  return true;
}

double univariate_capacity(const std::vector<double>& coeffs) {
  std::vector<double> a = coeffs;
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  require(!a.empty(), ErrorKind::InvalidArgument, "univariate_capacity: polynomial is identically zero");
  for (double v : a) require(v >= 0.0, ErrorKind::InvalidArgument, "univariate_capacity: negative coefficient");
  const double a1 = a.size() > 1 ? a[1] : 0.0;
  if (a[0] == 0.0 || a.size() <= 2) return a1;
  // R(e^s)/e^s is convex in s; its derivative changes sign exactly once.
  auto slope = [&](double s) {
    double v = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) v += (static_cast<double>(j) - 1.0) * a[j] * std::exp((static_cast<double>(j) - 1.0) * s);
    return v;
  };
  double lo = -1.0, hi = 1.0;
  while (slope(lo) > 0.0) lo *= 2.0;
  while (slope(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  double v = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) v += a[j] * std::exp((static_cast<double>(j) - 1.0) * s);
  return v;
}

BoundFactors bound_factors(const std::vector<int>& aff_dims) {
  BoundFactors b;
  b.n = static_cast<int>(aff_dims.size());
  require(b.n >= 1, ErrorKind::InvalidArgument, "bound_factors: empty profile");
  b.aff_sorted = aff_dims;
  std::sort(b.aff_sorted.begin(), b.aff_sorted.end(), std::greater<>());
  for (int i = 1; i <= b.n; ++i) {
    const int d = std::min(i, b.aff_sorted[static_cast<std::size_t>(i - 1)]);
    b.d.push_back(d);
    // A point summand (d = 0) forces the capacity to 0, so its factor is immaterial.
    const double lam = d >= 1 ? lambda_factor(i, d) : 1.0;
    b.lambdas.push_back(lam);
    b.product *= lam;
  }
  b.vdw_factor = factorial(b.n) / std::pow(static_cast<double>(b.n), b.n);
  return b;
}

double schrijver_factor(int n, int k) {
  check_nk(n, k);
  return factorial(k) / std::pow(static_cast<double>(k), k) * std::pow(lambda_factor(n, k), n - k);
}

LowerBounds lower_bounds_report(double cap, const std::vector<int>& aff_dims, std::optional<int> k) {
  require(cap >= 0.0, ErrorKind::InvalidArgument, "lower_bounds_report: capacity must be nonnegative");
  LowerBounds r;
  r.factors = bound_factors(aff_dims);
  const int n = r.factors.n;
  r.vdw = r.factors.vdw_factor * cap;
  r.svg = r.factors.product * cap;
  auto hypothesis = [&](int kk) {
    for (int i = kk; i < n; ++i)
      if (r.factors.aff_sorted[static_cast<std::size_t>(i)] > kk) return false;
    return true;
  };
  if (k) {
    require(*k >= 1 && *k <= n, ErrorKind::InvalidArgument, "lower_bounds_report: k out of range");
    if (hypothesis(*k)) r.schrijver_k = *k;
  } else {
    for (int kk = 1; kk <= n; ++kk)
      if (hypothesis(kk)) {
        r.schrijver_k = kk;
        break;
      }
  }
  if (r.schrijver_k) r.schrijver = schrijver_factor(n, *r.schrijver_k) * cap;
  return r;
}

NewtonDegrees newton_polytope_degrees(const BodyTuple& tuple, const GeometryConfig& cfg) {
  NewtonDegrees out;
  for (int i = 0; i < tuple.size(); ++i) {
    int best = 0;
    for (const auto& v : vertices(tuple[i], cfg)) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        require(v(j) >= 0.0 && std::abs(v(j) - std::round(v(j))) <= 1e-9, ErrorKind::InvalidArgument,
                "newton_polytope_degrees: vertex coordinates must be nonnegative integers");
        s += std::round(v(j));
      }
      best = std::max(best, static_cast<int>(s));
    }
    out.d.push_back(best);
    out.product_bound *= best;
  }
  return out;
}

}  // namespace mvcap
