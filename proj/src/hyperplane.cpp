#include "mvcap/hyperplane.hpp"

#include <algorithm>
#include <cmath>

#include "mvcap/error.hpp"

namespace mvcap {

std::string to_string(MinimizerMethod m) {
  return m == MinimizerMethod::Ellipsoid ? "ellipsoid" : "projected-gradient";
}

double estimate_variation(LogObjective& f, double r) {
  const int n = f.arity();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < n; ++i) {
    Vec u = Vec::Constant(n, -1.0 / n);
    u(i) += 1.0;
    u *= r / u.norm();
    for (double s : {1.0, -1.0}) {
      const double v = f.value(s * u).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return 2.0 * (hi - lo);
}

std::size_t default_iteration_cap(int n, double epsilon, double radius) {
  const double d1 = n;  // (n - 1) + 1
  return static_cast<std::size_t>(6.0 * d1 * d1 * (std::log(1.0 / epsilon) + std::log1p(radius))) + 100;
}

namespace {

struct Pass {
  Vec z;
  double best = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  double var = 0.0;
};

void ellipsoid_pass(LogObjective& f, const Mat& q, double r, double target, std::size_t cap, Pass& out) {
  const int d = static_cast<int>(q.cols());
  const bool noisy = f.noisy();
  Vec c = Vec::Zero(d);
  Mat p = Mat::Identity(d, d) * (r * r);
  double max_lb = -std::numeric_limits<double>::infinity();
  double a_max = 0.0, g_max = 0.0;
  out.z = c;
  for (std::size_t it = 0; it < cap; ++it) {
    out.iterations = it + 1;
    Vec g;
    if (c.norm() > r) {
      g = c / c.norm();
    } else {
      const Vec y = q * c;
      const OracleValue ov = f.value(y);
      const OracleGradient og = f.gradient(y);
      a_max = std::max({a_max, ov.quality.value_err, og.quality.value_err});
      g_max = std::max(g_max, og.quality.grad_err);
      if (ov.value < out.best) {
        out.best = ov.value;
        out.z = c;
      }
      g = q.transpose() * og.gamma;
      const double width = std::sqrt(std::max(0.0, g.dot(p * g)));
      max_lb = std::max(max_lb, ov.value - width);
      if (!noisy && out.best - max_lb <= target) break;
      if (noisy && width <= 0.5 * target) break;
      if (!(width > 1e-300)) break;
    }
    const Vec pg = p * g;
    const double gpg = g.dot(pg);
    if (!(gpg > 0.0)) break;
    const Vec b = pg / std::sqrt(gpg);
    c -= b / (d + 1.0);
    if (d == 1) {
      p /= 4.0;
    } else {
      const double dd = static_cast<double>(d) * d;
      p = dd / (dd - 1.0) * (p - (2.0 / (d + 1.0)) * b * b.transpose());
      p = 0.5 * (p + p.transpose());
    }
  }
  const double penalty = a_max + 2.0 * r * g_max;
  out.lower = std::min(out.best, max_lb) - penalty;
}

void gradient_pass(LogObjective& f, const Mat& q, double r, double target, std::size_t cap, Pass& out) {
  require(!f.noisy(), ErrorKind::InvalidArgument, "projected gradient requires an exact objective");
  const int d = static_cast<int>(q.cols());
  auto project = [r](Vec z) {
    const double nz = z.norm();
    if (nz > r) z *= r / nz;
    return z;
  };
  auto eval = [&](const Vec& z, Vec& grad) {
    const Vec y = q * z;
    grad = q.transpose() * f.gradient(y).gamma;
    return f.value(y).value;
  };
  Vec z = Vec::Zero(d), gz;
  double fz = eval(z, gz);
  double step = 1.0;
  double cert = gz.dot(z) + r * gz.norm();
  std::size_t it = 0;
  for (; it < cap && cert > target; ++it) {
    double t = step;
    Vec zn, gn;
    double fn = 0.0;
    while (true) {
      zn = project(z - t * gz);
      fn = eval(zn, gn);
      if (fn <= fz + 1e-4 * gz.dot(zn - z) || t < 1e-18) break;
      t *= 0.5;
    }
    if (!(fn < fz) && (zn - z).norm() < 1e-15) break;
    const Vec sk = zn - z, yk = gn - gz;
    const double sy = sk.dot(yk);
    step = sy > 0.0 ? std::clamp(sk.squaredNorm() / sy, 1e-10, 1e10) : std::min(2.0 * t, 1e10);
    if (fn <= fz) {
      z = zn;
      fz = fn;
      gz = gn;
    }
    // f(z) - min over the ball <= max_{|w| <= r} g.(z - w).
    cert = gz.dot(z) + r * gz.norm();
  }
  out.iterations = it;
  out.z = z;
  out.best = fz;
  out.lower = fz - std::max(0.0, cert);
}

}  // namespace

MinimizeResult minimize_on_hyperplane(LogObjective& f, const MinimizeOptions& opt) {
  const int n = f.arity();
  require(n >= 1, ErrorKind::InvalidArgument, "minimizer: empty objective");
  require(opt.epsilon > 0.0 && opt.epsilon < 1.0, ErrorKind::InvalidArgument, "minimizer: epsilon must lie in (0, 1)");
  require(opt.radius > 0.0, ErrorKind::InvalidArgument, "minimizer: radius must be positive");
  MinimizeResult res;
  res.radius = opt.radius;
  if (n == 1) {
    const OracleValue v = f.value(Vec::Zero(1));
    res.y = Vec::Zero(1);
    res.value = v.value;
    res.gap = v.quality.value_err;
    res.certified = true;
    return res;
  }
  const Mat q = zero_sum_basis(n);
  double r = opt.radius;
  Pass pass;
  for (int attempt = 0;; ++attempt) {
    Pass cur;
    cur.var = estimate_variation(f, r);
    const double target = opt.epsilon * cur.var;
    const std::size_t cap = opt.max_iterations ? opt.max_iterations
                            : opt.method == MinimizerMethod::Ellipsoid
                                ? default_iteration_cap(n, opt.epsilon, r)
                                : std::max<std::size_t>(20000, default_iteration_cap(n, opt.epsilon, r));
    if (opt.method == MinimizerMethod::Ellipsoid)
      ellipsoid_pass(f, q, r, target, cap, cur);
    else
      gradient_pass(f, q, r, target, cap, cur);
    res.iterations += cur.iterations;
    pass = cur;
    res.radius = r;
    res.doublings = attempt;
    if (cur.z.norm() >= 0.95 * r && attempt < opt.max_doublings) {
      r *= 2.0;
      continue;
    }
    break;
  }

  res.y = q * pass.z;
  res.var_estimate = pass.var;
  res.value = pass.best;
  double final_err = 0.0;
  if (auto* mc = dynamic_cast<MinkowskiMcObjective*>(&f); mc && opt.final_sample_factor > 1) {
    const OracleValue v =
        mc->value_with_samples(res.y, mc->samples() * static_cast<std::uint64_t>(opt.final_sample_factor));
    res.value = v.value;
    final_err = v.quality.value_err;
  }
  res.gap = std::max(res.value - pass.lower, final_err);
  res.certified = res.gap <= opt.epsilon * pass.var && pass.z.norm() < 0.95 * res.radius;
  return res;
}

}  // namespace mvcap
