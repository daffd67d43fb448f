#include "mvcap/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "mvcap/bounds.hpp"
#include "mvcap/discriminant.hpp"
#include "mvcap/error.hpp"
#include "mvcap/mv_exact.hpp"
#include "mvcap/rational.hpp"
#include "mvcap/scaling.hpp"
#include "mvcap/solver.hpp"

namespace mvcap {

namespace {

using Rng = std::mt19937_64;

Vec uniform(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Vec::NullaryExpr(n, [&] { return u(rng); });
}

Mat uniform_matrix(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Mat::NullaryExpr(n, n, [&] { return u(rng); });
}

Mat random_rotation(Rng& rng, int n) {
  std::normal_distribution<double> g;
  const Mat a = Mat::NullaryExpr(n, n, [&] { return g(rng); });
  Mat q = Eigen::HouseholderQR<Mat>(a).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// kind: 0 box, 1 zonotope, 2 polytope, 3 segment, 4 flat box (one zero-width coordinate).
ConvexBody random_body(Rng& rng, int n, int kind) {
  switch (kind) {
    case 0: {
      const Vec lo = uniform(rng, n, -0.5, 0.5);
      return ConvexBody::box(lo, lo + uniform(rng, n, 0.3, 1.5));
    }
    case 1: {
      std::vector<Vec> gens;
      for (int k = 0; k < n; ++k) gens.push_back(uniform(rng, n, -1.0, 1.0));
      return ConvexBody::zonotope(uniform(rng, n, -0.5, 0.5), gens);
    }
    case 2: {
      std::vector<Vec> pts;
      for (int k = 0; k < n + 3; ++k) pts.push_back(uniform(rng, n, -1.0, 1.0));
      return ConvexBody::vpolytope(pts);
    }
    case 3:
      return ConvexBody::segment(Vec::Zero(n), uniform(rng, n, -1.0, 1.0));
    default: {
      const Vec lo = uniform(rng, n, -0.5, 0.5);
      Vec hi = lo + uniform(rng, n, 0.3, 1.5);
      const int flat = std::uniform_int_distribution<int>(0, n - 1)(rng);
      hi(flat) = lo(flat);
      return ConvexBody::box(lo, hi);
    }
  }
}

/// Random tuple mixing all body kinds; polytopes only up to n = 4 to keep hulls cheap.
BodyTuple random_mixed_tuple(Rng& rng, int n) {
  std::vector<ConvexBody> bodies;
  std::uniform_int_distribution<int> kind(0, 4);
  for (int i = 0; i < n; ++i) {
    int k = kind(rng);
    if (k == 2 && n > 4) k = 1;
    bodies.push_back(random_body(rng, n, k));
  }
  return make_body_tuple(std::move(bodies));
}

BodyTuple random_indecomposable(Rng& rng, int n) {
  for (;;) {
    BodyTuple t = random_mixed_tuple(rng, n);
    if (indecomposability_check(t).indecomposable) return t;
  }
}

BodyTuple random_full_tuple(Rng& rng, int n) {
  std::vector<ConvexBody> bodies;
  for (int i = 0; i < n; ++i) bodies.push_back(random_body(rng, n, i % 3));
  return make_body_tuple(std::move(bodies));
}

// Independent permanent for 3 x 3 matrices: the six-term expansion.
double permanent3(const Mat& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)) + a(0, 1) * (a(1, 0) * a(2, 2) + a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) + a(1, 1) * a(2, 0));
}

// Test-side Sinkhorn balancing of a positive matrix.
Mat doubly_stochastic(Rng& rng, int n) {
  Mat a = uniform_matrix(rng, n, 0.05, 1.0);
  for (int it = 0; it < 100000; ++it) {
    a = a.array().colwise() / a.rowwise().sum().array();
    a = a.array().rowwise() / a.colwise().sum().array();
    if ((a.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15) break;
  }
  return a;
}

BodyTuple with_slots(const BodyTuple& t, const std::vector<int>& slots) {
  std::vector<ConvexBody> b;
  for (int s : slots) b.push_back(t[s]);
  return make_body_tuple(std::move(b));
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << v;
  return s.str();
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1. Box-tuple mixed volume equals the permanent.
void permanent_equivalence(Outcome& o) {
  Rng rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Mat a = uniform_matrix(rng, 4, 0.0, 1.0);
    const double mv = mixed_volume_polarization(box_tuple(a)).value;
    const double p = permanent_ryser(a);
    worst = std::max(worst, std::abs(mv - p) / p);
  }
  const double secs = since(t0);
  o.passed = worst <= 1e-9 && secs < 5.0;
  o.detail << "50 matrices, max rel err " << fmt(worst) << ", " << std::fixed << std::setprecision(2) << secs << " s";
}

// 2. Doubly stochastic box tuples have capacity 1, and n!/n^n <= perm <= Cap.
void doubly_stochastic_capacity(Outcome& o) {
  Rng rng(202);
  double worst_cap = 0.0;
  int bracket_fail = 0;
  for (int k = 0; k < 20; ++k) {
    const Mat b = doubly_stochastic(rng, 3);
    SolverOptions opt;
    opt.epsilon = 1e-6;
    const CapacityReport r = minimize_capacity(box_tuple(b), opt);
    worst_cap = std::max(worst_cap, std::abs(r.cap_estimate - 1.0));
    const double perm = permanent3(b);
    if (!(6.0 / 27.0 <= perm * (1 + 1e-12) && perm <= r.cap_estimate * (1 + 1e-12))) ++bracket_fail;
  }
  o.passed = worst_cap <= 1e-3 && bracket_fail == 0;
  o.detail << "20 matrices, max |Cap - 1| " << fmt(worst_cap) << ", VDW bracket failures " << bracket_fail;
}

// 3. Translated dilates attain the VDW ratio.
void vdw_equality(Outcome& o) {
  Rng rng(303);
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (int kind = 0; kind < 3; ++kind) {
      const ConvexBody k = random_body(rng, n, kind);
      std::vector<ConvexBody> bodies;
      std::uniform_real_distribution<double> a(0.5, 2.0);
      for (int i = 0; i < n; ++i) bodies.push_back(translate(minkowski_combine({a(rng)}, {k}), uniform(rng, n, -2.0, 2.0)));
      const BodyTuple t = make_body_tuple(std::move(bodies));
      SolverOptions opt;
      opt.epsilon = 1e-9;
      const CapacityReport r = minimize_capacity(t, opt);
      const double target = factorial(n) / std::pow(n, n);
      worst = std::max(worst, std::abs(mixed_volume_polarization(t).value / r.cap_estimate - target) / target);
      ++cases;
    }
  o.passed = worst <= 1e-4;
  o.detail << cases << " tuples (n = 2..4), max rel deviation of MV/Cap from n!/n^n " << fmt(worst);
}

// 4. prod lambda(i, D(i)) Cap <= MV <= Cap.
void svg_sandwich(Outcome& o) {
  Rng rng(404);
  double worst_lower = -1.0, worst_upper = -1.0;
  int failures = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 4;
    const BodyTuple t = random_indecomposable(rng, n);
    SolverOptions opt;
    opt.epsilon = 1e-9;
    const CapacityReport r = minimize_capacity(t, opt);
    double prod = 1.0;
    for (double f : r.factors) prod *= f;
    const double mv = mixed_volume_polarization(t).value;
    const double cap_lo = r.cap_estimate * std::exp(-r.additive_gap);
    // Worst case over the certified interval [cap_lo, cap_estimate] for the true capacity.
    const double lower_excess = prod * r.cap_estimate / mv - 1.0;
    const double upper_excess = mv / cap_lo - 1.0;
    worst_lower = std::max(worst_lower, lower_excess);
    worst_upper = std::max(worst_upper, upper_excess);
    if (lower_excess > 1e-6 || upper_excess > 1e-6) ++failures;
  }
  o.passed = failures == 0;
  o.detail << "100 tuples (n = 2..5), violations " << failures << ", max lower excess " << fmt(worst_lower)
           << ", max upper excess " << fmt(worst_upper);
}

// Independent minimization of sv_{n,k}(x)/x in extended precision.
long double lambda_by_search(int n, int k) {
  auto ratio = [&](long double s) {
    const long double x = std::exp(s);
    long double term = 1.0L, sum = 1.0L;
    for (int i = 1; i <= k; ++i) {
      term *= (x / n) * static_cast<long double>(n - i + 1) / i;
      sum += term;
    }
    return sum / x;
  };
  long double a = std::log(1e-6L), b = std::log(10.0L * n);
  const long double gr = (std::sqrt(5.0L) - 1) / 2;
  for (int it = 0; it < 300; ++it) {
    const long double c = b - gr * (b - a), d = a + gr * (b - a);
    if (ratio(c) < ratio(d)) b = d; else a = c;
  }
  return 1.0L / ratio(0.5L * (a + b));
}

// 5. Closed forms for lambda(k,k) and lambda(n,2); exact product of g(k).
void lambda_closed_forms(Outcome& o) {
  double worst = 0.0;
  for (int k = 2; k <= 30; ++k) {
    worst = std::max(worst, std::abs(static_cast<double>(lambda_by_search(k, k)) - g_factor(k)));
    worst = std::max(worst, std::abs(lambda_factor(k, k) - g_factor(k)));
  }
  for (int n = 2; n <= 30; ++n) {
    worst = std::max(worst, std::abs(static_cast<double>(lambda_by_search(n, 2)) - lambda_two_closed_form(n)));
    worst = std::max(worst, std::abs(lambda_factor(n, 2) - lambda_two_closed_form(n)));
  }
  int exact_fail = 0;
  for (int n = 1; n <= 12; ++n) {
    Rational prod = 1, fact = 1, power = 1;
    for (int k = 1; k <= n; ++k) {
      prod *= g_factor_exact(k);
      fact *= k;
      power *= n;
    }
    if (prod != fact / power) ++exact_fail;
  }
  o.passed = worst <= 1e-10 && exact_fail == 0;
  o.detail << "max |numeric - closed form| " << fmt(worst) << " (k, n <= 30), exact product mismatches " << exact_fail
           << " (n <= 12)";
}

// 6. Alexandrov-Fenchel on random tuples and Newton sequences from two bodies.
void alexandrov_fenchel(Outcome& o) {
  Rng rng(606);
  int af_fail = 0, newton_fail = 0;
  double worst = -1.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 3;
    const BodyTuple t = random_mixed_tuple(rng, n);
    std::vector<int> s12(static_cast<std::size_t>(n)), s11, s22;
    for (int i = 0; i < n; ++i) s12[static_cast<std::size_t>(i)] = i;
    s11 = s12;
    s22 = s12;
    s11[1] = 0;
    s22[0] = 1;
    const double v12 = mixed_volume_polarization(with_slots(t, s12)).value;
    const double v11 = mixed_volume_polarization(with_slots(t, s11)).value;
    const double v22 = mixed_volume_polarization(with_slots(t, s22)).value;
    const double scale = std::max(1.0, v11 * v22);
    const double deficit = (v11 * v22 - v12 * v12) / scale;
    worst = std::max(worst, deficit);
    if (deficit > 1e-8) ++af_fail;

    // U(t) = V(K_1..K_i, S + tT, ..., S + tT) with S = K_{n-1}, T = K_n, i = n - 2.
    if (k % 2 == 0) {
      const int fixed = std::uniform_int_distribution<int>(0, n - 2)(rng);
      const int m = n - fixed;
      std::vector<double> coeffs;
      for (int j = 0; j <= m; ++j) {
        std::vector<int> slots;
        for (int i = 0; i < fixed; ++i) slots.push_back(i);
        for (int r = 0; r < m - j; ++r) slots.push_back(n - 2);
        for (int r = 0; r < j; ++r) slots.push_back(n - 1);
        coeffs.push_back(binomial(m, j) * mixed_volume_polarization(with_slots(t, slots)).value);
      }
      if (!newton_check(coeffs, m)) ++newton_fail;
    }
  }
  o.passed = af_fail == 0 && newton_fail == 0;
  o.detail << "100 tuples (n = 2..4), AF violations " << af_fail << " (max scaled deficit " << fmt(worst)
           << "), Newton failures " << newton_fail << " of 50";
}

// Coefficients of V_K from mixed volumes of repeated bodies: c_alpha = V(K_alpha) / alpha!.
std::vector<std::pair<Eigen::Vector3d, double>> coefficients_by_polarization(const BodyTuple& t) {
  std::vector<std::pair<Eigen::Vector3d, double>> out;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const int c = 3 - a - b;
      std::vector<int> slots;
      for (int r = 0; r < a; ++r) slots.push_back(0);
      for (int r = 0; r < b; ++r) slots.push_back(1);
      for (int r = 0; r < c; ++r) slots.push_back(2);
      const double v = mixed_volume_polarization(with_slots(t, slots)).value / (factorial(a) * factorial(b) * factorial(c));
      if (v > 0.0) out.emplace_back(Eigen::Vector3d(a, b, c), v);
    }
  return out;
}

// 7. Ellipsoid result against a dense grid, and against projected gradient.
void solver_correctness(Outcome& o) {
  Rng rng(707);
  double worst_grid = 0.0, worst_pg = 0.0, slowest = 0.0;
  const double tol = 1e-6;
  for (int k = 0; k < 5; ++k) {
    const BodyTuple t = random_full_tuple(rng, 3);
    SolverOptions opt;
    opt.epsilon = tol;
    const auto t0 = Clock::now();
    const CapacityReport ell = minimize_capacity(t, opt);
    slowest = std::max(slowest, since(t0));
    opt.method = MinimizerMethod::ProjectedGradient;
    const CapacityReport pg = minimize_capacity(t, opt);

    const auto coeffs = coefficients_by_polarization(t);
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = -300; i <= 300; ++i)
      for (int j = -300; j <= 300; ++j) {
        const Eigen::Vector3d y(0.01 * i, 0.01 * j, -0.01 * (i + j));
        double s = 0.0;
        for (const auto& [alpha, c] : coeffs) s += c * std::exp(alpha.dot(y));
        grid_min = std::min(grid_min, std::log(s));
      }
    worst_grid = std::max(worst_grid, std::abs(std::log(ell.cap_estimate) - grid_min));
    worst_pg = std::max(worst_pg, std::abs(std::log(ell.cap_estimate) - std::log(pg.cap_estimate)));
  }
  o.passed = worst_grid <= 1e-3 && worst_pg <= 2 * tol && slowest < 60.0;
  o.detail << "5 tuples (n = 3), max |f_ell - f_grid| " << fmt(worst_grid) << ", max |f_ell - f_pg| " << fmt(worst_pg)
           << ", slowest ellipsoid run " << std::fixed << std::setprecision(2) << slowest << " s";
}

// 8. Randomized-oracle brackets on rotated box tuples.
void noisy_bracket(Outcome& o) {
  Rng rng(808);
  int worst_tuple_hits = 20, total_hits = 0, uncertified = 0;
  for (int k = 0; k < 10; ++k) {
    const Mat a = uniform_matrix(rng, 3, 0.2, 1.0);
    const Mat q = random_rotation(rng, 3);
    const BodyTuple boxes = box_tuple(a);
    std::vector<ConvexBody> rotated;
    for (const auto& b : boxes.bodies) rotated.push_back(linear_map(q, b));
    const BodyTuple t = make_body_tuple(std::move(rotated));
    const double perm = permanent_ryser(a);
    int hits = 0;
    for (int run = 0; run < 2; ++run) {
      SolverOptions opt;
      opt.oracle = OracleKind::MonteCarlo;
      opt.samples = 100'000;
      opt.epsilon = 0.05;
      opt.seed = splitmix64(1000 * k + run);
      const CapacityReport r = approx_mixed_volume(t, opt);
      hits += r.mv_lower <= perm && perm <= r.mv_upper * std::exp(r.additive_gap);
      uncertified += !r.certified;
    }
    total_hits += hits;
    worst_tuple_hits = std::min(worst_tuple_hits, hits);
  }
  o.passed = total_hits >= 15;
  o.detail << "10 rotated box tuples x 2 seeds, bracket contains the permanent in " << total_hits << " of 20 runs"
           << " (uncertified runs " << uncertified << ")";
}

// 9. Sinkhorn monotonicity and the near-optimality bound.
void sinkhorn_monotonicity(Outcome& o) {
  Rng rng(909);
  int mono_fail = 0, near_fail = 0, near_checked = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 3;
    const BodyTuple t = random_indecomposable(rng, n);
    const auto f = minkowski_functional(t);
    SinkhornTrajectory tr;
    try {
      tr = sinkhorn_iterate(*f, uniform(rng, n, 0.2, 5.0), 200, 1e-10);
    } catch (const Error&) {
      ++mono_fail;
      continue;
    }
    for (std::size_t s = 0; s + 1 < tr.states.size(); ++s) {
      const double fk = tr.states[s].f_value;
      if (tr.sh_values[s] > fk * (1 + 1e-9) || tr.states[s + 1].f_value > fk * (1 + 1e-9)) ++mono_fail;
    }
    SolverOptions opt;
    opt.epsilon = 1e-6;
    const CapacityReport r = minimize_capacity(t, opt);
    const double cap_lo = r.cap_estimate * std::exp(-r.additive_gap);
    std::vector<ScalingState> candidates = tr.states;
    const Vec xm = nor(r.minimizer_y.array().exp().matrix());
    candidates.push_back({xm, f->value(xm), scaling_gamma(*f, xm)});
    for (const auto& s : candidates) {
      const double eps = std::max(std::log(s.f_value / cap_lo), 1e-10);
      if (eps > 0.1) continue;
      ++near_checked;
      if (!near_optimality_check(s, eps).holds) ++near_fail;
    }
  }
  o.passed = mono_fail == 0 && near_fail == 0 && near_checked > 0;
  o.detail << "50 instances, monotonicity violations " << mono_fail << ", near-optimality violations " << near_fail
           << " of " << near_checked << " certified near-minimizers";
}

// 10. 0 <= q'' <= min(aff(i), n/4) along coordinate restrictions.
void second_derivative_bounds(Outcome& o) {
  Rng rng(1010);
  int failures = 0, probes = 0;
  double worst = -1.0;
  const double h = 1e-3;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 4;
    const BodyTuple t = random_mixed_tuple(rng, n);
    const Vec y = uniform(rng, n, -1.0, 1.0);
    auto q = [&](const Vec& p) { return std::log(minkowski_poly_eval(t, p.array().exp().matrix())); };
    if (!std::isfinite(q(y))) continue;
    const double q0 = q(y);
    for (int i = 0; i < n; ++i) {
      Vec yp = y, ym = y;
      yp(i) += h;
      ym(i) -= h;
      const double d2 = (q(yp) - 2 * q0 + q(ym)) / (h * h);
      const double bound = std::min<double>(affine_dimension(t[i]), n / 4.0 + 1e-3);
      worst = std::max(worst, d2 - bound);
      ++probes;
      if (d2 < -1e-6 || d2 > bound) ++failures;
    }
  }
  o.passed = failures == 0 && probes > 0;
  o.detail << probes << " coordinate probes on 100 instances (n = 2..5), violations " << failures
           << ", max q'' - bound " << fmt(worst);
}

// 11. Mixed volumes of lattice polytopes are integers bounded by the degree product.
void bkk_integrality(Outcome& o) {
  Rng rng(1111);
  int failures = 0, classical_fractional = 0, cases = 0;
  double worst = 0.0;
  std::uniform_int_distribution<int> coord(0, 2);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 3;
    std::vector<ConvexBody> bodies;
    for (int i = 0; i < n; ++i) {
      std::vector<Vec> pts;
      for (int p = 0; p < n + 2; ++p) pts.push_back(Vec::NullaryExpr(n, [&] { return static_cast<double>(coord(rng)); }));
      bodies.push_back(ConvexBody::vpolytope(pts));
    }
    const BodyTuple t = make_body_tuple(std::move(bodies));
    const double mv = mixed_volume_polarization(t).value;
    const NewtonDegrees d = newton_polytope_degrees(t);
    const double dist = std::abs(mv - std::round(mv));
    worst = std::max(worst, dist);
    if (dist > 1e-6 || mv > d.product_bound + 1e-6) ++failures;
    const double classical = mv / factorial(n);
    classical_fractional += std::abs(classical - std::round(classical)) > 1e-6;
    ++cases;
  }
  o.passed = failures == 0;
  o.detail << cases << " lattice tuples (n = 2..4), derivative-normalized MV max distance to an integer " << fmt(worst)
           << ", failures " << failures << "; classical values non-integral in " << classical_fractional << " cases";
}

// 12. Barvinok bracket under the empirically resolved normalization.
void barvinok(Outcome& o) {
  const ConventionResolution res = resolve_barvinok_convention(8, 7);
  int outside = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Mat a = random_ellipse_factor(splitmix64(5000 + 2 * k));
    const Mat b = random_ellipse_factor(splitmix64(5001 + 2 * k));
    const double v = planar_mixed_volume(polygonal_ellipse(a), polygonal_ellipse(b), res.chosen.volume);
    const BarvinokBracket br = barvinok_bracket({a, b}, res.chosen);
    worst_ratio = std::max(worst_ratio, v / br.upper);
    if (v < br.lower * (1 - 1e-3) || v > br.upper * (1 + 1e-3)) ++outside;
  }
  o.passed = outside == 0;
  o.detail << "resolved convention V=" << to_string(res.chosen.volume) << ", D=" << to_string(res.chosen.discriminant)
           << "; 20 ellipse pairs, outside bracket " << outside << ", max V/upper " << std::fixed << std::setprecision(6)
           << worst_ratio;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"permanent-equivalence", permanent_equivalence},
      {"doubly-stochastic-capacity", doubly_stochastic_capacity},
      {"vdw-equality-case", vdw_equality},
      {"svg-sandwich", svg_sandwich},
      {"lambda-closed-forms", lambda_closed_forms},
      {"alexandrov-fenchel-newton", alexandrov_fenchel},
      {"solver-correctness", solver_correctness},
      {"noisy-oracle-bracket", noisy_bracket},
      {"sinkhorn-monotonicity", sinkhorn_monotonicity},
      {"second-derivative-bounds", second_derivative_bounds},
      {"bkk-integrality", bkk_integrality},
      {"barvinok-bracket", barvinok},
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i) + 1;
    r.name = criteria[i].first;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " exception: " << e.what();
    }
    r.seconds = since(t0);
    r.passed = o.passed;
    r.detail = o.detail.str();
    out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " (" << std::fixed
        << std::setprecision(1) << r.seconds << " s)" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace mvcap
