#include "mvcap/solver.hpp"

#include <cmath>
#include <functional>

#include "mvcap/bounds.hpp"
#include "mvcap/error.hpp"

namespace mvcap {

IndecomposabilityResult indecomposability_check(const BodyTuple& tuple) {
  const int n = tuple.size();
  require(n <= 15, ErrorKind::InvalidArgument, "indecomposability_check: n above 15");
  IndecomposabilityResult res;
  for (int s = 1; s < n && res.indecomposable; ++s) {
    for_each_combination(n, s, [&](const std::vector<int>& subset) {
      if (!res.indecomposable) return;
      const int aff = affine_dimension_of_sum(tuple, subset);
      if (aff <= s) {
        res.indecomposable = false;
        res.certificate = subset;
        res.certificate_aff = aff;
      }
    });
  }
  return res;
}

Mat kij_values(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(n <= 10, ErrorKind::InvalidArgument, "kij_values: n above 10");
  Mat v(n, n);
  const double mv = mixed_volume_polarization(tuple, cfg).value;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = i == j ? mv : mixed_volume_polarization(substitute(tuple, i, j), cfg).value;
  return v;
}

std::vector<std::vector<bool>> kij_positivity(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  const Mat v = kij_values(tuple, cfg);
  const double scale = std::max(1.0, minkowski_poly_eval(tuple, Vec::Ones(n), cfg));
  std::vector<std::vector<bool>> out(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), true));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v(i, j) > 1e-12 * scale;
  return out;
}

namespace {

void decompose_into(const BodyTuple& tuple, const std::vector<int>& index, const Mat& basis, const GeometryConfig& cfg,
                    DecompositionResult& out) {
  if (out.zero) return;
  const int m = tuple.size();
  if (m == 1) {
    if (affine_dimension(tuple[0]) == 0) {
      out.zero = true;
      return;
    }
    out.blocks.push_back({index, basis, tuple});
    return;
  }
  IndecomposabilityResult ic = indecomposability_check(tuple);
  if (ic.indecomposable) {
    out.blocks.push_back({index, basis, tuple});
    return;
  }
  std::vector<int> s_orig;
  for (int i : ic.certificate) s_orig.push_back(index[static_cast<std::size_t>(i)]);
  out.certificates.push_back(s_orig);
  const int s = static_cast<int>(ic.certificate.size());
  if (ic.certificate_aff < s) {
    out.zero = true;
    return;
  }
  Mat dirs(m, 0);
  for (int i : ic.certificate) {
    Mat d = affine_directions(tuple[i]);
    Mat joined(m, dirs.cols() + d.cols());
    joined << dirs, d;
    dirs = joined;
  }
  const Mat u = orthonormal_basis(dirs).leftCols(s);
  const Mat w = orthonormal_complement(u);
  std::vector<ConvexBody> in_s, rest;
  std::vector<std::string> lab_s, lab_r;
  std::vector<int> idx_s, idx_r;
  std::vector<bool> member(static_cast<std::size_t>(m), false);
  for (int i : ic.certificate) member[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < m; ++i) {
    if (member[static_cast<std::size_t>(i)]) {
      in_s.push_back(linear_map(u.transpose(), tuple[i], cfg));
      lab_s.push_back(tuple.labels[static_cast<std::size_t>(i)]);
      idx_s.push_back(index[static_cast<std::size_t>(i)]);
    } else {
      rest.push_back(linear_map(w.transpose(), tuple[i], cfg));
      lab_r.push_back(tuple.labels[static_cast<std::size_t>(i)]);
      idx_r.push_back(index[static_cast<std::size_t>(i)]);
    }
  }
  decompose_into(make_body_tuple(std::move(in_s), std::move(lab_s)), idx_s, basis * u, cfg, out);
  decompose_into(make_body_tuple(std::move(rest), std::move(lab_r)), idx_r, basis * w, cfg, out);
}

double radius_from(double u, double stf, int n) {
  require(stf > 0.0, ErrorKind::Precondition, "search_radius: some V(K^ij) vanishes; the tuple is decomposable");
  return std::max(1.0, std::sqrt(static_cast<double>(n)) * std::log(2.0 * u / stf));
}

}  // namespace

DecompositionResult decompose(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  require(n <= 15, ErrorKind::InvalidArgument, "decompose: n above 15");
  DecompositionResult out;
  std::vector<int> index(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) index[static_cast<std::size_t>(i)] = i;
  decompose_into(tuple, index, Mat::Identity(n, n), cfg, out);
  if (!out.zero) return out;
  // A projected block collapsed, so some S has aff(sum_S K_i) < |S| in the original tuple;
  // report the smallest such S as the certificate.
  out.blocks.clear();
  for (int s = 1; s <= n && out.zero_subset.empty(); ++s)
    for_each_combination(n, s, [&](const std::vector<int>& subset) {
      if (out.zero_subset.empty() && affine_dimension_of_sum(tuple, subset) < s) out.zero_subset = subset;
    });
  return out;
}

double search_radius(const BodyTuple& tuple, const GeometryConfig& cfg) {
  const int n = tuple.size();
  const Mat v = kij_values(tuple, cfg);
  double stf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) stf = std::min(stf, v(i, j));
  return radius_from(minkowski_poly_eval(tuple, Vec::Ones(n), cfg), stf, n);
}

double search_radius(const PolyCoefficients& poly) {
  const int n = poly.n;
  double stf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<int> alpha(static_cast<std::size_t>(n), 1);
      alpha[static_cast<std::size_t>(i)] = 2;
      alpha[static_cast<std::size_t>(j)] = 0;
      stf = std::min(stf, 2.0 * poly.coefficient(alpha));
    }
  return radius_from(poly.evaluate(Vec::Ones(n)), stf, n);
}

CapacityReport make_report(const MinimizeResult& m, std::vector<double> factors, std::vector<int> dims,
                           const SolverOptions& options) {
  CapacityReport r;
  r.cap_estimate = std::exp(m.value);
  r.minimizer_y = m.y;
  r.additive_gap = m.gap;
  double prod = 1.0;
  for (double f : factors) prod *= f;
  r.mv_upper = r.cap_estimate;
  r.mv_lower = r.cap_estimate * prod / std::exp(m.gap);
  r.factors = std::move(factors);
  r.factor_dims = std::move(dims);
  r.oracle_mode = options.oracle == OracleKind::Exact ? "exact" : "mc";
  r.method = to_string(options.method);
  r.iterations = m.iterations;
  r.seed = options.seed;
  r.certified = m.certified;
  r.radius = m.radius;
  r.var_estimate = m.var_estimate;
  r.epsilon = options.epsilon;
  return r;
}

CapacityReport minimize_capacity(const BodyTuple& tuple, const SolverOptions& opt) {
  const int n = tuple.size();
  require(opt.epsilon > 0.0 && opt.epsilon < 1.0, ErrorKind::InvalidArgument, "minimize_capacity: epsilon must lie in (0, 1)");
  std::vector<int> aff(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) aff[static_cast<std::size_t>(i)] = affine_dimension(tuple[i]);
  const BoundFactors bf = bound_factors(aff);

  if (n == 1) {
    const double len = volume_exact(tuple[0], opt.geometry);
    require(len > 0.0, ErrorKind::Precondition, "minimize_capacity: a one-dimensional tuple of a point");
    MinimizeResult m;
    m.y = Vec::Zero(1);
    m.value = std::log(len);
    m.certified = true;
    CapacityReport r = make_report(m, bf.lambdas, bf.d, opt);
    r.value_calls = 1;
    return r;
  }
  const IndecomposabilityResult ic = indecomposability_check(tuple);
  require(ic.indecomposable, ErrorKind::Precondition,
          "minimize_capacity: tuple is decomposable; use approx_mixed_volume");

  MinimizeOptions mo;
  mo.method = opt.method;
  mo.epsilon = opt.epsilon;
  mo.max_iterations = opt.max_iterations;

  std::unique_ptr<LogObjective> f;
  double per_call = 0.0;
  if (opt.oracle == OracleKind::Exact) {
    auto exact = std::make_unique<MinkowskiExactObjective>(tuple, n <= 8, opt.geometry);
    mo.radius = exact->compiled() ? search_radius(*exact->compiled()) : search_radius(tuple, opt.geometry);
    f = std::move(exact);
  } else {
    require(opt.method == MinimizerMethod::Ellipsoid, ErrorKind::InvalidArgument,
            "minimize_capacity: randomized oracles require the ellipsoid method");
    mo.radius = search_radius(tuple, opt.geometry);
    mo.max_doublings = 2;
    const double cap = static_cast<double>(opt.max_iterations ? opt.max_iterations
                                                              : default_iteration_cap(n, opt.epsilon, 4.0 * mo.radius));
    const double calls = (2.0 * n + cap * (n + 2)) * (mo.max_doublings + 1) + 1.0;
    per_call = opt.failure_budget / calls;
    f = std::make_unique<MinkowskiMcObjective>(tuple, opt.samples, opt.seed, z_for_failure(per_call), opt.geometry);
  }
  const MinimizeResult m = minimize_on_hyperplane(*f, mo);
  CapacityReport r = make_report(m, bf.lambdas, bf.d, opt);
  r.value_calls = f->value_calls;
  r.gradient_calls = f->gradient_calls;
  r.failure_prob_per_call = per_call;
  return r;
}

CapacityReport approx_mixed_volume(const BodyTuple& tuple, const SolverOptions& opt) {
  const int n = tuple.size();
  const DecompositionResult dec = decompose(tuple, opt.geometry);
  CapacityReport total;
  total.minimizer_y = Vec::Zero(n);
  total.oracle_mode = opt.oracle == OracleKind::Exact ? "exact" : "mc";
  total.method = to_string(opt.method);
  total.seed = opt.seed;
  total.epsilon = opt.epsilon;
  if (dec.zero) {
    total.zero_certificate = true;
    total.certified = true;
    total.blocks = 0;
    return total;
  }
  total.cap_estimate = 1.0;
  total.mv_lower = 1.0;
  total.mv_upper = 1.0;
  total.certified = true;
  total.blocks = static_cast<int>(dec.blocks.size());
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const auto& blk = dec.blocks[b];
    SolverOptions bo = opt;
    bo.seed = splitmix64(opt.seed + b);
    // The failure budget is split evenly so the union bound still gives the requested total.
    bo.failure_budget = opt.failure_budget / static_cast<double>(dec.blocks.size());
    const CapacityReport r = minimize_capacity(blk.tuple, bo);
    total.cap_estimate *= r.cap_estimate;
    total.mv_lower *= r.mv_lower;
    total.mv_upper *= r.mv_upper;
    total.additive_gap += r.additive_gap;
    total.factors.insert(total.factors.end(), r.factors.begin(), r.factors.end());
    total.factor_dims.insert(total.factor_dims.end(), r.factor_dims.begin(), r.factor_dims.end());
    total.iterations += r.iterations;
    total.certified = total.certified && r.certified;
    total.value_calls += r.value_calls;
    total.gradient_calls += r.gradient_calls;
    total.radius = std::max(total.radius, r.radius);
    total.var_estimate = std::max(total.var_estimate, r.var_estimate);
    total.failure_prob_per_call = std::max(total.failure_prob_per_call, r.failure_prob_per_call);
    for (std::size_t k = 0; k < blk.indices.size(); ++k)
      total.minimizer_y(blk.indices[k]) = r.minimizer_y(static_cast<Eigen::Index>(k));
  }
  return total;
}

}  // namespace mvcap
