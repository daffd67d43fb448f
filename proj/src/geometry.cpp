#include "mvcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "mvcap/error.hpp"
#include "mvcap/hull.hpp"

namespace mvcap {

namespace {

constexpr int kMcShards = 64;
constexpr double kZonotopeSubsetBudget = 5e7;

void check_finite(const Vec& v, const char* what) {
  require(v.allFinite(), ErrorKind::InvalidArgument, std::string(what) + ": non-finite coordinate");
}

// Merges generators that are parallel up to sign; opposite-sign parallel parts shift the center.
void merge_parallel(Vec& center, std::vector<Vec>& gens) {
  std::vector<Vec> merged;
  std::vector<Vec> dirs;
  for (const auto& g : gens) {
    double nrm = g.norm();
    if (!(nrm > 0.0)) continue;
    Vec u = g / nrm;
    bool placed = false;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      if ((u - dirs[k]).norm() <= 1e-12) {
        merged[k] += g;
        placed = true;
        break;
      }
      if ((u + dirs[k]).norm() <= 1e-12) {
        center += g;
        merged[k] -= g;
        placed = true;
        break;
      }
    }
    if (!placed) {
      merged.push_back(g);
      dirs.push_back(u);
    }
  }
  gens = std::move(merged);
}

std::vector<Vec> extreme_subset(const std::vector<Vec>& pts, const GeometryConfig& cfg) {
  HullOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.candidate_budget = cfg.candidate_budget;
  HullResult h = convex_hull(pts, opt);
  require(h.extreme.size() <= cfg.vertex_budget, ErrorKind::RepresentationBlowup,
          "vertex count " + std::to_string(h.extreme.size()) + " exceeds the vertex budget");
  std::vector<Vec> out;
  out.reserve(h.extreme.size());
  for (int i : h.extreme) out.push_back(pts[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<Vec> add_segment(const std::vector<Vec>& pts, const Vec& g, const GeometryConfig& cfg) {
  std::vector<Vec> cand;
  cand.reserve(2 * pts.size());
  for (const auto& p : pts) {
    cand.push_back(p);
    cand.push_back(p + g);
  }
  return extreme_subset(cand, cfg);
}

std::vector<Vec> zonotope_vertices(const Zonotope& z, const GeometryConfig& cfg) {
  std::vector<Vec> pts{z.center};
  for (const auto& g : z.generators) pts = add_segment(pts, g, cfg);
  return pts;
}

Zonotope box_as_zonotope(const Box& b) {
  Zonotope z{b.lower, {}};
  for (Eigen::Index j = 0; j < b.lower.size(); ++j) {
    double w = b.upper(j) - b.lower(j);
    if (w > 0.0) {
      Vec g = Vec::Zero(b.lower.size());
      g(j) = w;
      z.generators.push_back(g);
    }
  }
  return z;
}

double zonotope_volume(const Zonotope& z) {
  const int n = static_cast<int>(z.center.size());
  const int m = static_cast<int>(z.generators.size());
  if (m < n) return 0.0;
  Mat all(n, m);
  for (int k = 0; k < m; ++k) all.col(k) = z.generators[static_cast<std::size_t>(k)];
  if (numeric_rank(all) < n) return 0.0;
  require(binomial(m, n) <= kZonotopeSubsetBudget, ErrorKind::RepresentationBlowup,
          "zonotope volume: too many generator subsets");
  double vol = 0.0;
  Mat sub(n, n);
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    for (int k = 0; k < n; ++k) sub.col(k) = all.col(idx[static_cast<std::size_t>(k)]);
    vol += std::abs(determinant(sub));
  });
  return vol;
}

Halfspaces zonotope_halfspaces(const Zonotope& z) {
  const int n = static_cast<int>(z.center.size());
  const int m = static_cast<int>(z.generators.size());
  require(binomial(m, n - 1) <= kZonotopeSubsetBudget, ErrorKind::RepresentationBlowup,
          "zonotope facets: too many generator subsets");
  std::vector<HullFacet> facets;
  ConvexBody body = ConvexBody::zonotope(z.center, z.generators);
  Mat rows(n - 1, n);
  for_each_combination(m, n - 1, [&](const std::vector<int>& idx) {
    for (int k = 0; k < n - 1; ++k) rows.row(k) = z.generators[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])].transpose();
    Vec nrm = generalized_cross(rows);
    double len = nrm.norm();
    if (!(len > 1e-300)) return;
    nrm /= len;
    facets.push_back({{}, nrm, support_value(body, nrm)});
    facets.push_back({{}, -nrm, support_value(body, -nrm)});
  });
  return merge_coplanar(facets, n);
}

}  // namespace

ConvexBody ConvexBody::box(Vec lower, Vec upper) {
  require(lower.size() > 0, ErrorKind::InvalidArgument, "box: empty coordinate vector");
  require(lower.size() == upper.size(), ErrorKind::DimensionMismatch, "box: lower/upper length mismatch");
  check_finite(lower, "box");
  check_finite(upper, "box");
  for (Eigen::Index j = 0; j < lower.size(); ++j)
    require(lower(j) <= upper(j), ErrorKind::InvalidArgument, "box: lower exceeds upper");
  int d = static_cast<int>(lower.size());
  return ConvexBody(Box{std::move(lower), std::move(upper)}, d);
}

ConvexBody ConvexBody::zonotope(Vec center, std::vector<Vec> generators) {
  require(center.size() > 0, ErrorKind::InvalidArgument, "zonotope: empty center");
  check_finite(center, "zonotope");
  for (const auto& g : generators) {
    require(g.size() == center.size(), ErrorKind::DimensionMismatch, "zonotope: generator length mismatch");
    check_finite(g, "zonotope");
  }
  merge_parallel(center, generators);
  int d = static_cast<int>(center.size());
  return ConvexBody(Zonotope{std::move(center), std::move(generators)}, d);
}

ConvexBody ConvexBody::segment(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "segment: endpoint length mismatch");
  return zonotope(a, {b - a});
}

ConvexBody ConvexBody::point(Vec p) { return zonotope(std::move(p), {}); }

ConvexBody ConvexBody::vpolytope(std::vector<Vec> verts, const GeometryConfig& cfg) {
  require(!verts.empty(), ErrorKind::InvalidArgument, "vpolytope: empty vertex list");
  const Eigen::Index d = verts[0].size();
  require(d > 0, ErrorKind::InvalidArgument, "vpolytope: empty coordinate vector");
  require(d <= cfg.max_dim, ErrorKind::RepresentationBlowup,
          "vpolytope: dimension " + std::to_string(d) + " above the supported maximum");
  for (const auto& v : verts) {
    require(v.size() == d, ErrorKind::DimensionMismatch, "vpolytope: vertex length mismatch");
    check_finite(v, "vpolytope");
  }
  return ConvexBody(VPolytope{extreme_subset(verts, cfg)}, static_cast<int>(d));
}

BodyTuple make_body_tuple(std::vector<ConvexBody> bodies, std::vector<std::string> labels) {
  const int n = static_cast<int>(bodies.size());
  require(n > 0, ErrorKind::InvalidArgument, "body tuple: no bodies");
  for (const auto& b : bodies)
    require(b.ambient_dim() == n, ErrorKind::DimensionMismatch,
            "body tuple: " + std::to_string(n) + " bodies but a body lives in R^" + std::to_string(b.ambient_dim()));
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("K" + std::to_string(i + 1));
  require(static_cast<int>(labels.size()) == n, ErrorKind::DimensionMismatch, "body tuple: label count mismatch");
  return BodyTuple{std::move(bodies), std::move(labels)};
}

Mat affine_directions(const ConvexBody& body) {
  const int n = body.ambient_dim();
  return std::visit(
      [n](const auto& r) -> Mat {
        using T = std::decay_t<decltype(r)>;
        std::vector<Vec> cols;
        if constexpr (std::is_same_v<T, Box>) {
          cols = box_as_zonotope(r).generators;
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          cols = r.generators;
        } else {
          for (std::size_t k = 1; k < r.vertices.size(); ++k) cols.push_back(r.vertices[k] - r.vertices[0]);
        }
        Mat m(n, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = cols[k];
        return m;
      },
      body.rep());
}

int affine_dimension(const ConvexBody& body) {
  if (const auto* b = std::get_if<Box>(&body.rep())) {
    int k = 0;
    for (Eigen::Index j = 0; j < b->lower.size(); ++j) k += b->upper(j) > b->lower(j);
    return k;
  }
  return numeric_rank(affine_directions(body));
}

int affine_dimension_of_sum(const BodyTuple& tuple, const std::vector<int>& subset) {
  std::vector<Mat> parts;
  Eigen::Index cols = 0;
  for (int i : subset) {
    parts.push_back(affine_directions(tuple[i]));
    cols += parts.back().cols();
  }
  Mat all(tuple.size(), cols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    all.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return numeric_rank(all);
}

std::vector<Vec> vertices(const ConvexBody& body, const GeometryConfig& cfg) {
  return std::visit(
      [&](const auto& r) -> std::vector<Vec> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box>) {
          Zonotope z = box_as_zonotope(r);
          require(z.generators.size() < 63 && (std::size_t{1} << z.generators.size()) <= cfg.vertex_budget,
                  ErrorKind::RepresentationBlowup, "box vertex expansion exceeds the vertex budget");
          std::vector<Vec> out;
          for (std::size_t mask = 0; mask < (std::size_t{1} << z.generators.size()); ++mask) {
            Vec v = z.center;
            for (std::size_t k = 0; k < z.generators.size(); ++k)
              if (mask >> k & 1) v += z.generators[k];
            out.push_back(v);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return zonotope_vertices(r, cfg);
        } else {
          return r.vertices;
        }
      },
      body.rep());
}

ConvexBody to_vpolytope(const ConvexBody& body, const GeometryConfig& cfg) {
  if (body.is_vpolytope()) return body;
  return ConvexBody::vpolytope(vertices(body, cfg), cfg);
}

ConvexBody minkowski_combine(const std::vector<double>& weights, const std::vector<ConvexBody>& bodies,
                             const GeometryConfig& cfg) {
  require(!bodies.empty(), ErrorKind::InvalidArgument, "minkowski_combine: no bodies");
  require(weights.size() == bodies.size(), ErrorKind::DimensionMismatch, "minkowski_combine: weight count mismatch");
  const int n = bodies[0].ambient_dim();
  bool any_positive = false;
  bool all_box = true, any_vpoly = false;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    require(bodies[i].ambient_dim() == n, ErrorKind::DimensionMismatch, "minkowski_combine: ambient dimension mismatch");
    require(std::isfinite(weights[i]) && weights[i] >= 0.0, ErrorKind::InvalidArgument,
            "minkowski_combine: weights must be finite and nonnegative");
    if (weights[i] > 0.0) {
      any_positive = true;
      all_box = all_box && bodies[i].is_box();
      any_vpoly = any_vpoly || bodies[i].is_vpolytope();
    }
  }
  require(any_positive, ErrorKind::InvalidArgument, "minkowski_combine: all weights are zero");

  if (all_box) {
    Vec lo = Vec::Zero(n), hi = Vec::Zero(n);
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const auto& b = std::get<Box>(bodies[i].rep());
      lo += weights[i] * b.lower;
      hi += weights[i] * b.upper;
    }
    return ConvexBody::box(lo, hi.cwiseMax(lo));
  }

  if (!any_vpoly) {
    Vec c = Vec::Zero(n);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (weights[i] == 0.0) continue;
      Zonotope z = bodies[i].is_box() ? box_as_zonotope(std::get<Box>(bodies[i].rep()))
                                      : std::get<Zonotope>(bodies[i].rep());
      c += weights[i] * z.center;
      for (const auto& g : z.generators) gens.push_back(weights[i] * g);
    }
    return ConvexBody::zonotope(c, std::move(gens));
  }

  require(n <= cfg.max_dim, ErrorKind::RepresentationBlowup, "minkowski_combine: dimension above the supported maximum");
  std::vector<Vec> pts{Vec::Zero(n)};
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    if (const auto* vp = std::get_if<VPolytope>(&bodies[i].rep())) {
      require(static_cast<double>(pts.size()) * static_cast<double>(vp->vertices.size()) <=
                  static_cast<double>(cfg.candidate_budget),
              ErrorKind::RepresentationBlowup, "minkowski_combine: candidate vertex count exceeds the budget");
      std::vector<Vec> cand;
      cand.reserve(pts.size() * vp->vertices.size());
      for (const auto& p : pts)
        for (const auto& v : vp->vertices) cand.push_back(p + w * v);
      pts = extreme_subset(cand, cfg);
    } else {
      Zonotope z = bodies[i].is_box() ? box_as_zonotope(std::get<Box>(bodies[i].rep()))
                                      : std::get<Zonotope>(bodies[i].rep());
      for (auto& p : pts) p += w * z.center;
      for (const auto& g : z.generators) pts = add_segment(pts, w * g, cfg);
    }
  }
  return ConvexBody::vpolytope(std::move(pts), cfg);
}

double volume_exact(const ConvexBody& body, const GeometryConfig& cfg) {
  const int n = body.ambient_dim();
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box>) {
          return (r.upper - r.lower).prod();
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return zonotope_volume(r);
        } else {
          if (static_cast<int>(r.vertices.size()) <= n) return 0.0;
          require(r.vertices.size() <= cfg.vertex_budget, ErrorKind::RepresentationBlowup,
                  "volume_exact: vertex count exceeds the budget");
          HullOptions opt;
          opt.tolerance = cfg.tolerance;
          HullResult h = convex_hull(r.vertices, opt);
          return h.affine_dim < n ? 0.0 : h.volume;
        }
      },
      body.rep());
}

double support_value(const ConvexBody& body, const Vec& d) {
  require(d.size() == body.ambient_dim(), ErrorKind::DimensionMismatch, "support_value: direction length mismatch");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box>) {
          double s = 0.0;
          for (Eigen::Index j = 0; j < d.size(); ++j) s += std::max(r.lower(j) * d(j), r.upper(j) * d(j));
          return s;
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          double s = r.center.dot(d);
          for (const auto& g : r.generators) s += std::max(0.0, g.dot(d));
          return s;
        } else {
          double s = -std::numeric_limits<double>::infinity();
          for (const auto& v : r.vertices) s = std::max(s, v.dot(d));
          return s;
        }
      },
      body.rep());
}

std::pair<Vec, Vec> bounding_box(const ConvexBody& body) {
  return std::visit(
      [&](const auto& r) -> std::pair<Vec, Vec> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box>) {
          return {r.lower, r.upper};
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          Vec lo = r.center, hi = r.center;
          for (const auto& g : r.generators) {
            lo += g.cwiseMin(0.0);
            hi += g.cwiseMax(0.0);
          }
          return {lo, hi};
        } else {
          Vec lo = r.vertices[0], hi = r.vertices[0];
          for (const auto& v : r.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
          }
          return {lo, hi};
        }
      },
      body.rep());
}

McEstimate volume_mc(const ConvexBody& body, std::uint64_t samples, std::uint64_t seed, const GeometryConfig& cfg) {
  require(samples > 0, ErrorKind::InvalidArgument, "volume_mc: sample count must be positive");
  const int n = body.ambient_dim();
  auto [lo, hi] = bounding_box(body);
  const Vec width = hi - lo;
  const double bbox_vol = width.prod();
  require(bbox_vol > 0.0 && affine_dimension(body) == n, ErrorKind::DegenerateBody,
          "volume_mc: body is not full-dimensional");

  McEstimate est;
  est.samples = samples;
  est.bbox_volume = bbox_vol;
  if (body.is_box()) {
    est.hits = samples;
    est.estimate = bbox_vol;
    return est;
  }

  Halfspaces h;
  if (const auto* z = std::get_if<Zonotope>(&body.rep())) {
    h = n == 1 ? Halfspaces{Mat(0, 1), Vec(0)} : zonotope_halfspaces(*z);
  } else {
    HullOptions opt;
    opt.tolerance = cfg.tolerance;
    h = merge_coplanar(convex_hull(std::get<VPolytope>(body.rep()).vertices, opt).facets, n);
  }
  const double slack = 1e-12 * std::max(1.0, width.norm());
  const Vec bound = h.offsets.array() + slack;

  std::vector<std::uint64_t> hits(kMcShards, 0);
  auto run_shard = [&](int s) {
    std::uint64_t count = samples / kMcShards + (static_cast<std::uint64_t>(s) < samples % kMcShards ? 1 : 0);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(s) + 1)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    constexpr Eigen::Index kBatch = 512;
    Mat pts(n, kBatch);
    std::uint64_t local = 0;
    while (count > 0) {
      const Eigen::Index b = static_cast<Eigen::Index>(std::min<std::uint64_t>(count, kBatch));
      for (Eigen::Index c = 0; c < b; ++c)
        for (int j = 0; j < n; ++j) pts(j, c) = lo(j) + unif(rng) * width(j);
      Mat proj = h.normals * pts.leftCols(b);
      for (Eigen::Index c = 0; c < b; ++c) local += ((proj.col(c) - bound).array() <= 0.0).all() ? 1 : 0;
      count -= static_cast<std::uint64_t>(b);
    }
    hits[static_cast<std::size_t>(s)] = local;
  };

  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, kMcShards);
  if (workers == 1) {
    for (int s = 0; s < kMcShards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < kMcShards; s += workers) run_shard(s);
      });
    for (auto& t : pool) t.join();
  }
  for (auto x : hits) est.hits += x;
  const double p = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.estimate = p * bbox_vol;
  est.std_err = bbox_vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  est.half_width = 1.96 * est.std_err;
  return est;
}

ConvexBody linear_map(const Mat& m, const ConvexBody& body, const GeometryConfig& cfg) {
  require(m.cols() == body.ambient_dim(), ErrorKind::DimensionMismatch, "linear_map: matrix column count mismatch");
  return std::visit(
      [&](const auto& r) -> ConvexBody {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, VPolytope>) {
          std::vector<Vec> vs;
          for (const auto& v : r.vertices) vs.push_back(m * v);
          return ConvexBody::vpolytope(std::move(vs), cfg);
        } else {
          Zonotope z;
          if constexpr (std::is_same_v<T, Box>)
            z = box_as_zonotope(r);
          else
            z = r;
          std::vector<Vec> gens;
          for (const auto& g : z.generators) gens.push_back(m * g);
          return ConvexBody::zonotope(m * z.center, std::move(gens));
        }
      },
      body.rep());
}

ConvexBody translate(const ConvexBody& body, const Vec& t) {
  require(t.size() == body.ambient_dim(), ErrorKind::DimensionMismatch, "translate: vector length mismatch");
  return std::visit(
      [&](const auto& r) -> ConvexBody {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box>) {
          return ConvexBody::box(r.lower + t, r.upper + t);
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return ConvexBody::zonotope(r.center + t, r.generators);
        } else {
          std::vector<Vec> vs = r.vertices;
          for (auto& v : vs) v += t;
          return ConvexBody::vpolytope(std::move(vs));
        }
      },
      body.rep());
}

}  // namespace mvcap
