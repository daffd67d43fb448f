#include "mvcap/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mvcap/error.hpp"

namespace mvcap {

namespace {

double bbox_diameter(const std::vector<Vec>& pts) {
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Greedy affinely independent selection: repeatedly takes the point farthest from the
// current affine span. Returns the chosen indices (first is the anchor) and the
// orthonormal directions found.
struct AffineFrame {
  std::vector<int> chosen;
  Mat directions;  // n x k
};

AffineFrame affine_frame(const std::vector<Vec>& pts, double eps) {
  const int n = static_cast<int>(pts[0].size());
  int anchor = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    const Vec& a = pts[i];
    const Vec& b = pts[anchor];
    if (std::lexicographical_compare(a.data(), a.data() + n, b.data(), b.data() + n)) anchor = i;
  }
  AffineFrame frame;
  frame.chosen.push_back(anchor);
  std::vector<Vec> dirs;
  while (static_cast<int>(dirs.size()) < n) {
    double best = eps;
    int best_i = -1;
    Vec best_r;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Vec r = pts[i] - pts[anchor];
      for (const auto& q : dirs) r -= q.dot(r) * q;
      double nr = r.norm();
      if (nr > best) {
        best = nr;
        best_i = i;
        best_r = r;
      }
    }
    if (best_i < 0) break;
    // One re-orthogonalization pass keeps the frame orthonormal to working precision.
    for (const auto& q : dirs) best_r -= q.dot(best_r) * q;
    dirs.push_back(best_r.normalized());
    frame.chosen.push_back(best_i);
  }
  frame.directions = Mat(n, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t k = 0; k < dirs.size(); ++k) frame.directions.col(static_cast<Eigen::Index>(k)) = dirs[k];
  return frame;
}

HullResult hull_1d(const std::vector<Vec>& pts) {
  int lo = 0, hi = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i](0) < pts[lo](0)) lo = i;
    if (pts[i](0) > pts[hi](0)) hi = i;
  }
  HullResult r;
  r.ambient_dim = 1;
  r.affine_dim = 1;
  r.extreme = {lo, hi};
  r.volume = pts[hi](0) - pts[lo](0);
  r.facets.push_back({{hi}, Vec::Constant(1, 1.0), pts[hi](0)});
  r.facets.push_back({{lo}, Vec::Constant(1, -1.0), -pts[lo](0)});
  return r;
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

HullResult hull_2d(const std::vector<Vec>& pts, double eps) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a](0) != pts[b](0)) return pts[a](0) < pts[b](0);
    return pts[a](1) < pts[b](1);
  });
  // A point is dropped when it lies within eps of the chord from the previous hull point.
  auto keep_turn = [&](int o, int a, int b) {
    double len = (pts[b] - pts[o]).norm();
    return cross2(pts[o], pts[a], pts[b]) > eps * std::max(len, 1e-300);
  };
  std::vector<int> h(2 * pts.size() + 1);
  std::size_t k = 0;
  for (int idx : order) {
    while (k >= 2 && !keep_turn(h[k - 2], h[k - 1], idx)) --k;
    h[k++] = idx;
  }
  for (std::size_t i = order.size() - 1, t = k + 1; i-- > 0;) {
    int idx = order[i];
    while (k >= t && !keep_turn(h[k - 2], h[k - 1], idx)) --k;
    h[k++] = idx;
  }
  h.resize(k - 1);

  HullResult r;
  r.ambient_dim = 2;
  r.affine_dim = 2;
  r.extreme = h;
  double area = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec& a = pts[h[i]];
    const Vec& b = pts[h[(i + 1) % h.size()]];
    area += a(0) * b(1) - a(1) * b(0);
    Vec nrm(2);
    nrm << b(1) - a(1), a(0) - b(0);
    nrm.normalize();
    r.facets.push_back({{h[i], h[(i + 1) % h.size()]}, nrm, nrm.dot(a)});
  }
  r.volume = 0.5 * std::abs(area);
  return r;
}

// Incremental quickhull with simplicial facets for d >= 3. Points within eps of a facet
// plane are treated as not visible, so coplanar points never enter the triangulation
// unless they were chosen before the point that hides them.
class QuickHull {
 public:
  QuickHull(const std::vector<Vec>& pts, double eps) : pts_(pts), eps_(eps), d_(static_cast<int>(pts[0].size())) {}

  HullResult run(const std::vector<int>& simplex) {
    interior_ = Vec::Zero(d_);
    for (int i : simplex) interior_ += pts_[i];
    interior_ /= static_cast<double>(simplex.size());

    for (int k = 0; k <= d_; ++k) {
      std::vector<int> v;
      for (int j = 0; j <= d_; ++j)
        if (j != k) v.push_back(simplex[j]);
      facets_.push_back(make_facet(v));
    }
    // Facet k omits simplex[k]; the ridge opposite vertex simplex[j] is shared with facet j.
    for (int k = 0; k <= d_; ++k) {
      auto& f = facets_[k];
      f.nbr.assign(d_, -1);
      for (int t = 0; t < d_; ++t) {
        int j = static_cast<int>(std::find(simplex.begin(), simplex.end(), f.v[t]) - simplex.begin());
        f.nbr[t] = j;
      }
    }
    std::vector<char> in_simplex(pts_.size(), 0);
    for (int i : simplex) in_simplex[i] = 1;
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i)
      if (!in_simplex[i]) all.push_back(i);
    std::vector<int> first(d_ + 1);
    std::iota(first.begin(), first.end(), 0);
    assign(all, first);

    for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
      if (!facets_[fi].alive || facets_[fi].outside.empty()) continue;
      add_point(static_cast<int>(fi));
    }
    return finish();
  }

 private:
  struct Facet {
    std::vector<int> v;
    std::vector<int> nbr;
    Vec normal;
    double offset = 0.0;
    std::vector<int> outside;
    int far = -1;
    double far_dist = 0.0;
    bool alive = true;
    int tag = -1;
    bool visible = false;
  };

  Facet make_facet(const std::vector<int>& v) const {
    Mat rows(d_ - 1, d_);
    for (int k = 1; k < d_; ++k) rows.row(k - 1) = (pts_[v[k]] - pts_[v[0]]).transpose();
    Facet f;
    f.v = v;
    f.normal = generalized_cross(rows);
    double nn = f.normal.norm();
    if (!(nn > 0.0)) throw Error(ErrorKind::IllConditioned, "convex hull: degenerate facet");
    f.normal /= nn;
    f.offset = f.normal.dot(pts_[v[0]]);
    if (f.normal.dot(interior_) > f.offset) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    return f;
  }

  double dist(const Facet& f, int p) const { return f.normal.dot(pts_[p]) - f.offset; }

  void assign(const std::vector<int>& candidates, const std::vector<int>& targets) {
    for (int p : candidates) {
      int best = -1;
      double best_d = eps_;
      for (int t : targets) {
        double dd = dist(facets_[t], p);
        if (dd > best_d) {
          best_d = dd;
          best = t;
        }
      }
      if (best < 0) continue;
      auto& f = facets_[best];
      f.outside.push_back(p);
      if (best_d > f.far_dist) {
        f.far_dist = best_d;
        f.far = p;
      }
    }
  }

  void add_point(int start) {
    const int p = facets_[start].far;
    ++tag_;
    std::vector<int> visible{start};
    facets_[start].tag = tag_;
    facets_[start].visible = true;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      for (int nb : facets_[visible[k]].nbr) {
        auto& g = facets_[nb];
        if (g.tag == tag_) continue;
        g.tag = tag_;
        g.visible = dist(g, p) > eps_;
        if (g.visible) visible.push_back(nb);
      }
    }

    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    std::vector<int> created;
    for (int fi : visible) {
      for (int t = 0; t < d_; ++t) {
        int g = facets_[fi].nbr[t];
        if (facets_[g].tag == tag_ && facets_[g].visible) continue;
        std::vector<int> nv;
        for (int s = 0; s < d_; ++s)
          if (s != t) nv.push_back(facets_[fi].v[s]);
        nv.push_back(p);
        Facet nf = make_facet(nv);
        nf.nbr.assign(d_, -1);
        nf.nbr[d_ - 1] = g;
        int id = static_cast<int>(facets_.size());
        facets_.push_back(std::move(nf));
        created.push_back(id);
        auto& gn = facets_[g].nbr;
        auto it = std::find(gn.begin(), gn.end(), fi);
        if (it == gn.end()) throw Error(ErrorKind::IllConditioned, "convex hull: broken adjacency");
        *it = id;
        for (int s = 0; s < d_ - 1; ++s) {
          std::vector<int> key;
          for (int u = 0; u < d_; ++u)
            if (u != s) key.push_back(facets_[id].v[u]);
          std::sort(key.begin(), key.end());
          auto found = open_ridges.find(key);
          if (found == open_ridges.end()) {
            open_ridges.emplace(std::move(key), std::make_pair(id, s));
          } else {
            auto [other, slot] = found->second;
            facets_[id].nbr[s] = other;
            facets_[other].nbr[slot] = id;
            open_ridges.erase(found);
          }
        }
      }
    }
    if (!open_ridges.empty()) throw Error(ErrorKind::IllConditioned, "convex hull: inconsistent horizon");

    std::vector<int> orphans;
    for (int fi : visible) {
      auto& f = facets_[fi];
      for (int q : f.outside)
        if (q != p) orphans.push_back(q);
      f.outside.clear();
      f.outside.shrink_to_fit();
      f.alive = false;
    }
    assign(orphans, created);
  }

  HullResult finish() {
    HullResult r;
    r.ambient_dim = d_;
    r.affine_dim = d_;
    std::map<int, std::vector<int>> incident;
    double vol = 0.0;
    Mat m(d_, d_);
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
      const auto& f = facets_[fi];
      if (!f.alive) continue;
      for (int k = 0; k < d_; ++k) {
        m.col(k) = pts_[f.v[k]] - interior_;
        incident[f.v[k]].push_back(static_cast<int>(r.facets.size()));
      }
      vol += std::abs(determinant(m));
      r.facets.push_back({f.v, f.normal, f.offset});
    }
    r.volume = vol / factorial(d_);
    for (const auto& [vertex, fs] : incident) {
      Mat normals(static_cast<Eigen::Index>(fs.size()), d_);
      for (std::size_t k = 0; k < fs.size(); ++k) normals.row(static_cast<Eigen::Index>(k)) = r.facets[fs[k]].normal.transpose();
      if (numeric_rank(normals, 1e-9) == d_) r.extreme.push_back(vertex);
    }
    return r;
  }

  const std::vector<Vec>& pts_;
  double eps_;
  int d_;
  Vec interior_;
  std::vector<Facet> facets_;
  int tag_ = 0;
};

HullResult full_dim_hull(const std::vector<Vec>& pts, const std::vector<int>& simplex, double eps) {
  const int n = static_cast<int>(pts[0].size());
  if (n == 1) return hull_1d(pts);
  if (n == 2) return hull_2d(pts, eps);
  return QuickHull(pts, eps).run(simplex);
}

}  // namespace

HullResult convex_hull(const std::vector<Vec>& points, const HullOptions& options) {
  require(!points.empty(), ErrorKind::InvalidArgument, "convex hull of an empty point set");
  require(points.size() <= options.candidate_budget, ErrorKind::RepresentationBlowup,
          "convex hull: " + std::to_string(points.size()) + " candidate points exceed the budget");
  const int n = static_cast<int>(points[0].size());
  for (const auto& p : points)
    require(p.size() == n, ErrorKind::DimensionMismatch, "convex hull: points of different dimension");

  const double eps = options.tolerance * std::max(1.0, bbox_diameter(points));
  AffineFrame frame = affine_frame(points, eps);
  const int k = static_cast<int>(frame.directions.cols());

  if (k == n) {
    HullResult r = full_dim_hull(points, frame.chosen, eps);
    std::sort(r.extreme.begin(), r.extreme.end());
    return r;
  }

  HullResult r;
  r.ambient_dim = n;
  r.affine_dim = k;
  if (k == 0) {
    r.extreme = {frame.chosen[0]};
    return r;
  }
  const Vec& anchor = points[frame.chosen[0]];
  std::vector<Vec> local(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) local[i] = frame.directions.transpose() * (points[i] - anchor);
  std::vector<int> simplex(frame.chosen.begin(), frame.chosen.end());
  HullResult sub = full_dim_hull(local, simplex, eps);
  r.extreme = sub.extreme;
  std::sort(r.extreme.begin(), r.extreme.end());
  return r;
}

Halfspaces merge_coplanar(const std::vector<HullFacet>& facets, int dim) {
  std::vector<Vec> normals;
  std::vector<double> offsets;
  for (const auto& f : facets) {
    bool dup = false;
    for (std::size_t k = 0; k < normals.size(); ++k) {
      if ((normals[k] - f.normal).norm() < 1e-9 && std::abs(offsets[k] - f.offset) < 1e-9 * std::max(1.0, std::abs(f.offset))) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      normals.push_back(f.normal);
      offsets.push_back(f.offset);
    }
  }
  Halfspaces h;
  h.normals = Mat(static_cast<Eigen::Index>(normals.size()), dim);
  h.offsets = Vec(static_cast<Eigen::Index>(normals.size()));
  for (std::size_t k = 0; k < normals.size(); ++k) {
    h.normals.row(static_cast<Eigen::Index>(k)) = normals[k].transpose();
    h.offsets(static_cast<Eigen::Index>(k)) = offsets[k];
  }
  return h;
}

}  // namespace mvcap
