#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mvcap/linalg.hpp"

namespace mvcap {

struct GeometryConfig {
  int max_dim = 8;
  std::size_t vertex_budget = 20'000;
  std::size_t candidate_budget = 2'000'000;
  /// Extreme-point filtering tolerance (support-value units, scaled by max(1, diameter)).
  double tolerance = 1e-10;
};

/// Axis-aligned box prod [lower_j, upper_j].
struct Box {
  Vec lower;
  Vec upper;
};

/// center + sum_k [0,1] * g_k. Parallel generators are merged on construction.
struct Zonotope {
  Vec center;
  std::vector<Vec> generators;
};

/// Convex hull of `vertices`; after construction every vertex is extreme.
struct VPolytope {
  std::vector<Vec> vertices;
};

class ConvexBody {
 public:
  using Rep = std::variant<Box, Zonotope, VPolytope>;

  static ConvexBody box(Vec lower, Vec upper);
  static ConvexBody zonotope(Vec center, std::vector<Vec> generators);
  static ConvexBody segment(const Vec& a, const Vec& b);
  static ConvexBody point(Vec p);
  static ConvexBody vpolytope(std::vector<Vec> vertices, const GeometryConfig& cfg = {});

  int ambient_dim() const { return dim_; }
  const Rep& rep() const { return rep_; }
  bool is_box() const { return std::holds_alternative<Box>(rep_); }
  bool is_zonotope() const { return std::holds_alternative<Zonotope>(rep_); }
  bool is_vpolytope() const { return std::holds_alternative<VPolytope>(rep_); }

 private:
  ConvexBody(Rep rep, int dim) : rep_(std::move(rep)), dim_(dim) {}
  Rep rep_;
  int dim_;
};

/// Ordered n-tuple of bodies in R^n.
struct BodyTuple {
  std::vector<ConvexBody> bodies;
  std::vector<std::string> labels;
  int size() const { return static_cast<int>(bodies.size()); }
  const ConvexBody& operator[](int i) const { return bodies[static_cast<std::size_t>(i)]; }
};

/// Validates that there are n bodies in R^n and fills default labels K1..Kn.
BodyTuple make_body_tuple(std::vector<ConvexBody> bodies, std::vector<std::string> labels = {});

/// Columns spanning the linear space parallel to the affine hull.
Mat affine_directions(const ConvexBody& body);
int affine_dimension(const ConvexBody& body);
/// Affine dimension of sum_{i in subset} K_i (rank of the concatenated direction matrices).
int affine_dimension_of_sum(const BodyTuple& tuple, const std::vector<int>& subset);

ConvexBody minkowski_combine(const std::vector<double>& weights, const std::vector<ConvexBody>& bodies,
                             const GeometryConfig& cfg = {});

/// Every extreme point of the body (boxes and zonotopes are expanded).
std::vector<Vec> vertices(const ConvexBody& body, const GeometryConfig& cfg = {});
ConvexBody to_vpolytope(const ConvexBody& body, const GeometryConfig& cfg = {});

double volume_exact(const ConvexBody& body, const GeometryConfig& cfg = {});

struct McEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 95% normal-approximation half interval
  double std_err = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double bbox_volume = 0.0;
};

/// Hit-or-miss estimate in the tight bounding box. Output depends only on (body, samples, seed).
McEstimate volume_mc(const ConvexBody& body, std::uint64_t samples, std::uint64_t seed,
                     const GeometryConfig& cfg = {});

double support_value(const ConvexBody& body, const Vec& direction);
std::pair<Vec, Vec> bounding_box(const ConvexBody& body);

/// Image under x -> M x; M may be rectangular (k x n), giving a body in R^k.
ConvexBody linear_map(const Mat& m, const ConvexBody& body, const GeometryConfig& cfg = {});
ConvexBody translate(const ConvexBody& body, const Vec& t);

}  // namespace mvcap
