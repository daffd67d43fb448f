#pragma once

#include <cstddef>
#include <vector>

#include "mvcap/linalg.hpp"

namespace mvcap {

/// Outward halfspace {x : normal . x <= offset} together with the hull vertices spanning it.
struct HullFacet {
  std::vector<int> vertices;
  Vec normal;
  double offset = 0.0;
};

struct HullOptions {
  /// Relative tolerance; scaled by max(1, diameter of the input).
  double tolerance = 1e-10;
  std::size_t candidate_budget = 2'000'000;
};

/// Convex hull of a finite point set in R^n.
///
/// `extreme` indexes the input points that are extreme points of the hull (each
/// extreme location listed once). When the points are full-dimensional, `facets`
/// is a simplicial triangulation of the boundary and `volume` the n-volume;
/// otherwise `facets` is empty and `volume` is 0.
struct HullResult {
  int ambient_dim = 0;
  int affine_dim = 0;
  std::vector<int> extreme;
  std::vector<HullFacet> facets;
  double volume = 0.0;
};

HullResult convex_hull(const std::vector<Vec>& points, const HullOptions& options = {});

/// Deduplicated facet halfspaces (A x <= b) of a full-dimensional hull.
struct Halfspaces {
  Mat normals;  // m x n, unit rows
  Vec offsets;  // m
};

Halfspaces merge_coplanar(const std::vector<HullFacet>& facets, int dim);

}  // namespace mvcap
