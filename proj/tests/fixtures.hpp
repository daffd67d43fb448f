#pragma once

#include <random>
#include <vector>

#include "mvcap/geometry.hpp"

namespace fixtures {

using mvcap::ConvexBody;
using mvcap::Vec;

inline Vec uniform_vec(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Vec::NullaryExpr(n, [&] { return u(rng); });
}

/// Full-dimensional body of a randomly chosen representation, coordinates in a unit-ish range.
inline ConvexBody random_body(std::mt19937_64& rng, int n, int kind) {
  switch (kind % 3) {
    case 0: {
      const Vec lo = uniform_vec(rng, n, -0.5, 0.5);
      return ConvexBody::box(lo, lo + uniform_vec(rng, n, 0.3, 1.5));
    }
    case 1: {
      std::vector<Vec> gens;
      for (int k = 0; k < n + 1; ++k) gens.push_back(uniform_vec(rng, n, -1.0, 1.0));
      return ConvexBody::zonotope(uniform_vec(rng, n, -0.5, 0.5), gens);
    }
    default: {
      std::vector<Vec> pts;
      for (int k = 0; k < 2 * n + 2; ++k) pts.push_back(uniform_vec(rng, n, -1.0, 1.0));
      return ConvexBody::vpolytope(pts);
    }
  }
}

/// Tuple mixing boxes, zonotopes, polytopes and (sometimes) segments.
inline mvcap::BodyTuple random_tuple(std::mt19937_64& rng, int n, bool allow_segments = true) {
  std::vector<ConvexBody> bodies;
  std::uniform_int_distribution<int> kind(0, allow_segments ? 3 : 2);
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    if (k == 3)
      bodies.push_back(ConvexBody::segment(Vec::Zero(n), uniform_vec(rng, n, -1.0, 1.0)));
    else
      bodies.push_back(random_body(rng, n, k));
  }
  return mvcap::make_body_tuple(std::move(bodies));
}

inline mvcap::Mat random_nonnegative(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return mvcap::Mat::NullaryExpr(n, n, [&] { return u(rng); });
}

}  // namespace fixtures
