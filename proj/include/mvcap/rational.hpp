#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <variant>
#include <vector>

namespace mvcap {

using Rational = boost::multiprecision::cpp_rational;
using RVec = std::vector<Rational>;

/// Accepts "p/q", integers and decimal literals (with optional exponent), all converted exactly.
Rational parse_rational(const std::string& text);
/// Exact value of the shortest decimal string that round-trips to x.
Rational rational_from_double(double x);
std::string to_string(const Rational& q);

struct RationalBox {
  RVec lower, upper;
};
struct RationalZonotope {
  RVec center;
  std::vector<RVec> generators;
};
using RationalBody = std::variant<RationalBox, RationalZonotope>;

int ambient_dim(const RationalBody& body);
RationalZonotope as_zonotope(const RationalBody& body);

Rational determinant(std::vector<RVec> rows);
Rational volume_exact(const RationalBody& body);
RationalBody minkowski_combine(const RVec& weights, const std::vector<RationalBody>& bodies);
/// Mixed volume in the derivative normalization (coefficient of x_1...x_n times 1).
Rational mixed_volume_polarization(const std::vector<RationalBody>& bodies);
Rational permanent(const std::vector<RVec>& a);
/// ((k-1)/k)^(k-1), with g(1) = 1.
Rational g_factor_exact(int k);

}  // namespace mvcap
