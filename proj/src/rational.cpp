#include "mvcap/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>

#include "mvcap/error.hpp"
#include "mvcap/linalg.hpp"
#include "mvcap/permanent.hpp"

namespace mvcap {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// cpp_int treats a leading zero as an octal prefix.
cpp_int decimal_int(const std::string& digits) {
  const std::size_t nz = digits.find_first_not_of('0');
  return nz == std::string::npos ? cpp_int(0) : cpp_int(digits.substr(nz));
}

cpp_int parse_integer(const std::string& s, const std::string& whole) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  require(all_digits(s.substr(start)), ErrorKind::Parse, "malformed rational '" + whole + "'");
  cpp_int v = decimal_int(s.substr(start));
  return s[0] == '-' ? cpp_int(-v) : v;
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), ErrorKind::Parse, "empty rational literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    cpp_int p = parse_integer(s.substr(0, slash), raw);
    cpp_int q = parse_integer(s.substr(slash + 1), raw);
    require(q != 0, ErrorKind::Parse, "zero denominator in '" + raw + "'");
    return Rational(p, q);
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string mant, frac;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) mant += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac += s[i++];
  }
  require(!(mant.empty() && frac.empty()), ErrorKind::Parse, "malformed rational '" + raw + "'");
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::string e = s.substr(i + 1);
    std::size_t j = (!e.empty() && (e[0] == '-' || e[0] == '+')) ? 1 : 0;
    require(all_digits(e.substr(j)) && e.size() - j <= 6, ErrorKind::Parse, "malformed exponent in '" + raw + "'");
    exp10 = std::stol(e);
    i = s.size();
  }
  require(i == s.size(), ErrorKind::Parse, "trailing characters in '" + raw + "'");
  cpp_int digits = decimal_int(mant + frac);
  exp10 -= static_cast<long>(frac.size());
  Rational q = exp10 >= 0 ? Rational(digits * pow10(exp10)) : Rational(digits, pow10(-exp10));
  return neg ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  require(std::isfinite(x), ErrorKind::InvalidArgument, "non-finite value has no rational form");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string(buf, res.ptr));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

int ambient_dim(const RationalBody& body) {
  return std::visit(
      [](const auto& r) -> int {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RationalBox>)
          return static_cast<int>(r.lower.size());
        else
          return static_cast<int>(r.center.size());
      },
      body);
}

RationalZonotope as_zonotope(const RationalBody& body) {
  if (const auto* z = std::get_if<RationalZonotope>(&body)) return *z;
  const auto& b = std::get<RationalBox>(body);
  RationalZonotope z{b.lower, {}};
  for (std::size_t j = 0; j < b.lower.size(); ++j) {
    Rational w = b.upper[j] - b.lower[j];
    if (w != 0) {
      RVec g(b.lower.size(), Rational(0));
      g[j] = w;
      z.generators.push_back(std::move(g));
    }
  }
  return z;
}

Rational determinant(std::vector<RVec> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Rational volume_exact(const RationalBody& body) {
  if (const auto* b = std::get_if<RationalBox>(&body)) {
    Rational v = 1;
    for (std::size_t j = 0; j < b->lower.size(); ++j) v *= b->upper[j] - b->lower[j];
    return v;
  }
  const auto& z = std::get<RationalZonotope>(body);
  const int n = static_cast<int>(z.center.size());
  const int m = static_cast<int>(z.generators.size());
  require(binomial(m, n) <= 1e6, ErrorKind::RepresentationBlowup, "rational zonotope volume: too many generator subsets");
  Rational vol = 0;
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    std::vector<RVec> rows(static_cast<std::size_t>(n), RVec(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = z.generators[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])][static_cast<std::size_t>(j)];
    Rational d = determinant(std::move(rows));
    vol += d < 0 ? Rational(-d) : d;
  });
  return vol;
}

RationalBody minkowski_combine(const RVec& weights, const std::vector<RationalBody>& bodies) {
  require(!bodies.empty() && weights.size() == bodies.size(), ErrorKind::DimensionMismatch,
          "rational minkowski_combine: weight count mismatch");
  const std::size_t n = static_cast<std::size_t>(ambient_dim(bodies[0]));
  bool all_box = true;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    require(static_cast<std::size_t>(ambient_dim(bodies[i])) == n, ErrorKind::DimensionMismatch,
            "rational minkowski_combine: ambient dimension mismatch");
    require(weights[i] >= 0, ErrorKind::InvalidArgument, "rational minkowski_combine: negative weight");
    if (weights[i] != 0) all_box = all_box && std::holds_alternative<RationalBox>(bodies[i]);
  }
  if (all_box) {
    RationalBox out{RVec(n, Rational(0)), RVec(n, Rational(0))};
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (weights[i] == 0) continue;
      const auto& b = std::get<RationalBox>(bodies[i]);
      for (std::size_t j = 0; j < n; ++j) {
        out.lower[j] += weights[i] * b.lower[j];
        out.upper[j] += weights[i] * b.upper[j];
      }
    }
    return out;
  }
  RationalZonotope out{RVec(n, Rational(0)), {}};
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (weights[i] == 0) continue;
    RationalZonotope z = as_zonotope(bodies[i]);
    for (std::size_t j = 0; j < n; ++j) out.center[j] += weights[i] * z.center[j];
    for (auto g : z.generators) {
      for (auto& c : g) c *= weights[i];
      out.generators.push_back(std::move(g));
    }
  }
  return out;
}

Rational mixed_volume_polarization(const std::vector<RationalBody>& bodies) {
  const std::size_t n = bodies.size();
  require(n >= 1 && n <= 12, ErrorKind::InvalidArgument, "rational polarization supports 1 <= n <= 12");
  Rational total = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    RVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (mask >> i & 1) ? 1 : 0;
    Rational v = volume_exact(minkowski_combine(w, bodies));
    if ((n - static_cast<std::size_t>(__builtin_popcount(mask))) % 2 == 0)
      total += v;
    else
      total -= v;
  }
  return total;
}

Rational permanent(const std::vector<RVec>& a) { return ryser_permanent(a); }

Rational g_factor_exact(int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "g_factor_exact: k must be positive");
  Rational base(k - 1, k);
  Rational r = 1;
  for (int i = 0; i < k - 1; ++i) r *= base;
  return r;
}

}  // namespace mvcap
