#include "mvcap/io.hpp"

#include <fstream>
#include <sstream>

#include "mvcap/error.hpp"

namespace mvcap {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Parse, "input schema: " + path + ": " + msg);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, "missing field \"" + key + "\"");
  return *it;
}

const Json& array_at(const Json& node, const std::string& path) {
  if (!node.is_array()) schema_error(path, "expected an array");
  return node;
}

Rational rational_value(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      schema_error(path, "malformed number \"" + v.get<std::string>() + "\"");
    }
  }
  schema_error(path, "expected a number");
}

double real_value(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return static_cast<double>(rational_value(v, path));
  schema_error(path, "expected a number");
}

RVec rational_vector(const Json& node, const std::string& path, int dim) {
  array_at(node, path);
  if (static_cast<int>(node.size()) != dim)
    schema_error(path, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(node.size()));
  RVec out;
  for (std::size_t j = 0; j < node.size(); ++j) out.push_back(rational_value(node[j], path + "[" + std::to_string(j) + "]"));
  return out;
}

Vec real_vector(const Json& node, const std::string& path, int dim) {
  array_at(node, path);
  if (static_cast<int>(node.size()) != dim)
    schema_error(path, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(node.size()));
  Vec out(dim);
  for (int j = 0; j < dim; ++j) out(j) = real_value(node[static_cast<std::size_t>(j)], path + "[" + std::to_string(j) + "]");
  return out;
}

template <typename F>
auto vector_list(const Json& node, const std::string& path, int dim, F&& conv) {
  array_at(node, path);
  std::vector<decltype(conv(node, path, dim))> out;
  for (std::size_t k = 0; k < node.size(); ++k) out.push_back(conv(node[k], path + "[" + std::to_string(k) + "]", dim));
  return out;
}

int tuple_dim(const Json& doc) {
  const Json& d = field(doc, "dim", "$");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 1) schema_error("$.dim", "expected a positive integer");
  const int dim = static_cast<int>(d.get<std::int64_t>());
  const Json& bodies = array_at(field(doc, "bodies", "$"), "$.bodies");
  if (static_cast<int>(bodies.size()) != dim)
    throw Error(ErrorKind::DimensionMismatch, "input schema: $.bodies: dim is " + std::to_string(dim) + " but " +
                                                  std::to_string(bodies.size()) + " bodies are given");
  return dim;
}

std::string body_type(const Json& b, const std::string& path) {
  const Json& t = field(b, "type", path);
  if (!t.is_string()) schema_error(path + ".type", "expected a string");
  return t.get<std::string>();
}

// Library errors raised while building a body are re-tagged with the body's path.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(e.kind(), "input schema: " + path + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

InputKind detect_input_kind(const Json& doc) {
  if (!doc.is_object()) schema_error("$", "expected an object");
  if (doc.contains("bodies")) return InputKind::Bodies;
  if (doc.contains("matrices")) return InputKind::Matrices;
  schema_error("$", "expected a \"bodies\" or \"matrices\" field");
}

BodyTuple bodies_from_json(const Json& doc, const GeometryConfig& cfg) {
  const int dim = tuple_dim(doc);
  const Json& arr = doc["bodies"];
  std::vector<ConvexBody> bodies;
  for (int i = 0; i < dim; ++i) {
    const std::string path = "$.bodies[" + std::to_string(i) + "]";
    const Json& b = arr[static_cast<std::size_t>(i)];
    const std::string type = body_type(b, path);
    if (type == "box") {
      Vec lo = real_vector(field(b, "lower", path), path + ".lower", dim);
      Vec hi = real_vector(field(b, "upper", path), path + ".upper", dim);
      bodies.push_back(at_path(path, [&] { return ConvexBody::box(lo, hi); }));
    } else if (type == "zonotope") {
      Vec c = real_vector(field(b, "center", path), path + ".center", dim);
      auto gens = vector_list(field(b, "generators", path), path + ".generators", dim, real_vector);
      bodies.push_back(at_path(path, [&] { return ConvexBody::zonotope(c, gens); }));
    } else if (type == "vpolytope") {
      auto verts = vector_list(field(b, "vertices", path), path + ".vertices", dim, real_vector);
      if (verts.empty()) schema_error(path + ".vertices", "empty vertex list");
      bodies.push_back(at_path(path, [&] { return ConvexBody::vpolytope(verts, cfg); }));
    } else {
      schema_error(path + ".type", "unknown body type \"" + type + "\" (expected box, zonotope or vpolytope)");
    }
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const Json& l = array_at(doc["labels"], "$.labels");
    if (static_cast<int>(l.size()) != dim) schema_error("$.labels", "expected " + std::to_string(dim) + " labels");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) schema_error("$.labels[" + std::to_string(i) + "]", "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }
  return make_body_tuple(std::move(bodies), std::move(labels));
}

std::vector<RationalBody> rational_bodies_from_json(const Json& doc) {
  const int dim = tuple_dim(doc);
  const Json& arr = doc["bodies"];
  std::vector<RationalBody> out;
  for (int i = 0; i < dim; ++i) {
    const std::string path = "$.bodies[" + std::to_string(i) + "]";
    const Json& b = arr[static_cast<std::size_t>(i)];
    const std::string type = body_type(b, path);
    if (type == "box") {
      RationalBox box{rational_vector(field(b, "lower", path), path + ".lower", dim),
                      rational_vector(field(b, "upper", path), path + ".upper", dim)};
      for (int j = 0; j < dim; ++j)
        if (box.lower[static_cast<std::size_t>(j)] > box.upper[static_cast<std::size_t>(j)])
          schema_error(path, "lower exceeds upper in coordinate " + std::to_string(j));
      out.emplace_back(std::move(box));
    } else if (type == "zonotope") {
      out.emplace_back(RationalZonotope{rational_vector(field(b, "center", path), path + ".center", dim),
                                        vector_list(field(b, "generators", path), path + ".generators", dim, rational_vector)});
    } else {
      schema_error(path + ".type", "exact rational mode supports box and zonotope bodies only");
    }
  }
  return out;
}

MatrixTuple matrices_from_json(const Json& doc) {
  const Json& nn = field(doc, "n", "$");
  if (!nn.is_number_integer() || nn.get<std::int64_t>() < 1) schema_error("$.n", "expected a positive integer");
  const int n = static_cast<int>(nn.get<std::int64_t>());
  const Json& arr = array_at(field(doc, "matrices", "$"), "$.matrices");
  if (static_cast<int>(arr.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "input schema: $.matrices: n is " + std::to_string(n) + " but " +
                                                  std::to_string(arr.size()) + " matrices are given");
  std::vector<Mat> mats;
  for (int i = 0; i < n; ++i) {
    const std::string path = "$.matrices[" + std::to_string(i) + "]";
    const auto rows = vector_list(arr[static_cast<std::size_t>(i)], path, n, real_vector);
    if (static_cast<int>(rows.size()) != n) schema_error(path, "expected " + std::to_string(n) + " rows");
    Mat m(n, n);
    for (int r = 0; r < n; ++r) m.row(r) = rows[static_cast<std::size_t>(r)].transpose();
    mats.push_back(std::move(m));
  }
  return at_path("$.matrices", [&] { return make_matrix_tuple(std::move(mats)); });
}

}  // namespace mvcap
