#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "mvcap/discriminant.hpp"
#include "mvcap/geometry.hpp"
#include "mvcap/rational.hpp"

namespace mvcap {

using Json = nlohmann::json;

enum class InputKind { Bodies, Matrices };

std::string read_text_file(const std::string& path);

/// Syntax errors become ErrorKind::Parse with "source:line:column: message".
Json parse_json_text(const std::string& text, const std::string& source);

/// Bodies when the document has a "bodies" key, matrices when it has "matrices".
InputKind detect_input_kind(const Json& doc);

/// {"dim", "bodies": [...], "labels"}; schema errors name the offending field path.
BodyTuple bodies_from_json(const Json& doc, const GeometryConfig& cfg = {});
/// Exact counterpart; boxes and zonotopes only. Numbers may also be "p/q" strings.
std::vector<RationalBody> rational_bodies_from_json(const Json& doc);
/// {"n", "matrices": [[[row], ...], ...]}.
MatrixTuple matrices_from_json(const Json& doc);

}  // namespace mvcap
