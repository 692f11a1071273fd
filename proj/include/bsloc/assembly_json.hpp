#pragma once

#include <json.hpp>
#include <string>

#include "bsloc/holonomy_profile.hpp"
#include "bsloc/surface.hpp"

namespace bsloc {

using Json = nlohmann::json;

/// Parse text as JSON; malformed input raises InputError with line and column.
Json parse_json_text(const std::string& text, const std::string& source = "<input>");
Json load_json_file(const std::string& path);

/// [[x, u], ...] or {"profile": [[x, u], ...]}.
HolonomyProfile profile_from_json(const Json& j);
Json profile_to_json(const HolonomyProfile& p);

Piece piece_from_json(const Json& j);
Json piece_to_json(const Piece& p);

/// {"pieces": [...], "gluings": [[["p0","b1"],["p1","b0"]], ...]}
SurfaceAssembly assembly_from_json(const Json& j);
Json assembly_to_json(const SurfaceAssembly& a);

std::string piece_id(std::size_t index);
std::string circle_id(int circle);

}  // namespace bsloc
