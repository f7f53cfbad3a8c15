#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "zjkit/group_table.hpp"

namespace zjkit {

/// Build a group from the group-file JSON object:
/// {"name", "kind": "cayley"|"permgens"|"construction", "table" | "gens" |
/// "construction"}. Throws ParseError on malformed content.
GroupPtr group_from_json(const nlohmann::json& doc);

/// Parse and build the group file at `path`. Syntax errors are reported with
/// the file name and line.
GroupPtr load_group_file(const std::filesystem::path& path);

/// Serialize as a "cayley" group document.
nlohmann::json group_to_cayley_json(const GroupTable& g);

}  // namespace zjkit
