#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace paretoflow {

/// Parses the TOML subset used by experiment configs: comments, [table] and
/// [table.sub] headers, and key = value lines whose values are strings,
/// integers, floats, booleans or single-line arrays of those.
nlohmann::json parse_toml(const std::string& text);

/// Writes a JSON object of scalars, arrays and nested objects as TOML.
std::string to_toml(const nlohmann::json& doc);

/// Reads a config file; `.json` files are parsed as JSON, anything else as TOML.
nlohmann::json load_document(const std::string& path);

}  // namespace paretoflow
