#pragma once

#include <yaml-cpp/yaml.h>

#include <optional>
#include <string>

namespace relpub {

/// Scalar value of `node` as text; YAML null becomes "". Throws SchemaError
/// naming `context` when the node is a sequence or mapping.
std::string yaml_scalar(const YAML::Node& node, const std::string& context);

/// Convenience for `parent[key]`; absent keys yield "".
std::string yaml_scalar_at(const YAML::Node& parent, const std::string& key,
                           const std::string& context);

/// Requires a sequence (or absent/null, giving an empty sequence).
YAML::Node yaml_sequence_at(const YAML::Node& parent, const std::string& key,
                            const std::string& context);

/// Reads a whole file; throws IoError when unreadable.
std::string read_file_bytes(const std::string& path);

/// Parses YAML text, translating yaml-cpp exceptions into ParseError with a
/// 1-based line number.
YAML::Node parse_yaml(const std::string& text, const std::string& source_name);

}  // namespace relpub
