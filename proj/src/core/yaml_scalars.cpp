#include "core/yaml_scalars.hpp"

#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace relpub {

std::string yaml_scalar(const YAML::Node& node, const std::string& context) {
  if (!node || node.IsNull()) return "";
  if (!node.IsScalar()) throw SchemaError("key '" + context + "' must be a scalar value");
  return node.as<std::string>();
}

std::string yaml_scalar_at(const YAML::Node& parent, const std::string& key,
                           const std::string& context) {
  if (!parent.IsMap()) throw SchemaError("'" + context + "' must be a mapping");
  return yaml_scalar(parent[key], context.empty() ? key : context + "." + key);
}

YAML::Node yaml_sequence_at(const YAML::Node& parent, const std::string& key,
                            const std::string& context) {
  YAML::Node node = parent[key];
  if (!node || node.IsNull()) return YAML::Node(YAML::NodeType::Sequence);
  if (!node.IsSequence())
    throw SchemaError("key '" + (context.empty() ? key : context + "." + key) +
                      "' must be a list");
  return node;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("error reading file: " + path);
  return out.str();
}

YAML::Node parse_yaml(const std::string& text, const std::string& source_name) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(source_name + ": " + e.msg, e.mark.line + 1);
  } catch (const YAML::Exception& e) {
    throw ParseError(source_name + ": " + e.msg, e.mark.line + 1);
  }
}

}  // namespace relpub
