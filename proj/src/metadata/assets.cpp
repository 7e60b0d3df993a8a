#include <yaml-cpp/yaml.h>

#include <set>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/yaml_scalars.hpp"
#include "metadata/metadata.hpp"

namespace relpub::metadata {

AssetSet resolve_assets(const std::filesystem::path& manifest_path,
                        const std::filesystem::path& base_dir) {
  const std::string source_name = manifest_path.filename().string();
  YAML::Node root = parse_yaml(read_file_bytes(manifest_path.string()), source_name);
  if (root.IsNull() || !root.IsDefined()) root = YAML::Node(YAML::NodeType::Sequence);
  if (!root.IsSequence())
    throw SchemaError(source_name + ": top level must be a list of {role, path, media_type}");

  AssetSet set;
  std::set<AssetRole> seen_roles;
  std::vector<std::string> missing;

  std::size_t i = 0;
  for (const auto& item : root) {
    std::string ctx = "assets[" + std::to_string(i) + "]";
    std::string role_text = yaml_scalar(item["role"], ctx + ".role");
    auto role = asset_role_from_string(role_text);
    if (!role)
      throw SchemaError("key '" + ctx + ".role': '" + role_text +
                        "' is not a known asset role (source-tarball, docker-image, rpm, deb, "
                        "macos-pkg, user-manual-pdf, companion-revision, other)");
    if (*role != AssetRole::other && !seen_roles.insert(*role).second)
      throw DuplicateRoleError(source_name + ": role '" + role_text +
                               "' appears more than once (only 'other' may repeat)");

    std::string rel = yaml_scalar(item["path"], ctx + ".path");
    if (rel.empty()) throw SchemaError("key '" + ctx + ".path' must not be empty");

    Asset asset;
    asset.role = *role;
    asset.path = base_dir / rel;
    asset.name = asset.path.filename().string();
    asset.media_type = yaml_scalar(item["media_type"], ctx + ".media_type");
    if (asset.media_type.empty()) asset.media_type = "application/octet-stream";

    if (!std::filesystem::is_regular_file(asset.path)) {
      missing.push_back(rel);
    }
    set.assets.push_back(std::move(asset));
    ++i;
  }

  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) {
      if (!joined.empty()) joined += ", ";
      joined += m;
    }
    throw MissingAssetError("missing asset file(s): " + joined);
  }

  for (auto& asset : set.assets) {
    asset.size = std::filesystem::file_size(asset.path);
    asset.sha256 = digest_file_hex(asset.path, HashAlg::sha256);
  }

  return set;
}

}  // namespace relpub::metadata
