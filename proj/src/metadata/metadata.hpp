#pragma once

#include <filesystem>
#include <string>

#include "core/validation.hpp"
#include "metadata/types.hpp"

namespace relpub::metadata {

/// Loads METADATA.yml. Unknown keys are preserved and reported in
/// `load_warnings`; structural problems raise ParseError/SchemaError.
ProjectMetadata load_project_metadata(const std::filesystem::path& path);
ProjectMetadata parse_project_metadata(const std::string& yaml_text,
                                       const std::string& source_name);

/// YAML rendering that `parse_project_metadata` reads back into a
/// structurally equal value (key order may differ from the source file).
std::string serialize_project_metadata(const ProjectMetadata& meta);

/// Loads CONTRIBUTORS.yml. ORCID check digits and ROR patterns are
/// enforced here (IdentifierError).
ContributorsFile load_contributors(const std::filesystem::path& path);
ContributorsFile parse_contributors(const std::string& yaml_text, const std::string& source_name);

/// Resolves ASSETS.yml against `base_dir`, recording byte size and SHA-256
/// per asset. Missing paths raise MissingAssetError naming every absent
/// file; repeated non-`other` roles raise DuplicateRoleError.
AssetSet resolve_assets(const std::filesystem::path& manifest_path,
                        const std::filesystem::path& base_dir);

/// Re-checks every type invariant over in-memory values. Pure; problems
/// are findings, never exceptions.
ValidationReport validate_metadata(const ProjectMetadata& meta, const ContributorsFile& contribs);

}  // namespace relpub::metadata
