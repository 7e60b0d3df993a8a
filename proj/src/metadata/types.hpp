#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/date.hpp"

namespace relpub::metadata {

struct AdditionalTitle {
  std::string title;
  std::string title_type;  // DataCite titleType term

  bool operator==(const AdditionalTitle&) const = default;
};

struct Description {
  std::string text;
  std::string description_type;  // DataCite descriptionType term

  bool operator==(const Description&) const = default;
};

struct SubjectEntry {
  std::string subject;
  std::string value_uri;
  std::string scheme_uri;

  bool operator==(const SubjectEntry&) const = default;
};

struct AlternateIdentifier {
  std::string value;
  std::string identifier_type;

  bool operator==(const AlternateIdentifier&) const = default;
};

struct RelatedIdentifier {
  std::string relation_type;  // DataCite relationType term
  std::string value;          // may be empty (placeholder entries)
  std::string identifier_type;

  bool operator==(const RelatedIdentifier&) const = default;
};

struct FundingReference {
  std::string name;
  std::string ror;  // funder identifier, https://ror.org/...
  std::string award_number;
  std::string award_uri;
  std::string award_title;

  bool operator==(const FundingReference&) const = default;
};

/// Contents of METADATA.yml. Unknown keys are carried verbatim in
/// `extra_yaml` (key -> re-emittable YAML text) so that a round trip does
/// not lose them.
struct ProjectMetadata {
  std::string title;
  std::vector<AdditionalTitle> additional_titles;
  std::vector<std::string> keywords;
  std::string publisher;
  std::vector<Description> descriptions;
  std::vector<SubjectEntry> subjects;
  std::vector<std::string> radar_subjects;
  std::string resource;
  std::string resource_type;  // DataCite resourceTypeGeneral term
  std::vector<AlternateIdentifier> alternate_identifiers;
  std::vector<RelatedIdentifier> related_identifiers;
  std::string rights;
  std::string rights_url;
  std::string rights_holder;
  std::vector<FundingReference> funding_references;
  std::map<std::string, std::string> extra_yaml;
  std::vector<std::string> load_warnings;

  bool operator==(const ProjectMetadata&) const = default;
};

struct Affiliation {
  std::string name;
  std::string ror;  // optional

  bool operator==(const Affiliation&) const = default;
};

struct PersonEntry {
  std::string name;  // "Family, Given" when derived
  std::string given_name;
  std::string family_name;
  std::string orcid;  // optional, hyphenated 16-digit iD
  std::vector<Affiliation> affiliations;

  bool operator==(const PersonEntry&) const = default;
};

struct Contributor {
  PersonEntry person;
  std::string contributor_type;  // DataCite contributorType term

  bool operator==(const Contributor&) const = default;
};

struct ContributorsFile {
  std::vector<PersonEntry> creators;
  std::vector<Contributor> contributors;

  bool operator==(const ContributorsFile&) const = default;
};

/// Release-specific inputs that do not live in the metadata files: the git
/// tag, the two dates, and the DOI chain when known.
struct ReleaseContext {
  std::string version_tag;
  IsoDate created_date;  // date of the release
  IsoDate issued_date;   // date of the archive upload
  std::string release_page_url;
  std::optional<std::string> doi;
  std::optional<std::string> previous_doi;
  std::optional<std::string> concept_doi;

  bool operator==(const ReleaseContext&) const = default;
};

enum class AssetRole {
  source_tarball,
  docker_image,
  rpm,
  deb,
  macos_pkg,
  user_manual_pdf,
  companion_revision,
  other,
};

const char* to_string(AssetRole role);
std::optional<AssetRole> asset_role_from_string(std::string_view name);

struct Asset {
  AssetRole role = AssetRole::other;
  std::filesystem::path path;  // resolved
  std::string name;            // file name inside packages/uploads
  std::string media_type;
  std::uint64_t size = 0;
  std::string sha256;

  bool operator==(const Asset&) const = default;
};

struct AssetSet {
  std::vector<Asset> assets;

  bool operator==(const AssetSet&) const = default;
};

}  // namespace relpub::metadata
