#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/validation.hpp"
#include "metadata/types.hpp"

namespace relpub::datacite {

struct Title {
  std::string value;
  std::string title_type;  // empty for the main title

  bool operator==(const Title&) const = default;
};

struct ResourceType {
  std::string value;    // free text, e.g. "Simulation code"
  std::string general;  // resourceTypeGeneral term

  bool operator==(const ResourceType&) const = default;
};

struct Rights {
  std::string statement;
  std::string uri;

  bool operator==(const Rights&) const = default;
};

/// A DataCite 4.3 record restricted to the property set this project
/// emits. `doi` may be absent: the record is still renderable (the DOI is
/// only known after the archive mints it).
struct DataCiteRecord {
  std::optional<std::string> doi;
  std::vector<metadata::PersonEntry> creators;
  std::vector<Title> titles;
  std::string publisher;
  int publication_year = 0;
  std::vector<metadata::SubjectEntry> subjects;
  std::vector<metadata::Contributor> contributors;
  std::string created_date;  // ISO date
  std::string issued_date;   // ISO date
  std::string language;
  ResourceType resource_type;
  std::vector<metadata::AlternateIdentifier> alternate_identifiers;
  std::vector<metadata::RelatedIdentifier> related_identifiers;
  std::string version;
  Rights rights;
  std::vector<metadata::Description> descriptions;
  std::vector<metadata::FundingReference> funding_references;

  /// Curator-facing remarks (never rendered into the XML).
  std::vector<std::string> provenance_notes;

  bool operator==(const DataCiteRecord&) const = default;
};

/// Builds the record from the two metadata files plus the release context.
/// Throws PreconditionError when validate_metadata reports errors or the
/// release context is inconsistent.
DataCiteRecord build_record(const metadata::ProjectMetadata& meta,
                            const metadata::ContributorsFile& contribs,
                            const metadata::ReleaseContext& release);

/// Renders schema-shaped XML (kernel-4 namespace, fixed element order,
/// 2-space indent, trailing newline). Total over valid records.
std::string render_xml(const DataCiteRecord& record);

/// Flags each missing DataCite-mandatory property.
ValidationReport check_mandatory(const DataCiteRecord& record, bool require_identifier);

}  // namespace relpub::datacite
