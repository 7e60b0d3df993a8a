#include "datacite/vocabulary.hpp"

namespace relpub::datacite {

namespace {

constexpr std::string_view kTitleTypes[] = {"AlternativeTitle", "Subtitle", "TranslatedTitle",
                                            "Other"};

constexpr std::string_view kDescriptionTypes[] = {"Abstract",        "Methods",
                                                  "SeriesInformation", "TableOfContents",
                                                  "TechnicalInfo",   "Other"};

constexpr std::string_view kRelationTypes[] = {
    "IsCitedBy",       "Cites",          "IsSupplementTo",  "IsSupplementedBy",
    "IsContinuedBy",   "Continues",      "IsDescribedBy",   "Describes",
    "HasMetadata",     "IsMetadataFor",  "HasVersion",      "IsVersionOf",
    "IsNewVersionOf",  "IsPreviousVersionOf", "IsPartOf",   "HasPart",
    "IsPublishedIn",   "IsReferencedBy", "References",      "IsDocumentedBy",
    "Documents",       "IsCompiledBy",   "Compiles",        "IsVariantFormOf",
    "IsOriginalFormOf", "IsIdenticalTo", "IsReviewedBy",    "Reviews",
    "IsDerivedFrom",   "IsSourceOf",     "IsRequiredBy",    "Requires",
    "IsObsoletedBy",   "Obsoletes"};

constexpr std::string_view kResourceTypeGenerals[] = {
    "Audiovisual", "Collection", "DataPaper", "Dataset",       "Event",
    "Image",       "InteractiveResource",     "Model",         "PhysicalObject",
    "Service",     "Software",   "Sound",     "Text",          "Workflow",
    "Other"};

constexpr std::string_view kContributorTypes[] = {
    "ContactPerson",   "DataCollector", "DataCurator",       "DataManager",
    "Distributor",     "Editor",        "HostingInstitution", "Producer",
    "ProjectLeader",   "ProjectManager", "ProjectMember",    "RegistrationAgency",
    "RegistrationAuthority", "RelatedPerson", "Researcher",  "ResearchGroup",
    "RightsHolder",    "Sponsor",       "Supervisor",        "WorkPackageLeader",
    "Other"};

constexpr std::string_view kDateTypes[] = {"Accepted",  "Available", "Copyrighted", "Collected",
                                           "Created",   "Issued",    "Submitted",   "Updated",
                                           "Valid",     "Withdrawn"};

constexpr std::string_view kRelatedIdentifierTypes[] = {
    "ARK",  "arXiv", "bibcode", "DOI",  "EAN13", "EISSN", "Handle", "IGSN", "ISBN", "ISSN",
    "ISTC", "LISSN", "LSID",    "PMID", "PURL",  "UPC",   "URL",    "URN",  "w3id"};

constexpr std::string_view kFunderIdentifierTypes[] = {"Crossref Funder ID", "GRID", "ISNI",
                                                       "ROR", "Other"};

}  // namespace

std::span<const std::string_view> title_types() { return kTitleTypes; }
std::span<const std::string_view> description_types() { return kDescriptionTypes; }
std::span<const std::string_view> relation_types() { return kRelationTypes; }
std::span<const std::string_view> resource_type_generals() { return kResourceTypeGenerals; }
std::span<const std::string_view> contributor_types() { return kContributorTypes; }
std::span<const std::string_view> date_types() { return kDateTypes; }
std::span<const std::string_view> related_identifier_types() { return kRelatedIdentifierTypes; }
std::span<const std::string_view> funder_identifier_types() { return kFunderIdentifierTypes; }

bool vocab_contains(std::span<const std::string_view> vocab, std::string_view value) {
  for (auto v : vocab)
    if (v == value) return true;
  return false;
}

std::string vocab_join(std::span<const std::string_view> vocab) {
  std::string out;
  for (auto v : vocab) {
    if (!out.empty()) out += ", ";
    out += v;
  }
  return out;
}

}  // namespace relpub::datacite
