#include "datacite/record.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "datacite/xml_writer.hpp"
#include "metadata/metadata.hpp"

namespace relpub::datacite {

namespace {

constexpr const char* kOrcidSchemeUri = "http://orcid.org";
constexpr const char* kRorSchemeUri = "http://ror.org";
constexpr const char* kFunderRorSchemeUri = "https://ror.org";

void write_person(XmlWriter& xml, const metadata::PersonEntry& person, const char* name_element) {
  xml.leaf(name_element, person.name);
  if (!person.given_name.empty()) xml.leaf("givenName", person.given_name);
  if (!person.family_name.empty()) xml.leaf("familyName", person.family_name);
  if (!person.orcid.empty()) {
    xml.leaf("nameIdentifier", person.orcid,
             {{"nameIdentifierScheme", "ORCID"}, {"schemeURI", kOrcidSchemeUri}});
  }
  for (const auto& aff : person.affiliations) {
    if (aff.name.empty()) continue;
    if (aff.ror.empty()) {
      xml.leaf("affiliation", aff.name);
    } else {
      xml.leaf("affiliation", aff.name,
               {{"affiliationIdentifier", aff.ror},
                {"affiliationIdentifierScheme", "ROR"},
                {"schemeURI", kRorSchemeUri}});
    }
  }
}

}  // namespace

DataCiteRecord build_record(const metadata::ProjectMetadata& meta,
                            const metadata::ContributorsFile& contribs,
                            const metadata::ReleaseContext& release) {
  ValidationReport validation = metadata::validate_metadata(meta, contribs);
  if (validation.has_errors()) {
    std::string first;
    for (const auto& f : validation.findings) {
      if (f.severity == Severity::error) {
        first = f.path + ": " + f.message;
        break;
      }
    }
    throw PreconditionError("metadata validation reported errors; first: " + first);
  }
  if (release.version_tag.empty())
    throw PreconditionError("release context has an empty version tag");
  if (!release.created_date.ok() || !release.issued_date.ok())
    throw PreconditionError("release context dates must be valid calendar dates");
  if (release.issued_date < release.created_date)
    throw PreconditionError("release created_date must not be after issued_date");

  DataCiteRecord record;
  record.doi = release.doi;
  record.creators = contribs.creators;

  record.titles.push_back({meta.title, ""});
  for (const auto& t : meta.additional_titles) record.titles.push_back({t.title, t.title_type});

  record.publisher = meta.publisher;
  record.publication_year = release.created_date.year;
  record.subjects = meta.subjects;
  record.contributors = contribs.contributors;
  record.created_date = release.created_date.to_string();
  record.issued_date = release.issued_date.to_string();
  record.language = "en-US";
  record.resource_type = {meta.resource, "Software"};

  record.alternate_identifiers = meta.alternate_identifiers;
  if (!release.release_page_url.empty()) {
    bool already_listed =
        std::any_of(record.alternate_identifiers.begin(), record.alternate_identifiers.end(),
                    [&](const auto& a) { return a.value == release.release_page_url; });
    if (!already_listed) {
      record.alternate_identifiers.push_back({release.release_page_url, "URL"});
      if (!meta.alternate_identifiers.empty()) {
        record.provenance_notes.push_back(
            "alternate identifiers carry both the metadata value and the release page URL (" +
            release.release_page_url + "); curator review advised");
      }
    }
  }

  // Placeholder entries (empty value) are dropped; DOIs from the release
  // context win over values in the metadata file.
  for (const auto& r : meta.related_identifiers) {
    if (r.value.empty()) continue;
    if (release.previous_doi && r.relation_type == "IsNewVersionOf") continue;
    if (release.concept_doi && r.relation_type == "IsVersionOf") continue;
    record.related_identifiers.push_back(r);
  }
  if (release.concept_doi)
    record.related_identifiers.push_back({"IsVersionOf", *release.concept_doi, "DOI"});
  if (release.previous_doi)
    record.related_identifiers.push_back({"IsNewVersionOf", *release.previous_doi, "DOI"});

  record.version = release.version_tag;
  record.rights = {meta.rights, meta.rights_url};
  record.descriptions = meta.descriptions;
  record.funding_references = meta.funding_references;
  return record;
}

std::string render_xml(const DataCiteRecord& record) {
  XmlWriter xml;
  xml.open("resource",
           {{"xmlns", "http://datacite.org/schema/kernel-4"},
            {"xmlns:xsi", "http://www.w3.org/2001/XMLSchema-instance"},
            {"xsi:schemaLocation",
             "http://datacite.org/schema/kernel-4 "
             "http://schema.datacite.org/meta/kernel-4.3/metadata.xsd"}});

  if (record.doi) xml.leaf("identifier", *record.doi, {{"identifierType", "DOI"}});

  xml.open("creators");
  for (const auto& c : record.creators) {
    xml.open("creator");
    write_person(xml, c, "creatorName");
    xml.close();
  }
  xml.close();

  xml.open("titles");
  for (const auto& t : record.titles) {
    if (t.title_type.empty())
      xml.leaf("title", t.value);
    else
      xml.leaf("title", t.value, {{"titleType", t.title_type}});
  }
  xml.close();

  xml.leaf("publisher", record.publisher);
  xml.leaf("publicationYear", std::to_string(record.publication_year));

  if (!record.subjects.empty()) {
    xml.open("subjects");
    for (const auto& s : record.subjects) {
      XmlWriter::Attrs attrs;
      if (!s.scheme_uri.empty()) attrs.push_back({"schemeURI", s.scheme_uri});
      if (!s.value_uri.empty()) attrs.push_back({"valueURI", s.value_uri});
      xml.leaf("subject", s.subject, attrs);
    }
    xml.close();
  }

  if (!record.contributors.empty()) {
    xml.open("contributors");
    for (const auto& c : record.contributors) {
      xml.open("contributor", {{"contributorType", c.contributor_type}});
      write_person(xml, c.person, "contributorName");
      xml.close();
    }
    xml.close();
  }

  xml.open("dates");
  xml.leaf("date", record.created_date, {{"dateType", "Created"}});
  xml.leaf("date", record.issued_date, {{"dateType", "Issued"}});
  xml.close();

  xml.leaf("language", record.language);
  xml.leaf("resourceType", record.resource_type.value,
           {{"resourceTypeGeneral", record.resource_type.general}});

  if (!record.alternate_identifiers.empty()) {
    xml.open("alternateIdentifiers");
    for (const auto& a : record.alternate_identifiers)
      xml.leaf("alternateIdentifier", a.value, {{"alternateIdentifierType", a.identifier_type}});
    xml.close();
  }

  if (!record.related_identifiers.empty()) {
    xml.open("relatedIdentifiers");
    for (const auto& r : record.related_identifiers)
      xml.leaf("relatedIdentifier", r.value,
               {{"relatedIdentifierType", r.identifier_type}, {"relationType", r.relation_type}});
    xml.close();
  }

  xml.leaf("version", record.version);

  if (!record.rights.statement.empty() || !record.rights.uri.empty()) {
    xml.open("rightsList");
    XmlWriter::Attrs attrs;
    if (!record.rights.uri.empty()) attrs.push_back({"rightsURI", record.rights.uri});
    xml.leaf("rights", record.rights.statement, attrs);
    xml.close();
  }

  if (!record.descriptions.empty()) {
    xml.open("descriptions");
    for (const auto& d : record.descriptions)
      xml.leaf("description", d.text, {{"descriptionType", d.description_type}});
    xml.close();
  }

  if (!record.funding_references.empty()) {
    xml.open("fundingReferences");
    for (const auto& f : record.funding_references) {
      xml.open("fundingReference");
      xml.leaf("funderName", f.name);
      if (!f.ror.empty())
        xml.leaf("funderIdentifier", f.ror,
                 {{"funderIdentifierType", "ROR"}, {"schemeURI", kFunderRorSchemeUri}});
      if (!f.award_number.empty()) {
        XmlWriter::Attrs attrs;
        if (!f.award_uri.empty()) attrs.push_back({"awardURI", f.award_uri});
        xml.leaf("awardNumber", f.award_number, attrs);
      }
      if (!f.award_title.empty()) xml.leaf("awardTitle", f.award_title);
      xml.close();
    }
    xml.close();
  }

  xml.close();  // resource
  return xml.str();
}

ValidationReport check_mandatory(const DataCiteRecord& record, bool require_identifier) {
  ValidationReport report;
  if (require_identifier && !record.doi)
    report.add_error("Identifier", "a DOI is required but the record has none");
  if (record.creators.empty()) report.add_error("Creator", "at least one creator is required");
  bool has_title = std::any_of(record.titles.begin(), record.titles.end(),
                               [](const Title& t) { return !t.value.empty(); });
  if (!has_title) report.add_error("Title", "at least one non-empty title is required");
  if (record.publisher.empty()) report.add_error("Publisher", "publisher is required");
  if (record.publication_year < 1000 || record.publication_year > 9999)
    report.add_error("PublicationYear", "publication year must be a 4-digit year");
  if (record.resource_type.general.empty())
    report.add_error("ResourceType", "resourceTypeGeneral is required");
  return report;
}

}  // namespace relpub::datacite
