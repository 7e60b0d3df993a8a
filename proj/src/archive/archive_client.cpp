#include "archive/archive_client.hpp"

#include <thread>

#include "core/error.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::archive {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::map<std::string, std::string> auth_headers(const ArchiveTarget& target) {
  if (target.token.empty()) throw AuthError("archive token is empty (set RELPUB_ARCHIVE_TOKEN)");
  return {{"Authorization", "Bearer " + target.token}};
}

[[noreturn]] void raise_for_status(const std::string& what, const net::HttpResponse& response) {
  std::string detail = what + ": HTTP " + std::to_string(response.status);
  if (!response.body.empty()) detail += " " + response.body.substr(0, 400);
  switch (response.status) {
    case 401:
    case 403: throw AuthError(detail);
    case 409: throw StateError(detail);
    case 412: throw PreconditionError(detail);
    case 422: throw ValidationRejectedError(what + ": " + response.body);
    default: throw TransportError(detail);
  }
}

ordered_json person_to_json(const metadata::PersonEntry& person) {
  ordered_json j;
  j["name"] = person.name;
  if (!person.given_name.empty()) j["givenName"] = person.given_name;
  if (!person.family_name.empty()) j["familyName"] = person.family_name;
  if (!person.orcid.empty()) j["orcid"] = person.orcid;
  if (!person.affiliations.empty()) {
    j["affiliations"] = ordered_json::array();
    for (const auto& aff : person.affiliations) {
      ordered_json a;
      a["name"] = aff.name;
      if (!aff.ror.empty()) a["ror"] = aff.ror;
      j["affiliations"].push_back(a);
    }
  }
  return j;
}

ArchiveDataset dataset_from_json(const json& j) {
  ArchiveDataset dataset;
  dataset.id = j.value("id", "");
  dataset.state = dataset_state_from_string(j.value("state", "draft")).value_or(DatasetState::draft);
  if (j.contains("doi") && j["doi"].is_string()) dataset.doi = j["doi"].get<std::string>();
  dataset.metadata_attached = j.value("metadata_attached", false);
  if (j.contains("files")) {
    for (const auto& f : j["files"]) {
      dataset.files.push_back({f.value("name", ""),
                               f.value("size", std::uint64_t{0}),
                               f.value("sha256", "")});
    }
  }
  return dataset;
}

}  // namespace

const char* to_string(DatasetState state) {
  switch (state) {
    case DatasetState::draft: return "draft";
    case DatasetState::in_review: return "in_review";
    case DatasetState::published: return "published";
  }
  return "draft";
}

std::optional<DatasetState> dataset_state_from_string(std::string_view text) {
  if (text == "draft") return DatasetState::draft;
  if (text == "in_review") return DatasetState::in_review;
  if (text == "published") return DatasetState::published;
  return std::nullopt;
}

ordered_json map_metadata(const datacite::DataCiteRecord& record,
                          const metadata::ProjectMetadata& meta) {
  ValidationReport mandatory = datacite::check_mandatory(record, false);
  if (mandatory.has_errors()) {
    throw PreconditionError("record is missing mandatory DataCite properties; first: " +
                            mandatory.findings.front().path);
  }

  ordered_json doc;
  if (record.doi) doc["identifier"] = {{"value", *record.doi}, {"type", "DOI"}};

  doc["creators"] = ordered_json::array();
  for (const auto& c : record.creators) doc["creators"].push_back(person_to_json(c));

  doc["title"] = record.titles.front().value;
  if (record.titles.size() > 1) {
    doc["additionalTitles"] = ordered_json::array();
    for (std::size_t i = 1; i < record.titles.size(); ++i)
      doc["additionalTitles"].push_back(
          {{"title", record.titles[i].value}, {"type", record.titles[i].title_type}});
  }

  doc["publisher"] = record.publisher;
  doc["publicationYear"] = record.publication_year;

  if (!record.subjects.empty()) {
    doc["subjects"] = ordered_json::array();
    for (const auto& s : record.subjects) {
      ordered_json j;
      j["subject"] = s.subject;
      if (!s.scheme_uri.empty()) j["schemeUri"] = s.scheme_uri;
      if (!s.value_uri.empty()) j["valueUri"] = s.value_uri;
      doc["subjects"].push_back(j);
    }
  }

  // Archive-specific extras beyond the DataCite property set.
  if (!meta.radar_subjects.empty()) doc["radarSubjects"] = meta.radar_subjects;
  if (!meta.keywords.empty()) doc["keywords"] = meta.keywords;
  if (!meta.rights_holder.empty()) doc["rightsHolder"] = meta.rights_holder;

  if (!record.contributors.empty()) {
    doc["contributors"] = ordered_json::array();
    for (const auto& c : record.contributors) {
      ordered_json j = person_to_json(c.person);
      j["type"] = c.contributor_type;
      doc["contributors"].push_back(j);
    }
  }

  doc["dates"] = {{"created", record.created_date}, {"issued", record.issued_date}};
  doc["language"] = record.language;
  doc["resourceType"] = {{"value", record.resource_type.value},
                         {"general", record.resource_type.general}};

  if (!record.alternate_identifiers.empty()) {
    doc["alternateIdentifiers"] = ordered_json::array();
    for (const auto& a : record.alternate_identifiers)
      doc["alternateIdentifiers"].push_back({{"value", a.value}, {"type", a.identifier_type}});
  }
  if (!record.related_identifiers.empty()) {
    doc["relatedIdentifiers"] = ordered_json::array();
    for (const auto& r : record.related_identifiers)
      doc["relatedIdentifiers"].push_back(
          {{"relationType", r.relation_type}, {"value", r.value}, {"type", r.identifier_type}});
  }

  doc["version"] = record.version;
  if (!record.rights.statement.empty() || !record.rights.uri.empty())
    doc["rights"] = {{"statement", record.rights.statement}, {"uri", record.rights.uri}};

  if (!record.descriptions.empty()) {
    doc["descriptions"] = ordered_json::array();
    for (const auto& d : record.descriptions)
      doc["descriptions"].push_back({{"text", d.text}, {"type", d.description_type}});
  }

  if (!record.funding_references.empty()) {
    doc["fundingReferences"] = ordered_json::array();
    for (const auto& f : record.funding_references) {
      ordered_json j;
      j["funderName"] = f.name;
      if (!f.ror.empty()) j["funderIdentifier"] = f.ror;
      if (!f.award_number.empty()) j["awardNumber"] = f.award_number;
      if (!f.award_uri.empty()) j["awardUri"] = f.award_uri;
      if (!f.award_title.empty()) j["awardTitle"] = f.award_title;
      doc["fundingReferences"].push_back(j);
    }
  }

  if (!record.provenance_notes.empty()) doc["provenanceNotes"] = record.provenance_notes;

  return doc;
}

ArchiveDataset create_dataset(const ArchiveTarget& target, const ordered_json& doc) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  auto headers = auth_headers(target);

  auto created = endpoint.post_json("/datasets", "{}", headers);
  if (created.status != 201) raise_for_status("creating dataset", created);
  ArchiveDataset dataset = dataset_from_json(json::parse(created.body, nullptr, false));

  return attach_metadata(target, dataset.id, doc);
}

ArchiveDataset attach_metadata(const ArchiveTarget& target, const std::string& dataset_id,
                               const ordered_json& doc) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  auto response =
      endpoint.put_json("/datasets/" + dataset_id + "/metadata", doc.dump(), auth_headers(target));
  if (response.status != 200) raise_for_status("attaching metadata to " + dataset_id, response);
  return dataset_from_json(json::parse(response.body, nullptr, false));
}

ArchiveDataset get_dataset(const ArchiveTarget& target, const std::string& dataset_id) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  auto response = endpoint.get("/datasets/" + dataset_id, auth_headers(target));
  if (response.status != 200) raise_for_status("fetching dataset " + dataset_id, response);
  return dataset_from_json(json::parse(response.body, nullptr, false));
}

ArchiveDataset upload_assets(const ArchiveTarget& target, const std::string& dataset_id,
                             const metadata::AssetSet& assets) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  auto headers = auth_headers(target);

  for (const auto& asset : assets.assets) {
    std::vector<net::MultipartField> fields;
    fields.push_back(
        {"file", read_file_bytes(asset.path.string()), asset.name, asset.media_type});
    auto response = endpoint.post_multipart("/datasets/" + dataset_id + "/files", fields, headers);
    if (response.status != 201) raise_for_status("uploading " + asset.name, response);

    json ack = json::parse(response.body, nullptr, false);
    std::string server_digest = ack.value("sha256", "");
    if (server_digest != asset.sha256) {
      throw DigestMismatchError("server-acknowledged digest for " + asset.name +
                                " does not match the local SHA-256");
    }
  }

  return get_dataset(target, dataset_id);
}

ArchiveDataset submit_for_review(const ArchiveTarget& target, const std::string& dataset_id) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  auto response = endpoint.post_json("/datasets/" + dataset_id + "/submit", "{}",
                                     auth_headers(target));
  if (response.status != 200) raise_for_status("submitting dataset " + dataset_id, response);
  return dataset_from_json(json::parse(response.body, nullptr, false));
}

std::optional<std::string> poll_doi(const ArchiveTarget& target, const std::string& dataset_id,
                                    std::chrono::milliseconds timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    ArchiveDataset dataset = get_dataset(target, dataset_id);
    if (dataset.state == DatasetState::published && dataset.doi) return dataset.doi;
    if (std::chrono::steady_clock::now() >= deadline) return std::nullopt;
    std::this_thread::sleep_for(std::chrono::milliseconds(target.poll_interval_ms));
  }
}

}  // namespace relpub::archive
