#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "datacite/record.hpp"
#include "metadata/types.hpp"
#include "net/http_client.hpp"

namespace relpub::archive {

struct ArchiveTarget {
  std::string base_url;
  std::string token;  // bearer token, never logged
  net::RetryPolicy retry;
  int poll_interval_ms = 1000;
};

enum class DatasetState { draft, in_review, published };

const char* to_string(DatasetState state);
std::optional<DatasetState> dataset_state_from_string(std::string_view text);

struct UploadedFile {
  std::string name;
  std::uint64_t size = 0;
  std::string sha256;
};

struct ArchiveDataset {
  std::string id;
  DatasetState state = DatasetState::draft;
  std::optional<std::string> doi;
  bool metadata_attached = false;
  std::vector<UploadedFile> files;
};

/// Maps the DataCite record onto the archive's deposit schema. Everything
/// from the record is carried field-for-field; the archive-only extras
/// (radar subjects, keywords, rights holder) come from the metadata file.
/// Requires check_mandatory(record, false) to pass.
nlohmann::ordered_json map_metadata(const datacite::DataCiteRecord& record,
                                    const metadata::ProjectMetadata& meta);

/// POST /datasets then PUT /datasets/{id}/metadata. Returns the draft.
ArchiveDataset create_dataset(const ArchiveTarget& target, const nlohmann::ordered_json& doc);

ArchiveDataset get_dataset(const ArchiveTarget& target, const std::string& dataset_id);

/// Attaches (or replaces) the metadata document on an existing draft.
ArchiveDataset attach_metadata(const ArchiveTarget& target, const std::string& dataset_id,
                               const nlohmann::ordered_json& doc);

/// Uploads each asset as multipart/form-data and cross-checks the
/// server-acknowledged SHA-256 against the locally recorded one.
ArchiveDataset upload_assets(const ArchiveTarget& target, const std::string& dataset_id,
                             const metadata::AssetSet& assets);

ArchiveDataset submit_for_review(const ArchiveTarget& target, const std::string& dataset_id);

/// Polls until the dataset is published and a DOI exists; absent on
/// timeout (no error).
std::optional<std::string> poll_doi(const ArchiveTarget& target, const std::string& dataset_id,
                                    std::chrono::milliseconds timeout);

}  // namespace relpub::archive
