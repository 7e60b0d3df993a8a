#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace relpub::pipeline {

/// Effective configuration for one run, after layering
/// flags > RELPUB_* environment > relpub.yml > CI-provided defaults.
struct PipelineConfig {
  std::filesystem::path working_dir = ".";

  std::string metadata_path = "METADATA.yml";
  std::string contributors_path = "CONTRIBUTORS.yml";
  std::string assets_path = "ASSETS.yml";
  std::string output_dir = "dist";
  std::string changelog_path;

  std::string tag;
  std::string created_date;  // ISO, defaults to today
  std::string issued_date;   // ISO, defaults to today
  std::string doi;
  std::string previous_doi;
  std::string concept_doi;
  std::string release_page_url;

  std::string gitlab_url;
  std::string gitlab_project;
  std::string gitlab_package;  // package name in the generic registry
  std::string gitlab_token;

  std::string archive_url;
  std::string archive_token;

  std::string bag_source_organization;
  std::string bag_contact_email;
  std::string bag_external_identifier;
  std::string bag_bagging_date;
  std::vector<std::string> bag_algorithms{"sha256", "sha512"};
  std::string bag_dest;  // bag directory (defaults under output_dir)
  std::string bag_tar;   // serialized archive path
  std::string bag_root;  // bag-validate input
  bool bag_profile_bagpack = true;

  std::string site_root;
  std::string repo_root;
  std::string sync_pipeline;

  std::string format = "text";  // or "json"
  bool dry_run = false;
  std::set<std::string> skip;  // of {gitlab, bag, archive}
  std::string state_file = ".relpub-state.json";
  std::string lock_file = ".relpub.lock";

  int http_retry_delay_ms = 500;
  int http_max_attempts = 3;
  int poll_interval_ms = 1000;

  std::vector<std::string> notes;  // config-time warnings, surfaced in reports

  std::filesystem::path resolve(const std::string& rel) const;
};

/// Collects explicit settings (CLI flags / C API) and resolves them
/// against the environment, an optional relpub.yml and CI defaults.
class ConfigBuilder {
 public:
  using EnvLookup = std::function<const char*(const char*)>;

  ConfigBuilder();
  explicit ConfigBuilder(EnvLookup env);

  /// Throws UsageError for unknown keys or unparseable values.
  void set(const std::string& key, const std::string& value);

  PipelineConfig resolve() const;

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> explicit_;
  EnvLookup env_;
};

}  // namespace relpub::pipeline
