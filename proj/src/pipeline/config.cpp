#include "pipeline/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <sstream>

#include "core/error.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::pipeline {

namespace {

const std::vector<std::string> kKnownKeys = {
    "config",        "working-dir",
    "metadata",      "contributors",    "assets",
    "output-dir",    "changelog",
    "tag",           "created-date",    "issued-date",
    "doi",           "previous-doi",    "concept-doi",  "release-page-url",
    "gitlab.url",    "gitlab.project",  "gitlab.package", "gitlab.token",
    "archive.url",   "archive.token",
    "bag.source-organization", "bag.contact-email", "bag.external-identifier",
    "bag.bagging-date", "bag.algorithms", "bag.dest",   "bag.tar",
    "bag.root",      "bag.profile",
    "sync.site-root", "sync.repo-root", "sync.pipeline",
    "format",        "dry-run",         "skip",
    "state-file",    "lock-file",
    "http.retry-delay-ms", "http.max-attempts", "http.poll-interval-ms",
};

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("key '" + key + "' expects a boolean, got '" + value + "'");
}

int parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    int parsed = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw UsageError("key '" + key + "' expects an integer, got '" + value + "'");
  }
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Flattens a relpub.yml document into dotted keys matching the flag
/// names. Token keys are dropped (tokens come from the environment only).
void load_config_file(const std::filesystem::path& path, std::map<std::string, std::string>& layer,
                      std::vector<std::string>& notes) {
  YAML::Node root = relpub::parse_yaml(read_file_bytes(path.string()), path.filename().string());
  if (root.IsNull()) return;
  if (!root.IsMap()) throw SchemaError(path.string() + ": top level must be a mapping");

  std::function<void(const YAML::Node&, const std::string&)> walk =
      [&](const YAML::Node& node, const std::string& prefix) {
        for (const auto& kv : node) {
          std::string key = kv.first.as<std::string>();
          std::string full = prefix.empty() ? key : prefix + "." + key;
          if (kv.second.IsMap()) {
            walk(kv.second, full);
            continue;
          }
          if (full == "gitlab.token" || full == "archive.token") {
            notes.push_back("ignoring '" + full + "' from " + path.filename().string() +
                            "; tokens must come from the environment");
            continue;
          }
          if (kv.second.IsSequence()) {
            std::string joined;
            for (const auto& item : kv.second) {
              if (!joined.empty()) joined += ",";
              joined += item.as<std::string>();
            }
            layer[full] = joined;
          } else if (!kv.second.IsNull()) {
            layer[full] = kv.second.as<std::string>();
          }
        }
      };
  walk(root, "");
}

}  // namespace

std::filesystem::path PipelineConfig::resolve(const std::string& rel) const {
  std::filesystem::path p(rel);
  if (p.is_absolute()) return p;
  return working_dir / p;
}

ConfigBuilder::ConfigBuilder() : env_([](const char* name) { return std::getenv(name); }) {}
ConfigBuilder::ConfigBuilder(EnvLookup env) : env_(std::move(env)) {}

const std::vector<std::string>& ConfigBuilder::known_keys() { return kKnownKeys; }

void ConfigBuilder::set(const std::string& key, const std::string& value) {
  for (const auto& known : kKnownKeys) {
    if (key == known) {
      explicit_[key] = value;
      return;
    }
  }
  throw UsageError("unknown configuration key '" + key + "'");
}

PipelineConfig ConfigBuilder::resolve() const {
  PipelineConfig config;

  std::map<std::string, std::string> file_layer;
  std::map<std::string, std::string> env_layer;
  std::map<std::string, std::string> ci_layer;

  if (const char* v = env_("RELPUB_GITLAB_TOKEN")) env_layer["gitlab.token"] = v;
  if (const char* v = env_("RELPUB_ARCHIVE_TOKEN")) env_layer["archive.token"] = v;

  if (const char* v = env_("CI_API_V4_URL")) ci_layer["gitlab.url"] = v;
  if (const char* v = env_("CI_PROJECT_ID")) ci_layer["gitlab.project"] = v;
  if (const char* v = env_("CI_COMMIT_TAG")) ci_layer["tag"] = v;

  auto explicit_value = [&](const std::string& key) -> const std::string* {
    auto it = explicit_.find(key);
    return it == explicit_.end() ? nullptr : &it->second;
  };

  std::filesystem::path working_dir = ".";
  if (const std::string* v = explicit_value("working-dir")) working_dir = *v;
  config.working_dir = working_dir;

  std::filesystem::path config_file;
  if (const std::string* v = explicit_value("config")) {
    config_file = config.resolve(*v);
    if (!std::filesystem::is_regular_file(config_file))
      throw IoError("config file does not exist: " + config_file.string());
  } else if (std::filesystem::is_regular_file(working_dir / "relpub.yml")) {
    config_file = working_dir / "relpub.yml";
  }
  if (!config_file.empty()) load_config_file(config_file, file_layer, config.notes);

  auto lookup = [&](const std::string& key) -> const std::string* {
    if (const std::string* v = explicit_value(key)) return v;
    if (auto it = env_layer.find(key); it != env_layer.end()) return &it->second;
    if (auto it = file_layer.find(key); it != file_layer.end()) return &it->second;
    if (auto it = ci_layer.find(key); it != ci_layer.end()) return &it->second;
    return nullptr;
  };
  auto assign = [&](const std::string& key, std::string& field) {
    if (const std::string* v = lookup(key)) field = *v;
  };

  assign("metadata", config.metadata_path);
  assign("contributors", config.contributors_path);
  assign("assets", config.assets_path);
  assign("output-dir", config.output_dir);
  assign("changelog", config.changelog_path);
  assign("tag", config.tag);
  assign("created-date", config.created_date);
  assign("issued-date", config.issued_date);
  assign("doi", config.doi);
  assign("previous-doi", config.previous_doi);
  assign("concept-doi", config.concept_doi);
  assign("release-page-url", config.release_page_url);
  assign("gitlab.url", config.gitlab_url);
  assign("gitlab.project", config.gitlab_project);
  assign("gitlab.package", config.gitlab_package);
  assign("gitlab.token", config.gitlab_token);
  assign("archive.url", config.archive_url);
  assign("archive.token", config.archive_token);
  assign("bag.source-organization", config.bag_source_organization);
  assign("bag.contact-email", config.bag_contact_email);
  assign("bag.external-identifier", config.bag_external_identifier);
  assign("bag.bagging-date", config.bag_bagging_date);
  assign("bag.dest", config.bag_dest);
  assign("bag.tar", config.bag_tar);
  assign("bag.root", config.bag_root);
  assign("sync.site-root", config.site_root);
  assign("sync.repo-root", config.repo_root);
  assign("sync.pipeline", config.sync_pipeline);
  assign("state-file", config.state_file);
  assign("lock-file", config.lock_file);

  if (const std::string* v = lookup("bag.algorithms")) {
    config.bag_algorithms = split_csv(*v);
    if (config.bag_algorithms.empty())
      throw UsageError("key 'bag.algorithms' must name at least one algorithm");
  }
  if (const std::string* v = lookup("bag.profile")) {
    if (*v == "bagpack")
      config.bag_profile_bagpack = true;
    else if (*v == "bagit")
      config.bag_profile_bagpack = false;
    else
      throw UsageError("key 'bag.profile' must be 'bagpack' or 'bagit', got '" + *v + "'");
  }
  if (const std::string* v = lookup("format")) {
    if (*v != "text" && *v != "json")
      throw UsageError("key 'format' must be 'text' or 'json', got '" + *v + "'");
    config.format = *v;
  }
  if (const std::string* v = lookup("dry-run")) config.dry_run = parse_bool(*v, "dry-run");
  if (const std::string* v = lookup("skip")) {
    for (const auto& job : split_csv(*v)) {
      if (job != "gitlab" && job != "bag" && job != "archive")
        throw UsageError("key 'skip' accepts gitlab, bag or archive; got '" + job + "'");
      config.skip.insert(job);
    }
  }
  if (const std::string* v = lookup("http.retry-delay-ms"))
    config.http_retry_delay_ms = parse_int(*v, "http.retry-delay-ms");
  if (const std::string* v = lookup("http.max-attempts"))
    config.http_max_attempts = parse_int(*v, "http.max-attempts");
  if (const std::string* v = lookup("http.poll-interval-ms"))
    config.poll_interval_ms = parse_int(*v, "http.poll-interval-ms");

  return config;
}

}  // namespace relpub::pipeline
