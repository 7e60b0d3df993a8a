#include "pipeline/jobs.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>

#include "archive/archive_client.hpp"
#include "archive/state_file.hpp"
#include "bagpack/bag.hpp"
#include "core/date.hpp"
#include "core/error.hpp"
#include "core/yaml_scalars.hpp"
#include "datacite/record.hpp"
#include "gitlabrel/gitlab_client.hpp"
#include "metadata/metadata.hpp"
#include "sync/page_sync.hpp"

namespace relpub::pipeline {

namespace fs = std::filesystem;

namespace {

/// Runs the job body with the report in scope, so steps recorded before a
/// failure stay visible in the output.
template <typename Fn>
RunReport guarded(const char* command, const PipelineConfig& config, Fn&& body) {
  RunReport report;
  report.command = command;
  report.dry_run = config.dry_run;
  report.notes = config.notes;
  try {
    body(report);
  } catch (const Error& e) {
    report.fail(e.exit_code(), e.kind(), e.what());
  } catch (const std::exception& e) {
    report.fail(2, "InternalError", e.what());
  }
  return report;
}

struct Inputs {
  metadata::ProjectMetadata meta;
  metadata::ContributorsFile contribs;
};

Inputs load_inputs(const PipelineConfig& config) {
  Inputs inputs;
  inputs.meta = metadata::load_project_metadata(config.resolve(config.metadata_path));
  inputs.contribs = metadata::load_contributors(config.resolve(config.contributors_path));
  return inputs;
}

/// Loads + validates; validation errors become findings and stop the job.
std::optional<Inputs> load_validated(const PipelineConfig& config, RunReport& report) {
  Inputs inputs = load_inputs(config);
  ValidationReport validation = metadata::validate_metadata(inputs.meta, inputs.contribs);
  report.findings = validation.findings;
  if (validation.has_errors()) {
    report.fail(1, "ValidationFindings", "metadata validation reported errors");
    return std::nullopt;
  }
  return inputs;
}

IsoDate parse_date_or(const std::string& text, const std::string& key, IsoDate fallback) {
  if (text.empty()) return fallback;
  auto parsed = IsoDate::parse(text);
  if (!parsed) throw UsageError("key '" + key + "' is not an ISO date: '" + text + "'");
  return *parsed;
}

metadata::ReleaseContext make_release_context(const PipelineConfig& config) {
  if (config.tag.empty())
    throw UsageError("a release tag is required (--tag or CI_COMMIT_TAG)");
  metadata::ReleaseContext context;
  context.version_tag = config.tag;
  IsoDate today = IsoDate::today_utc();
  context.created_date = parse_date_or(config.created_date, "created-date", today);
  context.issued_date = parse_date_or(config.issued_date, "issued-date", context.created_date);
  context.release_page_url = config.release_page_url;
  if (!config.doi.empty()) context.doi = config.doi;
  if (!config.previous_doi.empty()) context.previous_doi = config.previous_doi;
  if (!config.concept_doi.empty()) context.concept_doi = config.concept_doi;
  return context;
}

std::set<HashAlg> bag_algorithms(const PipelineConfig& config) {
  std::set<HashAlg> algorithms;
  for (const auto& name : config.bag_algorithms) {
    auto alg = hash_alg_from_string(name);
    if (!alg) throw UsageError("unsupported checksum algorithm '" + name + "'");
    algorithms.insert(*alg);
  }
  return algorithms;
}

bagpack::BagInfo make_bag_info(const PipelineConfig& config) {
  bagpack::BagInfo info;
  if (!config.bag_source_organization.empty())
    info.set("Source-Organization", config.bag_source_organization);
  if (!config.bag_contact_email.empty()) info.set("Contact-Email", config.bag_contact_email);
  std::string external = config.bag_external_identifier;
  if (external.empty() && !config.doi.empty()) external = config.doi;
  if (!external.empty()) info.set("External-Identifier", external);
  if (!config.bag_bagging_date.empty()) {
    if (!IsoDate::parse(config.bag_bagging_date))
      throw UsageError("key 'bag.bagging-date' is not an ISO date: '" + config.bag_bagging_date +
                       "'");
    info.set("Bagging-Date", config.bag_bagging_date);
  }
  return info;
}

gitlab::GitLabTarget make_gitlab_target(const PipelineConfig& config) {
  if (config.gitlab_url.empty()) throw UsageError("gitlab.url is not configured");
  if (config.gitlab_project.empty())
    throw UsageError("gitlab.project is not configured (or set CI_PROJECT_ID)");
  gitlab::GitLabTarget target;
  target.base_url = config.gitlab_url;
  target.project = config.gitlab_project;
  target.token = config.gitlab_token;
  target.retry = {config.http_max_attempts, config.http_retry_delay_ms};
  return target;
}

archive::ArchiveTarget make_archive_target(const PipelineConfig& config) {
  if (config.archive_url.empty()) throw UsageError("archive.url is not configured");
  archive::ArchiveTarget target;
  target.base_url = config.archive_url;
  target.token = config.archive_token;
  target.retry = {config.http_max_attempts, config.http_retry_delay_ms};
  target.poll_interval_ms = config.poll_interval_ms;
  return target;
}

std::string release_description(const PipelineConfig& config) {
  if (!config.changelog_path.empty())
    return read_file_bytes(config.resolve(config.changelog_path).string());
  return "Release " + config.tag;
}

fs::path datacite_output_path(const PipelineConfig& config) {
  return config.resolve(config.output_dir) / "datacite.xml";
}

std::string write_datacite_xml(const PipelineConfig& config, const std::string& xml) {
  fs::path out = datacite_output_path(config);
  fs::create_directories(out.parent_path());
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + out.string());
  file << xml;
  return out.string();
}

fs::path bag_dest_path(const PipelineConfig& config) {
  if (!config.bag_dest.empty()) return config.resolve(config.bag_dest);
  return config.resolve(config.output_dir) / "bag";
}

fs::path bag_tar_path(const PipelineConfig& config) {
  if (!config.bag_tar.empty()) return config.resolve(config.bag_tar);
  std::string stem = config.tag.empty() ? std::string("bag") : config.tag;
  return config.resolve(config.output_dir) / (stem + ".bagpack.tar");
}

/// Builds the bag directory and the serialized tar. A bag directory left
/// behind by an earlier run is rebuilt from scratch; anything else in the
/// way is refused.
void build_and_serialize_bag(const PipelineConfig& config, const metadata::AssetSet& assets,
                             const std::string& datacite_xml, RunReport& report) {
  fs::path dest = bag_dest_path(config);
  if (fs::exists(dest)) {
    if (!fs::is_regular_file(dest / "bagit.txt"))
      throw DestinationNotEmptyError(dest.string() +
                                     " exists and does not look like a bag; refusing to replace it");
    fs::remove_all(dest);
  }
  bagpack::build_bag(assets, datacite_xml, make_bag_info(config), bag_algorithms(config), dest);

  ValidationReport validation = bagpack::validate_bag(dest, {config.bag_profile_bagpack});
  if (!validation.empty()) {
    report.findings.insert(report.findings.end(), validation.findings.begin(),
                           validation.findings.end());
    throw ValidationFailedError("freshly built bag failed validation");
  }

  fs::path tar = bagpack::serialize_bag(dest, bag_tar_path(config));
  report.outputs["bag_dir"] = dest.string();
  report.outputs["bag_tar"] = tar.string();
}

/// Curator publication stays a manual step; the Issued date therefore
/// reflects the upload, which the record notes for the curator.
void note_issued_date(datacite::DataCiteRecord& record) {
  record.provenance_notes.push_back(
      "Issued date reflects the archive upload; curator publication may happen later");
}

struct ArchiveDepositResult {
  std::string dataset_id;
  std::string state;
  int uploaded = 0;
};

ArchiveDepositResult run_archive_deposit(const PipelineConfig& config,
                                         const archive::ArchiveTarget& target,
                                         const nlohmann::ordered_json& doc,
                                         const metadata::AssetSet& assets, RunReport& report) {
  ArchiveDepositResult result;
  fs::path state_path = config.resolve(config.state_file);
  archive::StateFile state = archive::StateFile::load(state_path);

  archive::ArchiveDataset dataset;
  if (auto existing = state.dataset_for_tag(config.tag)) {
    dataset = archive::get_dataset(target, *existing);
    if (dataset.state != archive::DatasetState::draft) {
      result.dataset_id = dataset.id;
      result.state = archive::to_string(dataset.state);
      report.steps.push_back({"archive-dataset", "skipped",
                              "dataset " + dataset.id + " already " + result.state});
      report.steps.push_back({"archive-upload", "skipped", "all files already uploaded"});
      report.steps.push_back({"archive-submit", "skipped", "already submitted"});
      return result;
    }
    dataset = archive::attach_metadata(target, dataset.id, doc);
    report.steps.push_back(
        {"archive-dataset", "ok", "resumed draft " + dataset.id + ", metadata refreshed"});
  } else {
    dataset = archive::create_dataset(target, doc);
    state.set_dataset(config.tag, dataset.id);
    state.save(state_path);
    report.steps.push_back({"archive-dataset", "ok", "created draft " + dataset.id});
  }
  result.dataset_id = dataset.id;

  metadata::AssetSet to_upload;
  for (const auto& asset : assets.assets) {
    auto on_server = std::find_if(dataset.files.begin(), dataset.files.end(),
                                  [&](const auto& f) { return f.name == asset.name; });
    if (on_server == dataset.files.end()) {
      to_upload.assets.push_back(asset);
    } else if (on_server->sha256 != asset.sha256) {
      throw ConflictError("dataset " + dataset.id + " already holds " + asset.name +
                          " with a different digest");
    }
  }
  if (!to_upload.assets.empty()) dataset = archive::upload_assets(target, dataset.id, to_upload);
  result.uploaded = static_cast<int>(to_upload.assets.size());
  report.steps.push_back({"archive-upload", "ok",
                          std::to_string(result.uploaded) + " file(s) uploaded, " +
                              std::to_string(dataset.files.size()) + " on server"});

  dataset = archive::submit_for_review(target, dataset.id);
  result.state = archive::to_string(dataset.state);
  report.steps.push_back({"archive-submit", "ok", "dataset " + dataset.id + " is in review"});
  return result;
}

}  // namespace

RunReport job_validate(const PipelineConfig& config) {
  return guarded("validate", config, [&](RunReport& report) {
    Inputs inputs = load_inputs(config);
    ValidationReport validation = metadata::validate_metadata(inputs.meta, inputs.contribs);
    report.findings = validation.findings;

    if (!validation.has_errors()) {
      // check_mandatory needs a record; a placeholder release context is
      // enough for a validation-only run.
      metadata::ReleaseContext context;
      context.version_tag = config.tag.empty() ? "0.0.0" : config.tag;
      context.created_date = IsoDate::today_utc();
      context.issued_date = context.created_date;
      if (!config.doi.empty()) context.doi = config.doi;
      auto record = datacite::build_record(inputs.meta, inputs.contribs, context);
      ValidationReport mandatory = datacite::check_mandatory(record, false);
      report.findings.insert(report.findings.end(), mandatory.findings.begin(),
                             mandatory.findings.end());
    }

    bool has_errors = std::any_of(report.findings.begin(), report.findings.end(),
                                  [](const Finding& f) { return f.severity == Severity::error; });
    if (has_errors) report.fail(1, "ValidationFindings", "metadata validation reported errors");
  });
}

RunReport job_datacite(const PipelineConfig& config) {
  return guarded("datacite", config, [&](RunReport& report) {
    auto inputs = load_validated(config, report);
    if (!inputs) return;
    metadata::ReleaseContext context = make_release_context(config);
    auto record = datacite::build_record(inputs->meta, inputs->contribs, context);
    report.outputs["datacite_xml"] = write_datacite_xml(config, datacite::render_xml(record));
    for (const auto& note : record.provenance_notes) report.notes.push_back(note);
  });
}

RunReport job_bag(const PipelineConfig& config) {
  return guarded("bag", config, [&](RunReport& report) {
    auto inputs = load_validated(config, report);
    if (!inputs) return;
    metadata::ReleaseContext context = make_release_context(config);
    auto record = datacite::build_record(inputs->meta, inputs->contribs, context);
    std::string xml = datacite::render_xml(record);
    report.outputs["datacite_xml"] = write_datacite_xml(config, xml);

    metadata::AssetSet assets =
        metadata::resolve_assets(config.resolve(config.assets_path), config.working_dir);
    build_and_serialize_bag(config, assets, xml, report);
  });
}

RunReport job_bag_validate(const PipelineConfig& config) {
  return guarded("bag-validate", config, [&](RunReport& report) {
    if (config.bag_root.empty())
      throw UsageError("bag-validate needs the bag directory (bag.root)");
    fs::path root = config.resolve(config.bag_root);
    if (!fs::exists(root)) throw IoError("bag directory does not exist: " + root.string());

    ValidationReport validation = bagpack::validate_bag(root, {config.bag_profile_bagpack});
    report.findings = validation.findings;
    report.outputs["bag_dir"] = root.string();
    if (!validation.empty())
      report.fail(1, "ValidationFindings", "bag validation reported findings");
  });
}

RunReport job_deposit(const PipelineConfig& config) {
  return guarded("deposit", config, [&](RunReport& report) {
    auto inputs = load_validated(config, report);
    if (!inputs) return;
    metadata::ReleaseContext context = make_release_context(config);
    auto record = datacite::build_record(inputs->meta, inputs->contribs, context);
    note_issued_date(record);
    auto doc = archive::map_metadata(record, inputs->meta);
    metadata::AssetSet assets =
        metadata::resolve_assets(config.resolve(config.assets_path), config.working_dir);

    if (config.dry_run) {
      report.steps.push_back(
          {"archive-dataset", "planned", "would create or resume a draft dataset"});
      report.steps.push_back({"archive-upload", "planned",
                              "would upload " + std::to_string(assets.assets.size()) + " file(s)"});
      report.steps.push_back({"archive-submit", "planned", "would submit for curator review"});
      return;
    }

    archive::ScopedLockFile lock(config.resolve(config.lock_file));
    archive::ArchiveTarget target = make_archive_target(config);
    ArchiveDepositResult result = run_archive_deposit(config, target, doc, assets, report);
    report.outputs["dataset_id"] = result.dataset_id;
    report.outputs["dataset_state"] = result.state;
    for (const auto& note : record.provenance_notes) report.notes.push_back(note);
  });
}

RunReport job_sync(const PipelineConfig& config) {
  return guarded("sync", config, [&](RunReport& report) {
    if (config.site_root.empty() || config.repo_root.empty())
      throw UsageError("sync needs sync.site-root and sync.repo-root");
    if (config.sync_pipeline.empty()) throw UsageError("sync needs sync.pipeline (the page tag)");

    sync::SiteSyncStats stats = sync::sync_site(config.resolve(config.site_root),
                                                config.resolve(config.repo_root),
                                                config.sync_pipeline);
    report.findings = stats.findings;
    report.outputs["pages_matched"] = std::to_string(stats.pages_matched);
    report.outputs["pages_updated"] = std::to_string(stats.pages_updated);
    if (!stats.findings.empty())
      report.fail(1, "ValidationFindings", "some pages could not be synchronized");
  });
}

RunReport job_release(const PipelineConfig& config) {
  return guarded("release", config, [&](RunReport& report) {
    auto inputs = load_validated(config, report);
    if (!inputs) return;
    metadata::ReleaseContext context = make_release_context(config);
    metadata::AssetSet assets =
        metadata::resolve_assets(config.resolve(config.assets_path), config.working_dir);

    std::optional<archive::ScopedLockFile> lock;
    if (!config.dry_run) lock.emplace(config.resolve(config.lock_file));

    // Step 1: the local DataCite record, added to the release outputs.
    auto record = datacite::build_record(inputs->meta, inputs->contribs, context);
    std::string datacite_xml = datacite::render_xml(record);
    report.outputs["datacite_xml"] = write_datacite_xml(config, datacite_xml);
    report.steps.push_back({"datacite", "ok", report.outputs["datacite_xml"]});

    bool skip_gitlab = config.skip.count("gitlab") > 0;
    bool skip_bag = config.skip.count("bag") > 0;
    bool skip_archive = config.skip.count("archive") > 0;

    // Steps 2-3: package uploads and the GitLab release.
    if (skip_gitlab) {
      report.steps.push_back({"gitlab-upload", "skipped", "per --skip gitlab"});
      report.steps.push_back({"gitlab-release", "skipped", "per --skip gitlab"});
    } else if (config.dry_run) {
      report.steps.push_back({"gitlab-upload", "planned",
                              "would upload " + std::to_string(assets.assets.size()) +
                                  " package file(s) to the generic registry"});
      report.steps.push_back({"gitlab-release", "planned", "would create release " + config.tag});
    } else {
      gitlab::GitLabTarget target = make_gitlab_target(config);
      std::string package = config.gitlab_package.empty() ? "release" : config.gitlab_package;

      // The registry download URLs are deterministic, so the intended
      // release can be compared against an existing one before uploading.
      gitlab::ReleaseRecord intended;
      intended.tag_name = config.tag;
      intended.name = config.tag;
      intended.description = release_description(config);
      net::HttpEndpoint registry(target.base_url, target.retry);
      for (const auto& asset : assets.assets) {
        std::string path = "/projects/" + target.project + "/packages/generic/" + package + "/" +
                           config.tag + "/" + asset.name;
        intended.asset_links.push_back({asset.name, registry.url_for(path), "package"});
      }

      auto existing = gitlab::get_release(target, config.tag);
      if (existing && existing->same_content(intended)) {
        report.steps.push_back(
            {"gitlab-upload", "skipped", "release " + config.tag + " already exists"});
        report.steps.push_back(
            {"gitlab-release", "skipped", "release " + config.tag + " already exists"});
        if (context.release_page_url.empty()) context.release_page_url = existing->page_url;
      } else if (existing) {
        throw ConflictError("release " + config.tag + " already exists with different content");
      } else {
        std::vector<gitlab::AssetLink> links;
        for (const auto& asset : assets.assets) {
          std::string url = gitlab::upload_package(target, package, config.tag, asset.path);
          links.push_back({asset.name, url, "package"});
        }
        report.steps.push_back(
            {"gitlab-upload", "ok", std::to_string(links.size()) + " package(s) uploaded"});

        intended.asset_links = links;
        gitlab::ReleaseRecord created = gitlab::create_release(target, intended);
        report.steps.push_back({"gitlab-release", "ok",
                                "release " + created.tag_name + " with " +
                                    std::to_string(created.asset_links.size()) +
                                    " asset link(s)"});
        if (context.release_page_url.empty()) context.release_page_url = created.page_url;
      }
      if (!context.release_page_url.empty())
        report.outputs["release_url"] = context.release_page_url;
    }

    // Step 4: the BagPack for long-term preservation.
    if (skip_bag) {
      report.steps.push_back({"bagpack", "skipped", "per --skip bag"});
    } else {
      build_and_serialize_bag(config, assets, datacite_xml, report);
      report.steps.push_back({"bagpack", "ok", report.outputs["bag_tar"]});
    }

    // Steps 5-7: the archive deposit, with the record rebuilt so the
    // release page URL can enter the deposit metadata.
    if (skip_archive) {
      report.steps.push_back({"archive-dataset", "skipped", "per --skip archive"});
      report.steps.push_back({"archive-upload", "skipped", "per --skip archive"});
      report.steps.push_back({"archive-submit", "skipped", "per --skip archive"});
    } else if (config.dry_run) {
      report.steps.push_back(
          {"archive-dataset", "planned", "would create or resume a draft dataset"});
      report.steps.push_back({"archive-upload", "planned",
                              "would upload " + std::to_string(assets.assets.size()) + " file(s)"});
      report.steps.push_back({"archive-submit", "planned", "would submit for curator review"});
    } else {
      auto deposit_record = datacite::build_record(inputs->meta, inputs->contribs, context);
      note_issued_date(deposit_record);
      auto doc = archive::map_metadata(deposit_record, inputs->meta);
      archive::ArchiveTarget target = make_archive_target(config);
      ArchiveDepositResult result = run_archive_deposit(config, target, doc, assets, report);
      report.outputs["dataset_id"] = result.dataset_id;
      report.outputs["dataset_state"] = result.state;
      for (const auto& note : deposit_record.provenance_notes) report.notes.push_back(note);
    }
  });
}

RunReport run_command(const std::string& command, const PipelineConfig& config) {
  if (command == "validate") return job_validate(config);
  if (command == "datacite") return job_datacite(config);
  if (command == "bag") return job_bag(config);
  if (command == "bag-validate") return job_bag_validate(config);
  if (command == "deposit") return job_deposit(config);
  if (command == "sync") return job_sync(config);
  if (command == "release") return job_release(config);

  RunReport report;
  report.command = command;
  report.fail(2, "UsageError", "unknown command '" + command + "'");
  return report;
}

}  // namespace relpub::pipeline
