// relpub command line. Everything of substance lives behind the C API of
// librelpub; this binary only maps flags onto configuration keys, runs the
// chosen job and prints the rendered report.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relpub/relpub.h"

namespace {

struct SessionDeleter {
  void operator()(relpub_session* s) const { relpub_session_free(s); }
};
using SessionPtr = std::unique_ptr<relpub_session, SessionDeleter>;

struct Settings {
  std::vector<std::pair<std::string, std::string>> values;

  void add(std::string key, std::string value) {
    values.push_back({std::move(key), std::move(value)});
  }
};

/// Registers an option whose parsed value lands in the settings under the
/// given configuration key.
void map_option(CLI::App* cmd, Settings& settings, const std::string& flag,
                const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&settings, key](const std::string& value) { settings.add(key, value); }, help);
}

void map_flag(CLI::App* cmd, Settings& settings, const std::string& flag, const std::string& key,
              const std::string& help) {
  cmd->add_flag_callback(
      flag, [&settings, key]() { settings.add(key, "true"); }, help);
}

void add_metadata_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--metadata", "metadata", "Path to METADATA.yml");
  map_option(cmd, settings, "--contributors", "contributors", "Path to CONTRIBUTORS.yml");
}

void add_release_context_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--tag", "tag", "Release tag (defaults to CI_COMMIT_TAG)");
  map_option(cmd, settings, "--created-date", "created-date",
             "Release date, ISO (defaults to today)");
  map_option(cmd, settings, "--issued-date", "issued-date",
             "Archive upload date, ISO (defaults to the release date)");
  map_option(cmd, settings, "--doi", "doi", "DOI of this release, when already known");
  map_option(cmd, settings, "--previous-doi", "previous-doi",
             "DOI of the previous release (IsNewVersionOf)");
  map_option(cmd, settings, "--concept-doi", "concept-doi",
             "Version-independent concept DOI (IsVersionOf)");
  map_option(cmd, settings, "--release-page-url", "release-page-url",
             "Release page URL recorded as an alternate identifier");
}

void add_asset_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--assets", "assets", "Path to ASSETS.yml");
}

void add_bag_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--source-organization", "bag.source-organization",
             "bag-info.txt Source-Organization");
  map_option(cmd, settings, "--contact-email", "bag.contact-email", "bag-info.txt Contact-Email");
  map_option(cmd, settings, "--external-identifier", "bag.external-identifier",
             "bag-info.txt External-Identifier (DOI when known)");
  map_option(cmd, settings, "--bagging-date", "bag.bagging-date",
             "Pin Bagging-Date for reproducible bags");
  map_option(cmd, settings, "--algorithms", "bag.algorithms",
             "Comma list of checksum algorithms (sha256,sha512)");
  map_option(cmd, settings, "--dest", "bag.dest", "Bag directory to create");
  map_option(cmd, settings, "--tar", "bag.tar", "Path of the serialized tar");
}

void add_gitlab_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--gitlab-url", "gitlab.url",
             "GitLab API v4 root (defaults to CI_API_V4_URL)");
  map_option(cmd, settings, "--project", "gitlab.project",
             "Project id or namespace/path (defaults to CI_PROJECT_ID)");
  map_option(cmd, settings, "--package", "gitlab.package",
             "Package name in the generic registry");
  map_option(cmd, settings, "--changelog", "changelog",
             "Changelog file used as the release description");
}

void add_archive_options(CLI::App* cmd, Settings& settings) {
  map_option(cmd, settings, "--archive-url", "archive.url", "Archive deposit service URL");
  map_option(cmd, settings, "--state-file", "state-file",
             "Deposit state file (default .relpub-state.json)");
}

int print_report(relpub_status status, char* output, relpub_session* session) {
  if (output) {
    std::fputs(output, stdout);
    relpub_string_free(output);
  } else if (status != RELPUB_OK) {
    std::fprintf(stderr, "relpub: %s\n", relpub_last_error(session));
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Release publishing toolkit: DataCite records, BagPack archives,\n"
               "GitLab releases, archive deposits and website content sync."};
  app.require_subcommand(1);

  Settings settings;

  map_option(&app, settings, "--config", "config", "Configuration file (default ./relpub.yml)");
  map_option(&app, settings, "-C,--directory", "working-dir",
             "Working directory for relative paths");
  map_option(&app, settings, "--format", "format", "Report format: text or json");

  CLI::App* validate = app.add_subcommand("validate", "Check the metadata files");
  add_metadata_options(validate, settings);

  CLI::App* datacite = app.add_subcommand("datacite", "Generate datacite.xml");
  add_metadata_options(datacite, settings);
  add_release_context_options(datacite, settings);
  map_option(datacite, settings, "--output-dir", "output-dir", "Directory for datacite.xml");

  CLI::App* bag = app.add_subcommand("bag", "Build and serialize the BagPack");
  add_metadata_options(bag, settings);
  add_release_context_options(bag, settings);
  add_asset_options(bag, settings);
  add_bag_options(bag, settings);
  map_option(bag, settings, "--output-dir", "output-dir", "Directory for generated artifacts");

  CLI::App* bag_validate = app.add_subcommand("bag-validate", "Validate an existing bag");
  bag_validate->add_option_function<std::string>(
      "root", [&settings](const std::string& value) { settings.add("bag.root", value); },
      "Bag directory")->required();
  map_option(bag_validate, settings, "--profile", "bag.profile",
             "bagpack (default, requires metadata/datacite.xml) or bagit");

  CLI::App* deposit = app.add_subcommand("deposit", "Create/resume the archive dataset");
  add_metadata_options(deposit, settings);
  add_release_context_options(deposit, settings);
  add_asset_options(deposit, settings);
  add_archive_options(deposit, settings);
  map_flag(deposit, settings, "--dry-run", "dry-run", "Plan only; no requests");

  CLI::App* sync = app.add_subcommand("sync", "Synchronize CMS pages from repository files");
  map_option(sync, settings, "--site-root", "sync.site-root", "Checkout of the site repository");
  map_option(sync, settings, "--repo-root", "sync.repo-root", "Checkout of the source repository");
  map_option(sync, settings, "--pipeline", "sync.pipeline", "Pipeline tag to match in pages");

  CLI::App* release = app.add_subcommand("release", "Run the full release pipeline");
  add_metadata_options(release, settings);
  add_release_context_options(release, settings);
  add_asset_options(release, settings);
  add_bag_options(release, settings);
  add_gitlab_options(release, settings);
  add_archive_options(release, settings);
  map_option(release, settings, "--output-dir", "output-dir",
             "Directory for generated artifacts");
  release->add_option_function<std::vector<std::string>>(
      "--skip",
      [&settings](const std::vector<std::string>& jobs) {
        std::string joined;
        for (const auto& job : jobs) {
          if (!joined.empty()) joined += ",";
          joined += job;
        }
        settings.add("skip", joined);
      },
      "Skip job groups: gitlab, bag, archive");
  map_flag(release, settings, "--dry-run", "dry-run", "Plan only; local steps only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  SessionPtr session(relpub_session_new());
  if (!session) {
    std::fprintf(stderr, "relpub: out of memory\n");
    return 2;
  }

  for (const auto& [key, value] : settings.values) {
    if (relpub_set(session.get(), key.c_str(), value.c_str()) != RELPUB_OK) {
      std::fprintf(stderr, "relpub: %s\n", relpub_last_error(session.get()));
      return 2;
    }
  }

  char* output = nullptr;
  relpub_status status = RELPUB_ERR_IO;
  if (validate->parsed()) status = relpub_cmd_validate(session.get(), &output);
  else if (datacite->parsed()) status = relpub_cmd_datacite(session.get(), &output);
  else if (bag->parsed()) status = relpub_cmd_bag(session.get(), &output);
  else if (bag_validate->parsed()) status = relpub_cmd_bag_validate(session.get(), &output);
  else if (deposit->parsed()) status = relpub_cmd_deposit(session.get(), &output);
  else if (sync->parsed()) status = relpub_cmd_sync(session.get(), &output);
  else if (release->parsed()) status = relpub_cmd_release(session.get(), &output);

  return print_report(status, output, session.get());
}
