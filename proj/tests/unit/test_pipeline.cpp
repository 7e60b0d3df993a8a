#include <doctest.h>

#include <map>

#include "core/error.hpp"
#include "pipeline/config.hpp"
#include "pipeline/jobs.hpp"
#include "pipeline/run_report.hpp"
#include "mockserver/mock_archive.hpp"
#include "mockserver/mock_gitlab.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace relpub;
using namespace relpub::pipeline;
using relpub::test::TempDir;

namespace {

ConfigBuilder::EnvLookup env_map(std::map<std::string, std::string> values) {
  auto stored = std::make_shared<std::map<std::string, std::string>>(std::move(values));
  return [stored](const char* name) -> const char* {
    auto it = stored->find(name);
    return it == stored->end() ? nullptr : it->second.c_str();
  };
}

}  // namespace

TEST_CASE("config precedence: flags > env > file > CI defaults") {
  TempDir tmp;
  test::write_file(tmp / "relpub.yml",
                   "tag: from-file\noutput_dir: ignored\noutput-dir: dist-file\n"
                   "gitlab:\n  url: https://file.example/api/v4\n  project: file-project\n");

  auto env = env_map({{"RELPUB_GITLAB_TOKEN", "env-token"},
                      {"CI_API_V4_URL", "https://ci.example/api/v4"},
                      {"CI_PROJECT_ID", "1234"},
                      {"CI_COMMIT_TAG", "v-ci"}});

  SUBCASE("file beats CI defaults; env supplies the token") {
    ConfigBuilder builder(env);
    builder.set("working-dir", tmp.path().string());
    PipelineConfig config = builder.resolve();
    CHECK(config.tag == "from-file");
    CHECK(config.gitlab_url == "https://file.example/api/v4");
    CHECK(config.gitlab_project == "file-project");
    CHECK(config.gitlab_token == "env-token");
  }
  SUBCASE("explicit flag beats everything") {
    ConfigBuilder builder(env);
    builder.set("working-dir", tmp.path().string());
    builder.set("tag", "v-flag");
    builder.set("gitlab.url", "https://flag.example/api/v4");
    PipelineConfig config = builder.resolve();
    CHECK(config.tag == "v-flag");
    CHECK(config.gitlab_url == "https://flag.example/api/v4");
  }
  SUBCASE("CI defaults apply when nothing else is set") {
    TempDir empty;
    ConfigBuilder builder(env);
    builder.set("working-dir", empty.path().string());
    PipelineConfig config = builder.resolve();
    CHECK(config.tag == "v-ci");
    CHECK(config.gitlab_url == "https://ci.example/api/v4");
    CHECK(config.gitlab_project == "1234");
  }
}

TEST_CASE("tokens in the config file are ignored with a note") {
  TempDir tmp;
  test::write_file(tmp / "relpub.yml", "gitlab:\n  token: leaked\n  project: p\n");
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  PipelineConfig config = builder.resolve();
  CHECK(config.gitlab_token.empty());
  REQUIRE(config.notes.size() == 1);
  CHECK(config.notes[0].find("gitlab.token") != std::string::npos);
  CHECK(config.notes[0].find("leaked") == std::string::npos);  // value never surfaced
}

TEST_CASE("config rejects unknown keys and bad values") {
  ConfigBuilder builder(env_map({}));
  CHECK_THROWS_AS(builder.set("no-such-key", "x"), UsageError);
  builder.set("format", "xml");
  CHECK_THROWS_AS(builder.resolve(), UsageError);

  ConfigBuilder builder2(env_map({}));
  builder2.set("skip", "gitlab,everything");
  CHECK_THROWS_AS(builder2.resolve(), UsageError);

  ConfigBuilder builder3(env_map({}));
  builder3.set("config", "/nonexistent/relpub.yml");
  CHECK_THROWS_AS(builder3.resolve(), IoError);
}

TEST_CASE("cmd validate: fixture passes with exit 0") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  RunReport report = run_command("validate", builder.resolve());
  CHECK(report.exit_code == 0);
  CHECK(report.error_message.empty());
  // The two placeholder related identifiers surface as warnings.
  CHECK(report.findings.size() == 2);
}

TEST_CASE("cmd validate: missing title exits 1 with the finding printed") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  test::write_file(tmp / "METADATA.yml", "publisher: X\n");
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  RunReport report = run_command("validate", builder.resolve());
  // Missing mandatory title is already a load-time schema error.
  CHECK(report.exit_code == 1);
  CHECK(report.error_kind == "SchemaError");

  std::string text = render_text(report);
  CHECK(text.find("title") != std::string::npos);
}

TEST_CASE("cmd validate: nonexistent path exits 2") {
  TempDir tmp;
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  RunReport report = run_command("validate", builder.resolve());
  CHECK(report.exit_code == 2);
  CHECK(report.error_kind == "IoError");
}

TEST_CASE("cmd datacite writes dist/datacite.xml") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("tag", "v5.0");
  builder.set("created-date", "2021-07-01");
  builder.set("issued-date", "2021-07-05");
  RunReport report = run_command("datacite", builder.resolve());
  REQUIRE(report.exit_code == 0);
  std::string xml = test::read_file(tmp / "dist/datacite.xml");
  CHECK(xml.find("<version>v5.0</version>") != std::string::npos);
}

TEST_CASE("cmd datacite without a tag is a usage problem, exit 2") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  RunReport report = run_command("datacite", builder.resolve());
  CHECK(report.exit_code == 2);
}

TEST_CASE("cmd bag builds and serializes; bag-validate accepts it") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("tag", "v5.0");
  builder.set("created-date", "2021-07-01");
  builder.set("bag.source-organization", "KIT");
  builder.set("bag.contact-email", "info@example.org");
  builder.set("bag.bagging-date", "2021-07-05");
  RunReport report = run_command("bag", builder.resolve());
  REQUIRE(report.exit_code == 0);
  CHECK(std::filesystem::exists(tmp / "dist/bag/bagit.txt"));
  CHECK(std::filesystem::exists(tmp / "dist/v5.0.bagpack.tar"));

  ConfigBuilder check(env_map({}));
  check.set("working-dir", tmp.path().string());
  check.set("bag.root", "dist/bag");
  RunReport validate_report = run_command("bag-validate", check.resolve());
  CHECK(validate_report.exit_code == 0);
  CHECK(validate_report.findings.empty());

  SUBCASE("bag-validate flags a tampered bag with exit 1") {
    auto payload = tmp / "dist/bag/data/openCARP.deb";
    std::string bytes = test::read_file(payload);
    bytes[0] ^= 1;
    test::write_file(payload, bytes);
    RunReport bad = run_command("bag-validate", check.resolve());
    CHECK(bad.exit_code == 1);
    CHECK(!bad.findings.empty());
  }
}

TEST_CASE("json report golden file") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("format", "json");
  RunReport report = run_command("validate", builder.resolve());
  std::string rendered = render_json(report);

  std::string expected = test::read_file(test::fixture("golden/validate-report.json"));
  if (rendered != expected)
    test::write_file(test::fixture_dir() / "golden/validate-report.json.actual", rendered);
  CHECK(rendered == expected);
}

TEST_CASE("release dry run performs only local steps") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("tag", "v5.0");
  builder.set("created-date", "2021-07-01");
  builder.set("issued-date", "2021-07-05");
  builder.set("bag.source-organization", "KIT");
  builder.set("bag.contact-email", "info@example.org");
  builder.set("bag.bagging-date", "2021-07-05");
  builder.set("dry-run", "true");
  // Deliberately no gitlab/archive configuration: a dry run must not need it.
  RunReport report = run_command("release", builder.resolve());
  REQUIRE(report.exit_code == 0);
  REQUIRE(report.steps.size() == 7);
  CHECK(report.steps[0].status == "ok");       // datacite (local)
  CHECK(report.steps[1].status == "planned");  // gitlab-upload
  CHECK(report.steps[2].status == "planned");  // gitlab-release
  CHECK(report.steps[3].status == "ok");       // bagpack (local)
  CHECK(report.steps[4].status == "planned");
  CHECK(report.steps[5].status == "planned");
  CHECK(report.steps[6].status == "planned");
  CHECK(std::filesystem::exists(tmp / "dist/datacite.xml"));
  CHECK(std::filesystem::exists(tmp / "dist/v5.0.bagpack.tar"));
}

TEST_CASE("release --skip gitlab,archive runs only local steps for real") {
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("tag", "v5.0");
  builder.set("created-date", "2021-07-01");
  builder.set("bag.source-organization", "KIT");
  builder.set("bag.contact-email", "info@example.org");
  builder.set("skip", "gitlab,archive");
  RunReport report = run_command("release", builder.resolve());
  REQUIRE(report.exit_code == 0);
  CHECK(report.steps[1].status == "skipped");
  CHECK(report.steps[3].status == "ok");
  CHECK(std::filesystem::exists(tmp / "dist/v5.0.bagpack.tar"));

  // The lock file is released afterwards.
  CHECK(!std::filesystem::exists(tmp / ".relpub.lock"));
}

TEST_CASE("cmd deposit: create, resume, and remote error codes") {
  mock::MockArchive server("arc-token-1");
  TempDir tmp;
  test::make_fixture_repo(tmp.path());

  auto builder_with = [&](const std::string& token) {
    ConfigBuilder builder(env_map({{"RELPUB_ARCHIVE_TOKEN", token}}));
    builder.set("working-dir", tmp.path().string());
    builder.set("tag", "v5.0");
    builder.set("created-date", "2021-07-01");
    builder.set("issued-date", "2021-07-05");
    builder.set("archive.url", server.base_url());
    builder.set("http.retry-delay-ms", "1");
    return builder;
  };

  RunReport first = run_command("deposit", builder_with("arc-token-1").resolve());
  REQUIRE(first.exit_code == 0);
  CHECK(first.outputs.at("dataset_id") == "ds-1");
  CHECK(first.outputs.at("dataset_state") == "in_review");
  CHECK(std::filesystem::exists(tmp / ".relpub-state.json"));

  // Re-run resumes via the state file instead of creating a second draft.
  server.clear_requests();
  RunReport second = run_command("deposit", builder_with("arc-token-1").resolve());
  CHECK(second.exit_code == 0);
  CHECK(second.outputs.at("dataset_id") == "ds-1");
  CHECK(server.datasets().size() == 1);
  CHECK(server.mutating_requests().empty());

  // Remote auth failure maps to exit 3.
  TempDir fresh;
  test::make_fixture_repo(fresh.path());
  ConfigBuilder bad(env_map({{"RELPUB_ARCHIVE_TOKEN", "wrong"}}));
  bad.set("working-dir", fresh.path().string());
  bad.set("tag", "v5.0");
  bad.set("archive.url", server.base_url());
  bad.set("http.retry-delay-ms", "1");
  RunReport denied = run_command("deposit", bad.resolve());
  CHECK(denied.exit_code == 3);
  CHECK(denied.error_kind == "AuthError");
}

TEST_CASE("cmd release: changed content after a release is a conflict, exit 4") {
  mock::MockGitLab gitlab("gl-token");
  mock::MockArchive archive("arc-token");
  gitlab.add_tag("v5.0");
  TempDir tmp;
  test::make_fixture_repo(tmp.path());

  auto make_builder = [&]() {
    ConfigBuilder builder(env_map(
        {{"RELPUB_GITLAB_TOKEN", "gl-token"}, {"RELPUB_ARCHIVE_TOKEN", "arc-token"}}));
    builder.set("working-dir", tmp.path().string());
    builder.set("tag", "v5.0");
    builder.set("created-date", "2021-07-01");
    builder.set("issued-date", "2021-07-05");
    builder.set("gitlab.url", gitlab.api_url());
    builder.set("gitlab.project", "42");
    builder.set("gitlab.package", "openCARP");
    builder.set("archive.url", archive.base_url());
    builder.set("bag.source-organization", "KIT");
    builder.set("bag.contact-email", "info@example.org");
    builder.set("bag.bagging-date", "2021-07-05");
    builder.set("changelog", "CHANGELOG.md");
    builder.set("http.retry-delay-ms", "1");
    return builder;
  };

  RunReport first = run_command("release", make_builder().resolve());
  REQUIRE(first.exit_code == 0);
  REQUIRE(first.steps.size() == 7);

  // Same inputs: fully idempotent.
  RunReport second = run_command("release", make_builder().resolve());
  CHECK(second.exit_code == 0);
  CHECK(second.steps[1].status == "skipped");

  // A different release description now conflicts with the published one.
  test::write_file(tmp / "CHANGELOG.md", "## v5.0\n\nrewritten notes\n");
  RunReport third = run_command("release", make_builder().resolve());
  CHECK(third.exit_code == 4);
  CHECK(third.error_kind == "ConflictError");
}

TEST_CASE("cmd sync wires site and repo roots") {
  TempDir tmp;
  std::filesystem::copy(test::fixture("site"), tmp / "site",
                        std::filesystem::copy_options::recursive);
  ConfigBuilder builder(env_map({}));
  builder.set("working-dir", tmp.path().string());
  builder.set("sync.site-root", "site");
  builder.set("sync.repo-root", test::fixture("syncrepo").string());
  builder.set("sync.pipeline", "openCARP");
  RunReport report = run_command("sync", builder.resolve());
  REQUIRE(report.exit_code == 0);
  CHECK(report.outputs.at("pages_matched") == "3");
  CHECK(report.outputs.at("pages_updated") == "3");

  RunReport second = run_command("sync", builder.resolve());
  CHECK(second.outputs.at("pages_updated") == "0");
}
