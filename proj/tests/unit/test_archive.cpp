#include <doctest.h>

#include <chrono>
#include <random>

#include "archive/archive_client.hpp"
#include "archive/state_file.hpp"
#include "core/digest.hpp"
#include "core/error.hpp"
#include "metadata/metadata.hpp"
#include "mockserver/mock_archive.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace relpub;
using namespace relpub::archive;
using relpub::mock::MockArchive;
using relpub::test::TempDir;

namespace {

constexpr const char* kToken = "arc-TESTSECRET678";

ArchiveTarget target_for(const MockArchive& server) {
  ArchiveTarget target;
  target.base_url = server.base_url();
  target.token = kToken;
  target.retry = {3, 1};
  target.poll_interval_ms = 5;
  return target;
}

datacite::DataCiteRecord reference_record(metadata::ProjectMetadata& meta_out) {
  meta_out = metadata::load_project_metadata(test::fixture("METADATA.yml"));
  auto contribs = metadata::load_contributors(test::fixture("CONTRIBUTORS.yml"));
  metadata::ReleaseContext release;
  release.version_tag = "v5.0";
  release.created_date = {2021, 7, 1};
  release.issued_date = {2021, 7, 5};
  return datacite::build_record(meta_out, contribs, release);
}

metadata::AssetSet fixture_assets(const TempDir& tmp) {
  test::make_fixture_repo(tmp.path());
  return metadata::resolve_assets(tmp / "ASSETS.yml", tmp.path());
}

}  // namespace

TEST_CASE("map_metadata carries the record plus archive extras") {
  metadata::ProjectMetadata meta;
  auto record = reference_record(meta);
  auto doc = map_metadata(record, meta);

  CHECK(doc["title"] == "openCARP");
  CHECK(doc["radarSubjects"] ==
        nlohmann::ordered_json::array({"LifeScience", "ComputerScience", "Medicine"}));
  CHECK(doc["rightsHolder"] == "NumeriCor GmbH");
  CHECK(doc["keywords"].size() == 5);
  CHECK(!doc.contains("identifier"));  // archive mints the DOI
  CHECK(doc["creators"].size() == 2);
  CHECK(doc["creators"][0]["name"] == "Doe, Jane");
  CHECK(doc["creators"][1]["name"] == "Plank, Gernot");  // order preserved
  CHECK(doc["publicationYear"] == 2021);
  CHECK(doc["version"] == "v5.0");
  CHECK(doc["dates"]["created"] == "2021-07-01");
  CHECK(doc["dates"]["issued"] == "2021-07-05");

  SUBCASE("identifier present when the record has a DOI") {
    record.doi = "10.35097/minted";
    auto with_id = map_metadata(record, meta);
    CHECK(with_id["identifier"]["value"] == "10.35097/minted");
  }
  SUBCASE("precondition: mandatory record properties") {
    record.creators.clear();
    CHECK_THROWS_AS(map_metadata(record, meta), PreconditionError);
  }
}

TEST_CASE("map_metadata is injective over record field changes") {
  metadata::ProjectMetadata meta;
  auto record = reference_record(meta);
  auto baseline = map_metadata(record, meta).dump();

  auto differs = [&](datacite::DataCiteRecord mutated) {
    return map_metadata(mutated, meta).dump() != baseline;
  };

  auto r = record;
  r.titles[0].value = "otherTitle";
  CHECK(differs(r));
  r = record;
  r.publisher = "Other Publisher";
  CHECK(differs(r));
  r = record;
  r.publication_year = 2020;
  CHECK(differs(r));
  r = record;
  r.version = "v5.1";
  CHECK(differs(r));
  r = record;
  r.creators[0].orcid = "0000-0001-5109-3700";
  CHECK(differs(r));
  r = record;
  r.subjects[0].subject = "Other subject";
  CHECK(differs(r));
  r = record;
  r.rights.statement = "MIT";
  CHECK(differs(r));
  r = record;
  r.descriptions[0].text = "changed";
  CHECK(differs(r));
  r = record;
  r.funding_references[0].award_number = "999";
  CHECK(differs(r));
  r = record;
  r.created_date = "2021-06-30";
  CHECK(differs(r));
  r = record;
  r.contributors[0].contributor_type = "DataManager";
  CHECK(differs(r));
}

TEST_CASE("create_dataset yields sequential draft ids") {
  MockArchive server(kToken);
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);

  ArchiveDataset first = create_dataset(target_for(server), doc);
  CHECK(first.id == "ds-1");
  CHECK(first.state == DatasetState::draft);
  CHECK(!first.doi);
  CHECK(first.metadata_attached);

  // POST creation is deliberately not idempotent; dedup is the state
  // file's job in the pipeline.
  ArchiveDataset second = create_dataset(target_for(server), doc);
  CHECK(second.id == "ds-2");
  CHECK(server.datasets().size() == 2);
}

TEST_CASE("create_dataset surfaces server-side rejection verbatim") {
  MockArchive server(kToken);
  nlohmann::ordered_json doc = {{"creators", {{{"name", "X"}}}}};  // no title
  try {
    create_dataset(target_for(server), doc);
    FAIL("expected ValidationRejectedError");
  } catch (const ValidationRejectedError& e) {
    CHECK(std::string(e.what()).find("title") != std::string::npos);
  }
}

TEST_CASE("upload_assets uploads, checks digests and lists files") {
  MockArchive server(kToken);
  TempDir tmp;
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);
  metadata::AssetSet assets = fixture_assets(tmp);

  ArchiveDataset dataset = create_dataset(target_for(server), doc);
  dataset = upload_assets(target_for(server), dataset.id, assets);
  REQUIRE(dataset.files.size() == 4);
  for (std::size_t i = 0; i < assets.assets.size(); ++i) {
    CHECK(dataset.files[i].name == assets.assets[i].name);
    CHECK(dataset.files[i].sha256 == assets.assets[i].sha256);
    CHECK(dataset.files[i].size == assets.assets[i].size);
  }

  SUBCASE("submit completes the lifecycle") {
    dataset = submit_for_review(target_for(server), dataset.id);
    CHECK(dataset.state == DatasetState::in_review);
    CHECK_THROWS_AS(submit_for_review(target_for(server), dataset.id), StateError);
  }
  SUBCASE("upload to a submitted dataset is a StateError") {
    submit_for_review(target_for(server), dataset.id);
    CHECK_THROWS_AS(upload_assets(target_for(server), dataset.id, assets), StateError);
  }
}

TEST_CASE("corrupted upload acknowledgment raises DigestMismatch naming the file") {
  MockArchive server(kToken);
  server.corrupt_uploads(1);
  TempDir tmp;
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);
  metadata::AssetSet assets = fixture_assets(tmp);

  ArchiveDataset dataset = create_dataset(target_for(server), doc);
  try {
    upload_assets(target_for(server), dataset.id, assets);
    FAIL("expected DigestMismatchError");
  } catch (const DigestMismatchError& e) {
    CHECK(std::string(e.what()).find("openCARP.deb") != std::string::npos);
  }
}

TEST_CASE("submit preconditions") {
  MockArchive server(kToken);
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);
  ArchiveDataset dataset = create_dataset(target_for(server), doc);
  // Metadata attached but no files yet.
  CHECK_THROWS_AS(submit_for_review(target_for(server), dataset.id), PreconditionError);
}

TEST_CASE("poll_doi returns the minted DOI after curator publication") {
  MockArchive server(kToken);
  server.set_auto_publish_after_polls(2);
  TempDir tmp;
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);
  metadata::AssetSet assets = fixture_assets(tmp);

  ArchiveDataset dataset = create_dataset(target_for(server), doc);
  upload_assets(target_for(server), dataset.id, assets);
  submit_for_review(target_for(server), dataset.id);

  auto doi = poll_doi(target_for(server), dataset.id, std::chrono::milliseconds(2000));
  REQUIRE(doi);
  CHECK(*doi == "10.5072/test.1");
}

TEST_CASE("poll_doi times out without error while in review") {
  MockArchive server(kToken);
  TempDir tmp;
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);
  metadata::AssetSet assets = fixture_assets(tmp);

  ArchiveDataset dataset = create_dataset(target_for(server), doc);
  upload_assets(target_for(server), dataset.id, assets);
  submit_for_review(target_for(server), dataset.id);

  CHECK(!poll_doi(target_for(server), dataset.id, std::chrono::milliseconds(30)));
}

TEST_CASE("unknown dataset id raises a transport error") {
  MockArchive server(kToken);
  CHECK_THROWS_AS(get_dataset(target_for(server), "ds-404"), TransportError);
  CHECK_THROWS_AS(poll_doi(target_for(server), "ds-404", std::chrono::milliseconds(10)),
                  TransportError);
}

TEST_CASE("auth and token hygiene") {
  MockArchive server(kToken);
  ArchiveTarget bad = target_for(server);
  bad.token = "arc-WRONGSECRET";
  try {
    get_dataset(bad, "ds-1");
    FAIL("expected AuthError");
  } catch (const AuthError& e) {
    CHECK(std::string(e.what()).find("WRONGSECRET") == std::string::npos);
  }
}

TEST_CASE("lifecycle safety: random op sequences never skip review") {
  MockArchive server(kToken);
  auto target = target_for(server);
  metadata::ProjectMetadata meta;
  auto doc = map_metadata(reference_record(meta), meta);

  TempDir tmp;
  test::write_file(tmp / "f.bin", "content");
  metadata::Asset asset;
  asset.path = tmp / "f.bin";
  asset.name = "f.bin";
  asset.media_type = "application/octet-stream";
  asset.size = 7;
  asset.sha256 = digest_file_hex(asset.path, HashAlg::sha256);
  metadata::AssetSet one_asset;
  one_asset.assets.push_back(asset);

  std::mt19937 rng(97);
  std::vector<std::string> known_ids = {"ds-404"};
  for (int op = 0; op < 300; ++op) {
    std::string id = known_ids[rng() % known_ids.size()];
    try {
      switch (rng() % 6) {
        case 0: known_ids.push_back(create_dataset(target, doc).id); break;
        case 1: attach_metadata(target, id, doc); break;
        case 2: upload_assets(target, id, one_asset); break;
        case 3: submit_for_review(target, id); break;
        case 4: get_dataset(target, id); break;
        case 5: server.curator_publish(id); break;
      }
    } catch (const Error&) {
      // Rejected transitions are expected; the property is about state.
    }
  }

  for (const auto& dataset : server.datasets()) {
    const std::vector<std::string> expected = {"draft", "in_review", "published"};
    REQUIRE(dataset.state_history.size() <= 3);
    for (std::size_t i = 0; i < dataset.state_history.size(); ++i)
      CHECK(dataset.state_history[i] == expected[i]);
  }
}

TEST_CASE("state file round trip and locking") {
  TempDir tmp;
  auto path = tmp / "state.json";

  StateFile state = StateFile::load(path);
  CHECK(!state.dataset_for_tag("v5.0"));
  state.set_dataset("v5.0", "ds-7");
  state.save(path);

  StateFile reloaded = StateFile::load(path);
  REQUIRE(reloaded.dataset_for_tag("v5.0"));
  CHECK(*reloaded.dataset_for_tag("v5.0") == "ds-7");

  {
    ScopedLockFile lock(tmp / "lock");
    CHECK_THROWS_AS(ScopedLockFile(tmp / "lock"), ConflictError);
  }
  CHECK_NOTHROW(ScopedLockFile(tmp / "lock"));  // released on destruction
}
