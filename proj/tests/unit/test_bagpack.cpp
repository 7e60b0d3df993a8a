#include <doctest.h>

#include <random>

#include "bagpack/bag.hpp"
#include "core/error.hpp"
#include "core/yaml_scalars.hpp"
#include "metadata/metadata.hpp"
#include "support/fixtures.hpp"
#include "support/process.hpp"
#include "support/temp_dir.hpp"

using namespace relpub;
using namespace relpub::bagpack;
using relpub::test::TempDir;

namespace {

constexpr const char* kFakeDataCite = "<resource>test</resource>\n";

BagInfo reference_info() {
  BagInfo info;
  info.set("Source-Organization", "Karlsruhe Institute of Technology (KIT)");
  info.set("Contact-Email", "info@example.org");
  info.set("External-Identifier", "10.35097/example");
  info.set("Bagging-Date", "2021-07-05");
  return info;
}

metadata::AssetSet assets_from_dir(const std::filesystem::path& dir) {
  metadata::AssetSet set;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    metadata::Asset asset;
    asset.role = metadata::AssetRole::other;
    asset.path = path;
    asset.name = path.filename().string();
    asset.media_type = "application/octet-stream";
    asset.size = std::filesystem::file_size(path);
    asset.sha256 = digest_file_hex(path, HashAlg::sha256);
    set.assets.push_back(std::move(asset));
  }
  return set;
}

metadata::AssetSet make_assets(const TempDir& tmp, int count, std::mt19937& rng,
                               std::size_t max_total = 1 << 20) {
  auto dir = tmp / "assets";
  std::filesystem::create_directories(dir);
  std::size_t budget = max_total;
  for (int i = 0; i < count; ++i) {
    std::string name = "file-" + std::to_string(i);
    if (i % 7 == 3) name += "_ümlaut";
    if (i % 11 == 5) name += "%25odd";
    std::size_t size = rng() % 4096;
    if (size > budget) size = budget;
    budget -= size;
    std::string content;
    content.reserve(size);
    for (std::size_t b = 0; b < size; ++b) content.push_back(static_cast<char>(rng() & 0xFF));
    test::write_file(dir / name, content);
  }
  return assets_from_dir(dir);
}

}  // namespace

TEST_CASE("bagit.txt declaration bytes are exact") {
  TempDir tmp;
  Bag bag = build_bag({}, kFakeDataCite, reference_info(), {HashAlg::sha256}, tmp / "bag");
  CHECK(test::read_file(bag.root / "bagit.txt") ==
        "BagIt-Version: 1.0\nTag-File-Character-Encoding: UTF-8\n");
}

TEST_CASE("empty bag: oxum 0.0, empty manifests, still valid") {
  TempDir tmp;
  Bag bag =
      build_bag({}, kFakeDataCite, reference_info(), {HashAlg::sha256, HashAlg::sha512}, tmp / "bag");
  CHECK(test::read_file(bag.root / "manifest-sha256.txt").empty());
  std::string info = test::read_file(bag.root / "bag-info.txt");
  CHECK(info.find("Payload-Oxum: 0.0\n") != std::string::npos);
  CHECK(validate_bag(bag.root).findings.empty());
}

TEST_CASE("payload oxum 7.2 for two files of 3 and 4 bytes") {
  TempDir tmp;
  test::write_file(tmp / "src/a.bin", "abc");
  test::write_file(tmp / "src/b.bin", "defg");
  Bag bag = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                      {HashAlg::sha256}, tmp / "bag");
  CHECK(test::read_file(bag.root / "bag-info.txt").find("Payload-Oxum: 7.2\n") !=
        std::string::npos);
}

TEST_CASE("manifest digest equals independent checksum tool") {
  TempDir tmp;
  test::write_file(tmp / "src/hello.txt", "hello\n");
  Bag bag = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                      {HashAlg::sha256, HashAlg::sha512}, tmp / "bag");

  std::string manifest = test::read_file(bag.root / "manifest-sha256.txt");
  CHECK(manifest ==
        "5891b5b522d5df086d0ff0b110fbd9d21bb4fc7163af34d08286a2e846f6be03  data/hello.txt\n");

  auto sha512 = test::run_process("sha512sum " +
                                  test::shell_quote((bag.root / "data/hello.txt").string()));
  REQUIRE(sha512.exit_code == 0);
  std::string digest512 = sha512.output.substr(0, sha512.output.find(' '));
  CHECK(test::read_file(bag.root / "manifest-sha512.txt") == digest512 + "  data/hello.txt\n");
}

TEST_CASE("manifest paths are percent-encoded per RFC 8493") {
  CHECK(encode_manifest_path("data/a%b") == "data/a%25b");
  CHECK(encode_manifest_path("data/a\nb") == "data/a%0Ab");
  CHECK(encode_manifest_path("data/a\rb") == "data/a%0Db");
  CHECK(decode_manifest_path("data/a%25b%0A%0D") == "data/a%b\n\r");

  TempDir tmp;
  test::write_file(tmp / "src/has%percent", "x");
  Bag bag = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                      {HashAlg::sha256}, tmp / "bag");
  CHECK(test::read_file(bag.root / "manifest-sha256.txt").find("data/has%25percent") !=
        std::string::npos);
  CHECK(validate_bag(bag.root).findings.empty());
}

TEST_CASE("build_bag refuses a non-empty destination") {
  TempDir tmp;
  test::write_file(tmp / "bag/existing.txt", "x");
  CHECK_THROWS_AS(build_bag({}, kFakeDataCite, reference_info(), {HashAlg::sha256}, tmp / "bag"),
                  DestinationNotEmptyError);
}

TEST_CASE("build_bag requires at least one algorithm") {
  TempDir tmp;
  CHECK_THROWS_AS(build_bag({}, kFakeDataCite, reference_info(), {}, tmp / "bag"), UsageError);
}

TEST_CASE("bag-info long values fold with a leading space and still parse") {
  TempDir tmp;
  BagInfo info = reference_info();
  info.set("Internal-Sender-Description",
           "A very long description that certainly exceeds the seventy-eight column fold "
           "threshold used for bag-info serialization in this implementation.");
  Bag bag = build_bag({}, kFakeDataCite, info, {HashAlg::sha256}, tmp / "bag");

  std::string text = test::read_file(bag.root / "bag-info.txt");
  CHECK(text.find("\n ") != std::string::npos);  // folded continuation line
  CHECK(validate_bag(bag.root).findings.empty());
}

TEST_CASE("validate_bag round trip has zero findings and detects mutations") {
  TempDir tmp;
  test::write_file(tmp / "src/a.bin", "alpha payload");
  test::write_file(tmp / "src/b.bin", "beta payload");
  Bag bag = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                      {HashAlg::sha256, HashAlg::sha512}, tmp / "bag");
  REQUIRE(validate_bag(bag.root).findings.empty());

  SUBCASE("payload byte flip yields exactly one finding naming the file") {
    std::string content = test::read_file(bag.root / "data/a.bin");
    content[0] ^= 0x01;
    test::write_file(bag.root / "data/a.bin", content);
    ValidationReport report = validate_bag(bag.root);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].path == "data/a.bin");
    CHECK(report.findings[0].message.find("checksum mismatch") != std::string::npos);
    CHECK(report.findings[0].message.find("sha256") != std::string::npos);
    CHECK(report.findings[0].message.find("sha512") != std::string::npos);
  }
  SUBCASE("orphan payload file") {
    test::write_file(bag.root / "data/extra.bin", "untracked");
    ValidationReport report = validate_bag(bag.root);
    // The orphan itself plus the Payload-Oxum drift it causes.
    REQUIRE(report.findings.size() == 2);
    CHECK(report.findings[0].path == "data/extra.bin");
    CHECK(report.findings[0].message.find("orphan payload file") != std::string::npos);
    CHECK(report.findings[1].path == "bag-info.txt");
  }
  SUBCASE("orphan in a payload subdirectory") {
    test::write_file(bag.root / "data/sub/deep.bin", "untracked");
    ValidationReport report = validate_bag(bag.root);
    bool orphan = false;
    for (const auto& f : report.findings)
      if (f.path == "data/sub/deep.bin" && f.message.find("orphan") != std::string::npos)
        orphan = true;
    CHECK(orphan);
  }
  SUBCASE("missing payload file") {
    std::filesystem::remove(bag.root / "data/b.bin");
    ValidationReport report = validate_bag(bag.root);
    bool missing_found = false;
    bool oxum_found = false;
    for (const auto& f : report.findings) {
      if (f.path == "data/b.bin" && f.message.find("missing") != std::string::npos)
        missing_found = true;
      if (f.path == "bag-info.txt" && f.message.find("Payload-Oxum") != std::string::npos)
        oxum_found = true;
    }
    CHECK(missing_found);
    CHECK(oxum_found);
  }
  SUBCASE("tag file tamper is detected") {
    std::string info = test::read_file(bag.root / "bag-info.txt");
    info.replace(info.find("info@example.org"), 4, "evil");
    test::write_file(bag.root / "bag-info.txt", info);
    ValidationReport report = validate_bag(bag.root);
    REQUIRE(!report.findings.empty());
    CHECK(report.findings[0].path == "bag-info.txt");
  }
  SUBCASE("missing datacite.xml under the bagpack profile") {
    std::filesystem::remove(bag.root / "metadata/datacite.xml");
    ValidationReport bagpack_report = validate_bag(bag.root, {true});
    bool found = false;
    for (const auto& f : bagpack_report.findings)
      if (f.path == "metadata/datacite.xml") found = true;
    CHECK(found);
    // Plain BagIt profile does not require it, but the tag manifests
    // still notice the file went missing.
    ValidationReport bagit_report = validate_bag(bag.root, {false});
    for (const auto& f : bagit_report.findings)
      CHECK(f.message.find("BagPack") == std::string::npos);
  }
  SUBCASE("declaration problems") {
    test::write_file(bag.root / "bagit.txt", "BagIt-Version: teapot\n");
    ValidationReport report = validate_bag(bag.root);
    bool version_finding = false;
    for (const auto& f : report.findings)
      if (f.path == "bagit.txt" && f.message.find("BagIt-Version") != std::string::npos)
        version_finding = true;
    CHECK(version_finding);
  }
  SUBCASE("fetch.txt is rejected") {
    test::write_file(bag.root / "fetch.txt", "http://x 1 data/x\n");
    ValidationReport report = validate_bag(bag.root);
    bool found = false;
    for (const auto& f : report.findings)
      if (f.path == "fetch.txt") found = true;
    CHECK(found);
  }
}

TEST_CASE("serialize_bag is deterministic and refuses invalid bags") {
  TempDir tmp;
  test::write_file(tmp / "src/a.bin", "alpha");
  test::write_file(tmp / "src/b.bin", "beta");

  Bag bag1 = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                       {HashAlg::sha256, HashAlg::sha512}, tmp / "bag1");
  std::filesystem::rename(tmp / "bag1", tmp / "bag");
  serialize_bag(tmp / "bag", tmp / "out1.tar");
  std::filesystem::rename(tmp / "bag", tmp / "bag1");

  Bag bag2 = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                       {HashAlg::sha256, HashAlg::sha512}, tmp / "bag2");
  std::filesystem::rename(tmp / "bag2", tmp / "bag");
  serialize_bag(tmp / "bag", tmp / "out2.tar");

  CHECK(digest_file_hex(tmp / "out1.tar", HashAlg::sha256) ==
        digest_file_hex(tmp / "out2.tar", HashAlg::sha256));

  // Serializing the same tree twice is byte-identical too.
  serialize_bag(tmp / "bag", tmp / "out3.tar");
  CHECK(test::read_file(tmp / "out1.tar") == test::read_file(tmp / "out3.tar"));

  SUBCASE("validation gate") {
    std::string content = test::read_file(tmp / "bag/data/a.bin");
    content[0] ^= 0x40;
    test::write_file(tmp / "bag/data/a.bin", content);
    CHECK_THROWS_AS(serialize_bag(tmp / "bag", tmp / "bad.tar"), ValidationFailedError);
  }
}

TEST_CASE("serialized tar unpacks with system tar and revalidates") {
  TempDir tmp;
  test::write_file(tmp / "src/x.bin", "payload bytes here");
  Bag bag = build_bag(assets_from_dir(tmp / "src"), kFakeDataCite, reference_info(),
                      {HashAlg::sha256, HashAlg::sha512}, tmp / "mybag");
  serialize_bag(bag.root, tmp / "mybag.tar");

  std::filesystem::create_directories(tmp / "unpack");
  auto result = test::run_process("tar -xf " + test::shell_quote((tmp / "mybag.tar").string()) +
                                  " -C " + test::shell_quote((tmp / "unpack").string()));
  REQUIRE(result.exit_code == 0);
  CHECK(validate_bag(tmp / "unpack/mybag").findings.empty());

  // Deterministic metadata: owner 0/0 and the pinned date.
  auto listing = test::run_process("tar -tvf " + test::shell_quote((tmp / "mybag.tar").string()));
  REQUIRE(listing.exit_code == 0);
  CHECK(listing.output.find("0/0") != std::string::npos);
  CHECK(listing.output.find("2021-07-05") != std::string::npos);
}

TEST_CASE("bag build/validate property: random asset sets round trip") {
  std::mt19937 rng(41);
  for (int round = 0; round < 25; ++round) {
    TempDir tmp;
    int count = static_cast<int>(rng() % 12);
    metadata::AssetSet assets = make_assets(tmp, count, rng);
    Bag bag = build_bag(assets, kFakeDataCite, reference_info(),
                        {HashAlg::sha256, HashAlg::sha512}, tmp / "bag");
    ValidationReport report = validate_bag(bag.root);
    for (const auto& f : report.findings) MESSAGE(f.path << ": " << f.message);
    REQUIRE(report.findings.empty());

    // Tamper: flip one byte in a random non-empty file (payload or tag).
    std::vector<std::filesystem::path> candidates;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(bag.root)) {
      if (!entry.is_regular_file() || entry.file_size() == 0) continue;
      std::string rel = std::filesystem::relative(entry.path(), bag.root).generic_string();
      if (rel.rfind("tagmanifest-", 0) == 0) continue;  // nothing covers the tag manifests
      candidates.push_back(entry.path());
    }
    REQUIRE(!candidates.empty());
    auto& victim = candidates[rng() % candidates.size()];
    std::string content = test::read_file(victim);
    content[rng() % content.size()] ^= static_cast<char>(1 + rng() % 255);
    test::write_file(victim, content);
    CHECK_MESSAGE(!validate_bag(bag.root).findings.empty(), "undetected tamper in " << victim);
  }
}

TEST_CASE("external python oracle accepts a built bag") {
  if (!std::filesystem::exists("/usr/bin/python3")) return;
  TempDir tmp;
  test::make_fixture_repo(tmp.path());
  metadata::AssetSet assets = metadata::resolve_assets(tmp / "ASSETS.yml", tmp.path());
  Bag bag = build_bag(assets, kFakeDataCite, reference_info(),
                      {HashAlg::sha256, HashAlg::sha512}, tmp / "bag");
  auto result = test::run_process("/usr/bin/python3 " +
                                  test::shell_quote(test::oracle("bagit_check.py").string()) + " " +
                                  test::shell_quote(bag.root.string()));
  CHECK_MESSAGE(result.exit_code == 0, result.output);
}
