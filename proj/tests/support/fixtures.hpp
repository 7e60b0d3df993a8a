#pragma once

#include <filesystem>
#include <string>

#include "support/temp_dir.hpp"

#ifndef RELPUB_FIXTURE_DIR
#error "RELPUB_FIXTURE_DIR must be defined by the build"
#endif
#ifndef RELPUB_ORACLE_DIR
#error "RELPUB_ORACLE_DIR must be defined by the build"
#endif

namespace relpub::test {

inline std::filesystem::path fixture_dir() { return RELPUB_FIXTURE_DIR; }
inline std::filesystem::path fixture(const std::string& rel) { return fixture_dir() / rel; }
inline std::filesystem::path oracle(const std::string& name) {
  return std::filesystem::path(RELPUB_ORACLE_DIR) / name;
}

/// Materializes a release checkout: the three metadata files plus the four
/// asset files named by ASSETS.yml and a changelog.
inline void make_fixture_repo(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "assets");
  std::filesystem::copy_file(fixture("METADATA.yml"), dir / "METADATA.yml");
  std::filesystem::copy_file(fixture("CONTRIBUTORS.yml"), dir / "CONTRIBUTORS.yml");
  std::filesystem::copy_file(fixture("ASSETS.yml"), dir / "ASSETS.yml");
  write_file(dir / "assets/openCARP.deb", "deb package payload\n");
  write_file(dir / "assets/openCARP.rpm", "rpm package payload bytes\n");
  write_file(dir / "assets/openCARP.pkg", std::string("\x00\x01binary pkg\xff\n", 14));
  write_file(dir / "assets/manual.pdf", "%PDF-1.4 fake manual\n");
  write_file(dir / "CHANGELOG.md", "## v5.0\n\n- initial archived release\n");
}

}  // namespace relpub::test
