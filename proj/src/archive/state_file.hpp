#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace relpub::archive {

/// Per-working-directory record of archive deposits (tag -> dataset id),
/// so that a re-run of the pipeline resumes a deposit instead of creating
/// a duplicate draft.
class StateFile {
 public:
  static StateFile load(const std::filesystem::path& path);

  std::optional<std::string> dataset_for_tag(const std::string& tag) const;
  void set_dataset(const std::string& tag, const std::string& dataset_id);

  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, std::string> datasets_;
};

/// Exclusive lock file (O_CREAT|O_EXCL). A second concurrent run in the
/// same directory fails with ConflictError. Removed on destruction.
class ScopedLockFile {
 public:
  explicit ScopedLockFile(const std::filesystem::path& path);
  ~ScopedLockFile();

  ScopedLockFile(const ScopedLockFile&) = delete;
  ScopedLockFile& operator=(const ScopedLockFile&) = delete;

 private:
  std::filesystem::path path_;
  bool owned_ = false;
};

}  // namespace relpub::archive
