#include "archive/state_file.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::archive {

using nlohmann::ordered_json;

StateFile StateFile::load(const std::filesystem::path& path) {
  StateFile state;
  if (!std::filesystem::exists(path)) return state;
  auto parsed = ordered_json::parse(read_file_bytes(path.string()), nullptr, false);
  if (parsed.is_discarded())
    throw IoError("state file is not valid JSON: " + path.string());
  if (parsed.contains("datasets")) {
    for (const auto& [tag, entry] : parsed["datasets"].items())
      state.datasets_[tag] = entry.value("dataset_id", "");
  }
  return state;
}

std::optional<std::string> StateFile::dataset_for_tag(const std::string& tag) const {
  auto it = datasets_.find(tag);
  if (it == datasets_.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

void StateFile::set_dataset(const std::string& tag, const std::string& dataset_id) {
  datasets_[tag] = dataset_id;
}

void StateFile::save(const std::filesystem::path& path) const {
  ordered_json doc;
  doc["version"] = 1;
  doc["datasets"] = ordered_json::object();
  for (const auto& [tag, id] : datasets_) doc["datasets"][tag] = {{"dataset_id", id}};

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write state file: " + tmp.string());
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

ScopedLockFile::ScopedLockFile(const std::filesystem::path& path) : path_(path) {
  int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw ConflictError("another run holds the lock file " + path.string() +
                        " (remove it if no other pipeline is running)");
  }
  std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] ssize_t written = ::write(fd, pid.data(), pid.size());
  ::close(fd);
  owned_ = true;
}

ScopedLockFile::~ScopedLockFile() {
  if (owned_) {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
}

}  // namespace relpub::archive
