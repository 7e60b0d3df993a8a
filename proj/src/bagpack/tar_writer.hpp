#pragma once

#include <cstdint>
#include <filesystem>

namespace relpub::bagpack {

/// Writes `root` (a directory) into a deterministic ustar archive at
/// `out_tar`: entries sorted by path, numeric owner 0/0, fixed modes
/// (0755/0644), every mtime set to `mtime`. The directory's own name is
/// the top-level entry inside the archive.
std::filesystem::path write_bag_tar(const std::filesystem::path& root,
                                    const std::filesystem::path& out_tar, std::int64_t mtime);

}  // namespace relpub::bagpack
