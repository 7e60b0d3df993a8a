#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace relpub {

enum class HashAlg { sha256, sha512 };

const char* to_string(HashAlg alg);
std::optional<HashAlg> hash_alg_from_string(std::string_view name);

/// Streaming hex digest of a file's contents. Throws IoError when the file
/// cannot be read.
std::string digest_file_hex(const std::filesystem::path& path, HashAlg alg);

std::string digest_bytes_hex(std::string_view bytes, HashAlg alg);

}  // namespace relpub
