#include "bagpack/tar_writer.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace relpub::bagpack {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kBlock = 512;
constexpr std::size_t kRecord = 10240;  // GNU tar default blocking factor

void put_octal(char* field, std::size_t width, std::uint64_t value) {
  // Width includes the trailing NUL.
  char buf[32];
  int len = std::snprintf(buf, sizeof(buf), "%0*llo", static_cast<int>(width - 1),
                          static_cast<unsigned long long>(value));
  if (len < 0 || static_cast<std::size_t>(len) >= width)
    throw IoError("value too large for ustar header field");
  std::memcpy(field, buf, static_cast<std::size_t>(len) + 1);
}

struct Header {
  std::array<char, kBlock> raw{};

  char* name() { return raw.data(); }
  char* prefix() { return raw.data() + 345; }

  void fill(const std::string& path, std::uint64_t size, std::int64_t mtime, bool directory) {
    std::string name_part = path;
    std::string prefix_part;
    if (name_part.size() > 100) {
      // Split on a '/' so that prefix fits 155 and name fits 100 bytes.
      std::size_t cut = name_part.rfind('/', 155);
      if (cut == std::string::npos || name_part.size() - cut - 1 > 100)
        throw IoError("path too long for ustar archive: " + path);
      prefix_part = name_part.substr(0, cut);
      name_part = name_part.substr(cut + 1);
    }
    std::memcpy(name(), name_part.data(), name_part.size());
    std::memcpy(prefix(), prefix_part.data(), prefix_part.size());

    put_octal(raw.data() + 100, 8, directory ? 0755 : 0644);  // mode
    put_octal(raw.data() + 108, 8, 0);                        // uid
    put_octal(raw.data() + 116, 8, 0);                        // gid
    put_octal(raw.data() + 124, 12, directory ? 0 : size);
    put_octal(raw.data() + 136, 12, static_cast<std::uint64_t>(mtime < 0 ? 0 : mtime));
    raw[156] = directory ? '5' : '0';  // typeflag
    std::memcpy(raw.data() + 257, "ustar", 6);                // magic (NUL-terminated)
    raw[263] = '0';                                           // version "00"
    raw[264] = '0';

    std::memset(raw.data() + 148, ' ', 8);  // checksum field counted as spaces
    unsigned sum = 0;
    for (unsigned char c : raw) sum += c;
    std::snprintf(raw.data() + 148, 8, "%06o", sum);
    raw[155] = ' ';
  }
};

}  // namespace

fs::path write_bag_tar(const fs::path& root, const fs::path& out_tar, std::int64_t mtime) {
  if (!fs::is_directory(root)) throw IoError("not a directory: " + root.string());
  std::string top = root.filename().string();
  if (top.empty()) top = "bag";

  struct Entry {
    std::string path;  // inside the archive
    fs::path source;   // empty for directories
    bool directory;
  };
  std::vector<Entry> entries;
  entries.push_back({top + "/", {}, true});
  for (const auto& item : fs::recursive_directory_iterator(root)) {
    std::string rel = fs::relative(item.path(), root).generic_string();
    if (item.is_directory()) {
      entries.push_back({top + "/" + rel + "/", {}, true});
    } else if (item.is_regular_file()) {
      entries.push_back({top + "/" + rel, item.path(), false});
    } else {
      throw IoError("unsupported file type in bag: " + item.path().string());
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.path < b.path; });

  if (out_tar.has_parent_path()) fs::create_directories(out_tar.parent_path());
  std::ofstream out(out_tar, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write archive: " + out_tar.string());

  std::size_t written = 0;
  auto emit = [&](const char* data, std::size_t size) {
    out.write(data, static_cast<std::streamsize>(size));
    written += size;
  };

  std::vector<char> buf(1 << 16);
  for (const auto& entry : entries) {
    std::uint64_t size = entry.directory ? 0 : fs::file_size(entry.source);
    Header header;
    header.fill(entry.path, size, mtime, entry.directory);
    emit(header.raw.data(), kBlock);
    if (entry.directory) continue;

    std::ifstream in(entry.source, std::ios::binary);
    if (!in) throw IoError("cannot read " + entry.source.string());
    std::uint64_t remaining = size;
    while (remaining > 0) {
      std::size_t chunk = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, buf.size()));
      in.read(buf.data(), static_cast<std::streamsize>(chunk));
      if (in.gcount() != static_cast<std::streamsize>(chunk))
        throw IoError("short read on " + entry.source.string());
      emit(buf.data(), chunk);
      remaining -= chunk;
    }
    std::size_t pad = (kBlock - (size % kBlock)) % kBlock;
    if (pad) {
      std::array<char, kBlock> zeros{};
      emit(zeros.data(), pad);
    }
  }

  std::array<char, kBlock> zeros{};
  emit(zeros.data(), kBlock);
  emit(zeros.data(), kBlock);
  while (written % kRecord != 0) emit(zeros.data(), std::min(kBlock, kRecord - written % kRecord));

  out.flush();
  if (!out) throw IoError("error writing archive: " + out_tar.string());
  return out_tar;
}

}  // namespace relpub::bagpack
