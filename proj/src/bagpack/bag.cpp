#include "bagpack/bag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "bagpack/tar_writer.hpp"
#include "core/date.hpp"
#include "core/error.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::bagpack {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kDeclaration = "BagIt-Version: 1.0\nTag-File-Character-Encoding: UTF-8\n";
constexpr std::size_t kInfoFoldColumn = 78;

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing file: " + path.string());
}

/// Relative POSIX-style paths of all regular files under root, sorted.
std::vector<std::string> list_files_recursive(const fs::path& root) {
  std::vector<std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string manifest_name(HashAlg alg, bool tag) {
  return std::string(tag ? "tagmanifest-" : "manifest-") + to_string(alg) + ".txt";
}

std::string render_manifest(const fs::path& bag_root, const std::vector<std::string>& rel_paths,
                            HashAlg alg) {
  std::string out;
  for (const auto& rel : rel_paths) {
    out += digest_file_hex(bag_root / rel, alg);
    out += "  ";
    out += encode_manifest_path(rel);
    out += "\n";
  }
  return out;
}

std::string render_bag_info(const BagInfo& info) {
  std::string out;
  for (const auto& [label, value] : info.entries) {
    std::string line = label + ": " + value;
    if (line.size() <= kInfoFoldColumn || value.find(' ') == std::string::npos) {
      out += line + "\n";
      continue;
    }
    // Fold long values on spaces; continuation lines start with one space.
    std::size_t limit = kInfoFoldColumn;
    while (line.size() > limit) {
      std::size_t cut = line.rfind(' ', limit);
      if (cut == std::string::npos || cut == 0) break;
      out += line.substr(0, cut) + "\n";
      line = " " + line.substr(cut + 1);
    }
    out += line + "\n";
  }
  return out;
}

struct ParsedManifest {
  // path (decoded) -> digest; preserves a flag for malformed lines
  std::map<std::string, std::string> digests;
  std::vector<std::string> bad_lines;
};

ParsedManifest parse_manifest(const std::string& text) {
  ParsedManifest parsed;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t sep = line.find(' ');
    if (sep == std::string::npos || sep == 0) {
      parsed.bad_lines.push_back(line);
      continue;
    }
    std::string digest = line.substr(0, sep);
    std::size_t path_start = line.find_first_not_of(' ', sep);
    if (path_start == std::string::npos) {
      parsed.bad_lines.push_back(line);
      continue;
    }
    std::string path = decode_manifest_path(line.substr(path_start));
    for (char& c : digest) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    parsed.digests[path] = digest;
  }
  return parsed;
}

std::vector<std::pair<std::string, std::string>> parse_bag_info(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if ((line[0] == ' ' || line[0] == '\t') && !entries.empty()) {
      std::size_t start = line.find_first_not_of(" \t");
      entries.back().second += " " + (start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    std::size_t sep = line.find(": ");
    if (sep == std::string::npos) {
      entries.push_back({line, ""});
      continue;
    }
    entries.push_back({line.substr(0, sep), line.substr(sep + 2)});
  }
  return entries;
}

}  // namespace

void BagInfo::set(const std::string& label, const std::string& value) {
  for (auto& e : entries) {
    if (e.first == label) {
      e.second = value;
      return;
    }
  }
  entries.push_back({label, value});
}

const std::string* BagInfo::get(const std::string& label) const {
  for (const auto& e : entries)
    if (e.first == label) return &e.second;
  return nullptr;
}

std::string encode_manifest_path(std::string_view path) {
  std::string out;
  out.reserve(path.size());
  for (char c : path) {
    switch (c) {
      case '%': out += "%25"; break;
      case '\r': out += "%0D"; break;
      case '\n': out += "%0A"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string decode_manifest_path(std::string_view path) {
  std::string out;
  out.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == '%' && i + 2 < path.size()) {
      std::string_view code = path.substr(i + 1, 2);
      if (code == "25") { out.push_back('%'); i += 2; continue; }
      if (code == "0D") { out.push_back('\r'); i += 2; continue; }
      if (code == "0A") { out.push_back('\n'); i += 2; continue; }
    }
    out.push_back(path[i]);
  }
  return out;
}

std::string compute_payload_oxum(const fs::path& payload_root) {
  if (!fs::exists(payload_root)) throw IoError("payload directory missing: " + payload_root.string());
  std::uintmax_t octets = 0;
  std::uintmax_t streams = 0;
  for (const auto& entry : fs::recursive_directory_iterator(payload_root)) {
    if (!entry.is_regular_file()) continue;
    octets += entry.file_size();
    ++streams;
  }
  return std::to_string(octets) + "." + std::to_string(streams);
}

Bag build_bag(const metadata::AssetSet& assets, std::string_view datacite_xml, BagInfo info,
              const std::set<HashAlg>& algorithms, const fs::path& dest) {
  if (algorithms.empty()) throw UsageError("at least one checksum algorithm is required");
  if (fs::exists(dest)) {
    if (!fs::is_directory(dest)) throw DestinationNotEmptyError(dest.string() + " exists and is not a directory");
    if (!fs::is_empty(dest)) throw DestinationNotEmptyError(dest.string() + " is not empty");
  }
  fs::create_directories(dest / "data");
  fs::create_directories(dest / "metadata");

  for (const auto& asset : assets.assets) {
    fs::path target = dest / "data" / asset.name;
    if (fs::exists(target))
      throw IoError("duplicate payload file name: " + asset.name);
    std::error_code ec;
    fs::copy_file(asset.path, target, ec);
    if (ec) throw IoError("cannot copy " + asset.path.string() + ": " + ec.message());
  }

  write_file(dest / "bagit.txt", kDeclaration);
  write_file(dest / "metadata" / "datacite.xml", datacite_xml);

  std::vector<std::string> payload_rel;
  for (const auto& rel : list_files_recursive(dest / "data")) payload_rel.push_back("data/" + rel);

  for (HashAlg alg : algorithms)
    write_file(dest / manifest_name(alg, false), render_manifest(dest, payload_rel, alg));

  if (!info.get("Bagging-Date")) info.set("Bagging-Date", IsoDate::today_utc().to_string());
  info.set("Payload-Oxum", compute_payload_oxum(dest / "data"));
  write_file(dest / "bag-info.txt", render_bag_info(info));

  std::vector<std::string> tag_rel = {"bag-info.txt", "bagit.txt"};
  for (HashAlg alg : algorithms) tag_rel.push_back(manifest_name(alg, false));
  for (const auto& rel : list_files_recursive(dest / "metadata")) tag_rel.push_back("metadata/" + rel);
  std::sort(tag_rel.begin(), tag_rel.end());

  for (HashAlg alg : algorithms)
    write_file(dest / manifest_name(alg, true), render_manifest(dest, tag_rel, alg));

  return Bag{dest};
}

ValidationReport validate_bag(const fs::path& root, BagValidateOptions options) {
  ValidationReport report;
  if (!fs::is_directory(root)) {
    report.add_error(root.string(), "bag root is not a directory");
    return report;
  }

  // Declaration.
  fs::path decl_path = root / "bagit.txt";
  if (!fs::is_regular_file(decl_path)) {
    report.add_error("bagit.txt", "missing bag declaration");
  } else {
    std::string decl = read_file_bytes(decl_path.string());
    bool version_ok = false;
    bool encoding_ok = false;
    std::istringstream in(decl);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("BagIt-Version: ", 0) == 0) {
        std::string v = line.substr(15);
        version_ok = !v.empty() && v.find('.') != std::string::npos &&
                     v.find_first_not_of("0123456789.") == std::string::npos;
      } else if (line == "Tag-File-Character-Encoding: UTF-8") {
        encoding_ok = true;
      }
    }
    if (!version_ok) report.add_error("bagit.txt", "missing or malformed BagIt-Version");
    if (!encoding_ok) report.add_error("bagit.txt", "missing or unsupported Tag-File-Character-Encoding");
  }

  if (fs::exists(root / "fetch.txt"))
    report.add_error("fetch.txt", "fetch.txt (holey bags) is not supported");

  bool has_payload_dir = fs::is_directory(root / "data");
  if (!has_payload_dir) report.add_error("data", "payload directory data/ missing");

  // Collect manifests.
  std::vector<std::pair<std::string, ParsedManifest>> payload_manifests;  // name, content
  std::vector<std::pair<std::string, ParsedManifest>> tag_manifests;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    bool is_payload = name.rfind("manifest-", 0) == 0 && name.size() > 13 &&
                      name.substr(name.size() - 4) == ".txt";
    bool is_tag = name.rfind("tagmanifest-", 0) == 0 && name.substr(name.size() - 4) == ".txt";
    if (!is_payload && !is_tag) continue;
    ParsedManifest parsed = parse_manifest(read_file_bytes(entry.path().string()));
    for (const auto& bad : parsed.bad_lines)
      report.add_error(name, "malformed manifest line: '" + bad + "'");
    (is_tag ? tag_manifests : payload_manifests).push_back({name, std::move(parsed)});
  }
  std::sort(payload_manifests.begin(), payload_manifests.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(tag_manifests.begin(), tag_manifests.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  if (payload_manifests.empty()) report.add_error("manifest", "no payload manifest present");
  if (tag_manifests.empty()) report.add_error("tagmanifest", "no tag manifest present");

  std::vector<std::string> payload_files;
  if (has_payload_dir)
    for (const auto& rel : list_files_recursive(root / "data")) payload_files.push_back("data/" + rel);

  // Cross-check each manifest against the filesystem. Mismatches are
  // aggregated per file so one corrupted file yields one finding.
  std::map<std::string, std::vector<std::string>> mismatched;  // path -> manifest names
  std::map<std::string, std::vector<std::string>> missing;
  std::map<std::string, std::vector<std::string>> orphans;

  auto check_manifest = [&](const std::string& name, const ParsedManifest& manifest,
                            const std::vector<std::string>& actual_files, bool payload) {
    auto alg = hash_alg_from_string(
        name.substr(name.find('-') + 1, name.size() - name.find('-') - 5));
    if (!alg) {
      report.add_error(name, "unsupported checksum algorithm");
      return;
    }
    for (const auto& [path, digest] : manifest.digests) {
      if (payload && path.rfind("data/", 0) != 0) {
        report.add_error(name, "payload manifest lists non-payload path: " + path);
        continue;
      }
      fs::path full = root / path;
      if (!fs::is_regular_file(full)) {
        missing[path].push_back(name);
        continue;
      }
      if (digest_file_hex(full, *alg) != digest) mismatched[path].push_back(name);
    }
    for (const auto& path : actual_files) {
      if (!manifest.digests.count(path)) orphans[path].push_back(name);
    }
  };

  for (const auto& [name, manifest] : payload_manifests)
    check_manifest(name, manifest, payload_files, true);

  // Tag files: everything outside data/ except the tag manifests themselves.
  std::vector<std::string> tag_files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), root).generic_string();
    if (rel.rfind("data/", 0) == 0) continue;
    if (rel.rfind("tagmanifest-", 0) == 0) continue;
    tag_files.push_back(rel);
  }
  std::sort(tag_files.begin(), tag_files.end());

  for (const auto& [name, manifest] : tag_manifests) check_manifest(name, manifest, tag_files, false);

  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
      if (!out.empty()) out += ", ";
      out += n;
    }
    return out;
  };
  for (const auto& [path, names] : missing)
    report.add_error(path, "listed in " + join(names) + " but missing from the bag");
  for (const auto& [path, names] : mismatched)
    report.add_error(path, "checksum mismatch (" + join(names) + ")");
  for (const auto& [path, names] : orphans) {
    bool is_payload = path.rfind("data/", 0) == 0;
    report.add_error(path, std::string(is_payload ? "orphan payload file" : "tag file") +
                               " not listed in " + join(names));
  }

  // bag-info.txt: Payload-Oxum recount and Bagging-Date format.
  fs::path info_path = root / "bag-info.txt";
  if (!fs::is_regular_file(info_path)) {
    report.add_error("bag-info.txt", "missing bag metadata file");
  } else {
    auto entries = parse_bag_info(read_file_bytes(info_path.string()));
    const std::string* oxum = nullptr;
    const std::string* date = nullptr;
    for (const auto& [label, value] : entries) {
      if (label == "Payload-Oxum") oxum = &value;
      if (label == "Bagging-Date") date = &value;
    }
    if (!oxum) {
      report.add_error("bag-info.txt", "Payload-Oxum entry missing");
    } else if (has_payload_dir) {
      std::string actual = compute_payload_oxum(root / "data");
      if (*oxum != actual)
        report.add_error("bag-info.txt",
                         "Payload-Oxum " + *oxum + " does not match recount " + actual);
    }
    if (!date) {
      report.add_error("bag-info.txt", "Bagging-Date entry missing");
    } else if (!IsoDate::parse(*date)) {
      report.add_error("bag-info.txt", "Bagging-Date '" + *date + "' is not an ISO date");
    }
  }

  if (options.require_bagpack && !fs::is_regular_file(root / "metadata" / "datacite.xml"))
    report.add_error("metadata/datacite.xml", "BagPack requires a DataCite record in metadata/");

  return report;
}

std::filesystem::path serialize_bag(const fs::path& root, const fs::path& out_tar) {
  ValidationReport report = validate_bag(root);
  if (!report.empty()) {
    const Finding& first = report.findings.front();
    throw ValidationFailedError("bag does not validate: " + first.path + ": " + first.message);
  }

  std::string bagging_date;
  for (const auto& [label, value] : parse_bag_info(read_file_bytes((root / "bag-info.txt").string())))
    if (label == "Bagging-Date") bagging_date = value;
  auto date = IsoDate::parse(bagging_date);
  std::int64_t mtime = date ? date->to_unix_utc() : 0;

  return write_bag_tar(root, out_tar, mtime);
}

}  // namespace relpub::bagpack
