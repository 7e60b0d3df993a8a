#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "net/http_client.hpp"

namespace relpub::gitlab {

struct GitLabTarget {
  std::string base_url;  // API v4 root, e.g. https://git.example.org/api/v4
  std::string project;   // numeric id or namespace/path (encoded on the wire)
  std::string token;     // sent as PRIVATE-TOKEN, never logged
  net::RetryPolicy retry;
};

struct AssetLink {
  std::string name;
  std::string url;
  std::string link_type = "package";

  bool operator==(const AssetLink&) const = default;
};

struct ReleaseRecord {
  std::string tag_name;
  std::string name;
  std::string description;  // markdown
  std::vector<AssetLink> asset_links;
  std::string page_url;  // server-assigned, ignored for equality

  bool same_content(const ReleaseRecord& other) const {
    return tag_name == other.tag_name && name == other.name &&
           description == other.description && asset_links == other.asset_links;
  }
};

/// PUT one file into the generic package registry; returns the stable
/// download URL. 4xx is never retried.
std::string upload_package(const GitLabTarget& target, const std::string& package_name,
                           const std::string& version, const std::filesystem::path& file);

/// POST the release. Idempotent: when the release already exists with
/// identical content this succeeds without another mutation; different
/// content raises ConflictError.
ReleaseRecord create_release(const GitLabTarget& target, const ReleaseRecord& release);

std::optional<ReleaseRecord> get_release(const GitLabTarget& target, const std::string& tag);

}  // namespace relpub::gitlab
