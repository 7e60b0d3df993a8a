#include "gitlabrel/gitlab_client.hpp"

#include <json.hpp>

#include <cctype>

#include "core/error.hpp"
#include "core/url.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::gitlab {

using nlohmann::json;

namespace {

std::string encoded_project(const GitLabTarget& target) {
  bool numeric = !target.project.empty() &&
                 target.project.find_first_not_of("0123456789") == std::string::npos;
  if (numeric) return target.project;
  return encode_path_segment(target.project);
}

std::map<std::string, std::string> auth_headers(const GitLabTarget& target) {
  if (target.token.empty()) throw AuthError("GitLab token is empty (set RELPUB_GITLAB_TOKEN)");
  return {{"PRIVATE-TOKEN", target.token}};
}

ReleaseRecord release_from_json(const json& j) {
  ReleaseRecord record;
  record.tag_name = j.value("tag_name", "");
  record.name = j.value("name", "");
  record.description = j.value("description", "");
  if (j.contains("assets") && j["assets"].contains("links")) {
    for (const auto& link : j["assets"]["links"]) {
      record.asset_links.push_back(
          {link.value("name", ""), link.value("url", ""), link.value("link_type", "package")});
    }
  }
  if (j.contains("_links") && j["_links"].contains("self"))
    record.page_url = j["_links"]["self"].get<std::string>();
  return record;
}

json release_to_json(const ReleaseRecord& record) {
  json links = json::array();
  for (const auto& link : record.asset_links)
    links.push_back({{"name", link.name}, {"url", link.url}, {"link_type", link.link_type}});
  return {{"tag_name", record.tag_name},
          {"name", record.name},
          {"description", record.description},
          {"assets", {{"links", links}}}};
}

[[noreturn]] void raise_for_status(const std::string& what, const net::HttpResponse& response) {
  std::string detail = what + ": HTTP " + std::to_string(response.status);
  if (!response.body.empty()) detail += " " + response.body.substr(0, 400);
  if (response.status == 401 || response.status == 403) throw AuthError(detail);
  throw TransportError(detail);
}

}  // namespace

std::string upload_package(const GitLabTarget& target, const std::string& package_name,
                           const std::string& version, const std::filesystem::path& file) {
  if (!std::filesystem::is_regular_file(file))
    throw IoError("package file does not exist: " + file.string());

  net::HttpEndpoint endpoint(target.base_url, target.retry);
  std::string path = "/projects/" + encoded_project(target) + "/packages/generic/" +
                     encode_path_segment(package_name) + "/" + encode_path_segment(version) + "/" +
                     encode_path_segment(file.filename().string());

  auto response = endpoint.put_bytes(path, read_file_bytes(file.string()),
                                     "application/octet-stream", auth_headers(target));
  if (response.status == 200 || response.status == 201 || response.status == 202)
    return endpoint.url_for(path);
  if (response.status == 409)
    throw ConflictError("package " + file.filename().string() + " already exists for " + version +
                        " with different content");
  raise_for_status("package upload of " + file.filename().string(), response);
}

std::optional<ReleaseRecord> get_release(const GitLabTarget& target, const std::string& tag) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  std::string path =
      "/projects/" + encoded_project(target) + "/releases/" + encode_path_segment(tag);
  auto response = endpoint.get(path, auth_headers(target));
  if (response.status == 404) return std::nullopt;
  if (response.status != 200) raise_for_status("fetching release " + tag, response);
  return release_from_json(json::parse(response.body, nullptr, false));
}

ReleaseRecord create_release(const GitLabTarget& target, const ReleaseRecord& release) {
  net::HttpEndpoint endpoint(target.base_url, target.retry);
  std::string path = "/projects/" + encoded_project(target) + "/releases";
  auto response =
      endpoint.post_json(path, release_to_json(release).dump(), auth_headers(target));

  if (response.status == 201 || response.status == 200)
    return release_from_json(json::parse(response.body, nullptr, false));

  if (response.status == 409) {
    auto existing = get_release(target, release.tag_name);
    if (existing && existing->same_content(release)) return *existing;
    throw ConflictError("release " + release.tag_name + " already exists with different content");
  }
  if (response.status == 400 || response.status == 404) {
    std::string body = response.body.substr(0, 400);
    if (body.find("tag") != std::string::npos || body.find("Tag") != std::string::npos)
      throw TagNotFoundError("tag " + release.tag_name + " does not exist in the repository: " + body);
  }
  raise_for_status("creating release " + release.tag_name, response);
}

}  // namespace relpub::gitlab
