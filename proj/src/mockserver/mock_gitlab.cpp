#include "mockserver/mock_gitlab.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>

namespace relpub::mock {

using nlohmann::json;

int next_request_seq() {
  static std::atomic<int> counter{0};
  return ++counter;
}

namespace {

bool authorized(const httplib::Request& req, const std::string& token) {
  return req.get_header_value("PRIVATE-TOKEN") == token;
}

}  // namespace

MockGitLab::MockGitLab(std::string token) : token_(std::move(token)) {
  server_ = std::make_unique<httplib::Server>();
  install_routes();
  port_ = server_->bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

MockGitLab::~MockGitLab() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockGitLab::api_url() const {
  return "http://127.0.0.1:" + std::to_string(port_) + "/api/v4";
}

void MockGitLab::add_tag(const std::string& tag) {
  std::lock_guard<std::mutex> lock(mutex_);
  tags_.insert(tag);
}

void MockGitLab::fail_uploads(int status, int count) {
  std::lock_guard<std::mutex> lock(mutex_);
  fail_status_ = status;
  fail_remaining_ = count;
}

std::vector<RecordedRequest> MockGitLab::requests() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return log_;
}

std::vector<RecordedRequest> MockGitLab::mutating_requests() const {
  std::vector<RecordedRequest> out;
  for (const auto& r : requests())
    if (r.is_mutating()) out.push_back(r);
  return out;
}

void MockGitLab::clear_requests() {
  std::lock_guard<std::mutex> lock(mutex_);
  log_.clear();
}

std::size_t MockGitLab::package_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return packages_.size();
}

std::string MockGitLab::package_bytes(const std::string& package, const std::string& version,
                                      const std::string& filename) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = packages_.find(package + "/" + version + "/" + filename);
  return it == packages_.end() ? std::string() : it->second;
}

std::vector<StoredRelease> MockGitLab::releases() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<StoredRelease> out;
  for (const auto& [tag, release] : releases_) out.push_back(release);
  return out;
}

void MockGitLab::install_routes() {
  auto log_request = [this](const httplib::Request& req) {
    std::lock_guard<std::mutex> lock(mutex_);
    log_.push_back({req.method, req.path, next_request_seq()});
  };

  // PUT /api/v4/projects/:id/packages/generic/:pkg/:version/:filename
  server_->Put(R"(/api/v4/projects/([^/]+)/packages/generic/([^/]+)/([^/]+)/([^/]+))",
               [this, log_request](const httplib::Request& req, httplib::Response& res) {
                 log_request(req);
                 if (!authorized(req, token_)) {
                   res.status = 401;
                   res.set_content(R"({"message":"401 Unauthorized"})", "application/json");
                   return;
                 }
                 {
                   std::lock_guard<std::mutex> lock(mutex_);
                   if (fail_remaining_ > 0) {
                     --fail_remaining_;
                     res.status = fail_status_;
                     res.set_content(R"({"message":"injected fault"})", "application/json");
                     return;
                   }
                   std::string key =
                       req.matches[2].str() + "/" + req.matches[3].str() + "/" + req.matches[4].str();
                   auto it = packages_.find(key);
                   if (it != packages_.end() && it->second != req.body) {
                     res.status = 409;
                     res.set_content(R"({"message":"package file already exists"})",
                                     "application/json");
                     return;
                   }
                   packages_[key] = req.body;
                 }
                 res.status = 201;
                 res.set_content(R"({"message":"201 Created"})", "application/json");
               });

  // POST /api/v4/projects/:id/releases
  server_->Post(R"(/api/v4/projects/([^/]+)/releases)",
                [this, log_request](const httplib::Request& req, httplib::Response& res) {
                  log_request(req);
                  if (!authorized(req, token_)) {
                    res.status = 401;
                    res.set_content(R"({"message":"401 Unauthorized"})", "application/json");
                    return;
                  }
                  json body = json::parse(req.body, nullptr, false);
                  if (body.is_discarded() || !body.contains("tag_name")) {
                    res.status = 400;
                    res.set_content(R"({"message":"tag_name is required"})", "application/json");
                    return;
                  }
                  std::string tag = body["tag_name"].get<std::string>();
                  std::lock_guard<std::mutex> lock(mutex_);
                  if (!tags_.count(tag)) {
                    res.status = 404;
                    res.set_content(R"({"message":"Tag )" + tag + R"( not found"})",
                                    "application/json");
                    return;
                  }
                  if (releases_.count(tag)) {
                    res.status = 409;
                    res.set_content(R"({"message":"Release already exists"})", "application/json");
                    return;
                  }
                  StoredRelease release;
                  release.tag_name = tag;
                  release.name = body.value("name", tag);
                  release.description = body.value("description", "");
                  if (body.contains("assets") && body["assets"].contains("links")) {
                    for (const auto& link : body["assets"]["links"]) {
                      release.links.push_back({{"name", link.value("name", "")},
                                               {"url", link.value("url", "")},
                                               {"link_type", link.value("link_type", "package")}});
                    }
                  }
                  releases_[tag] = release;

                  json links = json::array();
                  for (const auto& link : release.links)
                    links.push_back({{"name", link.at("name")},
                                     {"url", link.at("url")},
                                     {"link_type", link.at("link_type")}});
                  json echo = {{"tag_name", release.tag_name},
                               {"name", release.name},
                               {"description", release.description},
                               {"assets", {{"links", links}}},
                               {"_links",
                                {{"self", "http://127.0.0.1:" + std::to_string(port_) +
                                              "/project/-/releases/" + tag}}}};
                  res.status = 201;
                  res.set_content(echo.dump(), "application/json");
                });

  // GET /api/v4/projects/:id/releases/:tag
  server_->Get(R"(/api/v4/projects/([^/]+)/releases/([^/]+))",
               [this, log_request](const httplib::Request& req, httplib::Response& res) {
                 log_request(req);
                 if (!authorized(req, token_)) {
                   res.status = 401;
                   res.set_content(R"({"message":"401 Unauthorized"})", "application/json");
                   return;
                 }
                 std::string tag = req.matches[2].str();
                 std::lock_guard<std::mutex> lock(mutex_);
                 auto it = releases_.find(tag);
                 if (it == releases_.end()) {
                   res.status = 404;
                   res.set_content(R"({"message":"404 Not Found"})", "application/json");
                   return;
                 }
                 json links = json::array();
                 for (const auto& link : it->second.links)
                   links.push_back({{"name", link.at("name")},
                                    {"url", link.at("url")},
                                    {"link_type", link.at("link_type")}});
                 json echo = {{"tag_name", it->second.tag_name},
                              {"name", it->second.name},
                              {"description", it->second.description},
                              {"assets", {{"links", links}}},
                              {"_links",
                               {{"self", "http://127.0.0.1:" + std::to_string(port_) +
                                             "/project/-/releases/" + tag}}}};
                 res.status = 200;
                 res.set_content(echo.dump(), "application/json");
               });
}

}  // namespace relpub::mock
