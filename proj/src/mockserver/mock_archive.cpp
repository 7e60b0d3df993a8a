#include "mockserver/mock_archive.hpp"

#include <httplib.h>

#include "core/digest.hpp"

namespace relpub::mock {

using nlohmann::json;

namespace {

bool authorized(const httplib::Request& req, const std::string& token) {
  return req.get_header_value("Authorization") == "Bearer " + token;
}

json dataset_to_json(const StoredDataset& dataset) {
  json files = json::array();
  for (const auto& f : dataset.files)
    files.push_back({{"name", f.name}, {"size", f.size}, {"sha256", f.sha256}});
  json j = {{"id", dataset.id},
            {"state", dataset.state},
            {"metadata_attached", dataset.metadata_attached},
            {"files", files}};
  if (!dataset.doi.empty()) j["doi"] = dataset.doi;
  return j;
}

}  // namespace

MockArchive::MockArchive(std::string token) : token_(std::move(token)) {
  server_ = std::make_unique<httplib::Server>();
  install_routes();
  port_ = server_->bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

MockArchive::~MockArchive() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockArchive::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

StoredDataset* MockArchive::find_dataset(const std::string& id) {
  for (auto& dataset : datasets_)
    if (dataset.id == id) return &dataset;
  return nullptr;
}

bool MockArchive::curator_publish(const std::string& dataset_id) {
  std::lock_guard<std::mutex> lock(mutex_);
  StoredDataset* dataset = find_dataset(dataset_id);
  if (!dataset || dataset->state != "in_review") return false;
  dataset->state = "published";
  dataset->state_history.push_back("published");
  dataset->doi = "10.5072/test." + dataset->id.substr(dataset->id.rfind('-') + 1);
  return true;
}

void MockArchive::set_auto_publish_after_polls(int polls) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto_publish_polls_ = polls;
}

void MockArchive::corrupt_uploads(int count) {
  std::lock_guard<std::mutex> lock(mutex_);
  corrupt_remaining_ = count;
}

std::vector<RecordedRequest> MockArchive::requests() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return log_;
}

std::vector<RecordedRequest> MockArchive::mutating_requests() const {
  std::vector<RecordedRequest> out;
  for (const auto& r : requests())
    if (r.is_mutating()) out.push_back(r);
  return out;
}

void MockArchive::clear_requests() {
  std::lock_guard<std::mutex> lock(mutex_);
  log_.clear();
}

std::vector<StoredDataset> MockArchive::datasets() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return datasets_;
}

void MockArchive::install_routes() {
  auto log_request = [this](const httplib::Request& req) {
    std::lock_guard<std::mutex> lock(mutex_);
    log_.push_back({req.method, req.path, next_request_seq()});
  };
  auto reject = [](httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", message}}.dump(), "application/json");
  };

  server_->Post("/datasets", [this, log_request, reject](const httplib::Request& req,
                                                         httplib::Response& res) {
    log_request(req);
    if (!authorized(req, token_)) return reject(res, 401, "unauthorized");
    std::lock_guard<std::mutex> lock(mutex_);
    StoredDataset dataset;
    dataset.id = "ds-" + std::to_string(next_id_++);
    datasets_.push_back(dataset);
    res.status = 201;
    res.set_content(dataset_to_json(dataset).dump(), "application/json");
  });

  server_->Put(R"(/datasets/([^/]+)/metadata)",
               [this, log_request, reject](const httplib::Request& req, httplib::Response& res) {
                 log_request(req);
                 if (!authorized(req, token_)) return reject(res, 401, "unauthorized");
                 std::lock_guard<std::mutex> lock(mutex_);
                 StoredDataset* dataset = find_dataset(req.matches[1].str());
                 if (!dataset) return reject(res, 404, "dataset not found");
                 if (dataset->state != "draft")
                   return reject(res, 409, "dataset is not in draft state");
                 json doc = json::parse(req.body, nullptr, false);
                 if (doc.is_discarded()) return reject(res, 422, "metadata is not valid JSON");
                 if (!doc.contains("title") || doc["title"].get<std::string>().empty())
                   return reject(res, 422, "metadata rejected: title is mandatory");
                 if (!doc.contains("creators") || doc["creators"].empty())
                   return reject(res, 422, "metadata rejected: creators is mandatory");
                 dataset->metadata = doc;
                 dataset->metadata_attached = true;
                 res.status = 200;
                 res.set_content(dataset_to_json(*dataset).dump(), "application/json");
               });

  server_->Post(R"(/datasets/([^/]+)/files)",
                [this, log_request, reject](const httplib::Request& req, httplib::Response& res) {
                  log_request(req);
                  if (!authorized(req, token_)) return reject(res, 401, "unauthorized");
                  std::lock_guard<std::mutex> lock(mutex_);
                  StoredDataset* dataset = find_dataset(req.matches[1].str());
                  if (!dataset) return reject(res, 404, "dataset not found");
                  if (dataset->state != "draft")
                    return reject(res, 409, "dataset is not in draft state");
                  if (!req.has_file("file")) return reject(res, 422, "multipart field 'file' missing");
                  const auto& file = req.get_file_value("file");

                  StoredDatasetFile stored;
                  stored.name = file.filename;
                  stored.size = file.content.size();
                  stored.sha256 = digest_bytes_hex(file.content, HashAlg::sha256);
                  std::string acked = stored.sha256;
                  if (corrupt_remaining_ > 0) {
                    --corrupt_remaining_;
                    acked[0] = acked[0] == '0' ? '1' : '0';  // flip one nibble
                  }
                  dataset->files.push_back(stored);
                  res.status = 201;
                  res.set_content(json{{"name", stored.name},
                                       {"size", stored.size},
                                       {"sha256", acked}}
                                      .dump(),
                                  "application/json");
                });

  server_->Post(R"(/datasets/([^/]+)/submit)",
                [this, log_request, reject](const httplib::Request& req, httplib::Response& res) {
                  log_request(req);
                  if (!authorized(req, token_)) return reject(res, 401, "unauthorized");
                  std::lock_guard<std::mutex> lock(mutex_);
                  StoredDataset* dataset = find_dataset(req.matches[1].str());
                  if (!dataset) return reject(res, 404, "dataset not found");
                  if (dataset->state != "draft")
                    return reject(res, 409, "dataset is not in draft state");
                  if (dataset->files.empty()) return reject(res, 412, "no files uploaded");
                  if (!dataset->metadata_attached) return reject(res, 412, "metadata not attached");
                  dataset->state = "in_review";
                  dataset->state_history.push_back("in_review");
                  res.status = 200;
                  res.set_content(dataset_to_json(*dataset).dump(), "application/json");
                });

  server_->Get(R"(/datasets/([^/]+))", [this, log_request, reject](const httplib::Request& req,
                                                                   httplib::Response& res) {
    log_request(req);
    if (!authorized(req, token_)) return reject(res, 401, "unauthorized");
    std::lock_guard<std::mutex> lock(mutex_);
    StoredDataset* dataset = find_dataset(req.matches[1].str());
    if (!dataset) return reject(res, 404, "dataset not found");
    if (dataset->state == "in_review" && auto_publish_polls_ > 0) {
      if (++dataset->polls_seen >= auto_publish_polls_) {
        dataset->state = "published";
        dataset->state_history.push_back("published");
        dataset->doi = "10.5072/test." + dataset->id.substr(dataset->id.rfind('-') + 1);
      }
    }
    res.status = 200;
    res.set_content(dataset_to_json(*dataset).dump(), "application/json");
  });
}

}  // namespace relpub::mock
