#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mockserver/mock_gitlab.hpp"  // RecordedRequest

namespace httplib {
class Server;
}

namespace relpub::mock {

struct StoredDatasetFile {
  std::string name;
  std::uint64_t size = 0;
  std::string sha256;
};

struct StoredDataset {
  std::string id;
  std::string state = "draft";
  std::string doi;
  bool metadata_attached = false;
  nlohmann::json metadata;
  std::vector<StoredDatasetFile> files;
  std::vector<std::string> state_history{"draft"};
  int polls_seen = 0;
};

/// Reference implementation of the deposit protocol the archive client
/// speaks (POST /datasets, PUT /datasets/{id}/metadata, POST
/// /datasets/{id}/files, POST /datasets/{id}/submit, GET /datasets/{id}).
/// The lifecycle draft -> in_review -> published is enforced server-side;
/// publication itself is the curator's click, exposed here as
/// curator_publish().
class MockArchive {
 public:
  explicit MockArchive(std::string token);
  ~MockArchive();

  MockArchive(const MockArchive&) = delete;
  MockArchive& operator=(const MockArchive&) = delete;

  int port() const { return port_; }
  std::string base_url() const;  // http://127.0.0.1:<port>

  /// The curator's "single click". Only legal from in_review; returns
  /// false (and leaves state untouched) otherwise.
  bool curator_publish(const std::string& dataset_id);

  /// Publish automatically after the dataset in review was polled this
  /// many times (0 disables the behavior).
  void set_auto_publish_after_polls(int polls);

  /// The next `count` file uploads acknowledge a corrupted digest.
  void corrupt_uploads(int count);

  std::vector<RecordedRequest> requests() const;
  std::vector<RecordedRequest> mutating_requests() const;
  void clear_requests();

  std::vector<StoredDataset> datasets() const;

 private:
  void install_routes();
  StoredDataset* find_dataset(const std::string& id);

  std::string token_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;

  mutable std::mutex mutex_;
  std::vector<StoredDataset> datasets_;
  std::vector<RecordedRequest> log_;
  int next_id_ = 1;
  int auto_publish_polls_ = 0;
  int corrupt_remaining_ = 0;
};

}  // namespace relpub::mock
