#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace httplib {
class Server;
}

namespace relpub::mock {

struct RecordedRequest {
  std::string method;
  std::string path;
  int seq = 0;  // process-wide arrival order, shared by all mock services

  bool is_mutating() const { return method != "GET" && method != "HEAD"; }
};

/// Monotonic counter shared by the mock services so interleaved request
/// logs can be merged into one ordered trace.
int next_request_seq();

struct StoredRelease {
  std::string tag_name;
  std::string name;
  std::string description;
  std::vector<std::map<std::string, std::string>> links;  // name/url/link_type
};

/// In-process stand-in for the GitLab v4 endpoints the release job uses:
/// the generic package registry and the releases API. State is inspectable
/// so tests can assert the exact request sequence and final contents.
class MockGitLab {
 public:
  explicit MockGitLab(std::string token);
  ~MockGitLab();

  MockGitLab(const MockGitLab&) = delete;
  MockGitLab& operator=(const MockGitLab&) = delete;

  int port() const { return port_; }
  std::string api_url() const;  // http://127.0.0.1:<port>/api/v4

  void add_tag(const std::string& tag);

  /// The next `count` package uploads answer with `status` before the
  /// server behaves normally again.
  void fail_uploads(int status, int count);

  std::vector<RecordedRequest> requests() const;
  std::vector<RecordedRequest> mutating_requests() const;
  void clear_requests();

  std::size_t package_count() const;
  /// Stored bytes for name/version/filename; empty when absent.
  std::string package_bytes(const std::string& package, const std::string& version,
                            const std::string& filename) const;
  std::vector<StoredRelease> releases() const;

 private:
  void install_routes();

  std::string token_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;

  mutable std::mutex mutex_;
  std::set<std::string> tags_;
  std::map<std::string, std::string> packages_;  // "pkg/version/filename" -> bytes
  std::map<std::string, StoredRelease> releases_;
  std::vector<RecordedRequest> log_;
  int fail_status_ = 0;
  int fail_remaining_ = 0;
};

}  // namespace relpub::mock
