#pragma once

#include <map>
#include <string>
#include <vector>

namespace relpub::net {

struct RetryPolicy {
  int max_attempts = 3;      // total attempts, not retries
  int base_delay_ms = 500;   // doubled after each failed attempt
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

struct MultipartField {
  std::string name;
  std::string content;
  std::string filename;      // empty for plain fields
  std::string content_type;  // used with filename
};

/// One remote endpoint. Enforces https for anything that is not loopback
/// (mock services run on 127.0.0.1 over plain http). Retries 5xx responses
/// and transport failures with exponential backoff; 4xx is returned to the
/// caller immediately. Error text never contains header values, so tokens
/// cannot leak through exception messages.
class HttpEndpoint {
 public:
  explicit HttpEndpoint(const std::string& base_url, RetryPolicy retry = {});

  /// `path` is appended to the base URL's path component.
  HttpResponse get(const std::string& path,
                   const std::map<std::string, std::string>& headers) const;
  HttpResponse post_json(const std::string& path, const std::string& body,
                         const std::map<std::string, std::string>& headers) const;
  HttpResponse put_json(const std::string& path, const std::string& body,
                        const std::map<std::string, std::string>& headers) const;
  HttpResponse put_bytes(const std::string& path, const std::string& body,
                         const std::string& content_type,
                         const std::map<std::string, std::string>& headers) const;
  HttpResponse post_multipart(const std::string& path, const std::vector<MultipartField>& fields,
                              const std::map<std::string, std::string>& headers) const;

  const std::string& base_url() const { return base_url_; }
  /// Base URL joined with `path` (for reporting stable download URLs).
  std::string url_for(const std::string& path) const;

 private:
  struct Request;
  HttpResponse send(const Request& request) const;

  std::string base_url_;     // normalized, no trailing slash
  std::string origin_;       // scheme://host:port
  std::string base_path_;    // path prefix, may be empty
  RetryPolicy retry_;
};

}  // namespace relpub::net
