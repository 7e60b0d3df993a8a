#include "net/http_client.hpp"

#include <httplib.h>

#include <chrono>
#include <thread>

#include "core/error.hpp"
#include "core/url.hpp"

namespace relpub::net {

struct HttpEndpoint::Request {
  std::string method;
  std::string path;
  std::string body;
  std::string content_type;
  std::vector<MultipartField> multipart;
  const std::map<std::string, std::string>* headers = nullptr;
};

HttpEndpoint::HttpEndpoint(const std::string& base_url, RetryPolicy retry) : retry_(retry) {
  auto parsed = parse_url(base_url);
  if (!parsed) throw UsageError("not an absolute URL: '" + base_url + "'");
  if (parsed->scheme != "https" && parsed->scheme != "http")
    throw UsageError("unsupported URL scheme: '" + parsed->scheme + "'");
  if (parsed->scheme == "http" && !is_loopback_host(parsed->host))
    throw UsageError("plain http is only allowed for loopback hosts: '" + base_url + "'");

  origin_ = parsed->scheme + "://" + parsed->host;
  if (parsed->port > 0) origin_ += ":" + std::to_string(parsed->port);
  base_path_ = parsed->path == "/" ? "" : parsed->path;
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
  base_url_ = origin_ + base_path_;
}

std::string HttpEndpoint::url_for(const std::string& path) const { return base_url_ + path; }

HttpResponse HttpEndpoint::send(const Request& request) const {
  httplib::Headers headers;
  for (const auto& [name, value] : *request.headers) headers.emplace(name, value);

  std::string full_path = base_path_ + request.path;
  std::string last_failure = "connection failed";

  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    httplib::Client client(origin_);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);

    httplib::Result result;
    if (request.method == "GET") {
      result = client.Get(full_path, headers);
    } else if (request.method == "POST" && !request.multipart.empty()) {
      httplib::MultipartFormDataItems items;
      for (const auto& f : request.multipart)
        items.push_back({f.name, f.content, f.filename, f.content_type});
      result = client.Post(full_path, headers, items);
    } else if (request.method == "POST") {
      result = client.Post(full_path, headers, request.body, request.content_type);
    } else if (request.method == "PUT") {
      result = client.Put(full_path, headers, request.body, request.content_type);
    } else {
      throw UsageError("unsupported HTTP method: " + request.method);
    }

    if (result && result->status < 500) return {result->status, result->body};

    if (result)
      last_failure = "server returned " + std::to_string(result->status);
    else
      last_failure = "transport error (" + httplib::to_string(result.error()) + ")";

    if (attempt < retry_.max_attempts) {
      auto delay = std::chrono::milliseconds(retry_.base_delay_ms) * (1 << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }
  }

  throw TransportError(request.method + " " + full_path + " failed after " +
                           std::to_string(retry_.max_attempts) + " attempts: " + last_failure,
                       retry_.max_attempts);
}

HttpResponse HttpEndpoint::get(const std::string& path,
                               const std::map<std::string, std::string>& headers) const {
  Request r;
  r.method = "GET";
  r.path = path;
  r.headers = &headers;
  return send(r);
}

HttpResponse HttpEndpoint::post_json(const std::string& path, const std::string& body,
                                     const std::map<std::string, std::string>& headers) const {
  Request r;
  r.method = "POST";
  r.path = path;
  r.body = body;
  r.content_type = "application/json";
  r.headers = &headers;
  return send(r);
}

HttpResponse HttpEndpoint::put_json(const std::string& path, const std::string& body,
                                    const std::map<std::string, std::string>& headers) const {
  Request r;
  r.method = "PUT";
  r.path = path;
  r.body = body;
  r.content_type = "application/json";
  r.headers = &headers;
  return send(r);
}

HttpResponse HttpEndpoint::put_bytes(const std::string& path, const std::string& body,
                                     const std::string& content_type,
                                     const std::map<std::string, std::string>& headers) const {
  Request r;
  r.method = "PUT";
  r.path = path;
  r.body = body;
  r.content_type = content_type;
  r.headers = &headers;
  return send(r);
}

HttpResponse HttpEndpoint::post_multipart(const std::string& path,
                                          const std::vector<MultipartField>& fields,
                                          const std::map<std::string, std::string>& headers) const {
  Request r;
  r.method = "POST";
  r.path = path;
  r.multipart = fields;
  r.headers = &headers;
  return send(r);
}

}  // namespace relpub::net
