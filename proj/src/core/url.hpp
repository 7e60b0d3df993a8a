#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace relpub {

/// Minimal decomposition of an absolute http(s)-style URL.
struct Url {
  std::string scheme;
  std::string host;
  int port = -1;  // -1 means scheme default
  std::string path;  // includes query, starts with '/' (defaults to "/")

  int effective_port() const {
    if (port > 0) return port;
    return scheme == "https" ? 443 : 80;
  }
};

/// Parses `scheme://host[:port][/path]`. Returns nullopt for anything that
/// is not an absolute URL of that shape.
std::optional<Url> parse_url(std::string_view text);

bool is_absolute_url(std::string_view text);

bool is_loopback_host(const std::string& host);

/// Percent-encodes one path segment (everything except unreserved chars).
std::string encode_path_segment(std::string_view raw);

}  // namespace relpub
