#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace relpub {

enum class Severity { error, warning };

inline const char* to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

/// One validation finding: a severity, a path into the offending document
/// (e.g. "metadata.subjects[2].value_uri") and a human-readable message.
struct Finding {
  Severity severity;
  std::string path;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  void add_error(std::string path, std::string message) {
    findings.push_back({Severity::error, std::move(path), std::move(message)});
  }
  void add_warning(std::string path, std::string message) {
    findings.push_back({Severity::warning, std::move(path), std::move(message)});
  }
  void merge(const ValidationReport& other) {
    findings.insert(findings.end(), other.findings.begin(), other.findings.end());
  }

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& f : findings)
      if (f.severity == Severity::error) ++n;
    return n;
  }
  std::size_t warning_count() const { return findings.size() - error_count(); }
  bool has_errors() const { return error_count() > 0; }
  bool empty() const { return findings.empty(); }
};

}  // namespace relpub
