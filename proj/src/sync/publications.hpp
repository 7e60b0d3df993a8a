#pragma once

#include <yaml-cpp/yaml.h>

#include <string>
#include <vector>

#include "sync/bibtex.hpp"

namespace relpub::sync {

struct Publication {
  std::vector<std::string> authors;  // in entry order
  std::string title;
  std::string venue;
  int year = 0;  // 0 when the entry has no parseable year
  std::string doi_url;

  bool operator==(const Publication&) const = default;
};

/// Publication list for the website: sorted by year descending, file order
/// within a year. Missing fields stay absent.
std::vector<Publication> render_publications(const std::vector<BibEntry>& entries);

/// Shape stored under a page's `data` frontmatter key.
YAML::Node publications_to_yaml(const std::vector<Publication>& publications);

/// Removes grouping braces for display; LaTeX escapes stay verbatim.
std::string strip_braces(const std::string& text);

}  // namespace relpub::sync
