#include "sync/publications.hpp"

#include <algorithm>
#include <cstdlib>

namespace relpub::sync {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Splits an author field on " and " at brace depth 0.
std::vector<std::string> split_authors(const std::string& field) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (std::size_t i = 0; i < field.size(); ++i) {
    char c = field[i];
    if (c == '\\' && i + 1 < field.size()) {
      current.push_back(c);
      current.push_back(field[++i]);
      continue;
    }
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (depth == 0 && field.compare(i, 5, " and ") == 0) {
      out.push_back(trim(current));
      current.clear();
      i += 4;
      continue;
    }
    current.push_back(c);
  }
  if (!trim(current).empty()) out.push_back(trim(current));
  return out;
}

}  // namespace

std::string strip_braces(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      out.push_back(c);
      out.push_back(text[++i]);
      continue;
    }
    if (c == '{' || c == '}') continue;
    out.push_back(c);
  }
  return out;
}

std::vector<Publication> render_publications(const std::vector<BibEntry>& entries) {
  std::vector<Publication> out;
  out.reserve(entries.size());

  for (const auto& entry : entries) {
    Publication pub;
    if (const std::string* author = entry.field("author")) {
      for (const auto& a : split_authors(*author)) pub.authors.push_back(strip_braces(a));
    }
    if (const std::string* title = entry.field("title")) pub.title = strip_braces(*title);

    for (const char* venue_field : {"journal", "booktitle", "publisher", "institution", "school"}) {
      if (const std::string* venue = entry.field(venue_field)) {
        pub.venue = strip_braces(*venue);
        break;
      }
    }

    if (const std::string* year = entry.field("year")) {
      char* end = nullptr;
      long parsed = std::strtol(year->c_str(), &end, 10);
      if (end && *end == '\0' && parsed > 0) pub.year = static_cast<int>(parsed);
    }

    if (const std::string* doi = entry.field("doi")) {
      if (!doi->empty())
        pub.doi_url = doi->rfind("http", 0) == 0 ? *doi : "https://doi.org/" + *doi;
    }

    out.push_back(std::move(pub));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Publication& a, const Publication& b) { return a.year > b.year; });
  return out;
}

YAML::Node publications_to_yaml(const std::vector<Publication>& publications) {
  YAML::Node root(YAML::NodeType::Sequence);
  for (const auto& pub : publications) {
    YAML::Node n(YAML::NodeType::Map);
    if (!pub.authors.empty()) {
      for (const auto& a : pub.authors) n["authors"].push_back(a);
    }
    if (!pub.title.empty()) n["title"] = pub.title;
    if (!pub.venue.empty()) n["venue"] = pub.venue;
    if (pub.year > 0) n["year"] = pub.year;
    if (!pub.doi_url.empty()) n["doi_url"] = pub.doi_url;
    root.push_back(n);
  }
  return root;
}

}  // namespace relpub::sync
