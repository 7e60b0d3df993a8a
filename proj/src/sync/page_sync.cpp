#include "sync/page_sync.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>

#include "core/error.hpp"
#include "core/yaml_scalars.hpp"
#include "sync/bibtex.hpp"
#include "sync/publications.hpp"

namespace relpub::sync {

namespace fs = std::filesystem;

namespace {

bool has_extension(const std::string& name, std::string_view ext) {
  if (name.size() < ext.size()) return false;
  return std::equal(ext.rbegin(), ext.rend(), name.rbegin(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
}

std::string emit_data_block(const YAML::Node& data) {
  YAML::Node wrapper(YAML::NodeType::Map);
  wrapper["data"] = data;
  YAML::Emitter out;
  out.SetIndent(2);
  out << wrapper;
  std::string text = out.c_str();
  text += "\n";
  return text;
}

}  // namespace

ScanResult scan_pages(const fs::path& site_root, const std::string& pipeline) {
  ScanResult result;
  if (!fs::is_directory(site_root))
    throw IoError("site root is not a directory: " + site_root.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(site_root)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (has_extension(name, ".md") || has_extension(name, ".markdown"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    std::string rel = fs::relative(path, site_root).generic_string();
    try {
      auto page = read_page(path);
      if (!page) continue;  // no frontmatter, not a candidate
      YAML::Node fm = parse_yaml(page->frontmatter, rel);
      if (!fm.IsMap()) continue;
      std::string page_pipeline = yaml_scalar(fm["pipeline"], rel + ":pipeline");
      if (page_pipeline != pipeline) continue;
      std::string source = yaml_scalar(fm["source"], rel + ":source");
      if (source.empty()) {
        result.findings.push_back(
            {Severity::error, rel, "page is tagged pipeline: " + pipeline + " but has no source"});
        continue;
      }
      result.pages.push_back({std::move(*page), {page_pipeline, source}});
    } catch (const Error& e) {
      result.findings.push_back({Severity::error, rel, e.what()});
    }
  }
  return result;
}

PageDocument sync_page(const PageDocument& page, const SyncRule& rule, const fs::path& repo_root) {
  fs::path source = repo_root / rule.source;
  if (!fs::is_regular_file(source))
    throw MissingSourceError("sync source does not exist: " + rule.source);

  std::string raw = read_file_bytes(source.string());

  YAML::Node data;
  if (has_extension(rule.source, ".yml") || has_extension(rule.source, ".yaml")) {
    data = parse_yaml(raw, rule.source);
  } else if (has_extension(rule.source, ".bib")) {
    BibFile bib = parse_bibtex(raw);
    data = publications_to_yaml(render_publications(bib.entries));
  } else {
    data = YAML::Node(raw);
  }

  PageDocument updated = page;
  updated.frontmatter = splice_data_block(page.frontmatter, emit_data_block(data));
  return updated;
}

SiteSyncStats sync_site(const fs::path& site_root, const fs::path& repo_root,
                        const std::string& pipeline) {
  SiteSyncStats stats;
  ScanResult scan = scan_pages(site_root, pipeline);
  stats.findings = scan.findings;
  stats.pages_matched = static_cast<int>(scan.pages.size());

  for (const auto& match : scan.pages) {
    PageDocument updated = sync_page(match.page, match.rule, repo_root);
    if (write_file_if_changed(updated.path, assemble_page(updated))) ++stats.pages_updated;
  }
  return stats;
}

}  // namespace relpub::sync
