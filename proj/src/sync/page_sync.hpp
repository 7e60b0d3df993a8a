#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "core/validation.hpp"
#include "sync/frontmatter.hpp"

namespace relpub::sync {

struct SyncRule {
  std::string pipeline;
  std::string source;  // repo-relative path
};

struct PageMatch {
  PageDocument page;
  SyncRule rule;
};

struct ScanResult {
  std::vector<PageMatch> pages;      // tagged pages, sorted by path
  std::vector<Finding> findings;     // malformed pages, collected not fatal
};

/// Every page under site_root whose frontmatter carries
/// `pipeline: <pipeline>` together with a `source:` key.
ScanResult scan_pages(const std::filesystem::path& site_root, const std::string& pipeline);

/// Rebuilds the page's `data` frontmatter key from the source file:
/// .yml/.yaml sources are stored structurally, .bib sources as the
/// rendered publication list, anything else as raw text. Body bytes and
/// all other frontmatter keys are untouched; the operation is idempotent.
PageDocument sync_page(const PageDocument& page, const SyncRule& rule,
                       const std::filesystem::path& repo_root);

struct SiteSyncStats {
  int pages_matched = 0;
  int pages_updated = 0;
  std::vector<Finding> findings;
};

/// scan + sync + write-if-changed over a whole site checkout.
SiteSyncStats sync_site(const std::filesystem::path& site_root,
                        const std::filesystem::path& repo_root, const std::string& pipeline);

}  // namespace relpub::sync
