#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace relpub::sync {

/// A CMS page split into its YAML frontmatter (text between the `---`
/// delimiter lines) and the body, which is carried as raw bytes and never
/// rewritten.
struct PageDocument {
  std::filesystem::path path;
  std::string frontmatter;  // without the delimiter lines
  std::string body;         // everything after the closing delimiter line
};

/// Splits a page. Returns nullopt when the file does not begin with a
/// frontmatter block; throws ParseError when the block is unterminated.
std::optional<PageDocument> read_page(const std::filesystem::path& path);
std::optional<PageDocument> split_page(const std::string& content,
                                       const std::filesystem::path& path);

std::string assemble_page(const PageDocument& page);

/// Replaces (or appends) the top-level `data:` block inside the
/// frontmatter text, leaving every other byte untouched.
std::string splice_data_block(const std::string& frontmatter, const std::string& data_block);

/// Atomic write (temp file + rename). Returns true when the on-disk bytes
/// actually changed.
bool write_file_if_changed(const std::filesystem::path& path, const std::string& content);

}  // namespace relpub::sync
