#include "sync/frontmatter.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/yaml_scalars.hpp"

namespace relpub::sync {

std::optional<PageDocument> split_page(const std::string& content,
                                       const std::filesystem::path& path) {
  if (content.rfind("---\n", 0) != 0) return std::nullopt;
  std::size_t close = content.find("\n---\n", 3);
  if (close == std::string::npos) {
    // Allow a page that ends directly with the closing delimiter.
    if (content.size() >= 8 && content.compare(content.size() - 4, 4, "\n---") == 0) {
      PageDocument page;
      page.path = path;
      page.frontmatter = content.substr(4, content.size() - 8);
      if (!page.frontmatter.empty() && page.frontmatter.back() != '\n') page.frontmatter += "\n";
      return page;
    }
    throw ParseError(path.string() + ": frontmatter block is not terminated by '---'");
  }
  PageDocument page;
  page.path = path;
  page.frontmatter = content.substr(4, close + 1 - 4);
  page.body = content.substr(close + 5);
  return page;
}

std::optional<PageDocument> read_page(const std::filesystem::path& path) {
  return split_page(read_file_bytes(path.string()), path);
}

std::string assemble_page(const PageDocument& page) {
  std::string fm = page.frontmatter;
  if (!fm.empty() && fm.back() != '\n') fm += "\n";
  return "---\n" + fm + "---\n" + page.body;
}

namespace {

bool is_top_level_key_line(const std::string& line) {
  if (line.empty()) return false;
  char first = line[0];
  if (first == ' ' || first == '\t' || first == '-' || first == '#') return false;
  return line.find(':') != std::string::npos;
}

bool is_data_key_line(const std::string& line) {
  if (line.rfind("data:", 0) != 0) return false;
  return line.size() == 5 || line[5] == ' ' || line[5] == '\t';
}

}  // namespace

std::string splice_data_block(const std::string& frontmatter, const std::string& data_block) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < frontmatter.size()) {
    std::size_t nl = frontmatter.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(frontmatter.substr(pos));
      break;
    }
    lines.push_back(frontmatter.substr(pos, nl - pos));
    pos = nl + 1;
  }

  std::string out;
  bool replaced = false;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (!replaced && is_data_key_line(lines[i])) {
      out += data_block;
      ++i;
      // Continuation lines of the old data block: indented content,
      // sequence items and blank lines up to the next top-level key.
      while (i < lines.size() && !is_top_level_key_line(lines[i]) &&
             (lines[i].empty() || lines[i][0] == ' ' || lines[i][0] == '\t' ||
              lines[i][0] == '-')) {
        ++i;
      }
      replaced = true;
      continue;
    }
    out += lines[i];
    out += "\n";
    ++i;
  }
  if (!replaced) out += data_block;
  return out;
}

bool write_file_if_changed(const std::filesystem::path& path, const std::string& content) {
  if (std::filesystem::exists(path)) {
    if (read_file_bytes(path.string()) == content) return false;
  }
  std::filesystem::path tmp = path;
  tmp += ".relpub-tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return true;
}

}  // namespace relpub::sync
