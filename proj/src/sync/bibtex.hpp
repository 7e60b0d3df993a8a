#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relpub::sync {

struct BibEntry {
  std::string entry_type;  // lowercased, e.g. "article"
  std::string citekey;
  std::vector<std::pair<std::string, std::string>> fields;  // in file order, names lowercased

  const std::string* field(std::string_view name) const;

  bool operator==(const BibEntry&) const = default;
};

struct BibFile {
  std::vector<BibEntry> entries;   // file order
  std::vector<std::string> warnings;
};

/// BibTeX parser: brace and quote delimited values, `#` concatenation,
/// @string macros, @comment/@preamble and unknown entry types skipped with
/// a warning. LaTeX escapes are passed through verbatim. Duplicate citekeys
/// and unbalanced braces raise ParseError with a line number.
BibFile parse_bibtex(std::string_view text);

/// Canonical re-rendering; parse_bibtex reads it back into equal entries.
std::string serialize_bibtex(const std::vector<BibEntry>& entries);

}  // namespace relpub::sync
