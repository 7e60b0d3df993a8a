#include "sync/bibtex.hpp"

#include <cctype>
#include <map>
#include <set>

#include "core/error.hpp"

namespace relpub::sync {

namespace {

const std::set<std::string>& known_entry_types() {
  static const std::set<std::string> kTypes = {
      "article",   "book",         "booklet",     "conference", "inbook",
      "incollection", "inproceedings", "manual",   "mastersthesis", "misc",
      "online",    "phdthesis",    "proceedings", "software",   "techreport",
      "unpublished"};
  return kTypes;
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// Collapses runs of whitespace to single spaces and trims, the way BibTeX
/// treats multi-line field values.
std::string collapse_ws(const std::string& text) {
  std::string out;
  bool in_ws = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = !out.empty();
      continue;
    }
    if (in_ws) out.push_back(' ');
    in_ws = false;
    out.push_back(c);
  }
  return out;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char next() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  int line() const { return line_; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) next();
  }

  /// Advances to the next '@' at top level; anything in between is the
  /// usual implicit BibTeX comment text.
  bool seek_entry() {
    while (!eof()) {
      if (peek() == '@') return true;
      next();
    }
    return false;
  }

  std::string ident() {
    std::string out;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
          c == '.' || c == '+' || c == '/') {
        out.push_back(next());
      } else {
        break;
      }
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : scan_(text) {}

  BibFile run() {
    BibFile file;
    std::set<std::string> citekeys;
    while (scan_.seek_entry()) {
      scan_.next();  // '@'
      int entry_line = scan_.line();
      std::string type = lowercase(scan_.ident());
      scan_.skip_ws();
      if (scan_.eof()) throw ParseError("unexpected end of file after @" + type, entry_line);
      char opener = scan_.next();
      if (opener != '{' && opener != '(')
        throw ParseError("expected '{' after @" + type, scan_.line());
      char closer = opener == '{' ? '}' : ')';

      if (type == "comment" || type == "preamble") {
        skip_balanced(closer, entry_line);
        file.warnings.push_back("skipped @" + type + " at line " + std::to_string(entry_line));
        continue;
      }
      if (type == "string") {
        parse_string_macro(closer, entry_line);
        continue;
      }
      if (!known_entry_types().count(type)) {
        skip_balanced(closer, entry_line);
        file.warnings.push_back("skipped unknown entry type @" + type + " at line " +
                                std::to_string(entry_line));
        continue;
      }

      BibEntry entry;
      entry.entry_type = type;
      scan_.skip_ws();
      entry.citekey = scan_.ident();
      if (entry.citekey.empty())
        throw ParseError("entry @" + type + " has no citation key", scan_.line());
      if (!citekeys.insert(entry.citekey).second)
        throw ParseError("duplicate citekey '" + entry.citekey + "'", entry_line);

      scan_.skip_ws();
      while (!scan_.eof() && scan_.peek() == ',') {
        scan_.next();
        scan_.skip_ws();
        if (!scan_.eof() && scan_.peek() == closer) break;
        std::string name = lowercase(scan_.ident());
        if (name.empty()) throw ParseError("expected a field name", scan_.line());
        scan_.skip_ws();
        if (scan_.eof() || scan_.next() != '=')
          throw ParseError("expected '=' after field '" + name + "'", scan_.line());
        std::string value = parse_value(file.warnings);
        entry.fields.push_back({name, collapse_ws(value)});
        scan_.skip_ws();
      }
      if (scan_.eof() || scan_.next() != closer)
        throw ParseError("entry '" + entry.citekey + "' is not closed", entry_line);

      file.entries.push_back(std::move(entry));
    }
    return file;
  }

 private:
  /// value := part (# part)*; part := {braced} | "quoted" | bare
  std::string parse_value(std::vector<std::string>& warnings) {
    std::string value;
    while (true) {
      scan_.skip_ws();
      if (scan_.eof()) throw ParseError("unexpected end of file in field value", scan_.line());
      char c = scan_.peek();
      if (c == '{') {
        value += parse_braced();
      } else if (c == '"') {
        value += parse_quoted();
      } else {
        std::string word = scan_.ident();
        if (word.empty())
          throw ParseError("malformed field value", scan_.line());
        if (word.find_first_not_of("0123456789") == std::string::npos) {
          value += word;
        } else {
          auto it = macros_.find(lowercase(word));
          if (it == macros_.end()) {
            warnings.push_back("undefined string macro '" + word + "' at line " +
                               std::to_string(scan_.line()));
            value += word;
          } else {
            value += it->second;
          }
        }
      }
      scan_.skip_ws();
      if (!scan_.eof() && scan_.peek() == '#') {
        scan_.next();
        continue;
      }
      return value;
    }
  }

  std::string parse_braced() {
    int start_line = scan_.line();
    scan_.next();  // '{'
    std::string out;
    int depth = 1;
    while (!scan_.eof()) {
      char c = scan_.next();
      if (c == '\\' && !scan_.eof()) {  // keep LaTeX escapes verbatim
        out.push_back(c);
        out.push_back(scan_.next());
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') {
        --depth;
        if (depth == 0) return out;
      }
      out.push_back(c);
    }
    throw ParseError("unbalanced braces in value", start_line);
  }

  std::string parse_quoted() {
    int start_line = scan_.line();
    scan_.next();  // '"'
    std::string out;
    int depth = 0;
    while (!scan_.eof()) {
      char c = scan_.next();
      if (c == '\\' && !scan_.eof()) {
        out.push_back(c);
        out.push_back(scan_.next());
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') {
        if (depth == 0) throw ParseError("unbalanced braces in value", start_line);
        --depth;
      }
      if (c == '"' && depth == 0) return out;
      out.push_back(c);
    }
    throw ParseError("unterminated quoted value", start_line);
  }

  void parse_string_macro(char closer, int entry_line) {
    scan_.skip_ws();
    std::string name = lowercase(scan_.ident());
    scan_.skip_ws();
    if (scan_.eof() || scan_.next() != '=')
      throw ParseError("expected '=' in @string", scan_.line());
    std::vector<std::string> ignored;
    macros_[name] = collapse_ws(parse_value(ignored));
    scan_.skip_ws();
    if (scan_.eof() || scan_.next() != closer)
      throw ParseError("@string is not closed", entry_line);
  }

  void skip_balanced(char closer, int entry_line) {
    char opener = closer == '}' ? '{' : '(';
    int depth = 1;
    while (!scan_.eof()) {
      char c = scan_.next();
      if (c == opener) ++depth;
      if (c == closer) {
        --depth;
        if (depth == 0) return;
      }
    }
    throw ParseError("unbalanced braces", entry_line);
  }

  Scanner scan_;
  std::map<std::string, std::string> macros_;
};

}  // namespace

const std::string* BibEntry::field(std::string_view name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return &value;
  return nullptr;
}

BibFile parse_bibtex(std::string_view text) { return Parser(text).run(); }

std::string serialize_bibtex(const std::vector<BibEntry>& entries) {
  std::string out;
  for (const auto& entry : entries) {
    out += "@" + entry.entry_type + "{" + entry.citekey;
    for (const auto& [name, value] : entry.fields) out += ",\n  " + name + " = {" + value + "}";
    out += "\n}\n\n";
  }
  return out;
}

}  // namespace relpub::sync
