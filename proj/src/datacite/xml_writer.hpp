#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relpub::datacite {

/// Tiny streaming XML writer: 2-space indentation, LF line endings, one
/// trailing newline. Attribute order is the order given by the caller.
class XmlWriter {
 public:
  using Attrs = std::vector<std::pair<std::string, std::string>>;

  XmlWriter();

  void open(const std::string& name, const Attrs& attrs = {});
  void close();
  /// <name attr="...">escaped text</name> on one line.
  void leaf(const std::string& name, std::string_view text, const Attrs& attrs = {});

  static std::string escape_text(std::string_view raw);
  static std::string escape_attr(std::string_view raw);

  std::string str() const { return out_; }

 private:
  void indent();
  void write_attrs(const Attrs& attrs);

  std::string out_;
  std::vector<std::string> stack_;
};

}  // namespace relpub::datacite
