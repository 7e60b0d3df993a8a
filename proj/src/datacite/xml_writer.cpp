#include "datacite/xml_writer.hpp"

namespace relpub::datacite {

XmlWriter::XmlWriter() { out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

std::string XmlWriter::escape_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string XmlWriter::escape_attr(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void XmlWriter::indent() { out_.append(stack_.size() * 2, ' '); }

void XmlWriter::write_attrs(const Attrs& attrs) {
  for (const auto& [name, value] : attrs) {
    out_ += " " + name + "=\"" + escape_attr(value) + "\"";
  }
}

void XmlWriter::open(const std::string& name, const Attrs& attrs) {
  indent();
  out_ += "<" + name;
  write_attrs(attrs);
  out_ += ">\n";
  stack_.push_back(name);
}

void XmlWriter::close() {
  std::string name = stack_.back();
  stack_.pop_back();
  indent();
  out_ += "</" + name + ">\n";
}

void XmlWriter::leaf(const std::string& name, std::string_view text, const Attrs& attrs) {
  indent();
  out_ += "<" + name;
  write_attrs(attrs);
  out_ += ">" + escape_text(text) + "</" + name + ">\n";
}

}  // namespace relpub::datacite
