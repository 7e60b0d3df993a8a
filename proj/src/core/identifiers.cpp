#include "core/identifiers.hpp"

#include <cctype>
#include <string>

namespace relpub {

bool orcid_pattern_ok(std::string_view text) {
  if (text.size() != 19) return false;
  for (std::size_t i = 0; i < 19; ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (text[i] != '-') return false;
    } else if (i == 18) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])) && text[i] != 'X') return false;
    } else {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
  }
  return true;
}

char orcid_check_char(std::string_view digits15) {
  int total = 0;
  for (char c : digits15) total = (total + (c - '0')) * 2;
  int remainder = total % 11;
  int result = (12 - remainder) % 11;
  return result == 10 ? 'X' : static_cast<char>('0' + result);
}

bool orcid_valid(std::string_view text) {
  if (!orcid_pattern_ok(text)) return false;
  std::string digits;
  digits.reserve(15);
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != '-') digits.push_back(text[i]);
  }
  return orcid_check_char(digits) == text.back();
}

bool ror_url_valid(std::string_view text) {
  constexpr std::string_view prefix = "https://ror.org/";
  if (text.size() != prefix.size() + 9) return false;
  if (text.substr(0, prefix.size()) != prefix) return false;
  std::string_view id = text.substr(prefix.size());
  if (id[0] != '0') return false;
  for (char c : id) {
    if (!std::islower(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c)))
      return false;
  }
  return true;
}

}  // namespace relpub
