#pragma once

#include <string_view>

namespace relpub {

/// True when `text` looks like a hyphenated 16-digit ORCID iD
/// (dddd-dddd-dddd-dddX where the last position may be 'X').
bool orcid_pattern_ok(std::string_view text);

/// Pattern plus ISO 7064 MOD 11-2 check digit.
bool orcid_valid(std::string_view text);

/// Check character for the first 15 digits ('0'..'9' or 'X').
char orcid_check_char(std::string_view digits15);

/// True when `text` matches https://ror.org/0xxxxxxxx.
bool ror_url_valid(std::string_view text);

}  // namespace relpub
