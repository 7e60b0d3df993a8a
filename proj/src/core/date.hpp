#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace relpub {

/// ISO-8601 calendar date (no time component). All files and records in
/// this project carry date-level precision only.
struct IsoDate {
  int year = 0;
  int month = 0;
  int day = 0;

  static std::optional<IsoDate> parse(std::string_view text);
  static IsoDate today_utc();

  bool ok() const;
  std::string to_string() const;  // YYYY-MM-DD
  std::int64_t to_unix_utc() const;  // seconds since epoch at 00:00:00 UTC

  auto operator<=>(const IsoDate&) const = default;
};

}  // namespace relpub
