#pragma once

#include <span>
#include <string>
#include <string_view>

namespace relpub::datacite {

/// Controlled vocabularies of the DataCite 4.3 metadata kernel. Each
/// accessor returns the full value list; `vocab_contains` does a strict
/// (case-sensitive) membership test.
std::span<const std::string_view> title_types();
std::span<const std::string_view> description_types();
std::span<const std::string_view> relation_types();
std::span<const std::string_view> resource_type_generals();
std::span<const std::string_view> contributor_types();
std::span<const std::string_view> date_types();
std::span<const std::string_view> related_identifier_types();
std::span<const std::string_view> funder_identifier_types();

bool vocab_contains(std::span<const std::string_view> vocab, std::string_view value);

/// "a, b, c" rendering for error messages listing the allowed values.
std::string vocab_join(std::span<const std::string_view> vocab);

}  // namespace relpub::datacite
