#pragma once

#include <string>
#include <vector>

namespace relpub::test {

/// Independent structural validator for DataCite 4.3 records: parses the
/// XML with expat and enforces the kernel-4.3 rules (mandatory properties,
/// cardinality, required attributes, controlled vocabularies, canonical
/// element order). Shares no code with the production renderer.
std::vector<std::string> datacite_shape_errors(const std::string& xml);

}  // namespace relpub::test
