#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/digest.hpp"
#include "core/validation.hpp"
#include "metadata/types.hpp"

namespace relpub::bagpack {

/// Ordered bag-info.txt labels. Bagging-Date and Payload-Oxum are computed
/// by build_bag (a provided Payload-Oxum is replaced, a provided
/// Bagging-Date is kept so builds can be pinned for reproducibility).
struct BagInfo {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(const std::string& label, const std::string& value);
  const std::string* get(const std::string& label) const;
};

struct Bag {
  std::filesystem::path root;
};

/// Assembles a BagIt 1.0 bag extended to BagPack: payload under data/,
/// per-algorithm payload and tag manifests, bag-info.txt, and
/// metadata/datacite.xml.
Bag build_bag(const metadata::AssetSet& assets, std::string_view datacite_xml, BagInfo info,
              const std::set<HashAlg>& algorithms, const std::filesystem::path& dest);

struct BagValidateOptions {
  bool require_bagpack = true;  // demand metadata/datacite.xml
};

/// Full validation: declaration, manifest completeness in both directions,
/// digest recomputation, Payload-Oxum recount, tag manifest coverage, and
/// (optionally) the BagPack metadata requirement. All problems are
/// findings; the function itself does not throw for content issues.
ValidationReport validate_bag(const std::filesystem::path& root, BagValidateOptions options = {});

/// "<octet count>.<stream count>" over regular files under payload_root.
std::string compute_payload_oxum(const std::filesystem::path& payload_root);

/// Deterministic tar of a validated bag (sorted entries, owner 0/0, mtime
/// pinned to the bag's Bagging-Date). Throws ValidationFailedError when the
/// bag does not validate cleanly.
std::filesystem::path serialize_bag(const std::filesystem::path& root,
                                    const std::filesystem::path& out_tar);

/// RFC 8493 manifest path encoding (CR, LF and % are percent-encoded).
std::string encode_manifest_path(std::string_view path);
std::string decode_manifest_path(std::string_view path);

}  // namespace relpub::bagpack
