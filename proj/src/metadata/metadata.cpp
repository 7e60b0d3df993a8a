#include "metadata/metadata.hpp"

#include <yaml-cpp/yaml.h>

#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/identifiers.hpp"
#include "core/url.hpp"
#include "core/yaml_scalars.hpp"
#include "datacite/vocabulary.hpp"

namespace relpub::metadata {

namespace {

namespace vocab = relpub::datacite;

void require_vocab(std::span<const std::string_view> allowed, const std::string& value,
                   const std::string& key) {
  if (!vocab::vocab_contains(allowed, value)) {
    throw SchemaError("key '" + key + "': '" + value + "' is not in the controlled vocabulary (" +
                      vocab::vocab_join(allowed) + ")");
  }
}

void require_absolute_url(const std::string& value, const std::string& key) {
  if (!is_absolute_url(value))
    throw SchemaError("key '" + key + "' is not an absolute URL: '" + value + "'");
}

std::string index_key(const std::string& base, std::size_t i, const char* field) {
  return base + "[" + std::to_string(i) + "]." + field;
}

PersonEntry parse_person(const YAML::Node& node, const std::string& ctx) {
  if (!node.IsMap()) throw SchemaError("'" + ctx + "' must be a mapping");
  PersonEntry person;
  person.name = yaml_scalar(node["name"], ctx + ".name");
  person.given_name = yaml_scalar(node["given_name"], ctx + ".given_name");
  person.family_name = yaml_scalar(node["family_name"], ctx + ".family_name");
  person.orcid = yaml_scalar(node["orcid"], ctx + ".orcid");

  if (person.name.empty() && !person.family_name.empty() && !person.given_name.empty())
    person.name = person.family_name + ", " + person.given_name;

  if (!person.orcid.empty() && !orcid_valid(person.orcid)) {
    throw IdentifierError("'" + ctx + ".orcid': '" + person.orcid +
                          "' is not a valid ORCID iD (pattern or MOD 11-2 check digit)");
  }

  YAML::Node affs = node["affiliations"];
  if (affs && !affs.IsNull()) {
    if (!affs.IsSequence()) throw SchemaError("'" + ctx + ".affiliations' must be a list");
    std::size_t i = 0;
    for (const auto& a : affs) {
      std::string actx = ctx + ".affiliations[" + std::to_string(i) + "]";
      Affiliation aff;
      aff.name = yaml_scalar(a["name"], actx + ".name");
      aff.ror = yaml_scalar(a["ror"], actx + ".ror");
      if (!aff.ror.empty() && !ror_url_valid(aff.ror))
        throw IdentifierError("'" + actx + ".ror': '" + aff.ror +
                              "' does not match https://ror.org/<id>");
      person.affiliations.push_back(std::move(aff));
      ++i;
    }
  }
  return person;
}

}  // namespace

const char* to_string(AssetRole role) {
  switch (role) {
    case AssetRole::source_tarball: return "source-tarball";
    case AssetRole::docker_image: return "docker-image";
    case AssetRole::rpm: return "rpm";
    case AssetRole::deb: return "deb";
    case AssetRole::macos_pkg: return "macos-pkg";
    case AssetRole::user_manual_pdf: return "user-manual-pdf";
    case AssetRole::companion_revision: return "companion-revision";
    case AssetRole::other: return "other";
  }
  return "other";
}

std::optional<AssetRole> asset_role_from_string(std::string_view name) {
  if (name == "source-tarball") return AssetRole::source_tarball;
  if (name == "docker-image") return AssetRole::docker_image;
  if (name == "rpm") return AssetRole::rpm;
  if (name == "deb") return AssetRole::deb;
  if (name == "macos-pkg") return AssetRole::macos_pkg;
  if (name == "user-manual-pdf") return AssetRole::user_manual_pdf;
  if (name == "companion-revision") return AssetRole::companion_revision;
  if (name == "other") return AssetRole::other;
  return std::nullopt;
}

ProjectMetadata parse_project_metadata(const std::string& yaml_text,
                                       const std::string& source_name) {
  YAML::Node root = parse_yaml(yaml_text, source_name);
  if (root.IsNull() || !root.IsDefined()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw SchemaError(source_name + ": top level must be a mapping");

  static const std::set<std::string> known_keys = {
      "title",          "additional_titles", "keywords",
      "publisher",      "descriptions",      "subjects",
      "radar_subjects", "resource",          "resource_type",
      "alternate_identifiers", "related_identifiers",
      "rights",         "rights_url",        "rights_holder",
      "funding_references"};

  ProjectMetadata meta;

  meta.title = yaml_scalar(root["title"], "title");
  if (meta.title.empty()) throw SchemaError(source_name + ": mandatory key 'title' is missing or empty");

  {
    YAML::Node seq = yaml_sequence_at(root, "additional_titles", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      AdditionalTitle t;
      t.title = yaml_scalar(item["additional_title"], index_key("additional_titles", i, "additional_title"));
      t.title_type =
          yaml_scalar(item["additional_title_type"], index_key("additional_titles", i, "additional_title_type"));
      if (!t.title_type.empty())
        require_vocab(vocab::title_types(), t.title_type,
                      index_key("additional_titles", i, "additional_title_type"));
      meta.additional_titles.push_back(std::move(t));
      ++i;
    }
  }

  for (const auto& k : yaml_sequence_at(root, "keywords", ""))
    meta.keywords.push_back(yaml_scalar(k, "keywords[]"));

  meta.publisher = yaml_scalar(root["publisher"], "publisher");

  {
    YAML::Node seq = yaml_sequence_at(root, "descriptions", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      Description d;
      d.text = yaml_scalar(item["description"], index_key("descriptions", i, "description"));
      d.description_type =
          yaml_scalar(item["description_type"], index_key("descriptions", i, "description_type"));
      if (!d.description_type.empty())
        require_vocab(vocab::description_types(), d.description_type,
                      index_key("descriptions", i, "description_type"));
      meta.descriptions.push_back(std::move(d));
      ++i;
    }
  }

  {
    YAML::Node seq = yaml_sequence_at(root, "subjects", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      SubjectEntry s;
      s.subject = yaml_scalar(item["subject"], index_key("subjects", i, "subject"));
      s.value_uri = yaml_scalar(item["value_uri"], index_key("subjects", i, "value_uri"));
      s.scheme_uri = yaml_scalar(item["scheme_uri"], index_key("subjects", i, "scheme_uri"));
      if (!s.value_uri.empty()) require_absolute_url(s.value_uri, index_key("subjects", i, "value_uri"));
      if (!s.scheme_uri.empty())
        require_absolute_url(s.scheme_uri, index_key("subjects", i, "scheme_uri"));
      meta.subjects.push_back(std::move(s));
      ++i;
    }
  }

  for (const auto& k : yaml_sequence_at(root, "radar_subjects", ""))
    meta.radar_subjects.push_back(yaml_scalar(k, "radar_subjects[]"));

  meta.resource = yaml_scalar(root["resource"], "resource");
  meta.resource_type = yaml_scalar(root["resource_type"], "resource_type");
  if (!meta.resource_type.empty())
    require_vocab(vocab::resource_type_generals(), meta.resource_type, "resource_type");

  {
    YAML::Node seq = yaml_sequence_at(root, "alternate_identifiers", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      AlternateIdentifier a;
      a.value = yaml_scalar(item["alternate_identifier"],
                            index_key("alternate_identifiers", i, "alternate_identifier"));
      a.identifier_type = yaml_scalar(item["alternate_identifier_type"],
                                      index_key("alternate_identifiers", i, "alternate_identifier_type"));
      meta.alternate_identifiers.push_back(std::move(a));
      ++i;
    }
  }

  {
    YAML::Node seq = yaml_sequence_at(root, "related_identifiers", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      RelatedIdentifier r;
      r.relation_type =
          yaml_scalar(item["relation_type"], index_key("related_identifiers", i, "relation_type"));
      require_vocab(vocab::relation_types(), r.relation_type,
                    index_key("related_identifiers", i, "relation_type"));
      r.value = yaml_scalar(item["related_identifier"],
                            index_key("related_identifiers", i, "related_identifier"));
      r.identifier_type = yaml_scalar(item["related_identifier_type"],
                                      index_key("related_identifiers", i, "related_identifier_type"));
      meta.related_identifiers.push_back(std::move(r));
      ++i;
    }
  }

  meta.rights = yaml_scalar(root["rights"], "rights");
  meta.rights_url = yaml_scalar(root["rights_url"], "rights_url");
  if (!meta.rights_url.empty()) require_absolute_url(meta.rights_url, "rights_url");
  meta.rights_holder = yaml_scalar(root["rights_holder"], "rights_holder");

  {
    YAML::Node seq = yaml_sequence_at(root, "funding_references", "");
    std::size_t i = 0;
    for (const auto& item : seq) {
      FundingReference f;
      f.name = yaml_scalar(item["name"], index_key("funding_references", i, "name"));
      f.ror = yaml_scalar(item["ror"], index_key("funding_references", i, "ror"));
      if (!f.ror.empty() && !ror_url_valid(f.ror))
        throw SchemaError("key '" + index_key("funding_references", i, "ror") + "': '" + f.ror +
                          "' does not match https://ror.org/<id>");
      f.award_number = yaml_scalar(item["award_number"], index_key("funding_references", i, "award_number"));
      f.award_uri = yaml_scalar(item["award_uri"], index_key("funding_references", i, "award_uri"));
      if (!f.award_uri.empty())
        require_absolute_url(f.award_uri, index_key("funding_references", i, "award_uri"));
      f.award_title = yaml_scalar(item["award_title"], index_key("funding_references", i, "award_title"));
      meta.funding_references.push_back(std::move(f));
      ++i;
    }
  }

  for (const auto& kv : root) {
    std::string key = kv.first.as<std::string>();
    if (known_keys.count(key)) continue;
    meta.extra_yaml[key] = YAML::Dump(kv.second);
    meta.load_warnings.push_back("unknown key '" + key + "' preserved but not interpreted");
  }

  return meta;
}

ProjectMetadata load_project_metadata(const std::filesystem::path& path) {
  return parse_project_metadata(read_file_bytes(path.string()), path.filename().string());
}

std::string serialize_project_metadata(const ProjectMetadata& meta) {
  YAML::Node root(YAML::NodeType::Map);
  root["title"] = meta.title;
  if (!meta.additional_titles.empty()) {
    for (const auto& t : meta.additional_titles) {
      YAML::Node n;
      n["additional_title"] = t.title;
      n["additional_title_type"] = t.title_type;
      root["additional_titles"].push_back(n);
    }
  }
  if (!meta.keywords.empty())
    for (const auto& k : meta.keywords) root["keywords"].push_back(k);
  if (!meta.publisher.empty()) root["publisher"] = meta.publisher;
  for (const auto& d : meta.descriptions) {
    YAML::Node n;
    n["description"] = d.text;
    n["description_type"] = d.description_type;
    root["descriptions"].push_back(n);
  }
  for (const auto& s : meta.subjects) {
    YAML::Node n;
    n["subject"] = s.subject;
    if (!s.value_uri.empty()) n["value_uri"] = s.value_uri;
    if (!s.scheme_uri.empty()) n["scheme_uri"] = s.scheme_uri;
    root["subjects"].push_back(n);
  }
  for (const auto& r : meta.radar_subjects) root["radar_subjects"].push_back(r);
  if (!meta.resource.empty()) root["resource"] = meta.resource;
  if (!meta.resource_type.empty()) root["resource_type"] = meta.resource_type;
  for (const auto& a : meta.alternate_identifiers) {
    YAML::Node n;
    n["alternate_identifier"] = a.value;
    n["alternate_identifier_type"] = a.identifier_type;
    root["alternate_identifiers"].push_back(n);
  }
  for (const auto& r : meta.related_identifiers) {
    YAML::Node n;
    n["relation_type"] = r.relation_type;
    n["related_identifier"] = r.value;  // stays empty for placeholders
    n["related_identifier_type"] = r.identifier_type;
    root["related_identifiers"].push_back(n);
  }
  if (!meta.rights.empty()) root["rights"] = meta.rights;
  if (!meta.rights_url.empty()) root["rights_url"] = meta.rights_url;
  if (!meta.rights_holder.empty()) root["rights_holder"] = meta.rights_holder;
  for (const auto& f : meta.funding_references) {
    YAML::Node n;
    n["name"] = f.name;
    if (!f.ror.empty()) n["ror"] = f.ror;
    if (!f.award_number.empty()) n["award_number"] = f.award_number;
    if (!f.award_uri.empty()) n["award_uri"] = f.award_uri;
    if (!f.award_title.empty()) n["award_title"] = f.award_title;
    root["funding_references"].push_back(n);
  }
  for (const auto& [key, text] : meta.extra_yaml) root[key] = YAML::Load(text);

  YAML::Emitter out;
  out.SetIndent(2);
  out << root;
  std::string text = out.c_str();
  text += "\n";
  return text;
}

ContributorsFile parse_contributors(const std::string& yaml_text, const std::string& source_name) {
  YAML::Node root = parse_yaml(yaml_text, source_name);
  if (root.IsNull() || !root.IsDefined()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw SchemaError(source_name + ": top level must be a mapping");

  ContributorsFile file;

  YAML::Node creators = root["creators"];
  if (!creators || creators.IsNull() || !creators.IsSequence() || creators.size() == 0)
    throw SchemaError(source_name + ": mandatory key 'creators' must be a non-empty list");
  {
    std::size_t i = 0;
    for (const auto& c : creators) {
      file.creators.push_back(parse_person(c, "creators[" + std::to_string(i) + "]"));
      ++i;
    }
  }

  YAML::Node contributors = yaml_sequence_at(root, "contributors", "");
  {
    std::size_t i = 0;
    for (const auto& c : contributors) {
      std::string ctx = "contributors[" + std::to_string(i) + "]";
      Contributor entry;
      entry.person = parse_person(c, ctx);
      entry.contributor_type = yaml_scalar(c["contributor_type"], ctx + ".contributor_type");
      require_vocab(vocab::contributor_types(), entry.contributor_type, ctx + ".contributor_type");
      file.contributors.push_back(std::move(entry));
      ++i;
    }
  }

  return file;
}

ContributorsFile load_contributors(const std::filesystem::path& path) {
  return parse_contributors(read_file_bytes(path.string()), path.filename().string());
}

ValidationReport validate_metadata(const ProjectMetadata& meta, const ContributorsFile& contribs) {
  ValidationReport report;

  if (meta.title.empty()) report.add_error("metadata.title", "title must not be empty");

  auto check_vocab = [&](std::span<const std::string_view> allowed, const std::string& value,
                         const std::string& path) {
    if (!value.empty() && !vocab::vocab_contains(allowed, value))
      report.add_error(path, "'" + value + "' is not in the controlled vocabulary (" +
                                 vocab::vocab_join(allowed) + ")");
  };
  auto check_url = [&](const std::string& value, const std::string& path) {
    if (!value.empty() && !is_absolute_url(value))
      report.add_error(path, "'" + value + "' is not an absolute URL");
  };

  for (std::size_t i = 0; i < meta.additional_titles.size(); ++i)
    check_vocab(vocab::title_types(), meta.additional_titles[i].title_type,
                index_key("metadata.additional_titles", i, "additional_title_type"));

  for (std::size_t i = 0; i < meta.descriptions.size(); ++i)
    check_vocab(vocab::description_types(), meta.descriptions[i].description_type,
                index_key("metadata.descriptions", i, "description_type"));

  for (std::size_t i = 0; i < meta.subjects.size(); ++i) {
    const auto& s = meta.subjects[i];
    check_url(s.value_uri, index_key("metadata.subjects", i, "value_uri"));
    check_url(s.scheme_uri, index_key("metadata.subjects", i, "scheme_uri"));
    if (!s.value_uri.empty() && !s.scheme_uri.empty() &&
        s.value_uri.rfind(s.scheme_uri, 0) != 0) {
      report.add_error(index_key("metadata.subjects", i, "value_uri"),
                       "value_uri '" + s.value_uri + "' does not begin with scheme_uri '" +
                           s.scheme_uri + "'");
    }
  }

  check_vocab(vocab::resource_type_generals(), meta.resource_type, "metadata.resource_type");

  for (std::size_t i = 0; i < meta.related_identifiers.size(); ++i) {
    const auto& r = meta.related_identifiers[i];
    check_vocab(vocab::relation_types(), r.relation_type,
                index_key("metadata.related_identifiers", i, "relation_type"));
    if (r.value.empty()) {
      report.add_warning(index_key("metadata.related_identifiers", i, "related_identifier"),
                         "unfilled related identifier (placeholder entry is dropped at render time)");
    } else {
      check_vocab(vocab::related_identifier_types(), r.identifier_type,
                  index_key("metadata.related_identifiers", i, "related_identifier_type"));
    }
  }

  check_url(meta.rights_url, "metadata.rights_url");

  for (std::size_t i = 0; i < meta.funding_references.size(); ++i) {
    const auto& f = meta.funding_references[i];
    if (!f.ror.empty() && !ror_url_valid(f.ror))
      report.add_error(index_key("metadata.funding_references", i, "ror"),
                       "'" + f.ror + "' does not match https://ror.org/<id>");
    check_url(f.award_uri, index_key("metadata.funding_references", i, "award_uri"));
  }

  for (const auto& warning : meta.load_warnings) report.add_warning("metadata", warning);

  if (contribs.creators.empty())
    report.add_error("contributors.creators", "at least one creator is required");

  auto check_person = [&](const PersonEntry& p, const std::string& path) {
    if (p.name.empty() && (p.family_name.empty() || p.given_name.empty()))
      report.add_error(path, "person needs a full name or both family_name and given_name");
    if (!p.orcid.empty() && !orcid_valid(p.orcid))
      report.add_error(path + ".orcid", "'" + p.orcid + "' fails the ORCID MOD 11-2 check");
    for (std::size_t j = 0; j < p.affiliations.size(); ++j) {
      const auto& a = p.affiliations[j];
      if (!a.ror.empty() && !ror_url_valid(a.ror))
        report.add_error(path + ".affiliations[" + std::to_string(j) + "].ror",
                         "'" + a.ror + "' does not match https://ror.org/<id>");
    }
  };

  for (std::size_t i = 0; i < contribs.creators.size(); ++i)
    check_person(contribs.creators[i], "contributors.creators[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < contribs.contributors.size(); ++i) {
    const auto& c = contribs.contributors[i];
    std::string path = "contributors.contributors[" + std::to_string(i) + "]";
    check_person(c.person, path);
    if (c.contributor_type.empty() ||
        !vocab::vocab_contains(vocab::contributor_types(), c.contributor_type))
      report.add_error(path + ".contributor_type",
                       "'" + c.contributor_type + "' is not a DataCite contributorType (" +
                           vocab::vocab_join(vocab::contributor_types()) + ")");
  }

  return report;
}

}  // namespace relpub::metadata
