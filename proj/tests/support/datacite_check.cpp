#include "support/datacite_check.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <memory>
#include <set>

namespace relpub::test {

namespace {

constexpr const char* kKernelNs = "http://datacite.org/schema/kernel-4";

struct Node {
  std::string ns;
  std::string name;
  std::map<std::string, std::string> attrs;
  std::string text;
  std::vector<Node> children;

  const Node* child(const std::string& want) const {
    for (const auto& c : children)
      if (c.name == want) return &c;
    return nullptr;
  }
  std::vector<const Node*> all(const std::string& want) const {
    std::vector<const Node*> out;
    for (const auto& c : children)
      if (c.name == want) out.push_back(&c);
    return out;
  }
  bool text_empty() const {
    return std::all_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isspace(c); });
  }
};

struct ParseState {
  std::vector<Node*> stack;
  Node root;
  bool started = false;
  std::string error;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto* state = static_cast<ParseState*>(user);
  std::string full(name);
  std::string ns;
  std::string local = full;
  auto sep = full.find('\n');
  if (sep != std::string::npos) {
    ns = full.substr(0, sep);
    local = full.substr(sep + 1);
  }

  Node node;
  node.ns = ns;
  node.name = local;
  for (int i = 0; atts[i]; i += 2) {
    std::string attr_name(atts[i]);
    auto attr_sep = attr_name.find('\n');
    if (attr_sep != std::string::npos) attr_name = attr_name.substr(attr_sep + 1);
    node.attrs[attr_name] = atts[i + 1];
  }

  if (!state->started) {
    state->root = std::move(node);
    state->started = true;
    state->stack.push_back(&state->root);
    return;
  }
  Node* parent = state->stack.back();
  parent->children.push_back(std::move(node));
  state->stack.push_back(&parent->children.back());
}

void on_end(void* user, const XML_Char*) {
  auto* state = static_cast<ParseState*>(user);
  if (!state->stack.empty()) state->stack.pop_back();
}

void on_text(void* user, const XML_Char* data, int len) {
  auto* state = static_cast<ParseState*>(user);
  if (!state->stack.empty()) state->stack.back()->text.append(data, len);
}

// DataCite 4.3 controlled vocabularies, embedded here on purpose so this
// validator stays independent of the code under test.
const std::set<std::string> kTitleTypes = {"AlternativeTitle", "Subtitle", "TranslatedTitle",
                                           "Other"};
const std::set<std::string> kDescriptionTypes = {"Abstract",          "Methods",
                                                 "SeriesInformation", "TableOfContents",
                                                 "TechnicalInfo",     "Other"};
const std::set<std::string> kContributorTypes = {
    "ContactPerson", "DataCollector", "DataCurator", "DataManager", "Distributor", "Editor",
    "HostingInstitution", "Producer", "ProjectLeader", "ProjectManager", "ProjectMember",
    "RegistrationAgency", "RegistrationAuthority", "RelatedPerson", "Researcher", "ResearchGroup",
    "RightsHolder", "Sponsor", "Supervisor", "WorkPackageLeader", "Other"};
const std::set<std::string> kDateTypes = {"Accepted", "Available", "Copyrighted", "Collected",
                                          "Created",  "Issued",    "Submitted",   "Updated",
                                          "Valid",    "Withdrawn"};
const std::set<std::string> kResourceTypesGeneral = {
    "Audiovisual", "Collection", "DataPaper", "Dataset", "Event", "Image", "InteractiveResource",
    "Model", "PhysicalObject", "Service", "Software", "Sound", "Text", "Workflow", "Other"};
const std::set<std::string> kRelationTypes = {
    "IsCitedBy", "Cites", "IsSupplementTo", "IsSupplementedBy", "IsContinuedBy", "Continues",
    "IsDescribedBy", "Describes", "HasMetadata", "IsMetadataFor", "HasVersion", "IsVersionOf",
    "IsNewVersionOf", "IsPreviousVersionOf", "IsPartOf", "HasPart", "IsPublishedIn",
    "IsReferencedBy", "References", "IsDocumentedBy", "Documents", "IsCompiledBy", "Compiles",
    "IsVariantFormOf", "IsOriginalFormOf", "IsIdenticalTo", "IsReviewedBy", "Reviews",
    "IsDerivedFrom", "IsSourceOf", "IsRequiredBy", "Requires", "IsObsoletedBy", "Obsoletes"};
const std::set<std::string> kRelatedIdentifierTypes = {
    "ARK", "arXiv", "bibcode", "DOI", "EAN13", "EISSN", "Handle", "IGSN", "ISBN", "ISSN", "ISTC",
    "LISSN", "LSID", "PMID", "PURL", "UPC", "URL", "URN", "w3id"};
const std::set<std::string> kFunderIdentifierTypes = {"Crossref Funder ID", "GRID", "ISNI", "ROR",
                                                      "Other"};

// The element sequence the artifact guarantees (subset of kernel 4.3).
const std::vector<std::string> kOrder = {
    "identifier", "creators",    "titles",   "publisher",           "publicationYear",
    "subjects",   "contributors", "dates",   "language",            "resourceType",
    "alternateIdentifiers",       "relatedIdentifiers", "version",  "rightsList",
    "descriptions",               "fundingReferences"};

class Checker {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& message) { errors.push_back(message); }

  void require_attr(const Node& node, const std::string& attr, const std::set<std::string>* vocab,
                    const std::string& where) {
    auto it = node.attrs.find(attr);
    if (it == node.attrs.end()) {
      fail(where + ": missing attribute " + attr);
      return;
    }
    if (vocab && !vocab->count(it->second))
      fail(where + ": attribute " + attr + "='" + it->second + "' not in vocabulary");
  }

  void check_person(const Node& node, const std::string& name_element, const std::string& where) {
    // XSD child order: name, givenName, familyName, nameIdentifier*, affiliation*
    const std::vector<std::string> order = {name_element, "givenName", "familyName",
                                            "nameIdentifier", "affiliation"};
    std::size_t rank = 0;
    for (const auto& child : node.children) {
      auto it = std::find(order.begin(), order.end(), child.name);
      if (it == order.end()) {
        fail(where + ": unexpected element " + child.name);
        continue;
      }
      std::size_t child_rank = static_cast<std::size_t>(it - order.begin());
      if (child_rank < rank) fail(where + ": element " + child.name + " out of order");
      rank = child_rank;
    }
    const Node* name = node.child(name_element);
    if (!name || name->text_empty()) {
      fail(where + ": " + name_element + " missing or empty");
    }
    for (const Node* id : node.all("nameIdentifier")) {
      require_attr(*id, "nameIdentifierScheme", nullptr, where + "/nameIdentifier");
      if (id->text_empty()) fail(where + "/nameIdentifier: empty value");
    }
    for (const Node* aff : node.all("affiliation")) {
      if (aff->text_empty()) fail(where + "/affiliation: empty value");
      if (aff->attrs.count("affiliationIdentifier"))
        require_attr(*aff, "affiliationIdentifierScheme", nullptr, where + "/affiliation");
    }
  }

  void run(const Node& resource) {
    if (resource.name != "resource") {
      fail("root element must be resource, got " + resource.name);
      return;
    }
    if (resource.ns != kKernelNs) {
      fail("root element not in the kernel-4 namespace: '" + resource.ns + "'");
      return;
    }

    // Cardinality, allowed set and canonical order of the children.
    std::map<std::string, int> counts;
    std::size_t rank = 0;
    for (const auto& child : resource.children) {
      if (child.ns != kKernelNs) fail("element " + child.name + " not in the kernel-4 namespace");
      auto it = std::find(kOrder.begin(), kOrder.end(), child.name);
      if (it == kOrder.end()) {
        fail("element " + child.name + " is not part of the supported property set");
        continue;
      }
      std::size_t child_rank = static_cast<std::size_t>(it - kOrder.begin());
      if (child_rank < rank) fail("element " + child.name + " out of canonical order");
      rank = child_rank;
      if (++counts[child.name] > 1) fail("element " + child.name + " appears more than once");
    }
    for (const char* required : {"creators", "titles", "publisher", "publicationYear",
                                 "resourceType"}) {
      if (!counts.count(required)) fail(std::string("mandatory element missing: ") + required);
    }

    if (const Node* identifier = resource.child("identifier")) {
      require_attr(*identifier, "identifierType", nullptr, "identifier");
      if (identifier->attrs.count("identifierType") &&
          identifier->attrs.at("identifierType") != "DOI")
        fail("identifier: identifierType must be DOI");
      if (identifier->text_empty()) fail("identifier: empty value");
    }

    if (const Node* creators = resource.child("creators")) {
      auto list = creators->all("creator");
      if (list.empty()) fail("creators: at least one creator required");
      for (const Node* c : list) check_person(*c, "creatorName", "creator");
    }

    if (const Node* titles = resource.child("titles")) {
      auto list = titles->all("title");
      if (list.empty()) fail("titles: at least one title required");
      for (const Node* t : list) {
        if (t->text_empty()) fail("title: empty value");
        if (auto it = t->attrs.find("titleType"); it != t->attrs.end())
          if (!kTitleTypes.count(it->second)) fail("title: titleType '" + it->second + "' invalid");
      }
    }

    if (const Node* publisher = resource.child("publisher"))
      if (publisher->text_empty()) fail("publisher: empty value");

    if (const Node* year = resource.child("publicationYear")) {
      const std::string& text = year->text;
      if (text.size() != 4 ||
          !std::all_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        fail("publicationYear: '" + text + "' is not a 4-digit year");
    }

    if (const Node* subjects = resource.child("subjects")) {
      auto list = subjects->all("subject");
      if (list.empty()) fail("subjects: must contain subject elements");
      for (const Node* s : list)
        if (s->text_empty()) fail("subject: empty value");
    }

    if (const Node* contributors = resource.child("contributors")) {
      auto list = contributors->all("contributor");
      if (list.empty()) fail("contributors: must contain contributor elements");
      for (const Node* c : list) {
        require_attr(*c, "contributorType", &kContributorTypes, "contributor");
        check_person(*c, "contributorName", "contributor");
      }
    }

    if (const Node* dates = resource.child("dates")) {
      for (const Node* d : dates->all("date")) {
        require_attr(*d, "dateType", &kDateTypes, "date");
        if (d->text_empty()) fail("date: empty value");
      }
    }

    if (const Node* language = resource.child("language")) {
      const std::string& text = language->text;
      bool shape_ok = !text.empty() && text.size() <= 35;
      for (char c : text)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') shape_ok = false;
      if (!shape_ok) fail("language: '" + text + "' is not an IETF BCP 47 shaped tag");
    }

    if (const Node* resource_type = resource.child("resourceType"))
      require_attr(*resource_type, "resourceTypeGeneral", &kResourceTypesGeneral, "resourceType");

    if (const Node* alt = resource.child("alternateIdentifiers")) {
      auto list = alt->all("alternateIdentifier");
      if (list.empty()) fail("alternateIdentifiers: must contain alternateIdentifier elements");
      for (const Node* a : list)
        require_attr(*a, "alternateIdentifierType", nullptr, "alternateIdentifier");
    }

    if (const Node* related = resource.child("relatedIdentifiers")) {
      auto list = related->all("relatedIdentifier");
      if (list.empty()) fail("relatedIdentifiers: must contain relatedIdentifier elements");
      for (const Node* r : list) {
        require_attr(*r, "relatedIdentifierType", &kRelatedIdentifierTypes, "relatedIdentifier");
        require_attr(*r, "relationType", &kRelationTypes, "relatedIdentifier");
        if (r->text_empty()) fail("relatedIdentifier: empty value");
      }
    }

    if (const Node* rights_list = resource.child("rightsList")) {
      if (rights_list->all("rights").empty()) fail("rightsList: must contain rights elements");
    }

    if (const Node* descriptions = resource.child("descriptions")) {
      auto list = descriptions->all("description");
      if (list.empty()) fail("descriptions: must contain description elements");
      for (const Node* d : list)
        require_attr(*d, "descriptionType", &kDescriptionTypes, "description");
    }

    if (const Node* funding = resource.child("fundingReferences")) {
      auto list = funding->all("fundingReference");
      if (list.empty()) fail("fundingReferences: must contain fundingReference elements");
      for (const Node* f : list) {
        const std::vector<std::string> order = {"funderName", "funderIdentifier", "awardNumber",
                                                "awardTitle"};
        std::size_t frank = 0;
        for (const auto& child : f->children) {
          auto it = std::find(order.begin(), order.end(), child.name);
          if (it == order.end()) {
            fail("fundingReference: unexpected element " + child.name);
            continue;
          }
          std::size_t child_rank = static_cast<std::size_t>(it - order.begin());
          if (child_rank < frank) fail("fundingReference: element " + child.name + " out of order");
          frank = child_rank;
        }
        const Node* funder_name = f->child("funderName");
        if (!funder_name || funder_name->text_empty())
          fail("fundingReference: funderName missing or empty");
        if (const Node* id = f->child("funderIdentifier"))
          require_attr(*id, "funderIdentifierType", &kFunderIdentifierTypes,
                       "funderIdentifier");
      }
    }
  }
};

}  // namespace

std::vector<std::string> datacite_shape_errors(const std::string& xml) {
  ParseState state;
  XML_Parser parser = XML_ParserCreateNS("UTF-8", '\n');
  XML_SetUserData(parser, &state);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_text);

  std::vector<std::string> errors;
  if (XML_Parse(parser, xml.data(), static_cast<int>(xml.size()), 1) != XML_STATUS_OK) {
    errors.push_back(std::string("XML not well formed: ") +
                     XML_ErrorString(XML_GetErrorCode(parser)) + " at line " +
                     std::to_string(XML_GetCurrentLineNumber(parser)));
    XML_ParserFree(parser);
    return errors;
  }
  XML_ParserFree(parser);

  if (!state.started) return {"document has no root element"};

  Checker checker;
  checker.run(state.root);
  return checker.errors;
}

}  // namespace relpub::test
