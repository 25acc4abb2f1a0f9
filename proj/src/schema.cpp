/* Copyright 2026 The UniMorph Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "unimorph/schema.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <sstream>

namespace unimorph {

namespace {

constexpr int kDimensionCount = static_cast<int>(Dimension::kUnknown) + 1;

constexpr std::array<std::string_view, kDimensionCount> kDimensionIds = {
    "POS",        "MOOD",        "TENSE",         "ASPECT",
    "VOICE",      "CASE",        "PERSON",        "NUMBER",
    "GENDER",     "POSSESSION",  "ARGUMENT",      "POLARITY",
    "DEFINITENESS", "ANIMACY",   "EVIDENTIALITY", "COMPARISON",
    "FINITENESS", "POLITENESS",  "INTERROGATIVITY", "VALENCY",
    "UNKNOWN",
};

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool valid_tag_text(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '+' || c == '.';
    if (!ok) return false;
  }
  return true;
}

struct TagSpec {
  const char* text;
  Dimension dim;
};

// Built-in tag set (canonical spellings, canonical order within dimension).
// The within-dimension listing order is the canonical rank used when sorting
// siblings; it is a fixed configuration constant pinned by tests.
const TagSpec kBuiltinTags[] = {
    // Part of speech
    {"N", Dimension::kPos}, {"PROPN", Dimension::kPos},
    {"ADJ", Dimension::kPos}, {"PRO", Dimension::kPos},
    {"DET", Dimension::kPos}, {"ART", Dimension::kPos},
    {"NUM", Dimension::kPos}, {"V", Dimension::kPos},
    {"AUX", Dimension::kPos}, {"V.PTCP", Dimension::kPos},
    {"V.MSDR", Dimension::kPos}, {"V.CVB", Dimension::kPos},
    {"ADV", Dimension::kPos}, {"ADP", Dimension::kPos},
    {"COMP", Dimension::kPos}, {"CONJ", Dimension::kPos},
    {"PART", Dimension::kPos}, {"INTJ", Dimension::kPos},
    {"CLF", Dimension::kPos},
    // Mood (IMP and JUS are distinct tags)
    {"IND", Dimension::kMood}, {"SBJV", Dimension::kMood},
    {"IMP", Dimension::kMood}, {"JUS", Dimension::kMood},
    {"OPT", Dimension::kMood}, {"COND", Dimension::kMood},
    {"POT", Dimension::kMood}, {"PURP", Dimension::kMood},
    {"ADM", Dimension::kMood}, {"REAL", Dimension::kMood},
    {"IRR", Dimension::kMood}, {"DEB", Dimension::kMood},
    {"PERM", Dimension::kMood}, {"INTEN", Dimension::kMood},
    // Tense
    {"PRS", Dimension::kTense}, {"PST", Dimension::kTense},
    {"FUT", Dimension::kTense}, {"NFUT", Dimension::kTense},
    {"IMMED", Dimension::kTense}, {"RCT", Dimension::kTense},
    {"RMT", Dimension::kTense},
    // Aspect
    {"IPFV", Dimension::kAspect}, {"PFV", Dimension::kAspect},
    {"PRF", Dimension::kAspect}, {"PROG", Dimension::kAspect},
    {"HAB", Dimension::kAspect}, {"ITER", Dimension::kAspect},
    {"DUR", Dimension::kAspect}, {"PCT", Dimension::kAspect},
    // Voice
    {"ACT", Dimension::kVoice}, {"MID", Dimension::kVoice},
    {"PASS", Dimension::kVoice}, {"ANTIP", Dimension::kVoice},
    {"CAUS", Dimension::kVoice}, {"APPL", Dimension::kVoice},
    {"RECP", Dimension::kVoice}, {"REFL", Dimension::kVoice},
    {"DIR", Dimension::kVoice}, {"INV", Dimension::kVoice},
    // Case (core cases first; NOM before ACC matters for canonical order)
    {"NOM", Dimension::kCase}, {"ACC", Dimension::kCase},
    {"ERG", Dimension::kCase}, {"ABS", Dimension::kCase},
    {"DAT", Dimension::kCase}, {"GEN", Dimension::kCase},
    {"BEN", Dimension::kCase}, {"INS", Dimension::kCase},
    {"COM", Dimension::kCase}, {"VOC", Dimension::kCase},
    {"LOC", Dimension::kCase}, {"ALL", Dimension::kCase},
    {"ABL", Dimension::kCase}, {"INE", Dimension::kCase},
    {"ADE", Dimension::kCase}, {"ELA", Dimension::kCase},
    {"ILL", Dimension::kCase}, {"ESS", Dimension::kCase},
    {"TERM", Dimension::kCase}, {"TRANS", Dimension::kCase},
    {"PRT", Dimension::kCase}, {"PRIV", Dimension::kCase},
    // Person
    {"0", Dimension::kPerson}, {"1", Dimension::kPerson},
    {"2", Dimension::kPerson}, {"3", Dimension::kPerson},
    {"4", Dimension::kPerson}, {"INCL", Dimension::kPerson},
    {"EXCL", Dimension::kPerson}, {"OBV", Dimension::kPerson},
    {"PRX", Dimension::kPerson},
    // Number
    {"SG", Dimension::kNumber}, {"DU", Dimension::kNumber},
    {"TRI", Dimension::kNumber}, {"PAUC", Dimension::kNumber},
    {"PL", Dimension::kNumber},
    // Gender
    {"MASC", Dimension::kGender}, {"FEM", Dimension::kGender},
    {"NEUT", Dimension::kGender},
    // Possession (PSSD ranks before PSS; PSS heads composite nodes)
    {"PSSD", Dimension::kPossession}, {"PSS", Dimension::kPossession},
    {"ALN", Dimension::kPossession}, {"NALN", Dimension::kPossession},
    {"PSS1S", Dimension::kPossession}, {"PSS1D", Dimension::kPossession},
    {"PSS1DI", Dimension::kPossession}, {"PSS1DE", Dimension::kPossession},
    {"PSS1P", Dimension::kPossession}, {"PSS1PI", Dimension::kPossession},
    {"PSS1PE", Dimension::kPossession}, {"PSS1I", Dimension::kPossession},
    {"PSS2S", Dimension::kPossession}, {"PSS2SF", Dimension::kPossession},
    {"PSS2SM", Dimension::kPossession}, {"PSS2D", Dimension::kPossession},
    {"PSS2P", Dimension::kPossession}, {"PSS2PF", Dimension::kPossession},
    {"PSS2PM", Dimension::kPossession}, {"PSS3", Dimension::kPossession},
    {"PSS3S", Dimension::kPossession}, {"PSS3SF", Dimension::kPossession},
    {"PSS3SM", Dimension::kPossession}, {"PSS3D", Dimension::kPossession},
    {"PSS3P", Dimension::kPossession}, {"PSS3PF", Dimension::kPossession},
    {"PSS3PM", Dimension::kPossession}, {"PSS3F", Dimension::kPossession},
    {"PSS3M", Dimension::kPossession}, {"PSSRS", Dimension::kPossession},
    {"PSSRP", Dimension::kPossession},
    // Argument marking (flat composite tags; NO-family before AC-family)
    {"ARGNO1", Dimension::kArgumentMarking},
    {"ARGNO1S", Dimension::kArgumentMarking},
    {"ARGNO1D", Dimension::kArgumentMarking},
    {"ARGNO1P", Dimension::kArgumentMarking},
    {"ARGNO1PI", Dimension::kArgumentMarking},
    {"ARGNO1PE", Dimension::kArgumentMarking},
    {"ARGNO2", Dimension::kArgumentMarking},
    {"ARGNO2S", Dimension::kArgumentMarking},
    {"ARGNO2D", Dimension::kArgumentMarking},
    {"ARGNO2P", Dimension::kArgumentMarking},
    {"ARGNO3", Dimension::kArgumentMarking},
    {"ARGNO3S", Dimension::kArgumentMarking},
    {"ARGNO3D", Dimension::kArgumentMarking},
    {"ARGNO3P", Dimension::kArgumentMarking},
    {"ARGNO3F", Dimension::kArgumentMarking},
    {"ARGNO3M", Dimension::kArgumentMarking},
    {"ARGAC1", Dimension::kArgumentMarking},
    {"ARGAC1S", Dimension::kArgumentMarking},
    {"ARGAC1D", Dimension::kArgumentMarking},
    {"ARGAC1P", Dimension::kArgumentMarking},
    {"ARGAC2", Dimension::kArgumentMarking},
    {"ARGAC2S", Dimension::kArgumentMarking},
    {"ARGAC2D", Dimension::kArgumentMarking},
    {"ARGAC2P", Dimension::kArgumentMarking},
    {"ARGAC3", Dimension::kArgumentMarking},
    {"ARGAC3S", Dimension::kArgumentMarking},
    {"ARGAC3D", Dimension::kArgumentMarking},
    {"ARGAC3P", Dimension::kArgumentMarking},
    // Polarity
    {"POS", Dimension::kPolarity}, {"NEG", Dimension::kPolarity},
    // Definiteness
    {"DEF", Dimension::kDefiniteness}, {"INDF", Dimension::kDefiniteness},
    {"SPEC", Dimension::kDefiniteness}, {"NSPEC", Dimension::kDefiniteness},
    // Animacy
    {"ANIM", Dimension::kAnimacy}, {"INAN", Dimension::kAnimacy},
    {"HUM", Dimension::kAnimacy}, {"NHUM", Dimension::kAnimacy},
    // Evidentiality
    {"FH", Dimension::kEvidentiality}, {"DRCT", Dimension::kEvidentiality},
    {"SEN", Dimension::kEvidentiality}, {"NVSEN", Dimension::kEvidentiality},
    {"AUD", Dimension::kEvidentiality}, {"NFH", Dimension::kEvidentiality},
    {"RPRT", Dimension::kEvidentiality}, {"HRSY", Dimension::kEvidentiality},
    {"QUOT", Dimension::kEvidentiality}, {"INFER", Dimension::kEvidentiality},
    {"ASSUM", Dimension::kEvidentiality},
    // Comparison
    {"CMPR", Dimension::kComparison}, {"SPRL", Dimension::kComparison},
    {"AB", Dimension::kComparison}, {"RL", Dimension::kComparison},
    {"EQT", Dimension::kComparison},
    // Finiteness
    {"FIN", Dimension::kFiniteness}, {"NFIN", Dimension::kFiniteness},
    // Politeness
    {"INFM", Dimension::kPoliteness}, {"FORM", Dimension::kPoliteness},
    {"ELEV", Dimension::kPoliteness}, {"HUMB", Dimension::kPoliteness},
    {"POL", Dimension::kPoliteness},
    // Interrogativity
    {"DECL", Dimension::kInterrogativity}, {"INT", Dimension::kInterrogativity},
    // Valency
    {"IMPRS", Dimension::kValency}, {"INTR", Dimension::kValency},
    {"TR", Dimension::kValency}, {"DITR", Dimension::kValency},
};

// The annotation guidelines prefix argument-marking tags with ARG but the
// prefix is omitted in practice; both spellings are accepted.
const std::pair<const char*, const char*> kBuiltinAliases[] = {
    {"NO1", "ARGNO1"},     {"NO1S", "ARGNO1S"},   {"NO1D", "ARGNO1D"},
    {"NO1P", "ARGNO1P"},   {"NO1PI", "ARGNO1PI"}, {"NO1PE", "ARGNO1PE"},
    {"NO2", "ARGNO2"},     {"NO2S", "ARGNO2S"},   {"NO2D", "ARGNO2D"},
    {"NO2P", "ARGNO2P"},   {"NO3", "ARGNO3"},     {"NO3S", "ARGNO3S"},
    {"NO3D", "ARGNO3D"},   {"NO3P", "ARGNO3P"},   {"NO3F", "ARGNO3F"},
    {"NO3M", "ARGNO3M"},   {"AC1", "ARGAC1"},     {"AC1S", "ARGAC1S"},
    {"AC1D", "ARGAC1D"},   {"AC1P", "ARGAC1P"},   {"AC2", "ARGAC2"},
    {"AC2S", "ARGAC2S"},   {"AC2D", "ARGAC2D"},   {"AC2P", "ARGAC2P"},
    {"AC3", "ARGAC3"},     {"AC3S", "ARGAC3S"},   {"AC3D", "ARGAC3D"},
    {"AC3P", "ARGAC3P"},
};

}  // namespace

int dimension_rank(Dimension d) { return static_cast<int>(d); }

std::string_view dimension_id(Dimension d) {
  return kDimensionIds[static_cast<size_t>(d)];
}

std::optional<Dimension> dimension_from_id(std::string_view id) {
  const std::string upper = to_upper(id);
  for (int i = 0; i < kDimensionCount; ++i) {
    if (kDimensionIds[static_cast<size_t>(i)] == upper)
      return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

void TagInventory::insert_index(std::string text, int32_t id) {
  auto it = std::lower_bound(
      index_.begin(), index_.end(), text,
      [](const auto& entry, const std::string& t) { return entry.first < t; });
  if (it != index_.end() && it->first == text)
    throw std::invalid_argument("duplicate tag spelling: " + text);
  index_.insert(it, {std::move(text), id});
}

int32_t TagInventory::lookup(std::string_view upper) const {
  auto it = std::lower_bound(
      index_.begin(), index_.end(), upper,
      [](const auto& entry, std::string_view t) { return entry.first < t; });
  if (it != index_.end() && it->first == upper) return it->second;
  return -1;
}

void TagInventory::add(std::string_view text, Dimension dim) {
  std::string upper = to_upper(text);
  if (!valid_tag_text(upper))
    throw std::invalid_argument("invalid tag text: " + upper);
  const auto id = static_cast<int32_t>(tags_.size());
  auto& count = per_dimension_count_[static_cast<size_t>(dim)];
  tags_.push_back(Entry{upper, dim, count++});
  insert_index(std::move(upper), id);
}

void TagInventory::add_alias(std::string_view alias,
                             std::string_view canonical) {
  std::string upper_alias = to_upper(alias);
  if (!valid_tag_text(upper_alias))
    throw std::invalid_argument("invalid tag text: " + upper_alias);
  const int32_t id = lookup(to_upper(canonical));
  if (id < 0)
    throw std::invalid_argument("alias of unknown tag: " +
                                std::string(canonical));
  insert_index(std::move(upper_alias), id);
}

std::optional<FeatureTag> TagInventory::find(std::string_view text) const {
  const std::string upper = to_upper(text);
  const int32_t id = lookup(upper);
  if (id < 0) return std::nullopt;
  const Entry& e = tags_[static_cast<size_t>(id)];
  return FeatureTag{upper, id, e.dimension, e.rank_in_dimension};
}

const std::string& TagInventory::canonical_text(int32_t id) const {
  return tags_.at(static_cast<size_t>(id)).text;
}

Dimension TagInventory::dimension_of(int32_t id) const {
  return tags_.at(static_cast<size_t>(id)).dimension;
}

const TagInventory& TagInventory::builtin() {
  static const TagInventory instance = [] {
    TagInventory inv;
    for (const TagSpec& t : kBuiltinTags) inv.add(t.text, t.dim);
    for (const auto& [alias, canonical] : kBuiltinAliases)
      inv.add_alias(alias, canonical);
    return inv;
  }();
  return instance;
}

TagInventory TagInventory::load(std::istream& in) {
  TagInventory inv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::invalid_argument("inventory line " + std::to_string(lineno) +
                                  ": expected TAG<TAB>DIMENSION");
    const std::string tag = line.substr(0, tab);
    std::string rhs = line.substr(tab + 1);
    while (!rhs.empty() && (rhs.back() == ' ' || rhs.back() == '\t'))
      rhs.pop_back();
    if (!rhs.empty() && rhs[0] == '=') {
      inv.add_alias(tag, rhs.substr(1));
      continue;
    }
    const auto dim = dimension_from_id(rhs);
    if (!dim)
      throw std::invalid_argument("inventory line " + std::to_string(lineno) +
                                  ": unknown dimension '" + rhs + "'");
    inv.add(tag, *dim);
  }
  return inv;
}

const TagInventory& default_inventory() { return TagInventory::builtin(); }

SchemaKind FeatureBundle::schema_kind() const {
  for (const FeatureNode& n : nodes)
    if (!n.atomic()) return SchemaKind::kHierarchical;
  return SchemaKind::kFlat;
}

const FeatureTag* FeatureBundle::pos_tag() const {
  for (const FeatureNode& n : nodes)
    if (n.atomic() && n.head.dimension == Dimension::kPos) return &n.head;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, ParseMode mode, const TagInventory& inv)
      : text_(text), mode_(mode), inv_(inv) {}

  FeatureBundle parse() {
    FeatureBundle bundle;
    skip_space();
    if (pos_ >= text_.size())
      throw ParseError(ParseError::Code::kEmptyComponent, pos_,
                       "empty feature string");
    bundle.nodes.push_back(parse_node());
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != ';') {
        if (text_[pos_] == ')')
          throw ParseError(ParseError::Code::kUnbalancedParentheses, pos_,
                           "unmatched ')'");
        throw ParseError(ParseError::Code::kBadToken, pos_,
                         std::string("unexpected character '") + text_[pos_] +
                             "' at top level");
      }
      ++pos_;
      skip_space();
      bundle.nodes.push_back(parse_node());
      skip_space();
    }
    dedupe(bundle.nodes);
    return bundle;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  FeatureNode parse_node() {
    const size_t start = pos_;
    std::string token;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';' || c == ',' || c == '(' || c == ')' || c == ' ' ||
          c == '\t') {
        break;
      }
      token.push_back(c);
      ++pos_;
    }
    if (token.empty())
      throw ParseError(ParseError::Code::kEmptyComponent, start,
                       "empty feature component");
    FeatureNode node;
    node.head = resolve(token, start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const size_t open = pos_;
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')')
        throw ParseError(ParseError::Code::kEmptyComponent, pos_,
                         "empty parentheses after '" + node.head.text + "'");
      node.children.push_back(parse_node());
      skip_space();
      while (pos_ < text_.size() &&
             (text_[pos_] == ';' || text_[pos_] == ',')) {
        ++pos_;
        skip_space();
        node.children.push_back(parse_node());
        skip_space();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(ParseError::Code::kUnbalancedParentheses, open,
                         "missing ')' for '" + node.head.text + "'");
      ++pos_;
      if (mode_ == ParseMode::kStrict && !composite_head_allowed(node.head))
        throw ParseError(ParseError::Code::kCompositeHeadNotAllowed, start,
                         "'" + node.head.text +
                             "' cannot take child features");
      dedupe(node.children);
    }
    return node;
  }

  static bool composite_head_allowed(const FeatureTag& tag) {
    return tag.dimension == Dimension::kCase ||
           tag.dimension == Dimension::kPossession;
  }

  FeatureTag resolve(const std::string& raw, size_t at) {
    const std::string upper = to_upper(raw);
    if (!valid_tag_text(upper))
      throw ParseError(ParseError::Code::kBadToken, at,
                       "malformed tag '" + raw + "'");
    if (auto tag = inv_.find(upper)) return *tag;
    if (mode_ == ParseMode::kStrict)
      throw ParseError(ParseError::Code::kUnknownTag, at,
                       "unknown tag '" + upper + "'");
    return FeatureTag{upper, -1, Dimension::kUnknown, INT32_MAX};
  }

  // Sibling lists are sets: structural duplicates collapse at construction.
  static void dedupe(std::vector<FeatureNode>& nodes);

  std::string_view text_;
  ParseMode mode_;
  const TagInventory& inv_;
  size_t pos_ = 0;
};

bool nodes_identical(const FeatureNode& a, const FeatureNode& b) {
  if (!(a.head == b.head) || a.children.size() != b.children.size())
    return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!nodes_identical(a.children[i], b.children[i])) return false;
  return true;
}

void Parser::dedupe(std::vector<FeatureNode>& nodes) {
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = i + 1; j < nodes.size();) {
      if (nodes_identical(nodes[i], nodes[j]))
        nodes.erase(nodes.begin() + static_cast<ptrdiff_t>(j));
      else
        ++j;
    }
  }
}

}  // namespace

FeatureBundle parse_features(std::string_view text, ParseMode mode,
                             const TagInventory& inventory) {
  return Parser(text, mode, inventory).parse();
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void serialize_node(const FeatureNode& node, std::string& out) {
  out += node.head.text;
  if (node.atomic()) return;
  bool all_atomic = true;
  for (const FeatureNode& c : node.children)
    if (!c.atomic()) all_atomic = false;
  const char sep = all_atomic ? ',' : ';';
  out += '(';
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += sep;
    serialize_node(node.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string serialize(const FeatureNode& node) {
  std::string out;
  serialize_node(node, out);
  return out;
}

std::string serialize(const FeatureBundle& bundle) {
  std::string out;
  for (size_t i = 0; i < bundle.nodes.size(); ++i) {
    if (i > 0) out += ';';
    serialize_node(bundle.nodes[i], out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form and equality

namespace {

// (dimension rank, tag rank within dimension, text); composite ties broken
// by the children's canonical serialization, atomic before composite.
struct NodeOrder {
  bool operator()(const FeatureNode& a, const FeatureNode& b) const {
    const int da = dimension_rank(a.head.dimension);
    const int db = dimension_rank(b.head.dimension);
    if (da != db) return da < db;
    if (a.head.rank_in_dimension != b.head.rank_in_dimension)
      return a.head.rank_in_dimension < b.head.rank_in_dimension;
    if (a.head.text != b.head.text) return a.head.text < b.head.text;
    if (a.atomic() != b.atomic()) return a.atomic();
    return serialize(a) < serialize(b);
  }
};

FeatureNode canonical_node(const FeatureNode& node) {
  FeatureNode out;
  out.head = node.head;
  out.children.reserve(node.children.size());
  for (const FeatureNode& c : node.children)
    out.children.push_back(canonical_node(c));
  std::sort(out.children.begin(), out.children.end(), NodeOrder{});
  out.children.erase(
      std::unique(out.children.begin(), out.children.end(), nodes_identical),
      out.children.end());
  return out;
}

bool contains_unknown(const FeatureNode& node) {
  if (!node.head.known()) return true;
  for (const FeatureNode& c : node.children)
    if (contains_unknown(c)) return true;
  return false;
}

}  // namespace

FeatureBundle canonical_form(const FeatureBundle& bundle) {
  FeatureBundle out;
  out.nodes.reserve(bundle.nodes.size());
  for (const FeatureNode& n : bundle.nodes)
    out.nodes.push_back(canonical_node(n));
  std::sort(out.nodes.begin(), out.nodes.end(), NodeOrder{});
  out.nodes.erase(
      std::unique(out.nodes.begin(), out.nodes.end(), nodes_identical),
      out.nodes.end());
  return out;
}

FeatureBundle canonicalize(const FeatureBundle& bundle) {
  for (const FeatureNode& n : bundle.nodes) {
    if (contains_unknown(n))
      throw ParseError(ParseError::Code::kUnknownTag, 0,
                       "bundle contains unknown tags");
  }
  return canonical_form(bundle);
}

namespace {

// Structural comparison by tag identity (alias spellings compare equal).
bool canonical_nodes_equal(const FeatureNode& a, const FeatureNode& b) {
  if (!(a.head == b.head) || a.children.size() != b.children.size())
    return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!canonical_nodes_equal(a.children[i], b.children[i])) return false;
  return true;
}

}  // namespace

bool bundles_equal(const FeatureBundle& a, const FeatureBundle& b) {
  const FeatureBundle ca = canonical_form(a);
  const FeatureBundle cb = canonical_form(b);
  if (ca.nodes.size() != cb.nodes.size()) return false;
  for (size_t i = 0; i < ca.nodes.size(); ++i)
    if (!canonical_nodes_equal(ca.nodes[i], cb.nodes[i])) return false;
  return true;
}

namespace {

// Alias spellings must map to the same key, so known tags are keyed by
// inventory id rather than by text. Keys are for lookup only, never shown.
void key_node(const FeatureNode& node, std::string& out) {
  if (node.head.known()) {
    out += '@';
    out += std::to_string(node.head.id);
  } else {
    out += node.head.text;
  }
  if (node.atomic()) return;
  out += '(';
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += ';';
    key_node(node.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string canonical_key(const FeatureBundle& bundle) {
  const FeatureBundle canon = canonical_form(bundle);
  std::string out;
  for (size_t i = 0; i < canon.nodes.size(); ++i) {
    if (i > 0) out += ';';
    key_node(canon.nodes[i], out);
  }
  return out;
}

}  // namespace unimorph
