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

// Feature inventory and the feature-bundle tree: parsing, serialization,
// canonical ordering, and structural equality for morphological feature
// strings in both the flat and the hierarchical schema.

#ifndef UNIMORPH_SCHEMA_HPP_
#define UNIMORPH_SCHEMA_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unimorph {

// Dimensions of meaning, in canonical serialization order. The schema does
// not publish an official order; this one is fixed here and pinned by tests.
enum class Dimension : int16_t {
  kPos,
  kMood,
  kTense,
  kAspect,
  kVoice,
  kCase,
  kPerson,
  kNumber,
  kGender,
  kPossession,
  kArgumentMarking,
  kPolarity,
  kDefiniteness,
  kAnimacy,
  kEvidentiality,
  kComparison,
  kFiniteness,
  kPoliteness,
  kInterrogativity,
  kValency,
  kUnknown,  // lax-mode tags; always ranked last
};

int dimension_rank(Dimension d);
std::string_view dimension_id(Dimension d);
std::optional<Dimension> dimension_from_id(std::string_view id);

// One atomic feature tag. Tags resolved against an inventory carry the
// inventory's dimension and within-dimension rank; lax-admitted tags have
// Dimension::kUnknown and rank INT32_MAX. `text` preserves the spelling the
// tag was written with (aliases keep their surface form but compare equal).
struct FeatureTag {
  std::string text;             // uppercase spelling as written
  int32_t id = -1;              // canonical inventory id; -1 = unknown
  Dimension dimension = Dimension::kUnknown;
  int32_t rank_in_dimension = INT32_MAX;

  bool known() const { return id >= 0; }
  // Identity: inventory id when known, else text.
  friend bool operator==(const FeatureTag& a, const FeatureTag& b) {
    if (a.id >= 0 || b.id >= 0) return a.id == b.id;
    return a.text == b.text;
  }
};

// The tag inventory: every known tag, its dimension, its canonical rank
// within the dimension, and accepted alias spellings.
class TagInventory {
 public:
  // The built-in inventory (UniMorph 4.0 tag set subset used by this toolkit).
  static const TagInventory& builtin();

  // Plain-text format, one entry per line:
  //   TAG <TAB> DIMENSION     adds TAG to DIMENSION (rank = line order)
  //   TAG <TAB> =OTHER        makes TAG an alias of the already-listed OTHER
  // '#' starts a comment; blank lines ignored.
  static TagInventory load(std::istream& in);

  TagInventory() = default;

  // Adds a canonical tag. Throws std::invalid_argument on duplicates.
  void add(std::string_view text, Dimension dim);
  void add_alias(std::string_view alias, std::string_view canonical);

  // Case-insensitive lookup; returns a fully resolved tag preserving the
  // (uppercased) query spelling, or nullopt if the text is not in the
  // inventory.
  std::optional<FeatureTag> find(std::string_view text) const;

  // Canonical spelling for an inventory id.
  const std::string& canonical_text(int32_t id) const;
  Dimension dimension_of(int32_t id) const;

  size_t size() const { return tags_.size(); }
  std::string version() const { return version_; }
  void set_version(std::string v) { version_ = std::move(v); }

 private:
  struct Entry {
    std::string text;
    Dimension dimension;
    int32_t rank_in_dimension;
  };
  std::vector<Entry> tags_;
  std::vector<std::pair<std::string, int32_t>> index_;  // sorted text -> id
  std::vector<int32_t> per_dimension_count_ =
      std::vector<int32_t>(static_cast<size_t>(Dimension::kUnknown) + 1, 0);
  std::string version_ = "4.0";

  int32_t lookup(std::string_view upper) const;
  void insert_index(std::string text, int32_t id);
};

const TagInventory& default_inventory();

// A node of the feature tree: atomic, or a composite head with children
// (case, argument-role and possession heads take children).
struct FeatureNode {
  FeatureTag head;
  std::vector<FeatureNode> children;

  bool atomic() const { return children.empty(); }
};

enum class SchemaKind { kFlat, kHierarchical };

// An ordered forest of feature nodes. Sibling order carries no meaning
// (canonicalize fixes it); case-nesting order does.
struct FeatureBundle {
  std::vector<FeatureNode> nodes;

  bool empty() const { return nodes.empty(); }
  SchemaKind schema_kind() const;
  // The POS-dimension tag, if present at top level.
  const FeatureTag* pos_tag() const;
};

enum class ParseMode { kStrict, kLax };

class ParseError : public std::runtime_error {
 public:
  enum class Code {
    kUnbalancedParentheses,
    kEmptyComponent,
    kUnknownTag,
    kCompositeHeadNotAllowed,
    kBadToken,
  };
  ParseError(Code code, size_t position, const std::string& message)
      : std::runtime_error(message), code(code), position(position) {}
  Code code;
  size_t position;  // byte offset into the input text
};

// Grammar: bundle := node (';' node)* ; node := TAG | TAG '(' inner ')' ;
// inner := node ((';'|',') node)*. Parsing is case-insensitive; tags are
// stored uppercase. Lax mode admits unknown tags into Dimension::kUnknown.
FeatureBundle parse_features(std::string_view text, ParseMode mode,
                             const TagInventory& inventory =
                                 default_inventory());

// Inverse of parse_features. Siblings joined by ';' at top level; children
// joined by ',' when all atomic, by ';' otherwise. Node order is preserved.
std::string serialize(const FeatureBundle& bundle);
std::string serialize(const FeatureNode& node);

// Total canonical form: siblings sorted by (dimension rank, tag rank, text)
// recursively, structural duplicates removed, nesting untouched. Handles
// unknown-dimension tags (ranked last).
FeatureBundle canonical_form(const FeatureBundle& bundle);

// The public canonicalization operation: canonical_form restricted to the
// strict inventory. Throws ParseError(kUnknownTag) if any tag is unknown.
FeatureBundle canonicalize(const FeatureBundle& bundle);

// Equality up to sibling permutation (and alias spelling). Case-nesting
// order is significant: ALL(COM(SG)) != COM(ALL(SG)).
bool bundles_equal(const FeatureBundle& a, const FeatureBundle& b);

// serialize(canonical_form(b)) — stable map key for a bundle.
std::string canonical_key(const FeatureBundle& bundle);

}  // namespace unimorph

#endif  // UNIMORPH_SCHEMA_HPP_
