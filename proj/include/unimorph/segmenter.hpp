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

// Recursive morpheme segmentation: walk a language-specific morpheme table
// from a form's feature bundle back to a base cell, stripping one allomorph
// per edge, with override rules for irregulars.

#ifndef UNIMORPH_SEGMENTER_HPP_
#define UNIMORPH_SEGMENTER_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "unimorph/dataset.hpp"
#include "unimorph/diagnostics.hpp"
#include "unimorph/schema.hpp"

namespace unimorph {

enum class AffixKind { kSuffix, kPrefix };

// One inflectional step: target forms derive from source forms by one of
// the allomorphs. Allomorph strings are stored without the display hyphen.
struct MorphemeEdge {
  FeatureBundle source;
  FeatureBundle target;
  std::vector<std::string> allomorphs;
  AffixKind kind = AffixKind::kSuffix;
};

// Directed inflection network over feature bundles. Base cells (roots) are
// the bundles that never appear as an edge target.
class MorphemeTable {
 public:
  // TSV rows: source-features \t allomorph;... \t target-features [\t kind].
  // Hyphen placement on the allomorphs ("-ek" vs "sus-") infers the kind
  // when the fourth column is absent. Throws std::invalid_argument on
  // malformed rows and on cyclic tables.
  static MorphemeTable load(std::istream& in,
                            ParseMode mode = ParseMode::kLax,
                            const TagInventory& inv = default_inventory());
  static MorphemeTable load_file(const std::string& path,
                                 ParseMode mode = ParseMode::kLax,
                                 const TagInventory& inv =
                                     default_inventory());

  // Programmatic construction; edges validated (source != target, non-empty
  // allomorphs). Cyclic tables are representable here; the segmenter's
  // depth cap reports CycleDetected at run time.
  void add_edge(MorphemeEdge edge);

  const std::vector<MorphemeEdge>& edges() const { return edges_; }
  std::vector<FeatureBundle> roots() const;

  bool contains(const FeatureBundle& features) const;
  bool is_root(const FeatureBundle& features) const;
  const std::vector<size_t>& edges_into(const std::string& target_key) const;
  bool acyclic() const;

 private:
  std::vector<MorphemeEdge> edges_;
  std::unordered_map<std::string, std::vector<size_t>> by_target_;
  std::unordered_map<std::string, FeatureBundle> sources_;
};

struct OverrideRule {
  std::string form;
  FeatureBundle features;
  std::vector<std::string> morphs;  // joined morphs must equal form
};

// TSV rows: form \t features \t morph|morph|...
std::vector<OverrideRule> load_overrides(std::istream& in,
                                         ParseMode mode = ParseMode::kLax,
                                         const TagInventory& inv =
                                             default_inventory());

// surface-stem \t display-stem, one pair per line.
using StemMap = std::unordered_map<std::string, std::string>;
StemMap load_stem_map(std::istream& in);

// One parse. Morphs are surface substrings in surface order (prefixes,
// stem, suffixes); their concatenation equals the form byte for byte.
// `path` holds edge indices into the table, root-outward; morph_edge maps
// each morph to its path position (-1 for the stem).
struct Segmentation {
  std::vector<std::string> morphs;
  std::vector<size_t> path;
  std::vector<int> morph_edge;
  size_t stem_index = 0;
  bool from_override = false;
};

struct SegmentError {
  DiagCode code;
  std::string message;
};

struct SegmentResult {
  std::vector<Segmentation> parses;  // best-first; empty iff error
  std::optional<SegmentError> error;
};

inline constexpr int kMaxSegmentDepth = 16;

// Overrides dominate; otherwise the table is walked from `features` back to
// a root. Single-best mode returns one parse chosen by the deterministic
// tie-break (longest allomorph, fewest edges, lexicographic); all-parses
// mode returns every valid parse in tie-break order.
SegmentResult segment(const std::string& form, const FeatureBundle& features,
                      const MorphemeTable& table,
                      const std::vector<OverrideRule>& overrides,
                      bool all_parses = false);

// The `|`-separated features column: stem slot carries the root's POS, each
// affix slot the features its edge introduced; features of the final bundle
// inherited from the root attach to the innermost affix slot. A parse with
// no affixes collapses to the plain serialized bundle.
std::string align_feature_segmentation(const Segmentation& seg,
                                       const FeatureBundle& features,
                                       const MorphemeTable& table,
                                       std::vector<Diagnostic>* diagnostics =
                                           nullptr);

// Morphs with the display stem substituted (surface stem looked up in the
// stem-alternation map).
std::vector<std::string> display_morphs(const Segmentation& seg,
                                        const StemMap& stem_map);

struct SegmentedRecord {
  InflectionRecord record;  // segmentation = surface morphs
  Segmentation parse;
};

using SegmentedOrDiagnostic = std::variant<SegmentedRecord, Diagnostic>;

// Applies segment() to every record; failures become Diagnostics. Record
// order is preserved; `jobs` > 1 segments chunks in parallel with the
// output order restored.
std::vector<SegmentedOrDiagnostic> segment_dataset(
    const std::vector<InflectionRecord>& records, const MorphemeTable& table,
    const std::vector<OverrideRule>& overrides, bool all_parses = false,
    unsigned jobs = 1);

}  // namespace unimorph

#endif  // UNIMORPH_SEGMENTER_HPP_
