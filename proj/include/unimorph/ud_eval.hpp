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

// Validation against Universal Dependencies treebanks: CoNLL-U ingestion,
// UD -> UniMorph feature mapping, and per-POS recall/precision/F-measure of
// a UniMorph dataset over treebank types.

#ifndef UNIMORPH_UD_EVAL_HPP_
#define UNIMORPH_UD_EVAL_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "unimorph/convert.hpp"
#include "unimorph/dataset.hpp"
#include "unimorph/diagnostics.hpp"
#include "unimorph/schema.hpp"

namespace unimorph {

struct UDToken {
  std::string form;
  std::string lemma;
  std::string upos;
  // FEATS pairs in file order; multi-values (Case=Acc,Dat) are split.
  std::vector<std::pair<std::string, std::string>> feats;
  int line = 0;
};

// Emits one token per basic word line; comments, multiword ranges (1-2) and
// empty nodes (1.1) are skipped; FEATS "_" is an empty map. Lines with the
// wrong column count yield MalformedLine diagnostics and are skipped.
std::vector<UDToken> read_conllu(std::istream& in,
                                 std::vector<Diagnostic>* diagnostics =
                                     nullptr);

// Per-language UD -> UniMorph mapping. File rows:
//   UPOS <TAB> TAG
//   FEATKEY=FEATVALUE <TAB> TAG      (or DROP to discard the pair)
class MappingProfile {
 public:
  static MappingProfile load(std::istream& in,
                             const TagInventory& inv = default_inventory());
  static MappingProfile load_file(const std::string& path,
                                  const TagInventory& inv =
                                      default_inventory());

  void map_upos(const std::string& upos, const FeatureTag& tag);
  void map_feat(const std::string& key, const std::string& value,
                std::optional<FeatureTag> tag);  // nullopt = DROP

  const FeatureTag* upos_tag(const std::string& upos) const;
  // Present iff the pair is listed; inner nullopt = DROP.
  std::optional<std::optional<FeatureTag>> feat_tag(
      const std::string& key, const std::string& value) const;

 private:
  std::unordered_map<std::string, FeatureTag> upos_map_;
  std::unordered_map<std::string, std::optional<FeatureTag>> feat_map_;
};

// Canonical flat bundle for a token: mapped UPOS tag plus every mapped
// feature pair; unmapped pairs drop. nullopt when the UPOS is unmapped
// (the token is excluded from evaluation and counted separately).
std::optional<FeatureBundle> map_ud_to_unimorph(const UDToken& token,
                                                const MappingProfile& profile);

// (lemma, form) -> canonical flat bundles from a UniMorph inflection file.
// Hierarchical bundles are converted with hierarchical_to_flat; entries
// whose conversion is NotRepresentable keep (lemma, form) presence but
// never feature-match.
class UniMorphIndex {
 public:
  void add(const InflectionRecord& record, const LanguageProfile& profile);
  bool has_pair(const std::string& lemma, const std::string& form) const;
  // Canonical keys of the flat bundles for the pair (may be empty).
  const std::vector<std::string>* bundles(const std::string& lemma,
                                          const std::string& form) const;
  size_t pair_count() const { return index_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> index_;
};

struct PosEval {
  size_t total = 0;      // evaluation units with this POS
  size_t attempted = 0;  // units whose (lemma, form) is in the index
  size_t matched = 0;    // attempted units whose bundle equals an indexed one
  double recall = 0.0;     // matched/total * 100
  double precision = 0.0;  // matched/attempted * 100
  double f1 = 0.0;
};

struct EvalReport {
  std::map<std::string, PosEval> per_pos;
  PosEval overall;
  size_t excluded_tokens = 0;  // unmapped UPOS
};

// 2PR/(P+R); 0 when P+R is 0. Arguments and result are percentages.
double f_measure(double precision, double recall);

// Type-level evaluation: distinct (lemma, form, mapped bundle) units.
// `partial` matches when an indexed bundle is a subset of the mapped one.
EvalReport evaluate(const UniMorphIndex& index,
                    const std::vector<UDToken>& tokens,
                    const MappingProfile& profile, bool partial = false);

// Aligned text table / machine-readable TSV
// (pos \t total \t attempted \t matched \t recall \t precision \t f1).
std::string format_report_table(const EvalReport& report);
std::string format_report_tsv(const EvalReport& report);

}  // namespace unimorph

#endif  // UNIMORPH_UD_EVAL_HPP_
