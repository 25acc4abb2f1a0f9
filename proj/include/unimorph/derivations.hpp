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

// Derivational morphology records: fusing redundant/incomplete preliminary
// records, affix inference and validation, per-language statistics.

#ifndef UNIMORPH_DERIVATIONS_HPP_
#define UNIMORPH_DERIVATIONS_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unimorph/diagnostics.hpp"

namespace unimorph {

enum class AffixOrientation { kPrefix, kSuffix };

// Display convention follows the hyphen side: "-ico" (suffix),
// "sus-" (prefix). `text` holds the bare affix.
struct Affix {
  std::string text;
  AffixOrientation orientation = AffixOrientation::kSuffix;

  std::string display() const {
    return orientation == AffixOrientation::kSuffix ? "-" + text : text + "-";
  }
  friend bool operator==(const Affix& a, const Affix& b) {
    return a.orientation == b.orientation && a.text == b.text;
  }
};

// Parses "-ico" / "sus-" display forms; nullopt for unmarked or doubly
// marked strings.
std::optional<Affix> parse_affix(const std::string& display);

struct DerivationRecord {
  std::string language;
  std::string source;
  std::string target;
  std::optional<std::string> source_pos;
  std::optional<std::string> target_pos;
  std::optional<Affix> affix;
  int line = 0;

  bool complete() const {
    return source_pos && target_pos && affix;
  }
};

struct FuseResult {
  std::vector<DerivationRecord> records;  // sorted (language, source, target)
  std::vector<Diagnostic> diagnostics;
};

// Groups by (language, source, target); fields merge to the unique
// non-missing value. Conflicting values leave the field missing and yield a
// FieldConflict diagnostic. Idempotent.
FuseResult fuse(const std::vector<DerivationRecord>& preliminary);

enum class AffixConfidence { kExact, kTruncating, kWeak };

struct InferredAffix {
  Affix affix;
  AffixConfidence confidence;
};

// target = affix+source -> exact prefix; target = source+affix -> exact
// suffix; a long common prefix (>= max(3, |source|-3)) with stem-final
// truncation -> truncating suffix; otherwise the residue of the longer
// common anchor, weak. nullopt when source and target share nothing.
std::optional<InferredAffix> infer_affix(const std::string& source,
                                         const std::string& target,
                                         size_t truncation_floor = 3);

// Prefix: target starts with the affix. Suffix: target ends with the affix
// and the remaining target prefix is itself a prefix of the source (stem
// truncation allowed).
bool validate_affix(const DerivationRecord& record);

struct LanguageDerivationStats {
  size_t lemma_count = 0;      // distinct strings as source or target
  size_t derivation_count = 0;
  size_t morpheme_count = 0;   // distinct (affix, orientation)
};

using DerivationStats = std::map<std::string, LanguageDerivationStats>;

DerivationStats derivation_stats(const std::vector<DerivationRecord>& records);

// TSV rows: source \t target \t SRCPOS:TGTPOS \t affix (missing fields
// empty). Rows 2..4 columns accepted; problems become diagnostics.
std::vector<DerivationRecord> read_derivations(
    std::istream& in, const std::string& language,
    std::vector<Diagnostic>* diagnostics = nullptr);

std::string format_derivation(const DerivationRecord& record);
void write_derivations(std::ostream& out,
                       const std::vector<DerivationRecord>& records);

}  // namespace unimorph

#endif  // UNIMORPH_DERIVATIONS_HPP_
