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

// Streaming reader/writer for UniMorph inflection TSV files, structural
// validation diagnostics, and dataset statistics.
//
// File format: `lemma \t form \t features` or
// `lemma \t form \t features-with-| \t segmentation-with-|`, UTF-8,
// LF or CRLF accepted, LF written.

#ifndef UNIMORPH_DATASET_HPP_
#define UNIMORPH_DATASET_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "unimorph/diagnostics.hpp"
#include "unimorph/schema.hpp"

namespace unimorph {

struct InflectionRecord {
  std::string lemma;
  std::string form;
  FeatureBundle features;
  std::optional<std::vector<std::string>> segmentation;
  std::optional<std::string> feature_segmentation;  // verbatim 3rd column
  int line = 0;  // source line, 0 when constructed programmatically
};

using RecordOrDiagnostic = std::variant<InflectionRecord, Diagnostic>;

enum class SchemaMode { kFlat, kHierarchical, kAuto };

// Single-pass reader. Blank lines are skipped; malformed rows become
// Diagnostics and never abort the stream. A fourth column of "---" means
// "no segmentation" (the convention used by segmented output files).
class InflectionReader {
 public:
  InflectionReader(std::istream& in, SchemaMode schema_mode, ParseMode mode,
                   const TagInventory& inv = default_inventory());

  // False at end of input.
  bool next(RecordOrDiagnostic& out);

  std::vector<RecordOrDiagnostic> read_all();

 private:
  std::istream& in_;
  SchemaMode schema_mode_;
  ParseMode parse_mode_;
  const TagInventory& inv_;
  int line_ = 0;
  std::vector<Diagnostic> pending_;  // NFC warnings queued before the record
  std::optional<InflectionRecord> ready_;
};

// Writes records in the reader's format (inverse of InflectionReader).
void write_inflections(std::ostream& out,
                       const std::vector<InflectionRecord>& records);
std::string format_record(const InflectionRecord& record);

struct PosCount {
  size_t lemmas = 0;
  size_t forms = 0;
};

struct DatasetStats {
  size_t lemma_count = 0;
  size_t form_count = 0;
  std::map<std::string, PosCount> per_pos;
};

// Incremental dataset validator. Feed records in file order; diagnostics
// come back in deterministic order. Duplicate detection holds one key per
// row, everything else is bounded.
class DatasetValidator {
 public:
  std::vector<Diagnostic> feed(const InflectionRecord& record);
  DatasetStats stats() const;

 private:
  std::unordered_set<std::string> seen_triples_;
  std::unordered_map<std::string, std::string> cell_form_;  // cell -> 1st form
  std::unordered_set<std::string> lemmas_;
  std::unordered_map<std::string, std::unordered_set<std::string>>
      pos_lemmas_;
  std::map<std::string, PosCount> per_pos_;
  size_t rows_ = 0;
  bool saw_flat_ = false;
  bool saw_hier_ = false;
  bool mixed_reported_ = false;
};

struct ValidationResult {
  std::vector<Diagnostic> diagnostics;
  DatasetStats stats;
};

// Batch wrappers over DatasetValidator.
ValidationResult validate_dataset(const std::vector<InflectionRecord>& records);

// Lemma/form counting: distinct lemma strings and total data rows, plus the
// per-POS split. Rows whose bundle has no POS tag yield MissingPOS.
DatasetStats compute_stats(const std::vector<InflectionRecord>& records,
                           std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace unimorph

#endif  // UNIMORPH_DATASET_HPP_
