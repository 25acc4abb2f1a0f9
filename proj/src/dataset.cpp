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

#include "unimorph/dataset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace unimorph {

namespace {

constexpr const char* kNoSegmentation = "---";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Conservative NFC heuristic: a combining mark (U+0300..U+036F) directly
// after an ASCII letter always has a precomposed form in NFC text. Full
// normalization checking is out of scope; this catches the common case of
// decomposed Latin data.
bool looks_decomposed(const std::string& s) {
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    const unsigned char a = static_cast<unsigned char>(s[i]);
    const unsigned char b = static_cast<unsigned char>(s[i + 1]);
    const bool ascii_letter =
        (a >= 'A' && a <= 'Z') || (a >= 'a' && a <= 'z');
    if (!ascii_letter) continue;
    // U+0300..U+036F encode as 0xCC 0x80 .. 0xCD 0xAF
    if (i + 2 < s.size()) {
      const unsigned char c = static_cast<unsigned char>(s[i + 2]);
      if ((b == 0xCC && c >= 0x80) || (b == 0xCD && c <= 0xAF && c >= 0x80))
        return true;
    }
  }
  return false;
}

}  // namespace

InflectionReader::InflectionReader(std::istream& in, SchemaMode schema_mode,
                                   ParseMode mode, const TagInventory& inv)
    : in_(in), schema_mode_(schema_mode), parse_mode_(mode), inv_(inv) {}

bool InflectionReader::next(RecordOrDiagnostic& out) {
  if (!pending_.empty()) {
    out = pending_.front();
    pending_.erase(pending_.begin());
    return true;
  }
  if (ready_) {
    out = std::move(*ready_);
    ready_.reset();
    return true;
  }
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3 && cols.size() != 4) {
      out = Diagnostic{line_, Severity::kError, DiagCode::kBadColumnCount,
                       "expected 3 or 4 tab-separated columns, found " +
                           std::to_string(cols.size())};
      return true;
    }
    if (cols[0].empty() || cols[1].empty() || cols[2].empty()) {
      out = Diagnostic{line_, Severity::kError, DiagCode::kEmptyField,
                       "lemma, form and features must be non-empty"};
      return true;
    }

    InflectionRecord rec;
    rec.lemma = cols[0];
    rec.form = cols[1];
    rec.line = line_;

    std::string feature_text = cols[2];
    if (feature_text.find('|') != std::string::npos) {
      rec.feature_segmentation = feature_text;
      std::replace(feature_text.begin(), feature_text.end(), '|', ';');
    }
    try {
      rec.features = parse_features(feature_text, parse_mode_, inv_);
    } catch (const ParseError& e) {
      out = Diagnostic{line_, Severity::kError, DiagCode::kFeatureParseError,
                       "cannot parse features '" + cols[2] + "': " + e.what()};
      return true;
    }
    if (schema_mode_ == SchemaMode::kFlat &&
        rec.features.schema_kind() == SchemaKind::kHierarchical) {
      out = Diagnostic{line_, Severity::kError, DiagCode::kSchemaMismatch,
                       "hierarchical feature string in a flat-schema file: '" +
                           cols[2] + "'"};
      return true;
    }

    if (cols.size() == 4 && cols[3] != kNoSegmentation) {
      if (cols[3].empty()) {
        out = Diagnostic{line_, Severity::kError, DiagCode::kEmptyField,
                         "empty segmentation column"};
        return true;
      }
      rec.segmentation = split(cols[3], '|');
    }

    for (const std::string& field : {cols[0], cols[1]}) {
      if (looks_decomposed(field)) {
        pending_.push_back(
            Diagnostic{line_, Severity::kWarning, DiagCode::kNotNfc,
                       "'" + field + "' looks decomposed; files should be NFC"});
      }
    }
    if (!pending_.empty()) {
      ready_ = std::move(rec);
      out = pending_.front();
      pending_.erase(pending_.begin());
      return true;
    }
    out = std::move(rec);
    return true;
  }
  return false;
}

std::vector<RecordOrDiagnostic> InflectionReader::read_all() {
  std::vector<RecordOrDiagnostic> out;
  RecordOrDiagnostic item;
  while (next(item)) out.push_back(std::move(item));
  return out;
}

std::string format_record(const InflectionRecord& record) {
  std::string out = record.lemma;
  out += '\t';
  out += record.form;
  out += '\t';
  out += record.feature_segmentation ? *record.feature_segmentation
                                     : serialize(record.features);
  if (record.segmentation) {
    out += '\t';
    for (size_t i = 0; i < record.segmentation->size(); ++i) {
      if (i > 0) out += '|';
      out += (*record.segmentation)[i];
    }
  }
  return out;
}

void write_inflections(std::ostream& out,
                       const std::vector<InflectionRecord>& records) {
  for (const InflectionRecord& r : records) out << format_record(r) << '\n';
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Diagnostic> DatasetValidator::feed(const InflectionRecord& rec) {
  std::vector<Diagnostic> diags;
  const int line = rec.line > 0 ? rec.line : 1;
  ++rows_;
  lemmas_.insert(rec.lemma);

  const std::string features_key = canonical_key(rec.features);
  const std::string triple_key =
      rec.lemma + '\t' + rec.form + '\t' + features_key;
  if (!seen_triples_.insert(triple_key).second) {
    diags.push_back(Diagnostic{line, Severity::kError,
                               DiagCode::kDuplicateTriple,
                               "duplicate row (" + rec.lemma + ", " + rec.form +
                                   ", " + serialize(rec.features) + ")"});
  } else {
    const std::string cell_key = rec.lemma + '\t' + features_key;
    auto [it, inserted] = cell_form_.emplace(cell_key, rec.form);
    if (!inserted && it->second != rec.form) {
      diags.push_back(Diagnostic{
          line, Severity::kWarning, DiagCode::kOverabundantCell,
          "cell (" + rec.lemma + ", " + serialize(rec.features) +
              ") already has form '" + it->second + "', also '" + rec.form +
              "'"});
    }
  }

  const bool hier = rec.features.schema_kind() == SchemaKind::kHierarchical;
  if (hier)
    saw_hier_ = true;
  else
    saw_flat_ = true;
  if (saw_flat_ && saw_hier_ && !mixed_reported_) {
    mixed_reported_ = true;
    diags.push_back(Diagnostic{line, Severity::kWarning, DiagCode::kMixedSchema,
                               "file mixes flat and hierarchical feature "
                               "strings"});
  }

  if (rec.segmentation) {
    std::string joined;
    bool empty_morph = false;
    for (const std::string& m : *rec.segmentation) {
      if (m.empty()) empty_morph = true;
      joined += m;
    }
    if (empty_morph) {
      diags.push_back(Diagnostic{line, Severity::kError, DiagCode::kEmptyMorph,
                                 "segmentation contains an empty morph"});
    } else if (joined != rec.form) {
      diags.push_back(Diagnostic{
          line, Severity::kError, DiagCode::kSegmentationMismatch,
          "morphs join to '" + joined + "' but the form is '" + rec.form +
              "'"});
    }
    if (rec.feature_segmentation) {
      const size_t slots =
          1 + static_cast<size_t>(
                  std::count(rec.feature_segmentation->begin(),
                             rec.feature_segmentation->end(), '|'));
      if (slots > rec.segmentation->size()) {
        diags.push_back(
            Diagnostic{line, Severity::kWarning,
                       DiagCode::kFeatureSegmentationSlots,
                       "feature segmentation has more slots than morphs"});
      }
    }
  }

  const FeatureTag* pos = rec.features.pos_tag();
  if (pos == nullptr) {
    diags.push_back(Diagnostic{line, Severity::kWarning, DiagCode::kMissingPos,
                               "bundle has no part-of-speech tag"});
  } else {
    PosCount& c = per_pos_[pos->text];
    ++c.forms;
    if (pos_lemmas_[pos->text].insert(rec.lemma).second) ++c.lemmas;
  }
  return diags;
}

DatasetStats DatasetValidator::stats() const {
  DatasetStats s;
  s.lemma_count = lemmas_.size();
  s.form_count = rows_;
  s.per_pos = per_pos_;
  return s;
}

ValidationResult validate_dataset(
    const std::vector<InflectionRecord>& records) {
  ValidationResult result;
  DatasetValidator validator;
  for (const InflectionRecord& r : records) {
    auto diags = validator.feed(r);
    result.diagnostics.insert(result.diagnostics.end(), diags.begin(),
                              diags.end());
  }
  result.stats = validator.stats();
  return result;
}

DatasetStats compute_stats(const std::vector<InflectionRecord>& records,
                           std::vector<Diagnostic>* diagnostics) {
  DatasetStats s;
  std::unordered_set<std::string> lemmas;
  std::unordered_map<std::string, std::unordered_set<std::string>> pos_lemmas;
  for (const InflectionRecord& r : records) {
    ++s.form_count;
    lemmas.insert(r.lemma);
    const FeatureTag* pos = r.features.pos_tag();
    if (pos == nullptr) {
      if (diagnostics != nullptr) {
        diagnostics->push_back(
            Diagnostic{r.line > 0 ? r.line : 1, Severity::kWarning,
                       DiagCode::kMissingPos,
                       "bundle has no part-of-speech tag"});
      }
      continue;
    }
    PosCount& c = s.per_pos[pos->text];
    ++c.forms;
    if (pos_lemmas[pos->text].insert(r.lemma).second) ++c.lemmas;
  }
  s.lemma_count = lemmas.size();
  return s;
}

}  // namespace unimorph
