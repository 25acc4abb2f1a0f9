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

#include "unimorph/derivations.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

namespace unimorph {

std::optional<Affix> parse_affix(const std::string& display) {
  if (display.size() < 2) return std::nullopt;
  const bool leading = display.front() == '-';
  const bool trailing = display.back() == '-';
  if (leading == trailing) return std::nullopt;  // unmarked or both
  if (leading) return Affix{display.substr(1), AffixOrientation::kSuffix};
  return Affix{display.substr(0, display.size() - 1),
               AffixOrientation::kPrefix};
}

// ---------------------------------------------------------------------------
// fuse

namespace {

// Merge one optional field across a group; a second distinct value is a
// conflict and the field stays missing.
template <typename T>
struct FieldMerge {
  std::optional<T> value;
  bool conflict = false;
  int conflict_line = 0;

  void feed(const std::optional<T>& v, int line) {
    if (!v || conflict) return;
    if (!value) {
      value = v;
    } else if (!(*value == *v)) {
      conflict = true;
      conflict_line = line;
      value.reset();
    }
  }
};

}  // namespace

FuseResult fuse(const std::vector<DerivationRecord>& preliminary) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<const DerivationRecord*>> groups;
  for (const DerivationRecord& r : preliminary)
    groups[{r.language, r.source, r.target}].push_back(&r);

  FuseResult result;
  for (const auto& [key, members] : groups) {
    FieldMerge<std::string> source_pos;
    FieldMerge<std::string> target_pos;
    FieldMerge<Affix> affix;
    int first_line = members.front()->line;
    for (const DerivationRecord* r : members) {
      const int line = r->line > 0 ? r->line : 1;
      source_pos.feed(r->source_pos, line);
      target_pos.feed(r->target_pos, line);
      affix.feed(r->affix, line);
    }
    DerivationRecord fused;
    fused.language = std::get<0>(key);
    fused.source = std::get<1>(key);
    fused.target = std::get<2>(key);
    fused.source_pos = source_pos.value;
    fused.target_pos = target_pos.value;
    fused.affix = affix.value;
    fused.line = first_line;

    auto report = [&](const char* field, int line) {
      result.diagnostics.push_back(Diagnostic{
          line > 0 ? line : 1, Severity::kWarning, DiagCode::kFieldConflict,
          std::string(field) + " conflicts within (" + fused.language + ", " +
              fused.source + ", " + fused.target + "); left missing"});
    };
    if (source_pos.conflict) report("source POS", source_pos.conflict_line);
    if (target_pos.conflict) report("target POS", target_pos.conflict_line);
    if (affix.conflict) report("affix", affix.conflict_line);

    result.records.push_back(std::move(fused));
  }
  return result;
}

// ---------------------------------------------------------------------------
// affix inference / validation

std::optional<InferredAffix> infer_affix(const std::string& source,
                                         const std::string& target,
                                         size_t truncation_floor) {
  if (source.empty() || target.empty() || source == target)
    return std::nullopt;

  if (target.size() > source.size() && target.ends_with(source)) {
    return InferredAffix{
        Affix{target.substr(0, target.size() - source.size()),
              AffixOrientation::kPrefix},
        AffixConfidence::kExact};
  }
  if (target.size() > source.size() && target.starts_with(source)) {
    return InferredAffix{Affix{target.substr(source.size()),
                               AffixOrientation::kSuffix},
                         AffixConfidence::kExact};
  }

  size_t lcp = 0;
  while (lcp < source.size() && lcp < target.size() &&
         source[lcp] == target[lcp]) {
    ++lcp;
  }
  const size_t need =
      std::max(truncation_floor,
               source.size() > 3 ? source.size() - 3 : truncation_floor);
  if (lcp >= need && lcp < target.size()) {
    // Stem-final material of the source was dropped before suffixation
    // (morfologia -> morfologico).
    return InferredAffix{Affix{target.substr(lcp), AffixOrientation::kSuffix},
                         AffixConfidence::kTruncating};
  }

  size_t lcs = 0;
  while (lcs < source.size() && lcs < target.size() &&
         source[source.size() - 1 - lcs] == target[target.size() - 1 - lcs]) {
    ++lcs;
  }
  if (lcp == 0 && lcs == 0) return std::nullopt;
  if (lcp >= lcs) {
    if (lcp >= target.size()) return std::nullopt;
    return InferredAffix{Affix{target.substr(lcp), AffixOrientation::kSuffix},
                         AffixConfidence::kWeak};
  }
  if (lcs >= target.size()) return std::nullopt;
  return InferredAffix{Affix{target.substr(0, target.size() - lcs),
                             AffixOrientation::kPrefix},
                       AffixConfidence::kWeak};
}

bool validate_affix(const DerivationRecord& record) {
  if (!record.affix || record.affix->text.empty()) return false;
  if (record.affix->orientation == AffixOrientation::kPrefix)
    return record.target.starts_with(record.affix->text);
  if (!record.target.ends_with(record.affix->text)) return false;
  const std::string remainder =
      record.target.substr(0, record.target.size() - record.affix->text.size());
  return record.source.starts_with(remainder);
}

// ---------------------------------------------------------------------------
// stats and TSV

DerivationStats derivation_stats(
    const std::vector<DerivationRecord>& records) {
  DerivationStats stats;
  std::map<std::string, std::set<std::string>> lemmas;
  std::map<std::string, std::set<std::string>> morphemes;
  for (const DerivationRecord& r : records) {
    LanguageDerivationStats& s = stats[r.language];
    ++s.derivation_count;
    lemmas[r.language].insert(r.source);
    lemmas[r.language].insert(r.target);
    if (r.affix) morphemes[r.language].insert(r.affix->display());
  }
  for (auto& [language, s] : stats) {
    s.lemma_count = lemmas[language].size();
    s.morpheme_count = morphemes[language].size();
  }
  return stats;
}

namespace {

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

}  // namespace

std::vector<DerivationRecord> read_derivations(
    std::istream& in, const std::string& language,
    std::vector<Diagnostic>* diagnostics) {
  std::vector<DerivationRecord> out;
  std::string line;
  int lineno = 0;
  auto diag = [&](Severity sev, DiagCode code, const std::string& msg) {
    if (diagnostics != nullptr)
      diagnostics->push_back(Diagnostic{lineno, sev, code, msg});
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 4) {
      diag(Severity::kError, DiagCode::kBadColumnCount,
           "expected 2 to 4 columns, found " + std::to_string(cols.size()));
      continue;
    }
    if (cols[0].empty() || cols[1].empty()) {
      diag(Severity::kError, DiagCode::kEmptyField,
           "source and target must be non-empty");
      continue;
    }
    if (cols[0] == cols[1]) {
      diag(Severity::kError, DiagCode::kMalformedLine,
           "source equals target: '" + cols[0] + "'");
      continue;
    }
    DerivationRecord rec;
    rec.language = language;
    rec.source = cols[0];
    rec.target = cols[1];
    rec.line = lineno;
    if (cols.size() >= 3 && !cols[2].empty()) {
      const size_t colon = cols[2].find(':');
      if (colon == std::string::npos) {
        diag(Severity::kWarning, DiagCode::kMalformedLine,
             "POS column '" + cols[2] + "' is not SRC:TGT; ignored");
      } else {
        const std::string src = cols[2].substr(0, colon);
        const std::string tgt = cols[2].substr(colon + 1);
        if (!src.empty()) rec.source_pos = src;
        if (!tgt.empty()) rec.target_pos = tgt;
      }
    }
    if (cols.size() == 4 && !cols[3].empty()) {
      if (auto affix = parse_affix(cols[3])) {
        rec.affix = *affix;
      } else {
        diag(Severity::kWarning, DiagCode::kBadAffix,
             "affix '" + cols[3] +
                 "' has no orientation hyphen ('-x' or 'x-'); left missing");
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string format_derivation(const DerivationRecord& r) {
  std::string out = r.source;
  out += '\t';
  out += r.target;
  out += '\t';
  if (r.source_pos) out += *r.source_pos;
  out += ':';
  if (r.target_pos) out += *r.target_pos;
  if (!r.source_pos && !r.target_pos) out.pop_back();  // plain empty column
  out += '\t';
  if (r.affix) out += r.affix->display();
  return out;
}

void write_derivations(std::ostream& out,
                       const std::vector<DerivationRecord>& records) {
  for (const DerivationRecord& r : records) out << format_derivation(r) << '\n';
}

}  // namespace unimorph
