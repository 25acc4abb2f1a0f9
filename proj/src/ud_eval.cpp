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

#include "unimorph/ud_eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace unimorph {

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

std::string pair_key(const std::string& lemma, const std::string& form) {
  return lemma + '\t' + form;
}

}  // namespace

std::vector<UDToken> read_conllu(std::istream& in,
                                 std::vector<Diagnostic>* diagnostics) {
  std::vector<UDToken> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10) {
      if (diagnostics != nullptr) {
        diagnostics->push_back(Diagnostic{
            lineno, Severity::kWarning, DiagCode::kMalformedLine,
            "expected 10 columns, found " + std::to_string(cols.size()) +
                "; line skipped"});
      }
      continue;
    }
    const std::string& id = cols[0];
    // multiword ranges (1-2) and empty nodes (1.1) are not basic tokens
    if (id.find('-') != std::string::npos ||
        id.find('.') != std::string::npos) {
      continue;
    }
    UDToken token;
    token.form = cols[1];
    token.lemma = cols[2];
    token.upos = cols[3];
    token.line = lineno;
    if (cols[5] != "_" && !cols[5].empty()) {
      for (const std::string& pair : split(cols[5], '|')) {
        const size_t eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) continue;
        const std::string key = pair.substr(0, eq);
        for (const std::string& value : split(pair.substr(eq + 1), ','))
          if (!value.empty()) token.feats.emplace_back(key, value);
      }
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// MappingProfile

void MappingProfile::map_upos(const std::string& upos, const FeatureTag& tag) {
  upos_map_[upos] = tag;
}

void MappingProfile::map_feat(const std::string& key, const std::string& value,
                              std::optional<FeatureTag> tag) {
  feat_map_[key + '=' + value] = std::move(tag);
}

const FeatureTag* MappingProfile::upos_tag(const std::string& upos) const {
  auto it = upos_map_.find(upos);
  return it == upos_map_.end() ? nullptr : &it->second;
}

std::optional<std::optional<FeatureTag>> MappingProfile::feat_tag(
    const std::string& key, const std::string& value) const {
  auto it = feat_map_.find(key + '=' + value);
  if (it == feat_map_.end()) return std::nullopt;
  return it->second;
}

MappingProfile MappingProfile::load(std::istream& in,
                                    const TagInventory& inv) {
  MappingProfile profile;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("mapping profile line " +
                                std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail("expected KEY<TAB>TAG");
    const std::string key = line.substr(0, tab);
    std::string value = line.substr(tab + 1);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t'))
      value.pop_back();
    if (value.empty()) fail("missing tag for '" + key + "'");

    const size_t eq = key.find('=');
    if (eq == std::string::npos) {
      auto tag = inv.find(value);
      if (!tag) fail("'" + value + "' is not in the inventory");
      profile.map_upos(key, *tag);
    } else {
      const std::string feat_key = key.substr(0, eq);
      const std::string feat_value = key.substr(eq + 1);
      if (feat_key.empty() || feat_value.empty())
        fail("malformed feature pair '" + key + "'");
      if (value == "DROP") {
        profile.map_feat(feat_key, feat_value, std::nullopt);
      } else {
        auto tag = inv.find(value);
        if (!tag) fail("'" + value + "' is not in the inventory");
        profile.map_feat(feat_key, feat_value, *tag);
      }
    }
  }
  return profile;
}

MappingProfile MappingProfile::load_file(const std::string& path,
                                         const TagInventory& inv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open mapping profile: " + path);
  return load(in, inv);
}

std::optional<FeatureBundle> map_ud_to_unimorph(const UDToken& token,
                                                const MappingProfile& profile) {
  const FeatureTag* pos = profile.upos_tag(token.upos);
  if (pos == nullptr) return std::nullopt;
  FeatureBundle bundle;
  bundle.nodes.push_back(FeatureNode{*pos, {}});
  for (const auto& [key, value] : token.feats) {
    const auto mapped = profile.feat_tag(key, value);
    if (!mapped || !*mapped) continue;  // unlisted or DROP
    bundle.nodes.push_back(FeatureNode{**mapped, {}});
  }
  return canonical_form(bundle);
}

// ---------------------------------------------------------------------------
// Index

void UniMorphIndex::add(const InflectionRecord& record,
                        const LanguageProfile& profile) {
  std::vector<std::string>& keys =
      index_[pair_key(record.lemma, record.form)];
  std::optional<FeatureBundle> flat;
  if (record.features.schema_kind() == SchemaKind::kFlat) {
    flat = record.features;
  } else {
    flat = hierarchical_to_flat(record.features, profile);
  }
  if (!flat) return;  // NotRepresentable: pair stays present, no bundle
  std::string key = canonical_key(*flat);
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    keys.push_back(std::move(key));
}

bool UniMorphIndex::has_pair(const std::string& lemma,
                             const std::string& form) const {
  return index_.count(pair_key(lemma, form)) > 0;
}

const std::vector<std::string>* UniMorphIndex::bundles(
    const std::string& lemma, const std::string& form) const {
  auto it = index_.find(pair_key(lemma, form));
  return it == index_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Evaluation

double f_measure(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

void finalize(PosEval& e) {
  e.recall = e.total == 0 ? 0.0
                          : 100.0 * static_cast<double>(e.matched) /
                                static_cast<double>(e.total);
  e.precision = e.attempted == 0 ? 0.0
                                 : 100.0 * static_cast<double>(e.matched) /
                                       static_cast<double>(e.attempted);
  e.f1 = f_measure(e.precision, e.recall);
}

// atoms of a canonical flat key, for the partial-overlap mode
std::set<std::string> key_atoms(const std::string& key) {
  std::set<std::string> out;
  size_t start = 0;
  while (start <= key.size()) {
    const size_t pos = key.find(';', start);
    if (pos == std::string::npos) {
      out.insert(key.substr(start));
      break;
    }
    out.insert(key.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

EvalReport evaluate(const UniMorphIndex& index,
                    const std::vector<UDToken>& tokens,
                    const MappingProfile& profile, bool partial) {
  EvalReport report;
  std::unordered_set<std::string> seen_units;
  std::unordered_set<std::string> seen_excluded;
  for (const UDToken& token : tokens) {
    const auto bundle = map_ud_to_unimorph(token, profile);
    if (!bundle) {
      if (seen_excluded.insert(pair_key(token.lemma, token.form) + '\t' +
                               token.upos)
              .second) {
        ++report.excluded_tokens;
      }
      continue;
    }
    const std::string bundle_key = canonical_key(*bundle);
    const std::string unit =
        pair_key(token.lemma, token.form) + '\t' + bundle_key;
    if (!seen_units.insert(unit).second) continue;

    const FeatureTag* pos = bundle->pos_tag();
    PosEval& e = report.per_pos[pos != nullptr ? pos->text : "?"];
    ++e.total;
    ++report.overall.total;
    const std::vector<std::string>* indexed =
        index.bundles(token.lemma, token.form);
    if (indexed == nullptr) continue;
    ++e.attempted;
    ++report.overall.attempted;
    bool matched = false;
    if (partial) {
      const std::set<std::string> mapped_atoms = key_atoms(bundle_key);
      for (const std::string& key : *indexed) {
        const std::set<std::string> have = key_atoms(key);
        if (std::includes(mapped_atoms.begin(), mapped_atoms.end(),
                          have.begin(), have.end())) {
          matched = true;
          break;
        }
      }
    } else {
      matched = std::find(indexed->begin(), indexed->end(), bundle_key) !=
                indexed->end();
    }
    if (matched) {
      ++e.matched;
      ++report.overall.matched;
    }
  }
  for (auto& [pos, e] : report.per_pos) finalize(e);
  finalize(report.overall);
  return report;
}

// ---------------------------------------------------------------------------
// Report formatting

namespace {

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

std::string format_report_table(const EvalReport& report) {
  std::ostringstream out;
  out << "pos        total  attempted    matched   recall  precision       f1\n";
  auto emit = [&out](const std::string& pos, const PosEval& e) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-8s %8zu %10zu %10zu %8s %10s %8s\n",
                  pos.c_str(), e.total, e.attempted, e.matched,
                  fixed1(e.recall).c_str(), fixed1(e.precision).c_str(),
                  fixed1(e.f1).c_str());
    out << buf;
  };
  for (const auto& [pos, e] : report.per_pos) emit(pos, e);
  emit("ALL", report.overall);
  if (report.excluded_tokens > 0)
    out << "# excluded (unmapped UPOS): " << report.excluded_tokens << "\n";
  return out.str();
}

std::string format_report_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "pos\ttotal\tattempted\tmatched\trecall\tprecision\tf1\n";
  auto emit = [&out](const std::string& pos, const PosEval& e) {
    out << pos << '\t' << e.total << '\t' << e.attempted << '\t' << e.matched
        << '\t' << fixed1(e.recall) << '\t' << fixed1(e.precision) << '\t'
        << fixed1(e.f1) << '\n';
  };
  for (const auto& [pos, e] : report.per_pos) emit(pos, e);
  emit("ALL", report.overall);
  return out.str();
}

}  // namespace unimorph
