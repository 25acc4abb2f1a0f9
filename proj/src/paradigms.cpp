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

#include "unimorph/paradigms.hpp"

#include <algorithm>
#include <istream>
#include <map>

namespace unimorph {

FormPattern FormPattern::parse(const std::string& text) {
  FormPattern pattern;
  std::string literal;
  auto flush = [&] {
    if (!literal.empty()) {
      pattern.segments.push_back(Segment{false, literal, 0});
      literal.clear();
    }
  };
  size_t i = 0;
  bool has_variable = false;
  bool last_was_variable = false;
  while (i < text.size()) {
    if (text[i] == '{') {
      const size_t close = text.find('}', i);
      if (close == std::string::npos)
        throw std::invalid_argument("pattern '" + text + "': unclosed '{'");
      const std::string num = text.substr(i + 1, close - i - 1);
      if (num.empty() ||
          num.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("pattern '" + text +
                                    "': variable must be {<number>}");
      flush();
      if (last_was_variable)
        throw std::invalid_argument("pattern '" + text +
                                    "': adjacent variables are not allowed");
      pattern.segments.push_back(Segment{true, "", std::stoi(num)});
      has_variable = true;
      last_was_variable = true;
      i = close + 1;
    } else {
      literal.push_back(text[i]);
      last_was_variable = false;
      ++i;
    }
  }
  flush();
  if (!has_variable)
    throw std::invalid_argument("pattern '" + text +
                                "': needs at least one variable part");
  return pattern;
}

std::string FormPattern::text() const {
  std::string out;
  for (const Segment& s : segments) {
    if (s.is_variable) {
      out += '{';
      out += std::to_string(s.variable);
      out += '}';
    } else {
      out += s.literal;
    }
  }
  return out;
}

const FormPattern* ParadigmClass::cell(const std::string& key) const {
  for (const auto& [cell_key, pattern] : cells)
    if (cell_key == key) return &pattern;
  return nullptr;
}

namespace {

void match_rec(const std::string& form, const FormPattern& pattern,
               size_t seg_index, size_t pos, Binding& binding,
               std::vector<Binding>& out) {
  if (seg_index == pattern.segments.size()) {
    if (pos == form.size()) out.push_back(binding);
    return;
  }
  const FormPattern::Segment& seg = pattern.segments[seg_index];
  if (!seg.is_variable) {
    if (form.compare(pos, seg.literal.size(), seg.literal) == 0)
      match_rec(form, pattern, seg_index + 1, pos + seg.literal.size(),
                binding, out);
    return;
  }
  auto bound = binding.find(seg.variable);
  if (bound != binding.end()) {
    const std::string& value = bound->second;
    if (form.compare(pos, value.size(), value) == 0)
      match_rec(form, pattern, seg_index + 1, pos + value.size(), binding,
                out);
    return;
  }
  for (size_t len = 1; pos + len <= form.size(); ++len) {
    binding[seg.variable] = form.substr(pos, len);
    match_rec(form, pattern, seg_index + 1, pos + len, binding, out);
  }
  binding.erase(seg.variable);
}

void sort_dedupe(std::vector<Binding>& bindings) {
  std::sort(bindings.begin(), bindings.end());
  bindings.erase(std::unique(bindings.begin(), bindings.end()),
                 bindings.end());
}

}  // namespace

std::vector<Binding> match_cell(const std::string& form,
                                const FormPattern& pattern,
                                const Binding& partial) {
  std::vector<Binding> out;
  Binding binding = partial;
  match_rec(form, pattern, 0, 0, binding, out);
  sort_dedupe(out);
  return out;
}

std::vector<ParadigmMatch> match_lemma(
    const std::vector<ObservedTriple>& triples, const ParadigmClass& klass,
    bool lenient) {
  std::vector<Binding> bindings = {Binding{}};
  bool matched_any_cell = false;
  for (const ObservedTriple& triple : triples) {
    const FormPattern* pattern = klass.cell(canonical_key(triple.features));
    if (pattern == nullptr) {
      if (lenient) continue;
      return {};
    }
    matched_any_cell = true;
    std::vector<Binding> next;
    for (const Binding& b : bindings) {
      std::vector<Binding> extended = match_cell(triple.form, *pattern, b);
      next.insert(next.end(), extended.begin(), extended.end());
    }
    sort_dedupe(next);
    if (next.empty()) return {};
    bindings = std::move(next);
  }
  if (triples.empty() || (lenient && !matched_any_cell)) return {};
  std::vector<ParadigmMatch> out;
  out.reserve(bindings.size());
  for (Binding& b : bindings)
    out.push_back(ParadigmMatch{klass.id, std::move(b)});
  return out;
}

std::set<std::string> infer_classes(const std::vector<ObservedTriple>& triples,
                                    const std::vector<ParadigmClass>& inventory,
                                    bool lenient) {
  std::set<std::string> out;
  for (const ParadigmClass& klass : inventory)
    if (!match_lemma(triples, klass, lenient).empty()) out.insert(klass.id);
  return out;
}

std::vector<ParadigmClass> load_paradigms(std::istream& in,
                                          std::vector<Diagnostic>* diagnostics,
                                          ParseMode mode,
                                          const TagInventory& inv) {
  std::vector<ParadigmClass> classes;
  std::map<std::string, size_t> index;
  std::map<std::string, std::map<int, int>> variable_cells;  // class -> var -> #cells
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("paradigm inventory line " +
                                std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab1 = line.find('\t');
    const size_t tab2 = tab1 == std::string::npos
                            ? std::string::npos
                            : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos)
      fail("expected class_id \\t features \\t pattern");
    const std::string id = line.substr(0, tab1);
    const std::string feature_text = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const std::string pattern_text = line.substr(tab2 + 1);
    if (id.empty()) fail("empty class id");

    FeatureBundle features;
    try {
      features = parse_features(feature_text, mode, inv);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    FormPattern pattern;
    try {
      pattern = FormPattern::parse(pattern_text);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }

    auto [it, inserted] = index.emplace(id, classes.size());
    if (inserted) classes.push_back(ParadigmClass{id, {}});
    ParadigmClass& klass = classes[it->second];
    const std::string key = canonical_key(features);
    if (klass.cell(key) != nullptr)
      fail("class '" + id + "' already has a cell for " +
           serialize(canonical_form(features)));
    for (const FormPattern::Segment& s : pattern.segments)
      if (s.is_variable) ++variable_cells[id][s.variable];
    klass.cells.emplace_back(key, std::move(pattern));
  }
  if (diagnostics != nullptr) {
    for (const auto& [id, vars] : variable_cells) {
      for (const auto& [var, count] : vars) {
        if (count == 1) {
          diagnostics->push_back(Diagnostic{
              1, Severity::kWarning, DiagCode::kFeatureParseError,
              "class '" + id + "': variable {" + std::to_string(var) +
                  "} appears in a single cell"});
        }
      }
    }
  }
  return classes;
}

}  // namespace unimorph
