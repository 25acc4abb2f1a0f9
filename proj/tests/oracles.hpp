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

// Test-only brute-force oracles. These deliberately take a different route
// from the library: segmentation is checked by composing whole affix blocks
// around a candidate stem, and paradigm inference by enumerating candidate
// variable values from form substrings.

#ifndef UNIMORPH_TESTS_ORACLES_HPP_
#define UNIMORPH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unimorph/paradigms.hpp"
#include "unimorph/schema.hpp"
#include "unimorph/segmenter.hpp"

namespace unimorph::testutil {

// ---------------------------------------------------------------------------
// Segmentation oracle

// Every root-to-target path in the table, as edge index sequences
// (root-outward), capped at kMaxSegmentDepth edges.
inline void collect_paths(const MorphemeTable& table,
                          const std::string& target_key,
                          std::vector<size_t>& path,
                          std::vector<std::vector<size_t>>& out) {
  const auto& incoming = table.edges_into(target_key);
  if (incoming.empty()) {  // root
    std::vector<size_t> root_outward(path.rbegin(), path.rend());
    out.push_back(std::move(root_outward));
    return;
  }
  if (path.size() >= static_cast<size_t>(kMaxSegmentDepth)) return;
  for (size_t e : incoming) {
    path.push_back(e);
    collect_paths(table, canonical_key(table.edges()[e].source), path, out);
    path.pop_back();
  }
}

// All valid parses as morph lists (surface order), by enumerating every
// path and every allomorph choice and checking
//   form == prefix-block + stem + suffix-block
// with a non-empty stem.
inline std::set<std::vector<std::string>> brute_force_segment(
    const std::string& form, const FeatureBundle& features,
    const MorphemeTable& table) {
  std::set<std::vector<std::string>> parses;
  if (!table.contains(features)) return parses;
  std::vector<std::vector<size_t>> paths;
  std::vector<size_t> scratch;
  collect_paths(table, canonical_key(features), scratch, paths);

  for (const std::vector<size_t>& path : paths) {
    // enumerate allomorph choices along the path
    std::vector<size_t> choice(path.size(), 0);
    while (true) {
      // innermost-to-outermost suffixes append; prefixes prepend
      std::string prefix_block;
      std::string suffix_block;
      std::vector<std::string> prefixes;  // outermost first
      std::vector<std::string> suffixes;  // innermost first
      for (size_t i = 0; i < path.size(); ++i) {
        const MorphemeEdge& edge = table.edges()[path[i]];
        const std::string& a = edge.allomorphs[choice[i]];
        if (edge.kind == AffixKind::kSuffix)
          suffixes.push_back(a);
        else
          prefixes.insert(prefixes.begin(), a);
      }
      for (const std::string& p : prefixes) prefix_block += p;
      for (const std::string& s : suffixes) suffix_block += s;
      if (form.size() > prefix_block.size() + suffix_block.size() &&
          form.compare(0, prefix_block.size(), prefix_block) == 0 &&
          form.compare(form.size() - suffix_block.size(), suffix_block.size(),
                       suffix_block) == 0) {
        const std::string stem =
            form.substr(prefix_block.size(),
                        form.size() - prefix_block.size() - suffix_block.size());
        std::vector<std::string> morphs = prefixes;
        morphs.push_back(stem);
        morphs.insert(morphs.end(), suffixes.begin(), suffixes.end());
        parses.insert(std::move(morphs));
      }
      // next choice vector
      size_t i = 0;
      for (; i < path.size(); ++i) {
        if (++choice[i] < table.edges()[path[i]].allomorphs.size()) break;
        choice[i] = 0;
      }
      if (i == path.size()) break;
    }
  }
  return parses;
}

// Random small tables for the oracle comparison: a DAG over a fixed bundle
// pool (edges only from lower to higher pool index), short allomorphs over
// a tiny alphabet so that ambiguous parses are common.
inline const std::vector<std::string>& table_bundle_pool() {
  static const std::vector<std::string> pool = {
      "N;NOM;SG", "N;NOM;PL", "N;DAT;PL", "N;ACC;PL", "N;GEN;SG", "N;COM;PL"};
  return pool;
}

inline MorphemeTable random_table(std::mt19937& rng, int max_edges = 6,
                                  int max_allomorphs = 3) {
  std::uniform_int_distribution<int> edge_count(1, max_edges);
  std::uniform_int_distribution<int> allo_count(1, max_allomorphs);
  std::uniform_int_distribution<int> allo_len(1, 3);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> pct(0, 99);
  const auto& pool = table_bundle_pool();

  MorphemeTable table;
  std::set<std::pair<int, int>> used;
  const int edges = edge_count(rng);
  for (int i = 0; i < edges; ++i) {
    std::uniform_int_distribution<size_t> lo(0, pool.size() - 2);
    const size_t src = lo(rng);
    std::uniform_int_distribution<size_t> hi(src + 1, pool.size() - 1);
    const size_t tgt = hi(rng);
    if (!used.insert({static_cast<int>(src), static_cast<int>(tgt)}).second)
      continue;
    MorphemeEdge edge;
    edge.source = parse_features(pool[src], ParseMode::kStrict);
    edge.target = parse_features(pool[tgt], ParseMode::kStrict);
    const int n = allo_count(rng);
    std::set<std::string> allos;
    for (int a = 0; a < n; ++a) {
      std::string s;
      const int len = allo_len(rng);
      for (int c = 0; c < len; ++c)
        s.push_back(static_cast<char>('a' + letter(rng)));
      allos.insert(s);
    }
    edge.allomorphs.assign(allos.begin(), allos.end());
    edge.kind = pct(rng) < 25 ? AffixKind::kPrefix : AffixKind::kSuffix;
    table.add_edge(std::move(edge));
  }
  return table;
}

inline std::string random_form(std::mt19937& rng, int max_len = 9) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> letter(0, 2);
  std::string out;
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i)
    out.push_back(static_cast<char>('a' + letter(rng)));
  return out;
}

// ---------------------------------------------------------------------------
// Paradigm inference oracle

// Substitutes a binding into a pattern; empty optional when a variable is
// unbound.
inline std::optional<std::string> substitute(const FormPattern& pattern,
                                             const Binding& binding) {
  std::string out;
  for (const FormPattern::Segment& seg : pattern.segments) {
    if (!seg.is_variable) {
      out += seg.literal;
      continue;
    }
    auto it = binding.find(seg.variable);
    if (it == binding.end()) return std::nullopt;
    out += it->second;
  }
  return out;
}

// Exhaustive check of one class against the triples: candidate values for
// each variable are the substrings of the shortest observed form whose cell
// uses the variable (a bound value must occur inside every such form).
inline bool brute_force_class_matches(
    const std::vector<ObservedTriple>& triples, const ParadigmClass& klass) {
  if (triples.empty()) return false;
  std::map<int, std::string> shortest_form_with;  // var -> form
  for (const ObservedTriple& t : triples) {
    const FormPattern* pattern = klass.cell(canonical_key(t.features));
    if (pattern == nullptr) return false;  // strict coverage
    for (const FormPattern::Segment& seg : pattern->segments) {
      if (!seg.is_variable) continue;
      auto [it, inserted] = shortest_form_with.emplace(seg.variable, t.form);
      if (!inserted && t.form.size() < it->second.size()) it->second = t.form;
    }
  }
  std::vector<int> vars;
  std::vector<std::vector<std::string>> candidates;
  for (const auto& [var, form] : shortest_form_with) {
    std::set<std::string> values;
    for (size_t i = 0; i < form.size(); ++i)
      for (size_t len = 1; i + len <= form.size(); ++len)
        values.insert(form.substr(i, len));
    vars.push_back(var);
    candidates.emplace_back(values.begin(), values.end());
  }

  std::vector<size_t> choice(vars.size(), 0);
  while (true) {
    Binding binding;
    for (size_t i = 0; i < vars.size(); ++i)
      binding[vars[i]] = candidates[i][choice[i]];
    bool ok = true;
    for (const ObservedTriple& t : triples) {
      const FormPattern* pattern = klass.cell(canonical_key(t.features));
      const auto produced = substitute(*pattern, binding);
      if (!produced || *produced != t.form) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++choice[i] < candidates[i].size()) break;
      choice[i] = 0;
    }
    if (i == vars.size()) break;
  }
  // a class whose observed cells are variable-free could still match
  if (vars.empty()) {
    for (const ObservedTriple& t : triples) {
      const FormPattern* pattern = klass.cell(canonical_key(t.features));
      const auto produced = substitute(*pattern, Binding{});
      if (!produced || *produced != t.form) return false;
    }
    return true;
  }
  return false;
}

inline std::set<std::string> brute_force_infer(
    const std::vector<ObservedTriple>& triples,
    const std::vector<ParadigmClass>& inventory) {
  std::set<std::string> out;
  for (const ParadigmClass& klass : inventory)
    if (brute_force_class_matches(triples, klass)) out.insert(klass.id);
  return out;
}

inline const std::vector<std::string>& cell_bundle_pool() {
  static const std::vector<std::string> pool = {"N;NOM;SG", "N;NOM;PL",
                                                "N;DAT;SG", "N;DAT;PL",
                                                "N;ACC;SG", "N;ACC;PL"};
  return pool;
}

// Random inventory: patterns are {1}+suffix, prefix+{1}, or {1}literal{2}.
inline std::vector<ParadigmClass> random_inventory(std::mt19937& rng,
                                                   int max_classes = 5,
                                                   int max_cells = 6) {
  std::uniform_int_distribution<int> class_count(1, max_classes);
  std::uniform_int_distribution<int> cell_count(1, max_cells);
  std::uniform_int_distribution<int> suffix_len(0, 3);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> pct(0, 99);
  const auto& pool = cell_bundle_pool();

  auto random_literal = [&](int min_len, int max_len) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::string s;
    const int len = len_dist(rng);
    for (int i = 0; i < len; ++i)
      s.push_back(static_cast<char>('a' + letter(rng)));
    return s;
  };

  std::vector<ParadigmClass> inventory;
  const int classes = class_count(rng);
  for (int c = 0; c < classes; ++c) {
    ParadigmClass klass;
    klass.id = "class" + std::to_string(c);
    std::vector<size_t> cells(pool.size());
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = i;
    std::shuffle(cells.begin(), cells.end(), rng);
    const int n = cell_count(rng);
    const bool two_vars = pct(rng) < 25;
    for (int i = 0; i < n && i < static_cast<int>(cells.size()); ++i) {
      std::string text;
      if (two_vars) {
        text = "{1}" + random_literal(1, 2) + "{2}" + random_literal(0, 2);
      } else if (pct(rng) < 15) {
        text = random_literal(1, 2) + "{1}" + random_literal(0, 2);
      } else {
        text = "{1}" + random_literal(0, 3);
      }
      klass.cells.emplace_back(
          canonical_key(parse_features(pool[cells[static_cast<size_t>(i)]],
                                       ParseMode::kStrict)),
          FormPattern::parse(text));
    }
    inventory.push_back(std::move(klass));
  }
  return inventory;
}

// Random observations: some generated from a random inventory class (so
// positive matches occur), some random noise.
inline std::vector<ObservedTriple> random_triples(
    std::mt19937& rng, const std::vector<ParadigmClass>& inventory,
    int max_triples = 4) {
  std::uniform_int_distribution<int> triple_count(1, max_triples);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> stem_len(1, 4);
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<size_t> class_pick(0, inventory.size() - 1);
  const auto& pool = cell_bundle_pool();

  auto random_string = [&](int len) {
    std::string s;
    for (int i = 0; i < len; ++i)
      s.push_back(static_cast<char>('a' + letter(rng)));
    return s;
  };

  std::vector<ObservedTriple> triples;
  const ParadigmClass& source = inventory[class_pick(rng)];
  Binding truth;
  truth[1] = random_string(stem_len(rng));
  truth[2] = random_string(stem_len(rng));
  const int n = triple_count(rng);
  for (int i = 0; i < n; ++i) {
    if (pct(rng) < 70 && !source.cells.empty()) {
      std::uniform_int_distribution<size_t> cell_pick(
          0, source.cells.size() - 1);
      const auto& [key, pattern] = source.cells[cell_pick(rng)];
      const auto form = substitute(pattern, truth);
      // recover the bundle from the shared pool by key
      for (const std::string& text : pool) {
        FeatureBundle b = parse_features(text, ParseMode::kStrict);
        if (canonical_key(b) == key) {
          triples.push_back(ObservedTriple{*form, std::move(b)});
          break;
        }
      }
    } else {
      std::uniform_int_distribution<size_t> bundle_pick(0, pool.size() - 1);
      triples.push_back(ObservedTriple{
          random_string(stem_len(rng) + 2),
          parse_features(pool[bundle_pick(rng)], ParseMode::kStrict)});
    }
  }
  if (triples.empty())
    triples.push_back(ObservedTriple{
        random_string(3), parse_features(pool[0], ParseMode::kStrict)});
  return triples;
}

}  // namespace unimorph::testutil

#endif  // UNIMORPH_TESTS_ORACLES_HPP_
