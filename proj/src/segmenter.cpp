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

#include "unimorph/segmenter.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <istream>
#include <set>

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

}  // namespace

// ---------------------------------------------------------------------------
// MorphemeTable

void MorphemeTable::add_edge(MorphemeEdge edge) {
  if (edge.allomorphs.empty())
    throw std::invalid_argument("morpheme edge without allomorphs");
  for (const std::string& a : edge.allomorphs)
    if (a.empty()) throw std::invalid_argument("empty allomorph");
  if (bundles_equal(edge.source, edge.target))
    throw std::invalid_argument("morpheme edge with source == target: " +
                                serialize(edge.source));
  const std::string src_key = canonical_key(edge.source);
  const std::string tgt_key = canonical_key(edge.target);
  by_target_[tgt_key].push_back(edges_.size());
  sources_.emplace(src_key, edge.source);
  edges_.push_back(std::move(edge));
}

std::vector<FeatureBundle> MorphemeTable::roots() const {
  std::vector<FeatureBundle> out;
  std::set<std::string> seen;
  for (const auto& [key, bundle] : sources_) {
    if (by_target_.count(key) == 0 && seen.insert(key).second)
      out.push_back(bundle);
  }
  std::sort(out.begin(), out.end(),
            [](const FeatureBundle& a, const FeatureBundle& b) {
              return canonical_key(a) < canonical_key(b);
            });
  return out;
}

bool MorphemeTable::contains(const FeatureBundle& features) const {
  const std::string key = canonical_key(features);
  return by_target_.count(key) > 0 || sources_.count(key) > 0;
}

bool MorphemeTable::is_root(const FeatureBundle& features) const {
  const std::string key = canonical_key(features);
  return sources_.count(key) > 0 && by_target_.count(key) == 0;
}

const std::vector<size_t>& MorphemeTable::edges_into(
    const std::string& target_key) const {
  static const std::vector<size_t> kNone;
  auto it = by_target_.find(target_key);
  return it == by_target_.end() ? kNone : it->second;
}

bool MorphemeTable::acyclic() const {
  // Walk target -> source; grey nodes on the stack mean a cycle.
  std::unordered_map<std::string, int> color;  // 0 white, 1 grey, 2 black
  struct Walker {
    const MorphemeTable& table;
    std::unordered_map<std::string, int>& color;
    bool visit(const std::string& key) {
      int& c = color[key];
      if (c == 1) return false;
      if (c == 2) return true;
      c = 1;
      for (size_t e : table.edges_into(key))
        if (!visit(canonical_key(table.edges()[e].source))) return false;
      c = 2;
      return true;
    }
  } walker{*this, color};
  for (const auto& [key, ignored] : by_target_)
    if (!walker.visit(key)) return false;
  return true;
}

MorphemeTable MorphemeTable::load(std::istream& in, ParseMode mode,
                                  const TagInventory& inv) {
  MorphemeTable table;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("morpheme table line " +
                                std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3 && cols.size() != 4)
      fail("expected 3 or 4 columns");
    MorphemeEdge edge;
    try {
      edge.source = parse_features(cols[0], mode, inv);
      edge.target = parse_features(cols[2], mode, inv);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    bool all_prefix_notation = true;
    for (std::string a : split(cols[1], ';')) {
      bool prefix_notation = false;
      if (!a.empty() && a.front() == '-') {
        a.erase(a.begin());
      } else if (!a.empty() && a.back() == '-') {
        a.pop_back();
        prefix_notation = true;
      }
      if (a.empty()) fail("empty allomorph");
      if (!prefix_notation) all_prefix_notation = false;
      edge.allomorphs.push_back(std::move(a));
    }
    if (cols.size() == 4) {
      if (cols[3] == "suffix") {
        edge.kind = AffixKind::kSuffix;
      } else if (cols[3] == "prefix") {
        edge.kind = AffixKind::kPrefix;
      } else {
        fail("kind must be 'suffix' or 'prefix'");
      }
    } else {
      edge.kind = all_prefix_notation ? AffixKind::kPrefix
                                      : AffixKind::kSuffix;
    }
    try {
      table.add_edge(std::move(edge));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!table.acyclic())
    throw std::invalid_argument("morpheme table contains a cycle");
  return table;
}

MorphemeTable MorphemeTable::load_file(const std::string& path, ParseMode mode,
                                       const TagInventory& inv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open morpheme table: " + path);
  return load(in, mode, inv);
}

std::vector<OverrideRule> load_overrides(std::istream& in, ParseMode mode,
                                         const TagInventory& inv) {
  std::vector<OverrideRule> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3)
      throw std::invalid_argument("override line " + std::to_string(lineno) +
                                  ": expected 3 columns");
    OverrideRule rule;
    rule.form = cols[0];
    rule.features = parse_features(cols[1], mode, inv);
    rule.morphs = split(cols[2], '|');
    std::string joined;
    for (const std::string& m : rule.morphs) joined += m;
    if (joined != rule.form)
      throw std::invalid_argument("override line " + std::to_string(lineno) +
                                  ": morphs do not join to the form");
    out.push_back(std::move(rule));
  }
  return out;
}

StemMap load_stem_map(std::istream& in) {
  StemMap map;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
      throw std::invalid_argument("stem map line " + std::to_string(lineno) +
                                  ": expected surface<TAB>display");
    map[cols[0]] = cols[1];
  }
  return map;
}

// ---------------------------------------------------------------------------
// segment

namespace {

struct Strip {
  size_t edge;       // index into table.edges()
  std::string text;  // matched allomorph
  size_t at;         // byte offset of the morph within the form
  bool is_suffix;
};

struct Search {
  const std::string& form;
  const MorphemeTable& table;
  std::vector<std::vector<Strip>> found;  // strip order: outermost first
  std::vector<Strip> strips;
  bool hit_depth_cap = false;
  bool hit_empty_stem = false;

  void walk(const std::string& key, size_t lo, size_t hi, bool is_root) {
    if (is_root) {
      if (lo < hi)
        found.push_back(strips);
      else
        hit_empty_stem = true;
      return;
    }
    if (strips.size() >= static_cast<size_t>(kMaxSegmentDepth)) {
      hit_depth_cap = true;
      return;
    }
    for (size_t e : table.edges_into(key)) {
      const MorphemeEdge& edge = table.edges()[e];
      const std::string src_key = canonical_key(edge.source);
      const bool src_is_root = table.edges_into(src_key).empty();
      for (const std::string& a : edge.allomorphs) {
        if (a.size() > hi - lo) continue;
        if (edge.kind == AffixKind::kSuffix) {
          if (form.compare(hi - a.size(), a.size(), a) != 0) continue;
          strips.push_back(Strip{e, a, hi - a.size(), true});
          walk(src_key, lo, hi - a.size(), src_is_root);
        } else {
          if (form.compare(lo, a.size(), a) != 0) continue;
          strips.push_back(Strip{e, a, lo, false});
          walk(src_key, lo + a.size(), hi, src_is_root);
        }
        strips.pop_back();
      }
    }
  }
};

// Tie-break: longest allomorph at the first differing strip, then fewest
// edges, then lexicographically smaller allomorph, then source bundle key.
bool strips_better(const std::vector<Strip>& a, const std::vector<Strip>& b,
                   const MorphemeTable& table) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].text.size() != b[i].text.size())
      return a[i].text.size() > b[i].text.size();
  }
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < n; ++i)
    if (a[i].text != b[i].text) return a[i].text < b[i].text;
  for (size_t i = 0; i < n; ++i) {
    if (a[i].edge != b[i].edge) {
      return canonical_key(table.edges()[a[i].edge].source) <
             canonical_key(table.edges()[b[i].edge].source);
    }
  }
  return false;
}

Segmentation build_segmentation(const std::string& form,
                                const std::vector<Strip>& strips) {
  // Stem boundaries: what the strips left over.
  size_t lo = 0;
  size_t hi = form.size();
  for (const Strip& s : strips) {
    if (s.is_suffix)
      hi -= s.text.size();
    else
      lo += s.text.size();
  }
  struct Piece {
    size_t at;
    std::string text;
    int edge_pos;  // position in the root-outward path; -1 = stem
  };
  std::vector<Piece> pieces;
  pieces.push_back(Piece{lo, form.substr(lo, hi - lo), -1});
  // strips are outermost-first; the root-outward path is the reverse
  const int path_len = static_cast<int>(strips.size());
  for (size_t i = 0; i < strips.size(); ++i) {
    pieces.push_back(Piece{strips[i].at, strips[i].text,
                           path_len - 1 - static_cast<int>(i)});
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.at < y.at; });

  Segmentation seg;
  seg.path.resize(strips.size());
  for (size_t i = 0; i < strips.size(); ++i)
    seg.path[strips.size() - 1 - i] = strips[i].edge;
  for (size_t i = 0; i < pieces.size(); ++i) {
    seg.morphs.push_back(pieces[i].text);
    seg.morph_edge.push_back(pieces[i].edge_pos);
    if (pieces[i].edge_pos < 0) seg.stem_index = i;
  }
  return seg;
}

}  // namespace

SegmentResult segment(const std::string& form, const FeatureBundle& features,
                      const MorphemeTable& table,
                      const std::vector<OverrideRule>& overrides,
                      bool all_parses) {
  SegmentResult result;
  for (const OverrideRule& rule : overrides) {
    if (rule.form == form && bundles_equal(rule.features, features)) {
      Segmentation seg;
      seg.morphs = rule.morphs;
      seg.morph_edge.assign(rule.morphs.size(), -1);
      seg.stem_index = 0;
      seg.from_override = true;
      result.parses.push_back(std::move(seg));
      return result;
    }
  }

  if (!table.contains(features)) {
    result.error = SegmentError{
        DiagCode::kNoPath, "features " + serialize(features) +
                               " do not appear in the morpheme table"};
    return result;
  }

  Search search{form, table, {}, {}, false, false};
  const std::string key = canonical_key(features);
  search.walk(key, 0, form.size(), table.edges_into(key).empty());

  if (search.found.empty()) {
    if (search.hit_depth_cap) {
      result.error = SegmentError{
          DiagCode::kCycleDetected,
          "no parse within " + std::to_string(kMaxSegmentDepth) +
              " edges; the table may be cyclic"};
    } else if (search.hit_empty_stem) {
      result.error =
          SegmentError{DiagCode::kEmptyStem,
                       "stripping affixes consumed the whole form '" + form +
                           "'"};
    } else {
      result.error = SegmentError{
          DiagCode::kNoMatchingAllomorph,
          "no allomorph of any table path matches '" + form + "'"};
    }
    return result;
  }

  std::sort(search.found.begin(), search.found.end(),
            [&table](const std::vector<Strip>& a, const std::vector<Strip>& b) {
              return strips_better(a, b, table);
            });
  if (!all_parses) search.found.resize(1);
  for (const std::vector<Strip>& strips : search.found)
    result.parses.push_back(build_segmentation(form, strips));
  return result;
}

// ---------------------------------------------------------------------------
// Feature-column alignment

namespace {

std::vector<FeatureNode> canonical_top_nodes(const FeatureBundle& b) {
  return canonical_form(b).nodes;
}

bool node_in(const FeatureNode& n, const std::vector<FeatureNode>& set) {
  const std::string key = serialize(n);
  for (const FeatureNode& m : set)
    if (serialize(m) == key) return true;
  return false;
}

struct NodeOrderByRank {
  bool operator()(const FeatureNode& a, const FeatureNode& b) const {
    const int da = dimension_rank(a.head.dimension);
    const int db = dimension_rank(b.head.dimension);
    if (da != db) return da < db;
    if (a.head.rank_in_dimension != b.head.rank_in_dimension)
      return a.head.rank_in_dimension < b.head.rank_in_dimension;
    return a.head.text < b.head.text;
  }
};

std::string serialize_slot(std::vector<FeatureNode> nodes) {
  std::sort(nodes.begin(), nodes.end(), NodeOrderByRank{});
  std::string out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) out += ';';
    out += serialize(nodes[i]);
  }
  return out;
}

}  // namespace

std::string align_feature_segmentation(const Segmentation& seg,
                                       const FeatureBundle& features,
                                       const MorphemeTable& table,
                                       std::vector<Diagnostic>* diagnostics) {
  if (seg.path.empty()) return serialize(canonical_form(features));

  const std::vector<FeatureNode> final_nodes = canonical_top_nodes(features);

  // Introduced features per path edge (target minus source).
  std::vector<std::vector<FeatureNode>> deltas(seg.path.size());
  for (size_t i = 0; i < seg.path.size(); ++i) {
    const MorphemeEdge& edge = table.edges()[seg.path[i]];
    const auto src = canonical_top_nodes(edge.source);
    for (const FeatureNode& n : canonical_top_nodes(edge.target))
      if (!node_in(n, src)) deltas[i].push_back(n);
    if (deltas[i].empty() && diagnostics != nullptr) {
      diagnostics->push_back(Diagnostic{
          1, Severity::kWarning, DiagCode::kNonMonotonicEdge,
          "edge " + serialize(edge.source) + " -> " + serialize(edge.target) +
              " introduces no features; slot left empty"});
    }
  }

  // Stem slot: the root's POS. Remaining final-bundle features not
  // introduced by any edge attach to the innermost affix slot.
  const MorphemeEdge& first_edge = table.edges()[seg.path.front()];
  std::vector<FeatureNode> stem_nodes;
  for (const FeatureNode& n : canonical_top_nodes(first_edge.source)) {
    if (n.atomic() && n.head.dimension == Dimension::kPos &&
        node_in(n, final_nodes)) {
      stem_nodes.push_back(n);
    }
  }
  std::vector<FeatureNode> accounted = stem_nodes;
  for (const auto& d : deltas)
    accounted.insert(accounted.end(), d.begin(), d.end());
  for (const FeatureNode& n : final_nodes)
    if (!node_in(n, accounted)) deltas.front().push_back(n);

  std::vector<std::string> slots(seg.morphs.size());
  for (size_t i = 0; i < seg.morphs.size(); ++i) {
    const int e = seg.morph_edge[i];
    slots[i] = e < 0 ? serialize_slot(stem_nodes)
                     : serialize_slot(deltas[static_cast<size_t>(e)]);
  }
  std::string out;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out += '|';
    out += slots[i];
  }
  return out;
}

std::vector<std::string> display_morphs(const Segmentation& seg,
                                        const StemMap& stem_map) {
  std::vector<std::string> out = seg.morphs;
  if (seg.stem_index < out.size()) {
    auto it = stem_map.find(out[seg.stem_index]);
    if (it != stem_map.end()) out[seg.stem_index] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset segmentation

namespace {

std::vector<SegmentedOrDiagnostic> segment_chunk(
    const std::vector<InflectionRecord>& records, size_t begin, size_t end,
    const MorphemeTable& table, const std::vector<OverrideRule>& overrides,
    bool all_parses) {
  std::vector<SegmentedOrDiagnostic> out;
  for (size_t i = begin; i < end; ++i) {
    const InflectionRecord& rec = records[i];
    SegmentResult res = segment(rec.form, rec.features, table, overrides,
                                all_parses);
    if (res.error) {
      out.push_back(Diagnostic{rec.line > 0 ? rec.line : 1, Severity::kError,
                               res.error->code,
                               "(" + rec.lemma + ", " + rec.form + "): " +
                                   res.error->message});
      continue;
    }
    for (const Segmentation& parse : res.parses) {
      SegmentedRecord sr;
      sr.record = rec;
      sr.record.segmentation = parse.morphs;
      if (parse.morphs.size() > 1 && !parse.from_override) {
        sr.record.feature_segmentation =
            align_feature_segmentation(parse, rec.features, table);
      }
      sr.parse = parse;
      out.push_back(std::move(sr));
    }
  }
  return out;
}

}  // namespace

std::vector<SegmentedOrDiagnostic> segment_dataset(
    const std::vector<InflectionRecord>& records, const MorphemeTable& table,
    const std::vector<OverrideRule>& overrides, bool all_parses,
    unsigned jobs) {
  if (jobs <= 1 || records.size() < 2) {
    return segment_chunk(records, 0, records.size(), table, overrides,
                         all_parses);
  }
  const size_t chunk = std::max<size_t>(1, (records.size() + jobs - 1) / jobs);
  std::vector<std::future<std::vector<SegmentedOrDiagnostic>>> futures;
  for (size_t begin = 0; begin < records.size(); begin += chunk) {
    const size_t end = std::min(records.size(), begin + chunk);
    futures.push_back(std::async(std::launch::async, [&, begin, end] {
      return segment_chunk(records, begin, end, table, overrides, all_parses);
    }));
  }
  std::vector<SegmentedOrDiagnostic> out;
  for (auto& f : futures) {
    auto part = f.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace unimorph
