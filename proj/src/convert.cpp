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

#include "unimorph/convert.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace unimorph {

namespace {

bool is_verbal_pos(const FeatureTag& tag) {
  return tag.text == "V" || tag.text == "AUX";
}

std::vector<int32_t> sorted_ids(const std::vector<FeatureTag>& tags) {
  std::vector<int32_t> ids;
  ids.reserve(tags.size());
  for (const FeatureTag& t : tags) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

LanguageProfile::LanguageProfile() {
  default_core_case_ = *default_inventory().find("NOM");
}

void LanguageProfile::add_expansion(CompositeExpansion e) {
  for (const CompositeExpansion& existing : expansions_) {
    if (existing.flat_tag == e.flat_tag)
      throw std::invalid_argument("duplicate composite map key: " +
                                  e.flat_tag.text);
    if (existing.role == e.role &&
        sorted_ids(existing.children) == sorted_ids(e.children))
      throw std::invalid_argument(
          "composite map is not injective: " + existing.flat_tag.text +
          " and " + e.flat_tag.text + " share an expansion");
  }
  expansions_.push_back(std::move(e));
}

const CompositeExpansion* LanguageProfile::expansion_of(
    const FeatureTag& flat_tag) const {
  for (const CompositeExpansion& e : expansions_)
    if (e.flat_tag == flat_tag) return &e;
  return nullptr;
}

bool LanguageProfile::uses_composite_arguments() const {
  for (const CompositeExpansion& e : expansions_)
    if (e.flat_tag.dimension == Dimension::kArgumentMarking) return true;
  return false;
}

const CompositeExpansion* LanguageProfile::expansion_matching(
    const FeatureTag& role, const std::vector<FeatureTag>& children) const {
  const std::vector<int32_t> want = sorted_ids(children);
  for (const CompositeExpansion& e : expansions_)
    if (e.role == role && sorted_ids(e.children) == want) return &e;
  return nullptr;
}

void LanguageProfile::set_flat_order(std::vector<Dimension> order) {
  const int total = dimension_rank(Dimension::kUnknown) + 1;
  flat_rank_.assign(static_cast<size_t>(total), -1);
  int next = 0;
  for (Dimension d : order) {
    if (flat_rank_[static_cast<size_t>(dimension_rank(d))] >= 0)
      throw std::invalid_argument("flat_order lists a dimension twice");
    flat_rank_[static_cast<size_t>(dimension_rank(d))] = next++;
  }
  // Unlisted dimensions keep the canonical order, after the listed ones.
  for (int i = 0; i < total; ++i)
    if (flat_rank_[static_cast<size_t>(i)] < 0)
      flat_rank_[static_cast<size_t>(i)] = static_cast<int>(order.size()) + i;
}

int LanguageProfile::flat_rank(Dimension d) const {
  if (flat_rank_.empty()) return dimension_rank(d);
  return flat_rank_[static_cast<size_t>(dimension_rank(d))];
}

LanguageProfile LanguageProfile::load(std::istream& in,
                                      const TagInventory& inv) {
  LanguageProfile profile;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("profile line " + std::to_string(lineno) +
                                ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail("expected KEY<TAB>VALUE");
    const std::string key = line.substr(0, tab);
    std::string value = line.substr(tab + 1);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t'))
      value.pop_back();
    if (value.empty()) fail("missing value for '" + key + "'");

    if (key == "default_core_case") {
      auto tag = inv.find(value);
      if (!tag || tag->dimension != Dimension::kCase)
        fail("'" + value + "' is not a case tag");
      profile.set_default_core_case(*tag);
    } else if (key == "case_wraps_nominal") {
      if (value == "true" || value == "1") {
        profile.set_case_wraps_nominal(true);
      } else if (value == "false" || value == "0") {
        profile.set_case_wraps_nominal(false);
      } else {
        fail("case_wraps_nominal must be true or false");
      }
    } else if (key == "flat_order") {
      std::vector<Dimension> order;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto dim = dimension_from_id(item);
        if (!dim) fail("unknown dimension '" + item + "'");
        order.push_back(*dim);
      }
      profile.set_flat_order(std::move(order));
    } else if (!key.empty() && key[0] >= 'A' && key[0] <= 'Z') {
      // Composite map entry: FLATTAG<TAB>ROLE(CHILD,CHILD,...)
      auto flat_tag = inv.find(key);
      if (!flat_tag) fail("flat tag '" + key + "' is not in the inventory");
      FeatureBundle parsed;
      try {
        parsed = parse_features(value, ParseMode::kStrict, inv);
      } catch (const ParseError& e) {
        fail("bad expansion '" + value + "': " + e.what());
      }
      if (parsed.nodes.size() != 1 || parsed.nodes[0].atomic())
        fail("expansion must be a single composite node");
      CompositeExpansion exp;
      exp.flat_tag = *flat_tag;
      exp.role = parsed.nodes[0].head;
      for (const FeatureNode& c : parsed.nodes[0].children) {
        if (!c.atomic()) fail("expansion children must be atomic");
        exp.children.push_back(c.head);
      }
      profile.add_expansion(std::move(exp));
    } else {
      fail("unknown setting '" + key + "'");
    }
  }
  return profile;
}

LanguageProfile LanguageProfile::load_file(const std::string& path,
                                           const TagInventory& inv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open profile: " + path);
  return load(in, inv);
}

// ---------------------------------------------------------------------------
// flat -> hierarchical

FeatureBundle flat_to_hierarchical(const FeatureBundle& bundle,
                                   const LanguageProfile& profile) {
  std::vector<FeatureNode> nodes = bundle.nodes;

  // (i) expand composite flat tags
  for (FeatureNode& n : nodes) {
    if (!n.atomic()) continue;
    if (const CompositeExpansion* e = profile.expansion_of(n.head)) {
      FeatureNode expanded;
      expanded.head = e->role;
      for (const FeatureTag& c : e->children)
        expanded.children.push_back(FeatureNode{c, {}});
      n = std::move(expanded);
    }
  }

  const FeatureTag* pos = nullptr;
  for (const FeatureNode& n : nodes)
    if (n.atomic() && n.head.dimension == Dimension::kPos) pos = &n.head;

  auto collect_atoms = [&nodes](Dimension dim) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].atomic() && nodes[i].head.dimension == dim)
        idx.push_back(i);
    return idx;
  };
  auto remove_indices = [&nodes](std::vector<size_t> idx) {
    std::sort(idx.rbegin(), idx.rend());
    for (size_t i : idx) nodes.erase(nodes.begin() + static_cast<ptrdiff_t>(i));
  };

  if (pos != nullptr && is_verbal_pos(*pos)) {
    // (ii) bare person/number agreement wraps under the core case; in
    // composite-argument languages agreement is never annotated bare, so
    // nothing wraps there
    if (!profile.uses_composite_arguments()) {
      const auto persons = collect_atoms(Dimension::kPerson);
      const auto numbers = collect_atoms(Dimension::kNumber);
      if (persons.size() > 1 || numbers.size() > 1)
        throw ConversionError(ConversionError::Code::kAmbiguousConversion,
                              "multiple bare person/number features; "
                              "composite argument tags are required to "
                              "disambiguate");
      if (persons.size() == 1) {
        FeatureNode arg;
        arg.head = profile.default_core_case();
        arg.children.push_back(nodes[persons[0]]);
        for (size_t i : numbers) arg.children.push_back(nodes[i]);
        std::vector<size_t> gone = persons;
        gone.insert(gone.end(), numbers.begin(), numbers.end());
        remove_indices(std::move(gone));
        nodes.push_back(std::move(arg));
      }
    }
  } else if (pos != nullptr) {
    // (iii) nominal case structure
    bool has_case_composite = false;
    for (const FeatureNode& n : nodes)
      if (!n.atomic() && n.head.dimension == Dimension::kCase)
        has_case_composite = true;
    if (!has_case_composite) {
      const auto cases = collect_atoms(Dimension::kCase);
      if (cases.size() > 1)
        throw ConversionError(ConversionError::Code::kAmbiguousConversion,
                              "multiple case features on one nominal; the "
                              "stacking order cannot be inferred");
      if (profile.case_wraps_nominal()) {
        if (cases.empty()) {
          size_t non_pos = 0;
          for (const FeatureNode& n : nodes)
            if (!(n.atomic() && n.head.dimension == Dimension::kPos))
              ++non_pos;
          if (non_pos > 0)
            throw ConversionError(ConversionError::Code::kNoCaseContext,
                                  "profile wraps nominal features under the "
                                  "case node but the bundle has no case");
        } else {
          FeatureNode wrap;
          wrap.head = nodes[cases[0]].head;
          std::vector<FeatureNode> kept;
          for (size_t i = 0; i < nodes.size(); ++i) {
            if (i == cases[0]) continue;
            if (nodes[i].atomic() && nodes[i].head.dimension == Dimension::kPos)
              kept.push_back(nodes[i]);
            else
              wrap.children.push_back(nodes[i]);
          }
          if (wrap.children.empty()) {
            kept.push_back(FeatureNode{wrap.head, {}});
          } else {
            kept.push_back(std::move(wrap));
          }
          nodes = std::move(kept);
        }
      } else if (cases.size() == 1) {
        const auto numbers = collect_atoms(Dimension::kNumber);
        if (numbers.size() > 1)
          throw ConversionError(ConversionError::Code::kAmbiguousConversion,
                                "multiple number features on one nominal");
        if (numbers.size() == 1) {
          FeatureNode paired;
          paired.head = nodes[cases[0]].head;
          paired.children.push_back(nodes[numbers[0]]);
          remove_indices({cases[0], numbers[0]});
          nodes.push_back(std::move(paired));
        }
      }
    }
  }

  FeatureBundle out;
  out.nodes = std::move(nodes);
  return canonical_form(out);
}

// ---------------------------------------------------------------------------
// hierarchical -> flat

namespace {

bool contains_case(const FeatureNode& node) {
  if (node.head.dimension == Dimension::kCase) return true;
  for (const FeatureNode& c : node.children)
    if (contains_case(c)) return true;
  return false;
}

bool has_case_stacking(const FeatureNode& node) {
  if (node.head.dimension == Dimension::kCase) {
    for (const FeatureNode& c : node.children)
      if (contains_case(c)) return true;
  }
  for (const FeatureNode& c : node.children)
    if (has_case_stacking(c)) return true;
  return false;
}

std::vector<FeatureTag> atomic_children(const FeatureNode& node) {
  std::vector<FeatureTag> out;
  for (const FeatureNode& c : node.children) out.push_back(c.head);
  return out;
}

bool all_children_atomic(const FeatureNode& node) {
  for (const FeatureNode& c : node.children)
    if (!c.atomic()) return false;
  return true;
}

}  // namespace

std::optional<FeatureBundle> hierarchical_to_flat(
    const FeatureBundle& bundle, const LanguageProfile& profile) {
  const FeatureBundle canon = canonical_form(bundle);
  for (const FeatureNode& n : canon.nodes)
    if (has_case_stacking(n)) return std::nullopt;

  const FeatureTag* pos = canon.pos_tag();
  const bool verbal = pos != nullptr && is_verbal_pos(*pos);

  std::vector<FeatureTag> atoms;
  bool used_bare_unwrap = false;
  bool used_nominal_case = false;

  for (const FeatureNode& n : canon.nodes) {
    if (n.atomic()) {
      atoms.push_back(n.head);
      continue;
    }
    // A whole composite node may collapse to one flat tag via the map.
    if (all_children_atomic(n)) {
      if (const CompositeExpansion* e =
              profile.expansion_matching(n.head, atomic_children(n))) {
        atoms.push_back(e->flat_tag);
        continue;
      }
    }
    if (n.head.dimension != Dimension::kCase) return std::nullopt;
    if (verbal) {
      // A single unmapped core-case argument unwraps to bare agreement
      // features (the nominative-only annotation style).
      if (used_bare_unwrap || !(n.head == profile.default_core_case()) ||
          !all_children_atomic(n)) {
        return std::nullopt;
      }
      used_bare_unwrap = true;
      for (const FeatureNode& c : n.children) atoms.push_back(c.head);
    } else {
      // Single-case nominal unwraps: case tag plus its children, with
      // possession composites collapsed through the map.
      if (used_nominal_case) return std::nullopt;
      used_nominal_case = true;
      atoms.push_back(n.head);
      for (const FeatureNode& c : n.children) {
        if (c.atomic()) {
          atoms.push_back(c.head);
          continue;
        }
        if (all_children_atomic(c)) {
          if (const CompositeExpansion* e =
                  profile.expansion_matching(c.head, atomic_children(c))) {
            atoms.push_back(e->flat_tag);
            continue;
          }
        }
        return std::nullopt;
      }
    }
  }

  // Dedupe by identity, keeping first occurrence.
  std::vector<FeatureTag> unique;
  for (const FeatureTag& t : atoms) {
    bool seen = false;
    for (const FeatureTag& u : unique)
      if (u == t) seen = true;
    if (!seen) unique.push_back(t);
  }

  std::stable_sort(unique.begin(), unique.end(),
                   [&profile](const FeatureTag& a, const FeatureTag& b) {
                     const int fa = profile.flat_rank(a.dimension);
                     const int fb = profile.flat_rank(b.dimension);
                     if (fa != fb) return fa < fb;
                     if (a.rank_in_dimension != b.rank_in_dimension)
                       return a.rank_in_dimension < b.rank_in_dimension;
                     return a.text < b.text;
                   });

  FeatureBundle out;
  for (FeatureTag& t : unique) out.nodes.push_back(FeatureNode{std::move(t), {}});
  return out;
}

}  // namespace unimorph
