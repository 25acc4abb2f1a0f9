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

// Inflection-class inference: string-pattern unification of observed
// (form, features) triples against an inventory of paradigm classes, and
// the intersection of matching classes per lemma.

#ifndef UNIMORPH_PARADIGMS_HPP_
#define UNIMORPH_PARADIGMS_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "unimorph/diagnostics.hpp"
#include "unimorph/schema.hpp"

namespace unimorph {

// A form pattern: literals and shared variables, e.g. {1}eknek.
// Contains at least one variable; adjacent variables are rejected at load
// (matching would be ill-posed).
struct FormPattern {
  struct Segment {
    bool is_variable;
    std::string literal;  // when !is_variable
    int variable = 0;     // when is_variable
  };
  std::vector<Segment> segments;

  // Parses pattern text with {1}, {2}, ... placeholders. Throws
  // std::invalid_argument on malformed or variable-free patterns.
  static FormPattern parse(const std::string& text);
  std::string text() const;
};

// Variable id -> bound substring. Ordered for deterministic output.
using Binding = std::map<int, std::string>;

struct ParadigmClass {
  std::string id;
  // canonical feature key -> pattern; bundles are distinct per class.
  std::vector<std::pair<std::string, FormPattern>> cells;

  const FormPattern* cell(const std::string& canonical_feature_key) const;
};

struct ParadigmMatch {
  std::string class_id;
  Binding binding;  // every variable bound to a non-empty string
};

struct ObservedTriple {
  std::string form;
  FeatureBundle features;
};

// All extensions of `partial` under which the pattern generates `form`.
// Variables bind to non-empty substrings; literals match exactly.
std::vector<Binding> match_cell(const std::string& form,
                                const FormPattern& pattern,
                                const Binding& partial);

// All bindings consistent across every triple. A triple whose bundle has no
// cell in the class makes the class fail (lenient mode skips such triples).
std::vector<ParadigmMatch> match_lemma(
    const std::vector<ObservedTriple>& triples, const ParadigmClass& klass,
    bool lenient = false);

// Ids of the classes that match all triples simultaneously — the
// intersection of matching paradigms over the lemma's observations.
std::set<std::string> infer_classes(const std::vector<ObservedTriple>& triples,
                                    const std::vector<ParadigmClass>& inventory,
                                    bool lenient = false);

// TSV rows: class_id \t features \t pattern. Throws on structural errors
// (adjacent variables, duplicate cells, variable-free patterns); singleton
// variables are reported as warnings.
std::vector<ParadigmClass> load_paradigms(
    std::istream& in, std::vector<Diagnostic>* diagnostics = nullptr,
    ParseMode mode = ParseMode::kLax,
    const TagInventory& inv = default_inventory());

}  // namespace unimorph

#endif  // UNIMORPH_PARADIGMS_HPP_
