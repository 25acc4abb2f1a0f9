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

// Conversion between the flat and the hierarchical schema, driven by a
// per-language profile (composite-tag expansions, core-case wrapping of
// verbal agreement, case wrapping of nominal features).

#ifndef UNIMORPH_CONVERT_HPP_
#define UNIMORPH_CONVERT_HPP_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unimorph/schema.hpp"

namespace unimorph {

// Expansion of one flat composite tag, e.g. ARGNO1P -> NOM(1,PL) or
// PSS3SF -> PSS(3,SG,FEM). Children are atomic.
struct CompositeExpansion {
  FeatureTag flat_tag;
  FeatureTag role;
  std::vector<FeatureTag> children;
};

class LanguageProfile {
 public:
  // Key-value text format (tab-separated), e.g.
  //   default_core_case<TAB>NOM
  //   case_wraps_nominal<TAB>true
  //   flat_order<TAB>POS,NUMBER,CASE,POSSESSION     (optional override)
  //   ARGNO1P<TAB>NOM(1,PL)                          (composite map entry)
  // Uppercase keys are composite map entries; '#' starts a comment.
  static LanguageProfile load(std::istream& in,
                              const TagInventory& inv = default_inventory());
  static LanguageProfile load_file(const std::string& path,
                                   const TagInventory& inv =
                                       default_inventory());

  LanguageProfile();

  const FeatureTag& default_core_case() const { return default_core_case_; }
  void set_default_core_case(FeatureTag tag) {
    default_core_case_ = std::move(tag);
  }

  bool case_wraps_nominal() const { return case_wraps_nominal_; }
  void set_case_wraps_nominal(bool v) { case_wraps_nominal_ = v; }

  void add_expansion(CompositeExpansion e);
  // Expansion for a flat tag, if the map has one.
  const CompositeExpansion* expansion_of(const FeatureTag& flat_tag) const;
  // True when the map carries argument-marking tags (ARGNO1P-style). Such
  // languages annotate verbal agreement compositely, so bare person/number
  // features never wrap under the core case.
  bool uses_composite_arguments() const;
  // Flat tag whose expansion is (role, children) — the inverse direction.
  // `children` must be canonically sorted atomic tags.
  const CompositeExpansion* expansion_matching(
      const FeatureTag& role, const std::vector<FeatureTag>& children) const;

  // Dimension order used when emitting flat bundles; empty = canonical.
  void set_flat_order(std::vector<Dimension> order);
  int flat_rank(Dimension d) const;

  const std::vector<CompositeExpansion>& expansions() const {
    return expansions_;
  }

 private:
  FeatureTag default_core_case_;
  bool case_wraps_nominal_ = false;
  std::vector<CompositeExpansion> expansions_;
  std::vector<int> flat_rank_;  // per-dimension rank override; empty = none
};

class ConversionError : public std::runtime_error {
 public:
  enum class Code { kAmbiguousConversion, kNoCaseContext };
  ConversionError(Code code, const std::string& message)
      : std::runtime_error(message), code(code) {}
  Code code;
};

// Unpacks a flat bundle into the hierarchical schema:
//   (i)  composite flat tags expand via the profile map,
//   (ii) bare verbal person/number wrap under the profile core case,
//   (iii) nominal case+number pair up as CASE(NUMBER), or the case node
//         wraps every non-POS feature when the profile says so.
// The result is canonicalized. Composite nodes already present pass through,
// so the function is idempotent. Throws ConversionError.
FeatureBundle flat_to_hierarchical(const FeatureBundle& bundle,
                                   const LanguageProfile& profile);

// Inverse where a flat encoding exists; nullopt (NotRepresentable) for case
// stacking and for structures outside the profile's composite map. Output
// node order follows the profile's flat dimension order.
std::optional<FeatureBundle> hierarchical_to_flat(
    const FeatureBundle& bundle, const LanguageProfile& profile);

}  // namespace unimorph

#endif  // UNIMORPH_CONVERT_HPP_
