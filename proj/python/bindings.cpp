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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "unimorph/convert.hpp"
#include "unimorph/derivations.hpp"
#include "unimorph/paradigms.hpp"
#include "unimorph/schema.hpp"
#include "unimorph/segmenter.hpp"
#include "unimorph/ud_eval.hpp"

namespace py = pybind11;
using namespace unimorph;

namespace {

ParseMode mode_from(bool strict) {
  return strict ? ParseMode::kStrict : ParseMode::kLax;
}

FeatureBundle parse_arg(const std::string& text, bool strict) {
  return parse_features(text, mode_from(strict));
}

}  // namespace

PYBIND11_MODULE(_unimorph, m) {
  m.doc() = "UniMorph 4.0 annotation toolkit bindings";

  py::register_exception<ParseError>(m, "FeatureParseError");
  py::register_exception<ConversionError>(m, "ConversionError");

  py::class_<FeatureBundle>(m, "FeatureBundle")
      .def("__str__", [](const FeatureBundle& b) { return serialize(b); })
      .def("__repr__",
           [](const FeatureBundle& b) {
             return "FeatureBundle('" + serialize(b) + "')";
           })
      .def("__eq__",
           [](const FeatureBundle& a, const FeatureBundle& b) {
             return bundles_equal(a, b);
           })
      .def("is_hierarchical", [](const FeatureBundle& b) {
        return b.schema_kind() == SchemaKind::kHierarchical;
      });

  m.def(
      "parse_features",
      [](const std::string& text, bool strict) {
        return parse_arg(text, strict);
      },
      py::arg("text"), py::arg("strict") = true);
  m.def(
      "serialize",
      [](const FeatureBundle& b) { return serialize(b); }, py::arg("bundle"));
  m.def(
      "canonicalize",
      [](const std::string& text, bool strict) {
        return serialize(canonical_form(parse_arg(text, strict)));
      },
      py::arg("text"), py::arg("strict") = true);
  m.def(
      "bundles_equal",
      [](const std::string& a, const std::string& b, bool strict) {
        return bundles_equal(parse_arg(a, strict), parse_arg(b, strict));
      },
      py::arg("a"), py::arg("b"), py::arg("strict") = true);

  py::class_<LanguageProfile>(m, "LanguageProfile")
      .def_static(
          "load",
          [](const std::string& path) {
            return LanguageProfile::load_file(path);
          },
          py::arg("path"));

  m.def(
      "flat_to_hierarchical",
      [](const std::string& text, const LanguageProfile& profile,
         bool strict) {
        return serialize(
            flat_to_hierarchical(parse_arg(text, strict), profile));
      },
      py::arg("text"), py::arg("profile"), py::arg("strict") = true);
  m.def(
      "hierarchical_to_flat",
      [](const std::string& text, const LanguageProfile& profile,
         bool strict) -> std::optional<std::string> {
        auto flat = hierarchical_to_flat(parse_arg(text, strict), profile);
        if (!flat) return std::nullopt;
        return serialize(*flat);
      },
      py::arg("text"), py::arg("profile"), py::arg("strict") = true,
      "None means the bundle has no flat encoding");

  py::class_<MorphemeTable>(m, "MorphemeTable")
      .def_static(
          "load",
          [](const std::string& path) { return MorphemeTable::load_file(path); },
          py::arg("path"));

  m.def(
      "segment",
      [](const std::string& form, const std::string& features,
         const MorphemeTable& table, bool all_parses)
          -> std::vector<std::vector<std::string>> {
        const SegmentResult res = segment(
            form, parse_features(features, ParseMode::kLax), table, {},
            all_parses);
        if (res.error) throw std::runtime_error(res.error->message);
        std::vector<std::vector<std::string>> out;
        for (const Segmentation& s : res.parses) out.push_back(s.morphs);
        return out;
      },
      py::arg("form"), py::arg("features"), py::arg("table"),
      py::arg("all_parses") = false,
      "Returns the list of parses, each a list of surface morphs");

  m.def(
      "infer_classes",
      [](const std::vector<std::pair<std::string, std::string>>& triples,
         const std::string& inventory_path, bool lenient) {
        std::ifstream in(inventory_path, std::ios::binary);
        if (!in)
          throw std::invalid_argument("cannot open " + inventory_path);
        const auto inventory = load_paradigms(in);
        std::vector<ObservedTriple> observed;
        for (const auto& [form, features] : triples) {
          observed.push_back(
              ObservedTriple{form, parse_features(features, ParseMode::kLax)});
        }
        return infer_classes(observed, inventory, lenient);
      },
      py::arg("triples"), py::arg("inventory_path"),
      py::arg("lenient") = false);

  m.def("f_measure", &f_measure, py::arg("precision"), py::arg("recall"));

  m.def(
      "infer_affix",
      [](const std::string& source, const std::string& target)
          -> std::optional<std::tuple<std::string, std::string, std::string>> {
        const auto inferred = infer_affix(source, target);
        if (!inferred) return std::nullopt;
        const char* confidence =
            inferred->confidence == AffixConfidence::kExact ? "exact"
            : inferred->confidence == AffixConfidence::kTruncating
                ? "truncating"
                : "weak";
        return std::make_tuple(
            inferred->affix.text,
            inferred->affix.orientation == AffixOrientation::kPrefix
                ? "prefix"
                : "suffix",
            std::string(confidence));
      },
      py::arg("source"), py::arg("target"),
      "(affix, orientation, confidence) or None");

  m.attr("__version__") = "0.1.0";
  m.attr("schema_version") = default_inventory().version();
}
