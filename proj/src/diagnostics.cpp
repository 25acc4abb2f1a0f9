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

#include "unimorph/diagnostics.hpp"

namespace unimorph {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::kBadColumnCount: return "BadColumnCount";
    case DiagCode::kEmptyField: return "EmptyField";
    case DiagCode::kFeatureParseError: return "FeatureParseError";
    case DiagCode::kSchemaMismatch: return "SchemaMismatch";
    case DiagCode::kDuplicateTriple: return "DuplicateTriple";
    case DiagCode::kOverabundantCell: return "OverabundantCell";
    case DiagCode::kMixedSchema: return "MixedSchema";
    case DiagCode::kSegmentationMismatch: return "SegmentationMismatch";
    case DiagCode::kEmptyMorph: return "EmptyMorph";
    case DiagCode::kFeatureSegmentationSlots: return "FeatureSegmentationSlots";
    case DiagCode::kNotNfc: return "NotNfc";
    case DiagCode::kMissingPos: return "MissingPOS";
    case DiagCode::kNoPath: return "NoPath";
    case DiagCode::kNoMatchingAllomorph: return "NoMatchingAllomorph";
    case DiagCode::kEmptyStem: return "EmptyStem";
    case DiagCode::kCycleDetected: return "CycleDetected";
    case DiagCode::kNonMonotonicEdge: return "NonMonotonicEdge";
    case DiagCode::kFieldConflict: return "FieldConflict";
    case DiagCode::kBadAffix: return "BadAffix";
    case DiagCode::kMalformedLine: return "MalformedLine";
    case DiagCode::kUnmappedUpos: return "UnmappedUPOS";
    case DiagCode::kNotRepresentable: return "NotRepresentable";
    case DiagCode::kConversionError: return "ConversionError";
  }
  return "Unknown";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

std::string format(const Diagnostic& d) {
  std::string out = std::to_string(d.line);
  out += ": ";
  out += to_string(d.severity);
  out += ": ";
  out += to_string(d.code);
  out += ": ";
  out += d.message;
  return out;
}

}  // namespace unimorph
