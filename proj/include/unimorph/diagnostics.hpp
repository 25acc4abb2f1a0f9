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

#ifndef UNIMORPH_DIAGNOSTICS_HPP_
#define UNIMORPH_DIAGNOSTICS_HPP_

#include <string>
#include <string_view>

namespace unimorph {

enum class Severity { kWarning, kError };

// Symbolic diagnostic codes shared by all file-processing pipelines.
enum class DiagCode {
  // dataset-io
  kBadColumnCount,
  kEmptyField,
  kFeatureParseError,
  kSchemaMismatch,
  kDuplicateTriple,
  kOverabundantCell,
  kMixedSchema,
  kSegmentationMismatch,
  kEmptyMorph,
  kFeatureSegmentationSlots,
  kNotNfc,
  kMissingPos,
  // segmenter
  kNoPath,
  kNoMatchingAllomorph,
  kEmptyStem,
  kCycleDetected,
  kNonMonotonicEdge,
  // derivations
  kFieldConflict,
  kBadAffix,
  // ud-eval
  kMalformedLine,
  kUnmappedUpos,
  // conversion (row-level reporting in the CLI)
  kNotRepresentable,
  kConversionError,
};

std::string_view to_string(DiagCode code);
std::string_view to_string(Severity severity);

struct Diagnostic {
  int line = 1;  // 1-based input line
  Severity severity = Severity::kError;
  DiagCode code = DiagCode::kFeatureParseError;
  std::string message;
};

// "<line>: <severity>: <code>: <message>"
std::string format(const Diagnostic& d);

}  // namespace unimorph

#endif  // UNIMORPH_DIAGNOSTICS_HPP_
