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

// unimorph — one binary, subcommand style. Standard output carries data
// only; diagnostics go to standard error. Exit codes: 0 success, 1
// validation errors present (warnings too under --strict), 2 usage/IO error.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unimorph/convert.hpp"
#include "unimorph/dataset.hpp"
#include "unimorph/derivations.hpp"
#include "unimorph/diagnostics.hpp"
#include "unimorph/paradigms.hpp"
#include "unimorph/schema.hpp"
#include "unimorph/segmenter.hpp"
#include "unimorph/ud_eval.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace unimorph;

struct ExitStatus {
  bool errors = false;
  bool warnings = false;

  void absorb(const Diagnostic& d) {
    if (d.severity == Severity::kError)
      errors = true;
    else
      warnings = true;
  }
  int code(bool strict) const {
    if (errors) return 1;
    if (strict && warnings) return 1;
    return 0;
  }
};

// clog is the buffered stderr stream; large diagnostic volumes would be
// syscall-bound through cerr's unit buffering
void print_diagnostic(const std::string& path, const Diagnostic& d) {
  std::clog << path << ':' << format(d) << '\n';
}

std::ifstream open_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "unimorph: cannot open '" << path << "'\n";
    std::exit(2);
  }
  return in;
}

SchemaMode parse_schema_mode(const std::string& s) {
  if (s == "flat") return SchemaMode::kFlat;
  if (s == "hier") return SchemaMode::kHierarchical;
  return SchemaMode::kAuto;
}

// ---------------------------------------------------------------------------
// validate

struct FileValidation {
  std::vector<std::pair<Diagnostic, bool>> output;  // diag, from_reader
  DatasetStats stats;
  bool io_error = false;
};

FileValidation validate_one(const std::string& path, SchemaMode schema) {
  FileValidation out;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.io_error = true;
    return out;
  }
  InflectionReader reader(in, schema, ParseMode::kLax);
  DatasetValidator validator;
  RecordOrDiagnostic item;
  while (reader.next(item)) {
    if (auto* diag = std::get_if<Diagnostic>(&item)) {
      out.output.emplace_back(*diag, true);
      continue;
    }
    const auto& record = std::get<InflectionRecord>(item);
    for (const Diagnostic& d : validator.feed(record))
      out.output.emplace_back(d, false);
  }
  out.stats = validator.stats();
  return out;
}

int cmd_validate(const std::vector<std::string>& paths,
                 const std::string& schema, bool strict, bool per_pos,
                 unsigned jobs) {
  const SchemaMode mode = parse_schema_mode(schema);
  std::vector<FileValidation> results(paths.size());
  if (jobs <= 1 || paths.size() < 2) {
    for (size_t i = 0; i < paths.size(); ++i)
      results[i] = validate_one(paths[i], mode);
  } else {
    for (size_t base = 0; base < paths.size(); base += jobs) {
      const size_t end = std::min(paths.size(), base + jobs);
      std::vector<std::future<FileValidation>> futures;
      for (size_t i = base; i < end; ++i) {
        futures.push_back(
            std::async(std::launch::async, validate_one, paths[i], mode));
      }
      for (size_t i = base; i < end; ++i) results[i] = futures[i - base].get();
    }
  }

  ExitStatus status;
  for (size_t i = 0; i < paths.size(); ++i) {
    if (results[i].io_error) {
      std::cerr << "unimorph: cannot open '" << paths[i] << "'\n";
      return 2;
    }
    for (const auto& [diag, from_reader] : results[i].output) {
      print_diagnostic(paths[i], diag);
      status.absorb(diag);
    }
    const DatasetStats& s = results[i].stats;
    std::cout << paths[i] << ": lemmas=" << s.lemma_count
              << " forms=" << s.form_count << '\n';
    if (per_pos) {
      for (const auto& [pos, c] : s.per_pos) {
        std::cout << paths[i] << ": " << pos << ": lemmas=" << c.lemmas
                  << " forms=" << c.forms << '\n';
      }
    }
  }
  return status.code(strict);
}

// ---------------------------------------------------------------------------
// convert

int cmd_convert(const std::string& path, const std::string& to,
                const std::string& profile_path,
                const std::string& rejects_path, bool strict) {
  if (to != "hier" && to != "flat") {
    std::cerr << "unimorph: --to must be 'hier' or 'flat'\n";
    return 2;
  }
  LanguageProfile profile;
  try {
    profile = LanguageProfile::load_file(profile_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "unimorph: " << e.what() << '\n';
    return 2;
  }
  std::ifstream in = open_or_die(path);
  std::ofstream rejects;
  if (!rejects_path.empty()) {
    rejects.open(rejects_path, std::ios::binary);
    if (!rejects) {
      std::cerr << "unimorph: cannot write '" << rejects_path << "'\n";
      return 2;
    }
  }
  auto reject = [&](const InflectionRecord& rec) {
    if (rejects.is_open()) rejects << format_record(rec) << '\n';
  };

  ExitStatus status;
  InflectionReader reader(in, SchemaMode::kAuto, ParseMode::kLax);
  RecordOrDiagnostic item;
  while (reader.next(item)) {
    if (auto* diag = std::get_if<Diagnostic>(&item)) {
      print_diagnostic(path, *diag);
      status.absorb(*diag);
      continue;
    }
    InflectionRecord rec = std::get<InflectionRecord>(item);
    try {
      if (to == "hier") {
        rec.features = flat_to_hierarchical(rec.features, profile);
      } else {
        auto flat = hierarchical_to_flat(rec.features, profile);
        if (!flat) {
          const Diagnostic d{rec.line, Severity::kWarning,
                             DiagCode::kNotRepresentable,
                             serialize(rec.features) +
                                 " has no flat encoding; row rejected"};
          print_diagnostic(path, d);
          status.absorb(d);
          reject(rec);
          continue;
        }
        rec.features = *flat;
      }
    } catch (const ConversionError& e) {
      const Diagnostic d{rec.line, Severity::kError, DiagCode::kConversionError,
                         e.what()};
      print_diagnostic(path, d);
      status.absorb(d);
      reject(rec);
      continue;
    }
    rec.feature_segmentation.reset();  // no longer aligned after conversion
    std::cout << format_record(rec) << '\n';
  }
  return status.code(strict);
}

// ---------------------------------------------------------------------------
// segment

int cmd_segment(const std::string& path, const std::string& table_path,
                const std::string& overrides_path,
                const std::string& stem_map_path, bool all_parses,
                bool strict, unsigned jobs) {
  MorphemeTable table;
  std::vector<OverrideRule> overrides;
  StemMap stem_map;
  try {
    table = MorphemeTable::load_file(table_path);
    if (!overrides_path.empty()) {
      std::ifstream in = open_or_die(overrides_path);
      overrides = load_overrides(in);
    }
    if (!stem_map_path.empty()) {
      std::ifstream in = open_or_die(stem_map_path);
      stem_map = load_stem_map(in);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "unimorph: " << e.what() << '\n';
    return 2;
  }

  std::ifstream in = open_or_die(path);
  InflectionReader reader(in, SchemaMode::kAuto, ParseMode::kLax);
  ExitStatus status;
  std::vector<InflectionRecord> records;
  RecordOrDiagnostic item;
  while (reader.next(item)) {
    if (auto* diag = std::get_if<Diagnostic>(&item)) {
      print_diagnostic(path, *diag);
      status.absorb(*diag);
      continue;
    }
    records.push_back(std::get<InflectionRecord>(item));
  }

  for (SegmentedOrDiagnostic& entry :
       segment_dataset(records, table, overrides, all_parses, jobs)) {
    if (auto* diag = std::get_if<Diagnostic>(&entry)) {
      print_diagnostic(path, *diag);
      status.absorb(*diag);
      continue;
    }
    const SegmentedRecord& sr = std::get<SegmentedRecord>(entry);
    std::cout << sr.record.lemma << '\t' << sr.record.form << '\t';
    if (sr.parse.from_override) {
      // override segmentation verbatim, plain features column
      std::cout << serialize(canonical_form(sr.record.features)) << '\t';
      const auto& morphs = *sr.record.segmentation;
      for (size_t i = 0; i < morphs.size(); ++i)
        std::cout << (i > 0 ? "|" : "") << morphs[i];
    } else if (sr.record.feature_segmentation) {
      std::cout << *sr.record.feature_segmentation << '\t';
      const auto morphs = display_morphs(sr.parse, stem_map);
      for (size_t i = 0; i < morphs.size(); ++i)
        std::cout << (i > 0 ? "|" : "") << morphs[i];
    } else {
      // single-morph parses collapse to the plain bundle and no split
      std::cout << serialize(canonical_form(sr.record.features)) << "\t---";
    }
    std::cout << '\n';
  }
  return status.code(strict);
}

// ---------------------------------------------------------------------------
// infer-paradigms

int cmd_infer_paradigms(const std::string& path,
                        const std::string& inventory_path, bool lenient,
                        bool strict) {
  std::vector<ParadigmClass> inventory;
  std::vector<Diagnostic> load_diags;
  try {
    std::ifstream inv_in = open_or_die(inventory_path);
    inventory = load_paradigms(inv_in, &load_diags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "unimorph: " << e.what() << '\n';
    return 2;
  }
  ExitStatus status;
  for (const Diagnostic& d : load_diags) {
    print_diagnostic(inventory_path, d);
    status.absorb(d);
  }

  std::ifstream in = open_or_die(path);
  InflectionReader reader(in, SchemaMode::kAuto, ParseMode::kLax);
  std::vector<std::string> lemma_order;
  std::map<std::string, std::vector<ObservedTriple>> by_lemma;
  RecordOrDiagnostic item;
  while (reader.next(item)) {
    if (auto* diag = std::get_if<Diagnostic>(&item)) {
      print_diagnostic(path, *diag);
      status.absorb(*diag);
      continue;
    }
    const auto& rec = std::get<InflectionRecord>(item);
    auto [it, inserted] = by_lemma.try_emplace(rec.lemma);
    if (inserted) lemma_order.push_back(rec.lemma);
    it->second.push_back(ObservedTriple{rec.form, rec.features});
  }

  for (const std::string& lemma : lemma_order) {
    const std::set<std::string> ids =
        infer_classes(by_lemma[lemma], inventory, lenient);
    std::cout << lemma << '\t';
    if (ids.empty()) {
      std::cout << '-';
    } else {
      bool first = true;
      for (const std::string& id : ids) {
        if (!first) std::cout << ',';
        std::cout << id;
        first = false;
      }
    }
    std::cout << '\n';
  }
  return status.code(strict);
}

// ---------------------------------------------------------------------------
// fuse-derivations

int cmd_fuse_derivations(const std::vector<std::string>& paths, bool stats,
                         bool strict) {
  ExitStatus status;
  std::vector<DerivationRecord> preliminary;
  for (const std::string& path : paths) {
    std::ifstream in = open_or_die(path);
    const std::string language = std::filesystem::path(path).stem().string();
    std::vector<Diagnostic> diags;
    auto records = read_derivations(in, language, &diags);
    for (const Diagnostic& d : diags) {
      print_diagnostic(path, d);
      status.absorb(d);
    }
    preliminary.insert(preliminary.end(),
                       std::make_move_iterator(records.begin()),
                       std::make_move_iterator(records.end()));
  }

  FuseResult fused = fuse(preliminary);
  for (const Diagnostic& d : fused.diagnostics) {
    print_diagnostic("fuse", d);
    status.absorb(d);
  }
  write_derivations(std::cout, fused.records);

  if (stats) {
    std::cout << '\n'
              << "language\tlemmas\tderivations\tmorphemes\n";
    for (const auto& [language, s] : derivation_stats(fused.records)) {
      std::cout << language << '\t' << s.lemma_count << '\t'
                << s.derivation_count << '\t' << s.morpheme_count << '\n';
    }
  }
  return status.code(strict);
}

// ---------------------------------------------------------------------------
// eval-ud

int cmd_eval_ud(const std::string& unimorph_path,
                const std::string& conllu_path,
                const std::string& mapping_path,
                const std::string& language_profile_path, bool partial,
                bool tsv, bool strict) {
  MappingProfile mapping;
  LanguageProfile language_profile;
  try {
    mapping = MappingProfile::load_file(mapping_path);
    if (!language_profile_path.empty())
      language_profile = LanguageProfile::load_file(language_profile_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "unimorph: " << e.what() << '\n';
    return 2;
  }

  ExitStatus status;
  UniMorphIndex index;
  {
    std::ifstream in = open_or_die(unimorph_path);
    InflectionReader reader(in, SchemaMode::kAuto, ParseMode::kLax);
    RecordOrDiagnostic item;
    while (reader.next(item)) {
      if (auto* diag = std::get_if<Diagnostic>(&item)) {
        print_diagnostic(unimorph_path, *diag);
        status.absorb(*diag);
        continue;
      }
      index.add(std::get<InflectionRecord>(item), language_profile);
    }
  }

  std::vector<UDToken> tokens;
  {
    std::ifstream in = open_or_die(conllu_path);
    std::vector<Diagnostic> diags;
    tokens = read_conllu(in, &diags);
    for (const Diagnostic& d : diags) {
      print_diagnostic(conllu_path, d);
      status.absorb(d);
    }
  }

  const EvalReport report = evaluate(index, tokens, mapping, partial);
  std::cout << (tsv ? format_report_tsv(report)
                    : format_report_table(report));
  return status.code(strict);
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"UniMorph 4.0 annotation toolkit"};
  app.set_version_flag(
      "--version", std::string("unimorph-toolkit ") + kVersion +
                       " (schema inventory " +
                       default_inventory().version() + ")");
  app.require_subcommand(1);

  bool strict = false;
  unsigned jobs = 1;
  app.add_flag("--strict", strict,
               "treat warnings as failures (exit code 1)");
  app.add_option("--jobs", jobs, "worker cap for parallel sections")
      ->check(CLI::Range(1u, 64u));

  // validate
  auto* validate = app.add_subcommand(
      "validate", "check inflection TSV files and print stats");
  std::vector<std::string> validate_paths;
  std::string schema = "auto";
  bool per_pos = false;
  validate->add_option("paths", validate_paths, "TSV files")->required();
  validate->add_option("--schema", schema, "flat|hier|auto")
      ->check(CLI::IsMember({"flat", "hier", "auto"}));
  validate->add_flag("--per-pos", per_pos, "print per-POS counts");

  // convert
  auto* convert =
      app.add_subcommand("convert", "convert between flat and hierarchical "
                                    "feature strings");
  std::string convert_path, convert_to, convert_profile, convert_rejects;
  convert->add_option("path", convert_path, "input TSV")->required();
  convert->add_option("--to", convert_to, "hier|flat")
      ->required()
      ->check(CLI::IsMember({"hier", "flat"}));
  convert->add_option("--profile", convert_profile, "language profile file")
      ->required();
  convert->add_option("--rejects", convert_rejects,
                      "file for rows with no target encoding");

  // segment
  auto* segment = app.add_subcommand(
      "segment", "segment inflected forms against a morpheme table");
  std::string segment_path, segment_table, segment_overrides, segment_stem_map;
  bool all_parses = false;
  segment->add_option("path", segment_path, "input TSV")->required();
  segment->add_option("--table", segment_table, "morpheme table TSV")
      ->required();
  segment->add_option("--overrides", segment_overrides,
                      "override rules for irregulars");
  segment->add_option("--stem-map", segment_stem_map,
                      "surface->display stem map");
  segment->add_flag("--all-parses", all_parses, "emit every valid parse");

  // infer-paradigms
  auto* infer = app.add_subcommand(
      "infer-paradigms", "intersect matching inflection classes per lemma");
  std::string infer_path, infer_inventory;
  bool lenient = false;
  infer->add_option("path", infer_path, "input TSV")->required();
  infer->add_option("--inventory", infer_inventory, "paradigm inventory TSV")
      ->required();
  infer->add_flag("--lenient", lenient,
                  "ignore observations a class has no cell for");

  // fuse-derivations
  auto* fuse_cmd = app.add_subcommand(
      "fuse-derivations", "fuse preliminary derivation records");
  std::vector<std::string> fuse_paths;
  bool fuse_stats = false;
  fuse_cmd->add_option("paths", fuse_paths,
                       "derivation TSV files (language = basename)")
      ->required();
  fuse_cmd->add_flag("--stats", fuse_stats,
                     "append a lemmas/derivations/morphemes table");

  // eval-ud
  auto* eval = app.add_subcommand(
      "eval-ud", "score a UniMorph file against a UD treebank");
  std::string eval_unimorph, eval_conllu, eval_mapping, eval_language_profile;
  bool partial = false;
  bool tsv = false;
  eval->add_option("unimorph", eval_unimorph, "UniMorph inflection TSV")
      ->required();
  eval->add_option("conllu", eval_conllu, "CoNLL-U treebank")->required();
  eval->add_option("--profile", eval_mapping, "UD mapping profile")
      ->required();
  eval->add_option("--language-profile", eval_language_profile,
                   "language profile for hierarchical rows");
  eval->add_flag("--partial", partial,
                 "match when an indexed bundle is a subset of the mapped one");
  eval->add_flag("--tsv", tsv, "machine-readable TSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed())
      return cmd_validate(validate_paths, schema, strict, per_pos, jobs);
    if (convert->parsed())
      return cmd_convert(convert_path, convert_to, convert_profile,
                         convert_rejects, strict);
    if (segment->parsed())
      return cmd_segment(segment_path, segment_table, segment_overrides,
                         segment_stem_map, all_parses, strict, jobs);
    if (infer->parsed())
      return cmd_infer_paradigms(infer_path, infer_inventory, lenient, strict);
    if (fuse_cmd->parsed())
      return cmd_fuse_derivations(fuse_paths, fuse_stats, strict);
    if (eval->parsed())
      return cmd_eval_ud(eval_unimorph, eval_conllu, eval_mapping,
                         eval_language_profile, partial, tsv, strict);
  } catch (const std::exception& e) {
    std::cerr << "unimorph: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
