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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "unimorph/derivations.hpp"

using namespace unimorph;

namespace {

DerivationRecord record(const std::string& language, const std::string& source,
                        const std::string& target,
                        std::optional<std::string> spos,
                        std::optional<std::string> tpos,
                        std::optional<std::string> affix_display,
                        int line = 0) {
  DerivationRecord r;
  r.language = language;
  r.source = source;
  r.target = target;
  r.source_pos = std::move(spos);
  r.target_pos = std::move(tpos);
  if (affix_display) r.affix = parse_affix(*affix_display);
  r.line = line;
  return r;
}

std::string dump(const std::vector<DerivationRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) out << r.language << '|' << format_derivation(r) << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("parse_affix: the hyphen side encodes orientation") {
  auto suffix = parse_affix("-ico");
  REQUIRE(suffix.has_value());
  CHECK(suffix->text == "ico");
  CHECK(suffix->orientation == AffixOrientation::kSuffix);
  CHECK(suffix->display() == "-ico");
  auto prefix = parse_affix("sus-");
  REQUIRE(prefix.has_value());
  CHECK(prefix->text == "sus");
  CHECK(prefix->orientation == AffixOrientation::kPrefix);
  CHECK(prefix->display() == "sus-");
  CHECK_FALSE(parse_affix("ico").has_value());
  CHECK_FALSE(parse_affix("-x-").has_value());
  CHECK_FALSE(parse_affix("-").has_value());
}

TEST_CASE("infer_affix: the three confidence levels") {
  const auto prefix = infer_affix("décrit", "susdécrit");
  REQUIRE(prefix.has_value());
  CHECK(prefix->affix.text == "sus");
  CHECK(prefix->affix.orientation == AffixOrientation::kPrefix);
  CHECK(prefix->confidence == AffixConfidence::kExact);

  const auto suffix = infer_affix("abc", "abcx");
  REQUIRE(suffix.has_value());
  CHECK(suffix->affix.text == "x");
  CHECK(suffix->affix.orientation == AffixOrientation::kSuffix);
  CHECK(suffix->confidence == AffixConfidence::kExact);

  // stem truncation: common prefix 'morfologi' (9 >= max(3, 10-3))
  const auto trunc = infer_affix("morfologia", "morfologico");
  REQUIRE(trunc.has_value());
  CHECK(trunc->affix.text == "co");
  CHECK(trunc->affix.orientation == AffixOrientation::kSuffix);
  CHECK(trunc->confidence == AffixConfidence::kTruncating);

  const auto weak = infer_affix("walk", "wandered");
  REQUIRE(weak.has_value());
  CHECK(weak->confidence == AffixConfidence::kWeak);

  CHECK_FALSE(infer_affix("abc", "xyz").has_value());
  CHECK_FALSE(infer_affix("abc", "abc").has_value());
}

TEST_CASE("validate_affix: stem truncation is allowed on the suffix side") {
  CHECK(validate_affix(
      record("ita", "morfologia", "morfologico", "N", "ADJ", "-ico")));
  CHECK(validate_affix(
      record("fra", "décrit", "susdécrit", "V", "ADJ", "sus-")));
  CHECK_FALSE(validate_affix(
      record("ita", "morfologia", "morfologico", "N", "ADJ", "-xyz")));
  // suffix must leave a target prefix that prefixes the source
  CHECK_FALSE(validate_affix(record("xx", "abc", "zzco", {}, {}, "-co")));
  CHECK_FALSE(validate_affix(record("xx", "abc", "abcx", {}, {}, {})));
}

TEST_CASE("validate_affix holds for every exact inference") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> letter(0, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  auto word = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i)
      s.push_back(static_cast<char>('a' + letter(rng)));
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    const std::string source = word(len(rng) + 1);
    const std::string affix = word(len(rng));
    if (affix.empty()) continue;
    const bool prefix = coin(rng) == 1;
    const std::string target = prefix ? affix + source : source + affix;
    const auto inferred = infer_affix(source, target);
    REQUIRE(inferred.has_value());
    if (inferred->confidence != AffixConfidence::kExact) continue;
    DerivationRecord r;
    r.source = source;
    r.target = target;
    r.affix = inferred->affix;
    CHECK(validate_affix(r));
  }
}

TEST_CASE("fuse: the two-way morfologicamente records merge to one") {
  std::vector<DerivationRecord> preliminary = {
      record("ita", "morfologico", "morfologicamente", {}, {}, "-mente", 1),
      record("ita", "morfologico", "morfologicamente", "ADJ", "ADV", {}, 2),
  };
  const FuseResult result = fuse(preliminary);
  CHECK(result.diagnostics.empty());
  REQUIRE(result.records.size() == 1);
  const DerivationRecord& r = result.records[0];
  CHECK(r.complete());
  CHECK(*r.source_pos == "ADJ");
  CHECK(*r.target_pos == "ADV");
  CHECK(r.affix->display() == "-mente");
}

TEST_CASE("fuse: exact duplicates collapse silently; conflicts report") {
  const FuseResult dup = fuse({
      record("fra", "décrit", "susdécrit", "V", "ADJ", "sus-", 1),
      record("fra", "décrit", "susdécrit", "V", "ADJ", "sus-", 2),
  });
  CHECK(dup.diagnostics.empty());
  CHECK(dup.records.size() == 1);

  const FuseResult conflict = fuse({
      record("ita", "a", "b", {}, {}, "-ico", 1),
      record("ita", "a", "b", {}, {}, "-ica", 2),
  });
  REQUIRE(conflict.records.size() == 1);
  CHECK_FALSE(conflict.records[0].affix.has_value());
  REQUIRE(conflict.diagnostics.size() == 1);
  CHECK(conflict.diagnostics[0].code == DiagCode::kFieldConflict);
  CHECK(conflict.diagnostics[0].line == 2);
}

TEST_CASE("fuse: output sorted by (language, source, target)") {
  const FuseResult result = fuse({
      record("ita", "b", "c", {}, {}, {}),
      record("fra", "z", "y", {}, {}, {}),
      record("ita", "a", "b", {}, {}, {}),
      record("fra", "z", "x", {}, {}, {}),
  });
  REQUIRE(result.records.size() == 4);
  CHECK(result.records[0].language == "fra");
  CHECK(result.records[0].target == "x");
  CHECK(result.records[1].target == "y");
  CHECK(result.records[2].source == "a");
  CHECK(result.records[3].source == "b");
}

TEST_CASE("property: fuse is idempotent and never invents values") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> pct(0, 99);
  auto word = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i)
      s.push_back(static_cast<char>('a' + letter(rng)));
    return s;
  };
  const std::vector<std::string> pos_pool = {"N", "V", "ADJ", "ADV"};
  const std::vector<std::string> affix_pool = {"-a", "-b", "-ab", "x-", "y-"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DerivationRecord> preliminary;
    std::uniform_int_distribution<int> count(1, 12);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<size_t> pp(0, pos_pool.size() - 1);
      std::uniform_int_distribution<size_t> ap(0, affix_pool.size() - 1);
      const std::string source = word(len(rng));
      std::string target = word(len(rng));
      if (target == source) target += "z";
      preliminary.push_back(record(
          pct(rng) < 50 ? "l1" : "l2", source, target,
          pct(rng) < 50 ? std::optional<std::string>(pos_pool[pp(rng)])
                        : std::nullopt,
          pct(rng) < 50 ? std::optional<std::string>(pos_pool[pp(rng)])
                        : std::nullopt,
          pct(rng) < 60 ? std::optional<std::string>(affix_pool[ap(rng)])
                        : std::nullopt,
          i + 1));
    }
    const FuseResult once = fuse(preliminary);
    const FuseResult twice = fuse(once.records);
    CHECK(twice.diagnostics.empty());
    CHECK(dump(twice.records) == dump(once.records));

    // no invented values: every output field value occurs in its group
    for (const DerivationRecord& out : once.records) {
      auto value_seen = [&](auto get) {
        for (const DerivationRecord& in : preliminary) {
          if (in.language == out.language && in.source == out.source &&
              in.target == out.target) {
            if (get(in) == get(out)) return true;
          }
        }
        return false;
      };
      if (out.source_pos)
        CHECK(value_seen([](const DerivationRecord& r) { return r.source_pos; }));
      if (out.target_pos)
        CHECK(value_seen([](const DerivationRecord& r) { return r.target_pos; }));
      if (out.affix)
        CHECK(value_seen([](const DerivationRecord& r) {
          return r.affix ? std::optional<std::string>(r.affix->display())
                         : std::nullopt;
        }));
    }
  }
}

TEST_CASE("derivation_stats: distinct lemmas and morphemes per language") {
  const std::vector<DerivationRecord> records = {
      record("ita", "a", "b", "N", "ADJ", "-x"),
      record("ita", "b", "c", "ADJ", "ADV", "-x"),
      record("ita", "c", "d", "ADV", "N", "-x"),
  };
  const DerivationStats shared = derivation_stats(records);
  CHECK(shared.at("ita").morpheme_count == 1);
  CHECK(shared.at("ita").derivation_count == 3);
  CHECK(shared.at("ita").lemma_count == 4);

  // 5 records, 7 distinct lemmas, 4 distinct affixes by construction
  const std::vector<DerivationRecord> fixture = {
      record("deu", "l1", "l2", "N", "N", "-a"),
      record("deu", "l2", "l3", "N", "N", "-b"),
      record("deu", "l4", "l5", "N", "N", "c-"),
      record("deu", "l5", "l6", "N", "N", "-a"),
      record("deu", "l6", "l7", "N", "N", "-d"),
  };
  const DerivationStats stats = derivation_stats(fixture);
  CHECK(stats.at("deu").lemma_count == 7);
  CHECK(stats.at("deu").derivation_count == 5);
  CHECK(stats.at("deu").morpheme_count == 4);

  CHECK(derivation_stats({}).empty());
}

TEST_CASE("read_derivations: fixture files and diagnostics") {
  std::ifstream in(std::string(UNIMORPH_TEST_DATA_DIR) + "/ita.tsv",
                   std::ios::binary);
  REQUIRE(in.good());
  std::vector<Diagnostic> diags;
  const auto records = read_derivations(in, "ita", &diags);
  CHECK(diags.empty());
  REQUIRE(records.size() == 4);
  CHECK(records[0].source == "morfologia");
  CHECK_FALSE(records[0].source_pos.has_value());
  CHECK(*records[0].target_pos == "ADJ");
  CHECK(records[0].affix->display() == "-ico");
  CHECK(records[3].source_pos == "N");
  CHECK_FALSE(records[3].target_pos.has_value());

  std::istringstream bad(
      "a\n"
      "a\ta\n"
      "a\tb\tNADJ\n"
      "a\tb\tN:ADJ\tico\n");
  std::vector<Diagnostic> bad_diags;
  const auto bad_records = read_derivations(bad, "xx", &bad_diags);
  REQUIRE(bad_diags.size() == 4);
  CHECK(bad_diags[0].code == DiagCode::kBadColumnCount);
  CHECK(bad_diags[1].code == DiagCode::kMalformedLine);
  CHECK(bad_diags[2].code == DiagCode::kMalformedLine);
  CHECK(bad_diags[3].code == DiagCode::kBadAffix);
  CHECK(bad_records.size() == 2);  // rows 3 and 4 still produce records
}

TEST_CASE("fusing the fixture yields complete records") {
  std::ifstream in(std::string(UNIMORPH_TEST_DATA_DIR) + "/ita.tsv",
                   std::ios::binary);
  const auto records = read_derivations(in, "ita", nullptr);
  const FuseResult result = fuse(records);
  CHECK(result.diagnostics.empty());
  REQUIRE(result.records.size() == 2);
  for (const DerivationRecord& r : result.records) {
    CAPTURE(r.source);
    CHECK(r.complete());
  }
  CHECK(validate_affix(result.records[0]));  // morfologia + -ico
  // morfologico + -mente fails the prefix-truncation rule: the stem-final
  // vowel changes (morfologica-), which the rule deliberately rejects
  CHECK_FALSE(validate_affix(result.records[1]));
}
