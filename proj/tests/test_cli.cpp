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

#include "cli_util.hpp"

using unimorph::testutil::run_cli;
using unimorph::testutil::slurp;
using unimorph::testutil::write_temp;

namespace {

std::string data(const std::string& name) {
  return std::string(UNIMORPH_TEST_DATA_DIR) + "/" + name;
}

std::string profile(const std::string& name) {
  return std::string(UNIMORPH_DATA_DIR) + "/profiles/" + name;
}

}  // namespace

TEST_CASE("--version prints toolkit and inventory versions") {
  const auto res = run_cli("--version");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("unimorph-toolkit 0.1.0") != std::string::npos);
  CHECK(res.out.find("schema inventory 4.0") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("validate").exit_code == 2);
  CHECK(run_cli("convert x --to sideways --profile p").exit_code == 2);
  const auto missing = run_cli("validate /no/such/file.tsv");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("validate: stats line, warning and error exit codes") {
  const auto ok = run_cli("validate " + data("hu_nouns.tsv"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("lemmas=1 forms=3") != std::string::npos);
  CHECK(ok.err.empty());

  const std::string dup = write_temp("dup.tsv",
                                     "a\tb\tN;SG\n"
                                     "a\tb\tN;SG\n");
  const auto bad = run_cli("validate " + dup);
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("DuplicateTriple") != std::string::npos);

  const std::string warn_only = write_temp("warn.tsv",
                                           "a\tb\tN;SG\n"
                                           "a\tc\tN;SG\n");
  CHECK(run_cli("validate " + warn_only).exit_code == 0);
  CHECK(run_cli("--strict validate " + warn_only).exit_code == 1);
}

TEST_CASE("convert: table rows, rejects channel") {
  const std::string flat = write_temp("flat.tsv",
                                      "drinks\tdrinks\tV;PRS;3;SG\n");
  const auto hier = run_cli("convert " + flat + " --to hier --profile " +
                            profile("en.profile"));
  CHECK(hier.exit_code == 0);
  CHECK(hier.out == "drinks\tdrinks\tV;PRS;NOM(3,SG)\n");

  // already-hierarchical input comes back canonicalized, byte-identical
  const std::string hier_in = write_temp("hier.tsv",
                                         "drinks\tdrinks\tV;PRS;NOM(3,SG)\n");
  const auto again = run_cli("convert " + hier_in + " --to hier --profile " +
                             profile("en.profile"));
  CHECK(again.out == "drinks\tdrinks\tV;PRS;NOM(3,SG)\n");

  const std::string evenki = write_temp(
      "evenki.tsv", "ңинакин\tңинакиннундуле\tN;ALL(COM(SG))\n");
  const std::string rejects =
      write_temp("rejects.tsv", "");
  const auto flat_out =
      run_cli("convert " + evenki + " --to flat --profile " +
              profile("evn.profile") + " --rejects " + rejects);
  CHECK(flat_out.exit_code == 0);
  CHECK(flat_out.out.empty());
  CHECK(slurp(rejects).find("N;ALL(COM(SG))") != std::string::npos);
  CHECK(flat_out.err.find("NotRepresentable") != std::string::npos);

  CHECK(run_cli("convert " + flat + " --to hier --profile /no/such.profile")
            .exit_code == 2);
}

TEST_CASE("segment: reproduces the segmentation figure byte for byte") {
  const auto res = run_cli("segment " + data("hu_nouns.tsv") + " --table " +
                           data("hu_table.tsv") + " --stem-map " +
                           data("hu_stem_map.tsv"));
  CHECK(res.exit_code == 0);
  CHECK(res.out == slurp(data("hu_segmented_expected.tsv")));
  CHECK(res.err.empty());
}

TEST_CASE("segment: --all-parses emits one line per parse; NoPath diagnosed") {
  const std::string input = write_temp("amb.tsv", "légy\tlegyek\tN;NOM;PL\n");
  const auto all = run_cli("segment " + input + " --table " +
                           data("hu_table.tsv") + " --all-parses");
  CHECK(all.exit_code == 0);
  CHECK(all.out ==
        "légy\tlegyek\tN|NOM;PL\tlegy|ek\n"
        "légy\tlegyek\tN|NOM;PL\tlegye|k\n");

  const std::string missing = write_temp("nopath.tsv", "a\tb\tN;ACC;SG\n");
  const auto res = run_cli("segment " + missing + " --table " +
                           data("hu_table.tsv"));
  CHECK(res.exit_code == 1);
  CHECK(res.out.empty());
  CHECK(res.err.find("NoPath") != std::string::npos);
}

TEST_CASE("segment: overrides take precedence") {
  const std::string input = write_temp("ovr.tsv", "légy\tlegyek\tN;NOM;PL\n");
  const std::string overrides =
      write_temp("ovr_rules.tsv", "legyek\tN;NOM;PL\tle|gyek\n");
  const auto res = run_cli("segment " + input + " --table " +
                           data("hu_table.tsv") + " --overrides " + overrides);
  CHECK(res.exit_code == 0);
  CHECK(res.out == "légy\tlegyek\tN;NOM;PL\tle|gyek\n");
}

TEST_CASE("infer-paradigms: intersection per lemma") {
  const auto res = run_cli("infer-paradigms " + data("hu_nouns.tsv") +
                           " --inventory " + data("hu_paradigms.tsv"));
  CHECK(res.exit_code == 0);
  // the N;NOM;SG row has no cell in any class, so strict mode excludes all
  CHECK(res.out == "légy\t-\n");

  const std::string two = write_temp("two.tsv",
                                     "légy\tlegyek\tN;NOM;PL\n"
                                     "légy\tlegyeknek\tN;DAT;PL\n");
  const auto strict = run_cli("infer-paradigms " + two + " --inventory " +
                              data("hu_paradigms.tsv"));
  CHECK(strict.out == "légy\tnoun_ek\n");

  const std::string one = write_temp("one.tsv", "légy\tlegyek\tN;NOM;PL\n");
  const auto ambiguous = run_cli("infer-paradigms " + one + " --inventory " +
                                 data("hu_paradigms.tsv"));
  CHECK(ambiguous.out == "légy\tnoun_ek,noun_k\n");

  const auto lenient = run_cli("infer-paradigms " + data("hu_nouns.tsv") +
                               " --inventory " + data("hu_paradigms.tsv") +
                               " --lenient");
  CHECK(lenient.out == "légy\tnoun_ek\n");
}

TEST_CASE("convert: every table row, both directions, through the CLI") {
  struct Row {
    const char* profile;
    const char* hier;
    const char* flat;
  };
  const Row rows[] = {
      {"en.profile", "V;PRS;NOM(3,SG)", "V;PRS;3;SG"},
      {"ka.profile", "V;FUT;NOM(1,PL);ACC(2,SG)", "V;FUT;ARGNO1P;ARGAC2S"},
      {"he.profile", "N;SG;PSSD;PSS(3,SG,FEM)", "N;SG;PSSD;PSS3SF"},
      {"ru.profile", "N;DAT(PL)", "N;DAT;PL"},
      {"tr.profile", "N;ACC(SG;PSSD;PSS(1,SG))", "N;SG;ACC;PSSD;PSS1S"},
  };
  int n = 0;
  for (const Row& row : rows) {
    const std::string flat_file = write_temp(
        "t1_flat_" + std::to_string(n) + ".tsv",
        "w\tw\t" + std::string(row.flat) + "\n");
    const std::string hier_file = write_temp(
        "t1_hier_" + std::to_string(n) + ".tsv",
        "w\tw\t" + std::string(row.hier) + "\n");
    ++n;
    const auto up = run_cli("convert " + flat_file + " --to hier --profile " +
                            profile(row.profile));
    CAPTURE(row.flat);
    CHECK(up.exit_code == 0);
    CHECK(up.out == "w\tw\t" + std::string(row.hier) + "\n");
    const auto down = run_cli("convert " + hier_file + " --to flat --profile " +
                              profile(row.profile));
    CHECK(down.exit_code == 0);
    CHECK(down.out == "w\tw\t" + std::string(row.flat) + "\n");
  }
}

TEST_CASE("infer-paradigms: shipped Russian sample inventory") {
  const auto res = run_cli(
      "infer-paradigms " + data("ru_nouns.tsv") + " --inventory " +
      std::string(UNIMORPH_DATA_DIR) + "/paradigms/ru_nouns.tsv");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "собака\tf_hard\n");
}

TEST_CASE("fuse-derivations: fixture fuses to complete records") {
  const auto res =
      run_cli("fuse-derivations " + data("ita.tsv") + " " + data("fra.tsv"));
  CHECK(res.exit_code == 0);
  CHECK(res.out ==
        "décrit\tsusdécrit\tV:ADJ\tsus-\n"
        "morfologia\tmorfologico\tN:ADJ\t-ico\n"
        "morfologico\tmorfologicamente\tADJ:ADV\t-mente\n");

  const auto stats = run_cli("fuse-derivations " + data("ita.tsv") + " " +
                             data("fra.tsv") + " --stats");
  CHECK(stats.exit_code == 0);
  CHECK(stats.out.find("language\tlemmas\tderivations\tmorphemes\n") !=
        std::string::npos);
  CHECK(stats.out.find("fra\t2\t1\t1\n") != std::string::npos);
  CHECK(stats.out.find("ita\t3\t2\t2\n") != std::string::npos);
}

TEST_CASE("eval-ud: fixture report in both formats") {
  const std::string base = "eval-ud " + data("ud_eval_unimorph.tsv") + " " +
                           data("ud_eval.conllu") + " --profile " +
                           std::string(UNIMORPH_DATA_DIR) + "/ud/en.map";
  const auto tsv = run_cli(base + " --tsv");
  CHECK(tsv.exit_code == 0);
  CHECK(tsv.out.find("N\t20\t12\t9\t45.0\t75.0\t56.2") != std::string::npos);
  CHECK(tsv.out.find("V\t25\t20\t18\t72.0\t90.0\t80.0") != std::string::npos);
  CHECK(tsv.out.find("ALL\t45\t32\t27\t60.0\t84.4\t70.1") !=
        std::string::npos);

  const auto table = run_cli(base);
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("excluded (unmapped UPOS): 2") != std::string::npos);
}

TEST_CASE("eval-ud: --partial accepts indexed subsets") {
  const std::string unimorph_file =
      write_temp("partial_um.tsv", "dog\tdogs\tN;PL\n");
  const std::string conllu = write_temp(
      "partial.conllu",
      "1\tdogs\tdog\tNOUN\t_\tDefinite=Def|Number=Plur\t0\troot\t_\t_\n");
  const std::string base = "eval-ud " + unimorph_file + " " + conllu +
                           " --profile " + std::string(UNIMORPH_DATA_DIR) +
                           "/ud/en.map --tsv";
  const auto exact = run_cli(base);
  CHECK(exact.out.find("ALL\t1\t1\t0\t") != std::string::npos);
  const auto partial = run_cli(base + " --partial");
  CHECK(partial.out.find("ALL\t1\t1\t1\t") != std::string::npos);
}

TEST_CASE("determinism: identical bytes in, identical bytes out") {
  const std::string messy = write_temp("messy.tsv",
                                       "a\tb\tN;SG\n"
                                       "a\tb\tN;SG\n"
                                       "c\td\tBOGUS(\n"
                                       "c\te\tN;NOM(SG)\n"
                                       "x\ty\tV;PRS\n");
  const std::string cmd = "validate " + messy + " " + data("hu_nouns.tsv");
  const auto first = run_cli(cmd);
  for (int i = 0; i < 3; ++i) {
    const auto again = run_cli(cmd);
    CHECK(again.out == first.out);
    CHECK(again.err == first.err);
    CHECK(again.exit_code == first.exit_code);
  }
  for (unsigned jobs : {1u, 2u, 4u, 8u}) {
    const auto par = run_cli("--jobs " + std::to_string(jobs) + " " + cmd);
    CHECK(par.out == first.out);
    CHECK(par.err == first.err);
  }

  const std::string seg_cmd = "segment " + data("hu_nouns.tsv") + " --table " +
                              data("hu_table.tsv") + " --stem-map " +
                              data("hu_stem_map.tsv");
  const auto seg_first = run_cli(seg_cmd);
  for (unsigned jobs : {2u, 8u}) {
    const auto par = run_cli("--jobs " + std::to_string(jobs) + " " + seg_cmd);
    CHECK(par.out == seg_first.out);
    CHECK(par.err == seg_first.err);
  }
}
