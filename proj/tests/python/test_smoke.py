# Copyright 2026 The UniMorph Toolkit Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os

import pytest

um = pytest.importorskip("_unimorph")

DATA_DIR = os.environ.get("UNIMORPH_DATA_DIR", "data")
TEST_DATA_DIR = os.environ.get("UNIMORPH_TEST_DATA_DIR", "tests/data")


def test_parse_serialize_round_trip():
    bundle = um.parse_features("v;prs;nom(3,sg)")
    assert str(bundle) == "V;PRS;NOM(3,SG)"
    assert um.bundles_equal("V;PRS;3;SG", "V;SG;3;PRS")
    assert not um.bundles_equal("N;ALL(COM(SG))", "N;COM(ALL(SG))")
    assert um.canonicalize("SG;N;NOM") == "N;NOM;SG"


def test_strict_mode_raises():
    with pytest.raises(um.FeatureParseError):
        um.parse_features("N;FLURB")
    assert str(um.parse_features("N;FLURB", strict=False)) == "N;FLURB"


def test_conversion_through_profiles():
    en = um.LanguageProfile.load(os.path.join(DATA_DIR, "profiles", "en.profile"))
    assert um.flat_to_hierarchical("V;PRS;3;SG", en) == "V;PRS;NOM(3,SG)"
    assert um.hierarchical_to_flat("V;PRS;NOM(3,SG)", en) == "V;PRS;3;SG"
    evn = um.LanguageProfile.load(os.path.join(DATA_DIR, "profiles", "evn.profile"))
    assert um.hierarchical_to_flat("N;ALL(COM(SG))", evn) is None


def test_segmentation():
    table = um.MorphemeTable.load(os.path.join(TEST_DATA_DIR, "hu_table.tsv"))
    parses = um.segment("legyeknek", "N;DAT;PL", table)
    assert parses == [["legy", "ek", "nek"]]
    everything = um.segment("legyek", "N;NOM;PL", table, all_parses=True)
    assert everything == [["legy", "ek"], ["legye", "k"]]


def test_paradigm_inference():
    triples = [("legyek", "N;NOM;PL"), ("legyeknek", "N;DAT;PL")]
    ids = um.infer_classes(
        triples, os.path.join(TEST_DATA_DIR, "hu_paradigms.tsv")
    )
    assert ids == {"noun_ek"}


def test_f_measure_and_affixes():
    assert abs(um.f_measure(98.6, 24.6) - 39.4) < 0.05
    assert um.infer_affix("décrit", "susdécrit") == ("sus", "prefix", "exact")
    assert um.infer_affix("morfologia", "morfologico") == (
        "co",
        "suffix",
        "truncating",
    )


def test_versions():
    assert um.__version__ == "0.1.0"
    assert um.schema_version == "4.0"
