import json

import pytest
from hypothesis import given, strategies as st

from coreadmap.corpus import (
    SubjectTaxonomy,
    edit_distance_bounded,
    load_corpus,
    load_taxonomy,
    match_journal,
    normalize_journal,
)
from coreadmap.errors import RecordFormatError

from conftest import taxonomy_of, write_taxonomy_csv


class TestNormalizeJournal:
    def test_leading_definite_article_dropped(self):
        assert normalize_journal("The Internet and Higher Education ") == (
            "internet and higher education"
        )

    def test_already_normal_is_unchanged(self):
        assert normalize_journal("computers & education") == "computers & education"

    def test_accents_punctuation_and_spacing(self):
        # hand-applied steps: strip accents, lowercase, drop colon/comma,
        # collapse the doubled spaces left behind
        assert normalize_journal("Éducation: Recherche, Pratique") == (
            "education recherche pratique"
        )

    def test_dashes_removed_without_space(self):
        assert normalize_journal("User Model-ling") == "user modelling"

    def test_empty_input(self):
        assert normalize_journal("") == ""

    @given(st.text(max_size=60))
    def test_idempotent(self, text):
        once = normalize_journal(text)
        assert normalize_journal(once) == once


class TestMatchJournal:
    def test_exact_match(self):
        tax = taxonomy_of(**{"Computers & Education": "social sciences"})
        match = match_journal("  Computers & Education ", tax)
        assert match is not None
        assert match.match_kind == "exact"
        assert match.subject_area == "social sciences"

    def test_near_miss_on_trailing_plural(self):
        tax = taxonomy_of(
            **{"User Modelling and User-Adapted Interactions": "computer science"}
        )
        match = match_journal("User Modelling and User-Adapted Interaction", tax)
        assert match is not None
        assert match.match_kind == "near-miss"
        assert match.subject_area == "computer science"
        assert match.distance == 1

    def test_hyphenation_variant_is_near_miss(self):
        tax = taxonomy_of(
            **{"User Modelling and User-Adapted Interactions": "computer science"}
        )
        match = match_journal("User Model-ling and User-Adapted Interaction", tax)
        assert match is not None
        assert match.match_kind == "near-miss"

    def test_distant_name_matches_nothing(self):
        tax = taxonomy_of(
            **{
                "alpha studies": "one",
                "beta review": "two",
                "gamma letters": "three",
            }
        )
        # verify the premise: every entry is further than the near-miss limit
        name = normalize_journal("delta quarterly")
        for entry in tax.entries:
            assert edit_distance_bounded(name, entry, 2) is None
        assert match_journal("delta quarterly", tax) is None

    def test_ambiguous_near_miss_rejected(self):
        tax = taxonomy_of(**{"data review": "one", "dada review": "two"})
        # "dara review" is distance 1 from both -> not unique -> no match
        assert match_journal("dara review", tax) is None

    def test_exact_beats_near_miss(self):
        tax = taxonomy_of(**{"data review": "one", "data reviews": "two"})
        match = match_journal("data review", tax)
        assert match.match_kind == "exact"
        assert match.subject_area == "one"

    def test_near_misses_logged_for_review(self):
        tax = taxonomy_of(**{"data review": "one"})
        review = []
        match_journal("data reviews", tax, review=review)
        assert review == [("data reviews", "data review", "one", 1)]

    def test_empty_taxonomy_rejected(self):
        with pytest.raises(ValueError):
            match_journal("anything", SubjectTaxonomy(entries={}))


class TestEditDistance:
    @pytest.mark.parametrize(
        "a,b,expected",
        [("abc", "abc", 0), ("abc", "abd", 1), ("abc", "abcd", 1), ("abc", "badc", 2)],
    )
    def test_known_distances(self, a, b, expected):
        got = edit_distance_bounded(a, b, 3)
        assert got == expected

    def test_bounded_returns_none_beyond_limit(self):
        assert edit_distance_bounded("abcdef", "zzzzzz", 2) is None


class TestLoadCorpus:
    def test_counts(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [
                {"user_id": "lib1", "doc_ids": ["X", "Y"]},
                {"user_id": "lib2", "doc_ids": ["Y", "Z"]},
            ],
            [
                {"doc_id": "X", "title": "x"},
                {"doc_id": "Y", "title": "y"},
                {"doc_id": "Z", "title": "z"},
            ],
        )
        corpus, warnings = load_corpus(str(lib_path), str(doc_path))
        assert len(corpus.libraries) == 2
        assert len(corpus.documents) == 3
        assert warnings == []

    def test_duplicate_doc_ids_within_library_collapse(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": ["X", "X"]}],
            [{"doc_id": "X", "title": "x"}],
        )
        corpus, _ = load_corpus(str(lib_path), str(doc_path))
        assert corpus.libraries[0].doc_ids == frozenset({"X"})

    def test_dangling_reference_warns_and_is_dropped(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": ["X", "Z"]}],
            [{"doc_id": "X", "title": "x"}],
        )
        corpus, warnings = load_corpus(str(lib_path), str(doc_path))
        assert ("lib1", "Z") in warnings
        assert corpus.libraries[0].doc_ids == frozenset({"X"})

    def test_malformed_json_names_line(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": []}], [{"doc_id": "X", "title": "x"}]
        )
        doc_path.write_text('{"doc_id": "X", "title": "x"}\nnot json\n', encoding="utf-8")
        with pytest.raises(RecordFormatError) as err:
            load_corpus(str(lib_path), str(doc_path))
        assert err.value.line_no == 2

    def test_missing_field_named(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": ["X"]}], [{"doc_id": "X"}]
        )
        with pytest.raises(RecordFormatError) as err:
            load_corpus(str(lib_path), str(doc_path))
        assert err.value.field == "title"

    def test_implausible_year_rejected(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": ["X"]}],
            [{"doc_id": "X", "title": "x", "year": 1200}],
        )
        with pytest.raises(RecordFormatError) as err:
            load_corpus(str(lib_path), str(doc_path))
        assert err.value.field == "year"

    def test_unknown_pub_type_rejected(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [{"user_id": "lib1", "doc_ids": ["X"]}],
            [{"doc_id": "X", "title": "x", "pub_type": "banana"}],
        )
        with pytest.raises(RecordFormatError) as err:
            load_corpus(str(lib_path), str(doc_path))
        assert err.value.field == "pub_type"

    def test_deterministic_reload(self, tmp_corpus_files):
        lib_path, doc_path = tmp_corpus_files(
            [
                {"user_id": "lib1", "doc_ids": ["X", "Y"], "country": "US"},
                {"user_id": "lib2", "doc_ids": ["Y"]},
            ],
            [
                {"doc_id": "X", "title": "x", "year": 2001},
                {"doc_id": "Y", "title": "y"},
            ],
        )
        first, _ = load_corpus(str(lib_path), str(doc_path))
        second, _ = load_corpus(str(lib_path), str(doc_path))
        assert first == second


class TestLoadTaxonomy:
    def test_round_trip_and_normalization(self, tmp_path):
        path = write_taxonomy_csv(
            tmp_path / "tax.csv",
            [("The Journal of Tests", "testing"), ("Éducation: Recherche", "education")],
        )
        tax = load_taxonomy(str(path))
        assert tax.entries["journal of tests"] == "testing"
        assert tax.entries["education recherche"] == "education"

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\nx,y\n", encoding="utf-8")
        with pytest.raises(RecordFormatError):
            load_taxonomy(str(path))
