import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedsim.commands import EmergencyStop, Serve, Stop
from feedsim.parser import Lexicon, NoMatch, levenshtein, normalize, parse

from .oracles import levenshtein_recursive

short_text = st.text(alphabet="abc", max_size=6)


@pytest.fixture(scope="module")
def lex(menu):
    return Lexicon.from_menu(menu)


class TestLevenshtein:
    def test_insertions_only(self):
        assert levenshtein("", "abc") == 3

    def test_classic_pair(self):
        assert levenshtein("kitten", "sitting") == 3
        assert levenshtein_recursive("kitten", "sitting") == 3

    @given(a=short_text, b=short_text)
    def test_matches_recursive_oracle(self, a, b):
        assert levenshtein(a, b) == levenshtein_recursive(a, b)

    @given(a=short_text, b=short_text)
    def test_symmetry(self, a, b):
        assert levenshtein(a, b) == levenshtein(b, a)

    @given(a=short_text)
    def test_identity(self, a):
        assert levenshtein(a, a) == 0

    @given(a=short_text, b=short_text, c=short_text)
    def test_triangle_inequality(self, a, b, c):
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


class TestNormalize:
    def test_case_punctuation_whitespace(self):
        assert normalize("  RiCe!! ") == "rice"
        assert normalize("fried   rice.") == "fried rice"
        assert normalize("...") == ""


class TestParse:
    def test_exact_match(self, lex):
        assert parse("Rice", lex) == Serve("rice")

    def test_one_edit_misspelling(self, lex):
        assert levenshtein("rise", "rice") == 1
        assert parse("rise", lex) == Serve("rice")

    def test_synonym_match(self, lex):
        assert parse("fried rice", lex) == Serve("rice")

    def test_stop(self, lex):
        assert parse("stop", lex) == Stop()
        assert parse("stp", lex) == Stop()  # one deletion away

    def test_emergency(self, lex):
        assert parse("emergency", lex) == EmergencyStop()
        assert parse("emergency stop", lex) == EmergencyStop()

    def test_gibberish_rejected(self, lex):
        result = parse("xylophone", lex)
        assert isinstance(result, NoMatch)
        assert result.reason == "no_match"
        assert result.distance > 2

    def test_empty_rejected(self, lex):
        result = parse("  !!! ", lex)
        assert isinstance(result, NoMatch)
        assert result.reason == "empty"

    def test_ambiguous_tie_rejected(self):
        lex = Lexicon({"bean": [], "bead": []})
        result = parse("beaq", lex)
        assert isinstance(result, NoMatch)
        assert result.reason == "ambiguous"

    def test_two_edit_food_accepted_by_default(self, lex):
        assert levenshtein("riceey", "rice") == 2
        assert parse("riceey", lex) == Serve("rice")

    def test_safety_cap_is_one_edit(self, lex):
        # two edits from "stop" must NOT stop, even though food cap is 2
        assert levenshtein("stub", "stop") == 2
        result = parse("stub", lex)
        assert not isinstance(result, Stop)

    def test_deterministic(self, lex):
        for text in ("rice", "sopu", "stp", "zzz"):
            assert parse(text, lex) == parse(text, lex)

    def test_safety_dominates_nearby_food(self, lex):
        # within one edit of both "stop" and "soup": safety wins
        assert levenshtein("stup", "stop") == 1
        assert levenshtein("stup", "soup") == 1
        assert parse("stup", lex) == Stop()

    def test_negative_max_edit_rejected(self, lex):
        with pytest.raises(ValueError):
            parse("rice", lex, max_edit=-1)

    def test_duplicate_lexicon_rejected(self):
        with pytest.raises(ValueError):
            Lexicon({"rice": ["rice"]})
