import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tweetage.errors import DataError
from tweetage.normalizer import (
    NormalizationConfig,
    PronounVariant,
    expand_contractions,
    load_lexicons,
    normalize,
    remove_special_chars,
    remove_stopwords,
    render,
)

KEEP = NormalizationConfig(variant=PronounVariant.KEEP)
REMOVE = NormalizationConfig(variant=PronounVariant.REMOVE)

EXAMPLE = "I can't believe I'm 21 today!! \U0001F62D https://t.co/x #21"


def test_lexicon_shapes(lexicons):
    assert len(lexicons.stopwords) == 179
    assert len(lexicons.pronouns) == 29
    assert lexicons.pronouns <= lexicons.stopwords
    assert 115 <= len(lexicons.contractions) <= 130
    for key, value in lexicons.contractions.items():
        assert key == key.lower() and "'" in key
        assert "'" not in value


def test_pronoun_list_contents(lexicons):
    expected = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves",
        "you", "your", "yours", "yourself", "yourselves",
        "he", "him", "his", "himself", "she", "her", "hers", "herself",
        "it", "its", "itself", "they", "them", "their", "theirs", "themselves",
    }
    assert lexicons.pronouns == expected


@pytest.mark.parametrize(
    "word,expected",
    [
        ("don't", ["do", "not"]),
        ("can't", ["can", "not"]),
        ("i'm", ["i", "am"]),
        ("won't", ["will", "not"]),
        ("y'all", ["you", "all"]),
        ("21st", ["21st"]),
        ("grandma's", ["grandma"]),
        ("mia's", ["mia"]),
        ("'s", ["'s"]),  # bare possessive marker has no stem to keep
        ("hello", ["hello"]),
    ],
)
def test_expand_contractions(word, expected, lexicons):
    assert expand_contractions(word, lexicons) == expected


def test_expansions_are_apostrophe_free(lexicons):
    for key in lexicons.contractions:
        for out in expand_contractions(key, lexicons):
            assert "'" not in out


@pytest.mark.parametrize(
    "word,expected",
    [
        ("b-day!!", "bday"),
        ("2022", "2022"),
        ("¯\\_(ツ)_/¯", ""),
        ("oclock", "oclock"),
        ("", ""),
    ],
)
def test_remove_special_chars(word, expected):
    assert remove_special_chars(word) == expected


@pytest.mark.parametrize(
    "variant,expected",
    [
        (PronounVariant.KEEP, ["happy", "birthday", "me"]),
        (PronounVariant.REMOVE, ["happy", "birthday"]),
    ],
)
def test_remove_stopwords(variant, expected, lexicons):
    config = NormalizationConfig(variant=variant)
    words = ["happy", "birthday", "to", "me"]
    assert remove_stopwords(words, config, lexicons) == expected
    assert remove_stopwords([], config, lexicons) == []


def test_normalize_example_keep_pronouns():
    assert normalize(EXAMPLE, KEEP) == ["i", "believe", "i", "21", "today"]


def test_normalize_example_remove_pronouns():
    assert normalize(EXAMPLE, REMOVE) == ["believe", "21", "today"]


def test_normalize_empty():
    assert normalize("", KEEP) == []
    assert normalize("", REMOVE) == []


def test_curly_apostrophe_folds_for_contractions():
    assert normalize("I’m 21", KEEP) == ["i", "21"]


def test_default_config_strips_all_tweet_noise():
    text = "@mia :) \U0001F602 https://t.co/x #tag word"
    assert normalize(text, KEEP) == ["word"]


def test_strip_flags_retain_kinds():
    config = NormalizationConfig(variant=PronounVariant.KEEP, strip_hashtags=False)
    assert normalize("#Tag21 word", config) == ["tag21", "word"]
    config = NormalizationConfig(variant=PronounVariant.KEEP, strip_mentions=False)
    assert normalize("@Mia word", config) == ["mia", "word"]


def test_remove_stopwords_flag_off_keeps_them():
    config = NormalizationConfig(variant=PronounVariant.KEEP, remove_stopwords=False)
    assert normalize("I am happy", config) == ["i", "am", "happy"]


def test_expand_contractions_flag_off():
    config = NormalizationConfig(variant=PronounVariant.KEEP, expand_contractions=False)
    # "can't" stays one word; special-char removal then yields "cant",
    # which is not a stopword.
    assert normalize("I can't", config) == ["i", "cant"]


@pytest.mark.parametrize("words,expected", [(["happy", "birthday"], "happy birthday"), ([], ""), (["a"], "a")])
def test_render(words, expected):
    assert render(words) == expected


def test_load_lexicons_override_validation(tmp_path):
    stopwords = tmp_path / "stop.txt"
    pronouns = tmp_path / "pro.txt"
    stopwords.write_text("a\nthe\n", "utf-8")
    pronouns.write_text("me\n", "utf-8")  # not in the stopword override
    with pytest.raises(DataError, match="pronouns not in stopword list"):
        load_lexicons(stopwords_path=stopwords, pronouns_path=pronouns)


@pytest.mark.parametrize(
    "line,message",
    [
        ("Don't\tdo not", "lowercase"),
        ("dont\tdo not", "apostrophe"),
        ("don't\tdo n't", "apostrophe-free"),
        ("don't do not", "key<TAB>expansion"),
    ],
)
def test_load_lexicons_contraction_validation(tmp_path, line, message):
    path = tmp_path / "contractions.tsv"
    path.write_text(line + "\n", "utf-8")
    with pytest.raises(DataError, match=message):
        load_lexicons(contractions_path=path)


# ---------------------------------------------------------------------------
# Properties. Tweet-shaped inputs: realistic fragments, both scripts and
# noise. Bare alphanumeric emoticon spellings ("xd") are excluded from the
# word pool: a normalized word equal to such a spelling re-lexes as an
# emoticon, which is outside the normalizer's idempotence domain.

_tweet_pieces = st.lists(
    st.one_of(
        st.sampled_from(
            [
                "I'm", "can't", "don’t", "21", "21st", "today", "HAPPY",
                "birthday", "@mia", "#blessed", "https://t.co/x", ":)",
                "\U0001F62D", "grandma's", "it's", "won't", "o'clock",
                "b-day!!", "...", "мой", "ねこ", "x", "believe",
            ]
        ),
        st.text(alphabet="abz019'’-!. ", max_size=8),
    ),
    max_size=12,
).map(" ".join)


@settings(max_examples=200, deadline=None)
@given(text=_tweet_pieces, variant=st.sampled_from(list(PronounVariant)))
def test_idempotence(text, variant):
    config = NormalizationConfig(variant=variant)
    once = normalize(text, config)
    assert normalize(render(once), config) == once


@settings(max_examples=200, deadline=None)
@given(text=_tweet_pieces)
def test_variant_relationship(text, lexicons):
    kept = normalize(text, KEEP)
    removed = normalize(text, REMOVE)
    # the remove variant equals the keep variant minus pronouns, in order
    assert removed == [w for w in kept if w not in lexicons.pronouns]
    assert not set(removed) & lexicons.pronouns
    assert not set(kept) & (lexicons.stopwords - lexicons.pronouns)
    assert not set(removed) & (lexicons.stopwords - lexicons.pronouns)


@settings(max_examples=200, deadline=None)
@given(text=_tweet_pieces, variant=st.sampled_from(list(PronounVariant)))
def test_output_alphabet(text, variant):
    for word in normalize(text, NormalizationConfig(variant=variant)):
        assert re.fullmatch(r"[a-z0-9]+", word), word


def test_determinism():
    results = [tuple(normalize(EXAMPLE, KEEP)) for _ in range(5)]
    assert len(set(results)) == 1
