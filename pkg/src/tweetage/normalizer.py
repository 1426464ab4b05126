"""Tweet text normalization.

Turns raw tweet text into a list of cleaned words via a fixed stage order:

1. tokenize (lossless lexer)
2. drop URL / MENTION / HASHTAG / EMOTICON / EMOJI tokens per config
3. lowercase and map the curly apostrophe U+2019 to U+0027
4. expand contractions ("can't" -> "can not"; trailing "'s" stripped)
5. remove special characters, keeping only [a-z0-9]; drop emptied words
6. keep surviving words in their original order
7. remove stopwords (both variants) and, under the keep-pronouns variant,
   re-admit pronouns

The two pronoun variants exist because first-person pronouns are a signal
for self-reports; everything else about the pipeline is shared. All
functions are pure and deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from enum import Enum
from typing import Optional

from .errors import DataError
from .lexer import Token, TokenKind, tokenize


class PronounVariant(Enum):
    """Stopword handling: drop pronouns with the rest, or keep them."""

    KEEP = "keep"
    REMOVE = "remove"


@dataclass(frozen=True)
class NormalizationConfig:
    variant: PronounVariant = PronounVariant.KEEP
    strip_urls: bool = True
    strip_mentions: bool = True
    strip_hashtags: bool = True
    strip_emoticons_emoji: bool = True
    expand_contractions: bool = True
    remove_special_chars: bool = True
    remove_stopwords: bool = True
    lowercase: bool = True


@dataclass(frozen=True)
class Lexicons:
    """Wordlists the normalizer consults. Immutable once loaded."""

    stopwords: frozenset[str]
    pronouns: frozenset[str]
    contractions: dict[str, str]


def _read_lines(path) -> list[str]:
    text = Path(path).read_text("utf-8") if isinstance(path, (str, Path)) else path.read_text("utf-8")
    return [line for line in text.splitlines() if line.strip()]


def load_lexicons(
    stopwords_path: Optional[str] = None,
    pronouns_path: Optional[str] = None,
    contractions_path: Optional[str] = None,
) -> Lexicons:
    """Load wordlists, falling back to the bundled copies.

    Validates the cross-list invariants and raises DataError on violation:
    pronouns must be a subset of the stopwords, contraction keys must be
    lowercase and contain an apostrophe, expansions must be apostrophe-free.
    """
    data = resources.files("tweetage").joinpath("data")
    stopwords = frozenset(_read_lines(stopwords_path or data.joinpath("stopwords.txt")))
    pronouns = frozenset(_read_lines(pronouns_path or data.joinpath("pronouns.txt")))

    contractions: dict[str, str] = {}
    for lineno, line in enumerate(_read_lines(contractions_path or data.joinpath("contractions.tsv")), 1):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DataError(f"contractions line {lineno}: expected key<TAB>expansion, got {line!r}")
        contractions[parts[0]] = parts[1]

    missing = pronouns - stopwords
    if missing:
        raise DataError(f"pronouns not in stopword list: {sorted(missing)}")
    for key, value in contractions.items():
        if key != key.lower() or "'" not in key:
            raise DataError(f"contraction key must be lowercase with an apostrophe: {key!r}")
        if "'" in value:
            raise DataError(f"contraction expansion must be apostrophe-free: {key!r} -> {value!r}")
    return Lexicons(stopwords=stopwords, pronouns=pronouns, contractions=contractions)


@lru_cache(maxsize=1)
def _bundled_lexicons() -> Lexicons:
    return load_lexicons()


_STRIPPED_KINDS = {
    TokenKind.URL: "strip_urls",
    TokenKind.MENTION: "strip_mentions",
    TokenKind.HASHTAG: "strip_hashtags",
    TokenKind.EMOTICON: "strip_emoticons_emoji",
    TokenKind.EMOJI: "strip_emoticons_emoji",
}

_SPECIAL_RE = re.compile(r"[^a-z0-9]+")


def expand_contractions(word: str, lexicons: Lexicons) -> list[str]:
    """Expand one lowercased word: table lookup, then possessive 's strip.

    Words matching neither rule come back unchanged (as a 1-list).
    """
    expansion = lexicons.contractions.get(word)
    if expansion is not None:
        return expansion.split(" ")
    if word.endswith("'s") and len(word) > 2:
        return [word[:-2]]
    return [word]


def remove_special_chars(word: str) -> str:
    """Keep only [a-z0-9]; may return the empty string."""
    return _SPECIAL_RE.sub("", word)


def remove_stopwords(words: list[str], config: NormalizationConfig, lexicons: Lexicons) -> list[str]:
    if config.variant is PronounVariant.KEEP:
        dropped = lexicons.stopwords - lexicons.pronouns
    else:
        dropped = lexicons.stopwords
    return [w for w in words if w not in dropped]


def _word_stream(tokens: list[Token], config: NormalizationConfig) -> list[str]:
    words = []
    for token in tokens:
        if token.kind is TokenKind.WHITESPACE:
            continue
        flag = _STRIPPED_KINDS.get(token.kind)
        if flag is not None and getattr(config, flag):
            continue
        words.append(token.text)
    return words


def normalize(
    text: str,
    config: Optional[NormalizationConfig] = None,
    lexicons: Optional[Lexicons] = None,
) -> list[str]:
    """Run the full normalization pipeline on one tweet's text."""
    if config is None:
        config = NormalizationConfig()
    if lexicons is None:
        lexicons = _bundled_lexicons()

    words = _word_stream(tokenize(text), config)

    if config.lowercase:
        words = [w.lower() for w in words]
    # The curly apostrophe folds to ASCII regardless of the lowercase flag
    # so contraction keys match either spelling.
    words = [w.replace("’", "'") for w in words]

    if config.expand_contractions:
        expanded: list[str] = []
        for word in words:
            expanded.extend(expand_contractions(word, lexicons))
        words = expanded

    if config.remove_special_chars:
        words = [remove_special_chars(w) for w in words]
        words = [w for w in words if w]

    if config.remove_stopwords:
        words = remove_stopwords(words, config, lexicons)
    return words


def render(words: list[str]) -> str:
    """Join normalized words with single spaces (TSV-safe by construction)."""
    return " ".join(words)
