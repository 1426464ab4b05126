"""Lossless tweet lexer.

Decomposes raw tweet text into a stream of categorized tokens whose texts
concatenate back to the exact input, so that removal of URLs, mentions,
hashtags, emoticons, and emoji is a token-level filter rather than string
surgery.

Token grammar (longest match wins at each position; ties broken by the
order the kinds are listed here):

* URL        ``http://`` or ``https://`` followed by a run of non-whitespace,
             or bare ``www.`` followed by non-whitespace.
* MENTION    ``@`` plus 1..15 characters from ``[A-Za-z0-9_]``.
* HASHTAG    ``#`` plus one or more letters/digits/underscores (a leading
             digit is allowed).
* EMOTICON   longest match against the bundled ASCII emoticon lexicon
             (``:)``, ``:-(``, ``<3``, ``xD``, ...).
* EMOJI      a code point from the emoji blocks U+1F300-1F5FF, U+1F600-1F64F,
             U+1F680-1F6FF, U+1F900-1F9FF, or U+1F1E6-1F1FF (flags); a
             zero-width-joiner sequence of such code points is one token.
* WORD       maximal run of letters/digits/apostrophes containing at least
             one letter or digit ("21st" and "don't" are single words;
             U+2019 counts as an apostrophe). Numerals are folded into WORD.
* WHITESPACE maximal whitespace run.
* PUNCT      any single remaining character.

Malformed constructs never fail: anything that does not fit an earlier rule
degrades to WORD or PUNCT tokens. Every function here is pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources


class TokenKind(Enum):
    URL = "URL"
    MENTION = "MENTION"
    HASHTAG = "HASHTAG"
    EMOTICON = "EMOTICON"
    EMOJI = "EMOJI"
    WORD = "WORD"
    # NUMBER is part of the public kind vocabulary but the grammar folds
    # numerals into WORD; the lexer never emits it.
    NUMBER = "NUMBER"
    PUNCT = "PUNCT"
    WHITESPACE = "WHITESPACE"


@dataclass(frozen=True)
class Token:
    """One lexed span: ``text == source[start:end]`` (string indices)."""

    kind: TokenKind
    text: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def _load_emoticons() -> tuple[str, ...]:
    raw = resources.files("tweetage").joinpath("data/emoticons.txt").read_text("utf-8")
    entries = tuple(line for line in raw.splitlines() if line.strip())
    return entries


EMOTICONS: frozenset[str] = frozenset(_load_emoticons())

_APOSTROPHES = "'’"
# Letters or digits, unicode-aware: \w minus the underscore.
_ALNUM = r"[^\W_]"
_WORD_CHAR = rf"(?:{_ALNUM}|['’])"

_ZWJ = chr(0x200D)  # zero-width joiner, glues multi-person emoji sequences

_EMOJI_CLASS = (
    "["
    "\U0001F1E6-\U0001F1FF"  # regional indicators (flags)
    "\U0001F300-\U0001F5FF"  # misc symbols & pictographs
    "\U0001F600-\U0001F64F"  # emoticons block
    "\U0001F680-\U0001F6FF"  # transport & map symbols
    "\U0001F900-\U0001F9FF"  # supplemental symbols & pictographs
    "]"
)


def _emoticon_alternation(entries: frozenset[str]) -> str:
    # Longest-first so the regex alternation realizes longest-match within
    # the lexicon; entries made of word characters get a lookahead so a
    # longer WORD at the same position still wins ("xD" vs "xDman").
    pieces = []
    for entry in sorted(entries, key=lambda e: (-len(e), e)):
        piece = re.escape(entry)
        if all(ch.isalnum() or ch in _APOSTROPHES for ch in entry):
            piece += rf"(?!{_WORD_CHAR})"
        pieces.append(piece)
    return "|".join(pieces)


_TOKEN_RE = re.compile(
    rf"""
      (?P<URL>https?://\S+|www\.\S+)
    | (?P<MENTION>@[A-Za-z0-9_]{{1,15}})
    | (?P<HASHTAG>\#\w+)
    | (?P<EMOTICON>{_emoticon_alternation(EMOTICONS)})
    | (?P<EMOJI>{_EMOJI_CLASS}(?:{_ZWJ}{_EMOJI_CLASS})*)
    | (?P<WORD>['’]*{_ALNUM}{_WORD_CHAR}*)
    | (?P<WHITESPACE>\s+)
    | (?P<PUNCT>.)
    """,
    re.VERBOSE | re.DOTALL,
)


def tokenize(text: str) -> list[Token]:
    """Lex ``text`` into a lossless, contiguous token sequence.

    Every string lexes; concatenating the token texts in order reproduces
    the input exactly. Deterministic across runs and platforms.
    """
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = TokenKind[match.lastgroup]  # type: ignore[index]
        tokens.append(Token(kind, match.group(), match.start(), match.end()))
    return tokens


def kind_counts(tokens: list[Token]) -> dict[TokenKind, int]:
    """Count tokens per kind; every kind is present, zero when absent."""
    counts = {kind: 0 for kind in TokenKind}
    for token in tokens:
        counts[token.kind] += 1
    return counts
