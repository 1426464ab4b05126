"""Corpus I/O, splitting, and synthetic data generation.

The on-disk corpus format is a UTF-8 TSV with header ``tweet_id\ttext\tlabel``.
The label column may be empty for unlabeled rows. Text fields escape the
four characters that would break the framing: backslash, tab, newline, and
carriage return (as ``\\\\``, ``\\t``, ``\\n``, ``\\r``). Loading is strict:
a malformed header, field count, label, escape, or duplicated tweet id is a
DataError that names the offending line.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import DataError
from .lexer import TokenKind, kind_counts, tokenize
from .normalizer import Lexicons, NormalizationConfig, normalize, render

HEADER = ("tweet_id", "text", "label")


@dataclass(frozen=True)
class LabeledTweet:
    id: str
    text: str
    label: Optional[int] = None

    def __post_init__(self):
        if not self.id:
            raise DataError("tweet id must be non-empty")
        if self.label is not None and self.label not in (0, 1):
            raise DataError(f"tweet {self.id!r}: label must be 0 or 1, got {self.label!r}")


@dataclass(frozen=True)
class Corpus:
    """An ordered, id-unique collection of tweets."""

    records: tuple[LabeledTweet, ...]
    provenance: str = ""

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.id in seen:
                raise DataError(f"duplicate tweet id: {record.id!r}")
            seen.add(record.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def fully_labeled(self) -> bool:
        return all(r.label is not None for r in self.records)


@dataclass(frozen=True)
class ClassDistribution:
    negative: int
    positive: int
    unlabeled: int

    @property
    def total(self) -> int:
        return self.negative + self.positive + self.unlabeled


_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def escape_field(text: str) -> str:
    out = []
    for ch in text:
        out.append(_ESCAPES.get(ch, ch))
    return "".join(out)


def unescape_field(text: str, context: str = "field") -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                raise DataError(f"{context}: dangling backslash")
            mapped = _UNESCAPES.get(text[i + 1])
            if mapped is None:
                raise DataError(f"{context}: unknown escape \\{text[i + 1]}")
            out.append(mapped)
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _parse_label(raw: str, context: str) -> Optional[int]:
    if raw == "":
        return None
    if raw == "0":
        return 0
    if raw == "1":
        return 1
    raise DataError(f"{context}: label must be 0, 1, or empty, got {raw!r}")


def load_corpus(path, expect_labels: bool = False) -> Corpus:
    """Read a corpus TSV. ``expect_labels`` additionally requires every row
    to carry a label."""
    path = Path(path)
    try:
        raw = path.read_text("utf-8")
    except OSError as exc:
        raise DataError(f"{path}: cannot read: {exc}") from exc
    # split on \n only: splitlines() would also break rows on stray line
    # separators (U+2028, \x1c..\x1e, ...) that the escape table keeps literal
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DataError(f"{path}: empty file, expected header {chr(9).join(HEADER)!r}")
    if tuple(lines[0].split("\t")) != HEADER:
        raise DataError(f"{path} line 1: expected header {chr(9).join(HEADER)!r}, got {lines[0]!r}")

    records = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], 2):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) == 2:
            fields = [fields[0], fields[1], ""]
        if len(fields) != 3:
            raise DataError(f"{path} line {lineno}: expected 2 or 3 tab-separated fields, got {len(fields)}")
        tweet_id, raw_text, raw_label = fields
        if not tweet_id:
            raise DataError(f"{path} line {lineno}: empty tweet id")
        if tweet_id in seen:
            raise DataError(f"{path} line {lineno}: duplicate tweet id {tweet_id!r}")
        seen.add(tweet_id)
        label = _parse_label(raw_label, f"{path} line {lineno}")
        if expect_labels and label is None:
            raise DataError(f"{path} line {lineno}: missing label")
        text = unescape_field(raw_text, f"{path} line {lineno}")
        records.append(LabeledTweet(tweet_id, text, label))
    return Corpus(tuple(records), provenance=str(path))


def corpus_text(corpus: Corpus) -> str:
    """Serialize to the TSV format ``load_corpus`` reads back."""
    lines = ["\t".join(HEADER)]
    for r in corpus:
        label = "" if r.label is None else str(r.label)
        lines.append(f"{r.id}\t{escape_field(r.text)}\t{label}")
    return "\n".join(lines) + "\n"


def save_corpus(corpus: Corpus, path) -> None:
    Path(path).write_text(corpus_text(corpus), "utf-8")


def combine(a: Corpus, b: Corpus) -> Corpus:
    """Concatenate two corpora; id collisions are an error naming the ids."""
    ids_in_a = {record.id for record in a}
    collisions = [r.id for r in b if r.id in ids_in_a]
    if collisions:
        shown = ", ".join(repr(c) for c in collisions[:10])
        more = f" (and {len(collisions) - 10} more)" if len(collisions) > 10 else ""
        raise DataError(f"id collision between corpora: {shown}{more}")
    return Corpus(a.records + b.records, provenance=f"{a.provenance}+{b.provenance}")


def class_distribution(corpus: Corpus) -> ClassDistribution:
    negative = sum(1 for r in corpus if r.label == 0)
    positive = sum(1 for r in corpus if r.label == 1)
    unlabeled = len(corpus) - negative - positive
    return ClassDistribution(negative, positive, unlabeled)


def token_kind_totals(corpus: Corpus) -> dict[TokenKind, int]:
    """Aggregate lexer kind counts over every record's raw text."""
    totals = {kind: 0 for kind in TokenKind}
    for record in corpus:
        for kind, count in kind_counts(tokenize(record.text)).items():
            totals[kind] += count
    return totals


def stratified_split(corpus: Corpus, fraction: float, seed: int) -> tuple[Corpus, Corpus]:
    """Split a fully labeled corpus into (first, second) parts.

    Per class, floor(fraction * n_class) records go to the first part and
    the rest to the second; membership is drawn with random.Random(seed)
    and both parts preserve the original record order. Raises DataError if
    either part would end up without both classes.
    """
    if not 0.0 < fraction < 1.0:
        raise DataError(f"split fraction must be in (0, 1), got {fraction}")
    if not corpus.fully_labeled:
        raise DataError("stratified split requires every record to be labeled")

    by_class: dict[int, list[int]] = {0: [], 1: []}
    for index, record in enumerate(corpus):
        by_class[record.label].append(index)

    rng = random.Random(seed)
    first_indices: set[int] = set()
    for label in (0, 1):
        indices = by_class[label]
        take = math.floor(fraction * len(indices))
        if take < 1 or len(indices) - take < 1:
            raise DataError(
                f"class {label} has {len(indices)} records; fraction {fraction} "
                "leaves one side of the split without it"
            )
        shuffled = list(indices)
        rng.shuffle(shuffled)
        first_indices.update(shuffled[:take])

    first = tuple(r for i, r in enumerate(corpus) if i in first_indices)
    second = tuple(r for i, r in enumerate(corpus) if i not in first_indices)
    return (
        Corpus(first, provenance=f"{corpus.provenance}[split={fraction},seed={seed},part=1]"),
        Corpus(second, provenance=f"{corpus.provenance}[split={fraction},seed={seed},part=2]"),
    )


def normalized_copy(
    corpus: Corpus,
    config: NormalizationConfig,
    lexicons: Optional[Lexicons] = None,
) -> Corpus:
    """A corpus whose texts are replaced by their normalized renderings."""
    records = tuple(
        LabeledTweet(r.id, render(normalize(r.text, config, lexicons)), r.label)
        for r in corpus
    )
    return Corpus(records, provenance=corpus.provenance)


def export_normalized(
    corpus: Corpus,
    config: NormalizationConfig,
    path,
    lexicons: Optional[Lexicons] = None,
) -> None:
    """Write the corpus with each text replaced by its normalized rendering.

    The output is itself a valid corpus TSV, so it can be reloaded.
    """
    save_corpus(normalized_copy(corpus, config, lexicons), path)


_POSITIVE_TEMPLATES = (
    "I officially turned {age} today {emoji} so blessed",
    "woke up feeling blessed, I turned {age} this morning {emoji}",
    "can't believe I'm {age} now, officially an adult {emoji} {hashtag}",
    "I turned {age} today and I'm so blessed {emoji} {url}",
    "finally {age}! woke up this morning feeling officially old {emoji}",
    "I'm officially {age} years old today, believe it {emoji}",
    "turned {age} this morning, so blessed and thankful {emoji} {hashtag}",
    "believe it or not I finally turned {age} today {emoji}",
)

_NEGATIVE_TEMPLATES = (
    "happy {ordinal} birthday {mention}! wishing you the best party {emoji}",
    "happy birthday grandma, hope the cake is great {emoji}",
    "wishing my friend {name} a happy {ordinal} birthday {emoji} {hashtag}",
    "celebrating {name}'s {ordinal} birthday with cake and a party {emoji}",
    "happy birthday to my brother {name}, enjoy the party {emoji} {url}",
    "my friend {name} is celebrating her {ordinal} birthday, happy day {emoji}",
    "grandma's birthday cake was amazing, happy {ordinal} {emoji}",
    "wishing {mention} a very happy {ordinal} birthday, great party {emoji}",
)

_NAMES = ("mia", "noah", "ava", "liam", "zoe", "eli", "ruth", "omar", "lena", "kai")
_EMOJI = ("\U0001F382", "\U0001F389", "\U0001F62D", "\U0001F60A", "\U0001F973", "\U0001F388", "\U0001F381")
_HASHTAGS = ("#birthday", "#blessed", "#party", "#today", "#finally")
_MENTIONS = ("@mia", "@noah_b", "@ava99", "@liam_k", "@zoe", "@eli22")
_URLS = ("https://t.co/Ab1", "https://t.co/x9Z", "https://t.co/Qq3", "www.pics.example/cake")


def _ordinal(n: int) -> str:
    if 10 <= n % 100 <= 20:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def generate_synthetic(n: int, positive_ratio: float, seed: int) -> Corpus:
    """Generate a deterministic synthetic corpus of self-report positives
    and birthday-mention negatives.

    round(n * positive_ratio) records are positive (a ratio of 0 or 1 is a
    legal single-class corpus). Ids embed the seed, so corpora generated
    from different seeds can be combined without collisions.
    """
    if n < 2:
        raise DataError(f"synthetic corpus needs n >= 2, got {n}")
    if not 0.0 <= positive_ratio <= 1.0:
        raise DataError(f"positive ratio must be in [0, 1], got {positive_ratio}")
    n_positive = round(n * positive_ratio)

    rng = random.Random(seed)
    labels = [1] * n_positive + [0] * (n - n_positive)
    rng.shuffle(labels)

    records = []
    for i, label in enumerate(labels):
        age = rng.randint(13, 99)
        fills = {
            "age": str(age),
            "ordinal": _ordinal(age),
            "name": rng.choice(_NAMES),
            "emoji": rng.choice(_EMOJI),
            "hashtag": rng.choice(_HASHTAGS),
            "mention": rng.choice(_MENTIONS),
            "url": rng.choice(_URLS),
        }
        templates = _POSITIVE_TEMPLATES if label == 1 else _NEGATIVE_TEMPLATES
        text = rng.choice(templates).format(**fills)
        records.append(LabeledTweet(f"synth-{seed}-{i:06d}", text, label))
    return Corpus(
        tuple(records),
        provenance=f"synthetic(n={n},positive_ratio={positive_ratio},seed={seed})",
    )
