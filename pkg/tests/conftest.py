import pytest

from tweetage.corpus import Corpus, LabeledTweet, save_corpus
from tweetage.normalizer import load_lexicons


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons()


@pytest.fixture
def make_corpus_file(tmp_path):
    """Write (id, text, label) rows to a corpus TSV and return its path."""

    counter = {"n": 0}

    def _make(rows, name=None):
        counter["n"] += 1
        path = tmp_path / (name or f"corpus{counter['n']}.tsv")
        records = tuple(LabeledTweet(i, t, l) for i, t, l in rows)
        save_corpus(Corpus(records), path)
        return path

    return _make


@pytest.fixture
def write_text(tmp_path):
    """Write raw text to a file under tmp_path and return its path."""

    counter = {"n": 0}

    def _write(text, name=None):
        counter["n"] += 1
        path = tmp_path / (name or f"file{counter['n']}.txt")
        path.write_text(text, "utf-8")
        return path

    return _write
