import pytest

from tweetage.corpus import generate_synthetic, save_corpus
from tweetage.errors import DataError
from tweetage.normalizer import PronounVariant
from tweetage.pipeline import end_to_end


@pytest.fixture(scope="module")
def corpus_files(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("pipeline")
    train_path = tmp / "train.tsv"
    test_path = tmp / "test.tsv"
    save_corpus(generate_synthetic(300, 0.5, seed=5), train_path)
    save_corpus(generate_synthetic(80, 0.5, seed=6), test_path)
    return train_path, test_path


def small_run(corpus_files, variant, **overrides):
    train_path, test_path = corpus_files
    base = dict(seed=0, epochs=3, batch_size=32, dims=2**12)
    base.update(overrides)
    return end_to_end(train_path, test_path, variant, **base)


def test_end_to_end_returns_metrics(corpus_files):
    metrics = small_run(corpus_files, PronounVariant.KEEP)
    assert metrics.counts.total == 80
    assert metrics.f1 is not None
    assert 0.0 <= metrics.f1 <= 1.0


def test_end_to_end_accepts_variant_string(corpus_files):
    by_enum = small_run(corpus_files, PronounVariant.REMOVE)
    by_name = small_run(corpus_files, "remove")
    assert by_enum == by_name


def test_end_to_end_is_deterministic(corpus_files):
    first = small_run(corpus_files, "keep")
    second = small_run(corpus_files, "keep")
    assert first == second


def test_end_to_end_epoch_callback(corpus_files):
    epochs = []
    small_run(corpus_files, "keep", on_epoch_end=lambda e, loss: epochs.append((e, loss)))
    assert [e for e, _ in epochs] == [0, 1, 2]
    assert all(loss > 0 for _, loss in epochs)


def test_end_to_end_rejects_unknown_variant(corpus_files):
    with pytest.raises(DataError, match="unknown pronoun variant"):
        small_run(corpus_files, "both")


def test_end_to_end_requires_labeled_test(tmp_path, corpus_files):
    train_path, _ = corpus_files
    unlabeled = tmp_path / "unlabeled.tsv"
    unlabeled.write_text("tweet_id\ttext\tlabel\na\tx\t\n", "utf-8")
    with pytest.raises(DataError, match="missing label"):
        end_to_end(train_path, unlabeled, "keep", epochs=1, dims=2**10)
