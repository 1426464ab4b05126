import hashlib
import json

from tweetage import __version__
from tweetage.manifest import (
    RunManifest,
    lexicon_checksums,
    sha256_bytes,
    sha256_file,
    write_manifest,
)


def make_manifest(**overrides):
    base = dict(
        subcommand="train",
        arguments={"epochs": 10, "input": "train.tsv"},
        seed=7,
        lexicon_checksums=lexicon_checksums(),
        input_checksums={"train.tsv": sha256_bytes(b"data")},
        tool_version=__version__,
    )
    base.update(overrides)
    return RunManifest(**base)


def test_sha256_known_value():
    assert sha256_bytes(b"") == "sha256:" + hashlib.sha256(b"").hexdigest()
    assert sha256_bytes(b"abc").endswith(
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )


def test_sha256_file_matches_bytes(tmp_path):
    path = tmp_path / "f.bin"
    path.write_bytes(b"abc")
    assert sha256_file(path) == sha256_bytes(b"abc")


def test_lexicon_checksums_cover_all_four_wordlists():
    sums = lexicon_checksums()
    assert set(sums) == {"stopwords.txt", "pronouns.txt", "contractions.tsv", "emoticons.txt"}
    assert all(value.startswith("sha256:") for value in sums.values())
    assert lexicon_checksums() == sums  # stable across calls


def test_lexicon_checksums_pick_up_overrides(tmp_path):
    custom = tmp_path / "stop.txt"
    custom.write_text("the\na\n", "utf-8")
    sums = lexicon_checksums(stopwords_path=str(custom))
    bundled = lexicon_checksums()
    assert sums["stopwords.txt"] != bundled["stopwords.txt"]
    assert sums["pronouns.txt"] == bundled["pronouns.txt"]
    assert sums["emoticons.txt"] == bundled["emoticons.txt"]


def test_manifest_json_is_stable_and_sorted():
    a = make_manifest().to_json()
    b = make_manifest().to_json()
    assert a == b
    parsed = json.loads(a)
    assert list(parsed) == sorted(parsed)
    assert parsed["subcommand"] == "train"
    assert parsed["seed"] == 7
    assert parsed["tool_version"] == __version__
    assert a.endswith("\n")


def test_manifest_reflects_input_changes():
    a = make_manifest().to_json()
    b = make_manifest(input_checksums={"train.tsv": sha256_bytes(b"other")}).to_json()
    assert a != b
    assert json.loads(a)["lexicon_checksums"] == json.loads(b)["lexicon_checksums"]


def test_write_manifest(tmp_path):
    manifest = make_manifest()
    out = write_manifest(tmp_path / "run.manifest.json", manifest)
    assert out.read_text("utf-8") == manifest.to_json()
