"""Run manifests: a JSON sidecar recording what produced an output.

Every CLI invocation that writes an output file also writes a manifest
capturing the subcommand, the fully resolved argument values, the seed,
sha256 checksums of the input files and of the lexicons actually used, and
the tool version. Reruns with identical inputs produce identical manifests.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional


def sha256_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def sha256_file(path) -> str:
    return sha256_bytes(Path(path).read_bytes())


_BUNDLED = ("stopwords.txt", "pronouns.txt", "contractions.tsv", "emoticons.txt")


def lexicon_checksums(
    stopwords_path: Optional[str] = None,
    pronouns_path: Optional[str] = None,
    contractions_path: Optional[str] = None,
) -> dict[str, str]:
    """Checksums of the four wordlists in effect (bundled or overridden)."""
    data = resources.files("tweetage").joinpath("data")
    overrides = {
        "stopwords.txt": stopwords_path,
        "pronouns.txt": pronouns_path,
        "contractions.tsv": contractions_path,
    }
    out = {}
    for name in _BUNDLED:
        override = overrides.get(name)
        if override is not None:
            out[name] = sha256_file(override)
        else:
            out[name] = sha256_bytes(data.joinpath(name).read_bytes())
    return out


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    arguments: dict
    seed: Optional[int]
    lexicon_checksums: dict[str, str]
    input_checksums: dict[str, str]
    tool_version: str

    def to_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "arguments": self.arguments,
            "seed": self.seed,
            "lexicon_checksums": self.lexicon_checksums,
            "input_checksums": self.input_checksums,
            "tool_version": self.tool_version,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_manifest(path, manifest: RunManifest) -> Path:
    path = Path(path)
    path.write_text(manifest.to_json(), "utf-8")
    return path
