"""Text normalization: raw publication text to a clean token sequence.

Fixed pipeline order: lowercase -> replace every non-alphabetic character
with a space -> split on whitespace runs -> drop tokens shorter than the
minimum length -> drop stopwords -> optionally stem. Non-ASCII letters
count as non-alphabetic; the corpus is English-language publication
metadata.

Stopword lists are pinned snapshots shipped with the package, one token
per line, addressed by version id (see ``stopwords/``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ConfigError
from .porter import stem

__all__ = ["PrepConfig", "TokenSeq", "preprocess", "stem",
           "stopword_set", "available_stopword_lists"]

# A token sequence is a plain list of lowercase alphabetic tokens.
TokenSeq = list[str]

_NON_ALPHA = re.compile(r"[^a-z]+")


@dataclass(frozen=True)
class PrepConfig:
    """Preprocessing switches; stemming is a model hyperparameter."""

    stemming: bool = True
    stopword_list_version: str = "english-v1"
    min_token_length: int = 2

    def __post_init__(self):
        if self.min_token_length < 1:
            raise ConfigError("min_token_length must be >= 1")
        # fail fast on unknown list versions
        stopword_set(self.stopword_list_version)

    def to_dict(self) -> dict:
        return {
            "stemming": self.stemming,
            "stopword_list_version": self.stopword_list_version,
            "min_token_length": self.min_token_length,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PrepConfig":
        return cls(
            stemming=bool(d.get("stemming", True)),
            stopword_list_version=str(d.get("stopword_list_version", "english-v1")),
            min_token_length=int(d.get("min_token_length", 2)),
        )


def available_stopword_lists() -> list[str]:
    """Version ids of the stopword lists shipped with the package."""
    root = resources.files("dilifilter") / "stopwords"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


@lru_cache(maxsize=8)
def stopword_set(version: str) -> frozenset[str]:
    """Load a pinned stopword list by version id."""
    path = resources.files("dilifilter") / "stopwords" / f"{version}.txt"
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(
            f"unknown stopword list {version!r}; available: "
            f"{', '.join(available_stopword_lists())}"
        ) from None
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def preprocess(raw: str, config: PrepConfig) -> TokenSeq:
    """Normalize raw text into tokens; empty input yields an empty list."""
    stops = stopword_set(config.stopword_list_version)
    text = _NON_ALPHA.sub(" ", raw.lower())
    min_len = config.min_token_length
    tokens = [t for t in text.split() if len(t) >= min_len and t not in stops]
    if config.stemming:
        tokens = [stem(t) for t in tokens]
    return tokens
