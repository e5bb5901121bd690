"""Shared text normalization and tokenization helpers."""

from __future__ import annotations

import re

_WORD_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens (unicode word characters)."""
    return [t.lower() for t in _WORD_RE.findall(text)]


def normalize_surface(surface: str) -> str:
    """Lowercase and collapse whitespace; used for all lexicon keys."""
    return " ".join(surface.lower().split())
