"""Deterministic ingredient tokenisation: lowercase words, quantities, units and
filler words removed, naive singular form."""
from __future__ import annotations

import re
from typing import Iterable, List, Optional, Set

from foonkit.settings import NormalizationScheme, get_scheme

_NON_WORD = re.compile(r"[^a-z\s]+")


def singularize(word: str) -> str:
    if len(word) > 4 and word.endswith("ies"):
        return word[:-3] + "y"
    if len(word) > 4 and word.endswith("oes"):
        return word[:-2]
    if len(word) > 3 and word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


def normalize_ingredient(text: str, scheme: Optional[NormalizationScheme] = None) -> List[str]:
    """``"2 teaspoons Milk, cold"`` becomes ``["milk", "cold"]``."""
    if not text or not isinstance(text, str):
        return []
    scheme = scheme or get_scheme().normalization
    dropped = set(scheme.unit_words) | set(scheme.stop_words)
    words = _NON_WORD.sub(" ", text.lower()).split()
    tokens: List[str] = []
    for word in words:
        if word in dropped:
            continue
        word = singularize(word)
        if word in dropped or word in tokens:
            continue
        tokens.append(word)
    return tokens


def tokenize_ingredients(lines: Iterable[str], scheme: Optional[NormalizationScheme] = None) -> Set[str]:
    scheme = scheme or get_scheme().normalization
    return {token for line in lines for token in normalize_ingredient(line, scheme)}


__all__ = ["singularize", "normalize_ingredient", "tokenize_ingredients"]
