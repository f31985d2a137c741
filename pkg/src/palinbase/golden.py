"""The shipped reference corpus: every known cross-base palindrome pair with
its full set of representations, as produced by an exhaustive engine run.

The corpus is data, not code: tests re-verify every row arithmetically, so
a transcription slip cannot survive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .numerals import DigitString
from .results import hit_from_json


@dataclass(frozen=True)
class GoldenEntry:
    """One corpus row: the integer, its digit count, and all of its d-digit
    palindromic representations (always includes base 10)."""

    d: int
    n: int
    representations: tuple[DigitString, ...]

    def base_numbers(self) -> tuple[int, ...]:
        return tuple(ds.base for ds in self.representations)


@lru_cache(maxsize=1)
def load_golden() -> tuple[GoldenEntry, ...]:
    text = resources.files("palinbase").joinpath("data/golden.jsonl").read_text("ascii")
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        hit = hit_from_json(json.loads(line))
        entries.append(GoldenEntry(d=hit.d, n=hit.n, representations=hit.bases))
    return tuple(entries)


def golden_by_digits() -> dict[int, tuple[GoldenEntry, ...]]:
    out: dict[int, list[GoldenEntry]] = {}
    for e in load_golden():
        out.setdefault(e.d, []).append(e)
    return {d: tuple(v) for d, v in sorted(out.items())}
