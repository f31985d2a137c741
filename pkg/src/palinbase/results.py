"""Hit container and its wire formats (text line and JSON object).

Integers travel as decimal strings in JSON: hits reach 26 decimal digits,
well past the range where JSON numbers survive a float round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .numerals import DigitString, InvalidDigitError


@dataclass(frozen=True)
class PalindromeHit:
    """One integer plus every base in which it is a d-digit palindrome.

    `bases` is ascending by base and always contains at least two entries;
    under the default criterion one of them is base 10.
    """

    n: int
    d: int
    bases: tuple[DigitString, ...]

    def base_numbers(self) -> tuple[int, ...]:
        return tuple(ds.base for ds in self.bases)

    def sort_key(self) -> tuple[int, int]:
        return (self.d, self.n)


def hit_to_text(hit: PalindromeHit) -> str:
    return f"{hit.n} = " + " = ".join(str(ds) for ds in hit.bases)


def hit_to_json(hit: PalindromeHit) -> str:
    obj = {
        "n": str(hit.n),
        "d": hit.d,
        "bases": [{"base": ds.base, "digits": list(ds.digits)} for ds in hit.bases],
    }
    return json.dumps(obj, separators=(",", ":"))


def hit_from_json(obj: dict) -> PalindromeHit:
    """Rebuild a hit from the JSON object form; digit vectors are re-validated."""
    try:
        n = int(obj["n"])
        d = int(obj["d"])
        bases = tuple(
            DigitString(int(rep["base"]), tuple(int(x) for x in rep["digits"]))
            for rep in obj["bases"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDigitError(f"malformed hit record: {obj!r}") from exc
    return PalindromeHit(n=n, d=d, bases=bases)
