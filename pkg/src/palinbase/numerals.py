"""Exact radix arithmetic: digit strings, digit counting, palindrome predicates.

All digit counting is done with integer power comparisons.  Floating-point
logarithms misclassify integers adjacent to power boundaries (10**19 and up),
which is exactly where this library has to be right.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass


class InvalidBaseError(ValueError):
    """Raised when a radix smaller than 2 is supplied."""


class InvalidDigitError(ValueError):
    """Raised when a digit vector violates its base or has a leading zero."""


class DomainError(ValueError):
    """Raised when an argument is outside an operation's documented domain."""


@dataclass(frozen=True)
class DigitString:
    """Digits of one integer in one base, most-significant digit first.

    The canonical representation of 0 is the single digit [0]; every other
    digit string has a nonzero leading digit.  Renders as ``[6,2,5,5,2,6]_8``.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise InvalidBaseError(f"base must be >= 2, got {self.base}")
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        if not digits:
            raise InvalidDigitError("digit vector must not be empty")
        for a in digits:
            if not 0 <= a < self.base:
                raise InvalidDigitError(f"digit {a} out of range for base {self.base}")
        if len(digits) > 1 and digits[0] == 0:
            raise InvalidDigitError("leading digit must be nonzero")

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.digits)) + "]_" + str(self.base)

    def __len__(self) -> int:
        return len(self.digits)


_DIGIT_STRING_RE = re.compile(r"^\[(\d+(?:,\d+)*)\]_(\d+)$")


def parse_digit_string(text: str) -> DigitString:
    """Parse the canonical rendering, e.g. ``[6,2,5,5,2,6]_8``."""
    m = _DIGIT_STRING_RE.match(text.replace(" ", ""))
    if m is None:
        raise InvalidDigitError(f"not a digit string: {text!r}")
    return DigitString(int(m.group(2)), tuple(int(part) for part in m.group(1).split(",")))


def to_digits(n: int, base: int) -> DigitString:
    """Expand n >= 0 into its unique digit string in `base`."""
    if base < 2:
        raise InvalidBaseError(f"base must be >= 2, got {base}")
    if n < 0:
        raise DomainError(f"expected a nonnegative integer, got {n}")
    if n == 0:
        return DigitString(base, (0,))
    digits = []
    while n:
        n, r = divmod(n, base)
        digits.append(r)
    digits.reverse()
    return DigitString(base, tuple(digits))


def from_digits(ds: DigitString) -> int:
    """Evaluate a digit string back to the integer it represents."""
    value = 0
    for a in ds.digits:
        value = value * ds.base + a
    return value


_POWER_CACHE: dict[int, list[int]] = {}


def digit_count(n: int, base: int) -> int:
    """Exact number of digits of n in `base`.

    Returns the unique d with base**(d-1) <= n < base**d; by convention
    digit_count(0, base) == 1.  Bisects a cached power table, never logs.
    """
    if base < 2:
        raise InvalidBaseError(f"base must be >= 2, got {base}")
    if n < 0:
        raise DomainError(f"expected a nonnegative integer, got {n}")
    if n == 0:
        return 1
    powers = _POWER_CACHE.get(base)
    if powers is None:
        powers = _POWER_CACHE[base] = [base]
    while powers[-1] <= n:
        powers.append(powers[-1] * base)
    return bisect_right(powers, n) + 1


def is_palindrome(ds: DigitString) -> bool:
    """True iff the digit vector reads the same in both directions."""
    return ds.digits == ds.digits[::-1]


def is_d_digit_palindrome(n: int, base: int, d: int) -> bool:
    """True iff n has exactly d digits in `base` and those digits are palindromic."""
    if d < 1:
        raise DomainError(f"digit count must be >= 1, got {d}")
    return digit_count(n, base) == d and is_palindrome(to_digits(n, base))
