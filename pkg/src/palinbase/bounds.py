"""Search-space narrowing: the global digit bound, exact per-integer base
intervals, even-length divisibility rules, and the per-digit anchor schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerals import DomainError, InvalidBaseError, digit_count

MAX_DIGITS = 26


def max_digits() -> int:
    """Largest digit count d any cross-base pair can share.

    A d-digit decimal integer N has 10**(d-1) <= N < 10**d.  Another base b
    gives N the same count only while b**(d-1) <= N, and for d >= 27 no
    integer base other than 10 satisfies both sides, so the search is finite.
    """
    return MAX_DIGITS


def integer_root(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n.

    The float power is only a seed; the result is settled by exact integer
    comparison, so boundary cases (n = b**k) never misround.
    """
    if n < 0:
        raise DomainError(f"expected a nonnegative integer, got {n}")
    if k < 1:
        raise DomainError(f"root order must be >= 1, got {k}")
    if k == 1 or n < 2:
        return n
    r = int(n ** (1.0 / k))
    if r < 1:
        r = 1
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass(frozen=True)
class BaseInterval:
    """Contiguous inclusive range [lo, hi] of bases; empty when hi < lo."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.hi < self.lo

    def __contains__(self, base: int) -> bool:
        return self.lo <= base <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def width(self) -> int:
        return 0 if self.empty else self.hi - self.lo + 1


def base_interval(n: int, d: int) -> BaseInterval:
    """Exactly the bases in which n has d digits.

    digit_count(n, b) is non-increasing in b, so the solution set of
    b**(d-1) <= n < b**d is contiguous.  Endpoints come from exact integer
    roots and are re-verified before the interval is returned.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if d < 2:
        # d = 1 holds for every base above n; the set would be unbounded.
        raise DomainError(f"digit count must be >= 2, got {d}")
    lo = integer_root(n, d) + 1        # smallest b with b**d > n
    hi = integer_root(n, d - 1)        # largest b with b**(d-1) <= n
    if hi < lo:
        return BaseInterval(lo, lo - 1)
    # Endpoint slips here would silently lose palindromes downstream.
    assert digit_count(n, lo) == d and digit_count(n, hi) == d
    assert lo == 2 or digit_count(n, lo - 1) != d
    assert digit_count(n, hi + 1) != d
    return BaseInterval(lo, hi)


def even_length_divisor(base: int) -> int:
    """Divisor shared by every even-length palindrome in `base`.

    base == -1 (mod base+1), so the alternating digit sum that decides
    divisibility by base+1 cancels pairwise on an even-length palindrome.
    """
    if base < 2:
        raise InvalidBaseError(f"base must be >= 2, got {base}")
    return base + 1


def adjacent_base_even_exclusion(b: int, b_prime: int, d: int) -> bool:
    """True when no integer can be a d-digit palindrome in both bases.

    Holds for even d and consecutive bases: the even-length palindrome in the
    smaller base is divisible by smaller+1 == larger, which forces its
    trailing (hence leading) digit in the larger base to zero, impossible.

    Only the (10, 11) instance is applied by default; the general rule backs
    the optional pruning path and has an oracle validation route
    (``verify_rule("adjacent-base-exclusion", ...)``).
    """
    if min(b, b_prime) < 2:
        raise InvalidBaseError(f"bases must be >= 2, got ({b}, {b_prime})")
    if d < 1:
        raise DomainError(f"digit count must be >= 1, got {d}")
    return d % 2 == 0 and abs(b - b_prime) == 1


@dataclass(frozen=True)
class AnchorEntry:
    """One scan assignment: enumerate d-digit palindromes in `base` strictly
    between n_lo and n_hi (both bounds exclusive)."""

    base: int
    n_lo: int
    n_hi: int


@dataclass(frozen=True)
class AnchorPlan:
    d: int
    entries: tuple[AnchorEntry, ...]

    @property
    def empty(self) -> bool:
        return not self.entries


def anchor_plan(d: int, n_lo: int, n_hi: int, *, allow_unproved_pruning: bool = False) -> AnchorPlan:
    """Anchor bases and windows that cover every possible d-digit hit.

    The input window is half-open [n_lo, n_hi); entry bounds are exclusive on
    both sides.  Schedule:

    - d <= 14: enumerate decimal palindromes directly.
    - 15 <= d <= 21: base 9 always; base 11 only for odd d (every even-length
      decimal palindrome is divisible by 11, and a d-digit base-11 palindrome
      would need a nonzero digit congruent to it mod 11).
    - d in {23, 25}: base 11 only (base-9 integers run out of digits first).
    - d in {22, 24, 26}: nothing; base 11 is parity-excluded and no other
      base reaches that many digits alongside base 10.

    With allow_unproved_pruning, base-9 entries for even d are dropped too
    (consecutive-base exclusion generalized beyond the proved instance).
    """
    if not 2 <= d <= MAX_DIGITS:
        raise DomainError(f"digit count must be within [2, {MAX_DIGITS}], got {d}")
    raw: list[tuple[int, int, int]] = []
    if d <= 14:
        raw.append((10, 10 ** (d - 1), 10 ** d))
    else:
        if d <= 21:
            raw.append((9, 10 ** (d - 1), 9 ** d))
        if d % 2 == 1:
            raw.append((11, 11 ** (d - 1), 10 ** d))
    if allow_unproved_pruning:
        raw = [(b, lo, hi) for (b, lo, hi) in raw if not adjacent_base_even_exclusion(b, 10, d)]
    entries = []
    for b, lo, hi in raw:
        lo = max(lo, n_lo - 1)
        hi = min(hi, n_hi)
        if hi - lo >= 2:  # some integer exists strictly between the bounds
            entries.append(AnchorEntry(b, lo, hi))
    return AnchorPlan(d, tuple(entries))
