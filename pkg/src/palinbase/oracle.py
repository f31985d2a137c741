"""Brute-force cross-checks that share no pruning, mirroring, or interval
logic with the search engine.

brute_force is deliberately naive (walk every integer, expand its digits,
compare) and is capped so misuse stays at desk scale.  verify_rule validates
the bounds module's pruning rules against definition-level scans; it imports
the rule under test locally so this module's top level (and brute_force's
code path) stays numerals-only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerals import DomainError, digit_count, is_palindrome, to_digits
from .results import PalindromeHit

WINDOW_CAP = 10 ** 8

RULES = ("even-length-divisor", "adjacent-base-exclusion", "base-interval")

_RULE_BASE_LIMIT = 50  # pair rules are validated for bases 2..50


def brute_force(n_lo: int, n_hi: int) -> list[PalindromeHit]:
    """Scan every integer in [n_lo, n_hi) for cross-base palindromes.

    Per integer: take its decimal digit count d, require the decimal digits
    to be palindromic, then walk bases upward from 2, stopping once the
    digit count drops below d (monotone in the base), and collect
    every base giving a d-digit palindrome.  A hit needs some base != 10.
    """
    if n_lo < 10:
        raise DomainError(f"window must start at 10 or above, got {n_lo}")
    if n_hi > WINDOW_CAP:
        raise DomainError(
            f"refusing a window beyond {WINDOW_CAP}: the brute-force scan is "
            "intentionally unpruned"
        )
    hits = []
    for n in range(n_lo, n_hi):
        decimal = to_digits(n, 10)
        if not is_palindrome(decimal):
            continue
        d = len(decimal.digits)
        reps = []
        b = 2
        while digit_count(n, b) >= d:
            if digit_count(n, b) == d:
                ds = to_digits(n, b)
                if is_palindrome(ds):
                    reps.append(ds)
            b += 1
        if any(ds.base != 10 for ds in reps):
            hits.append(PalindromeHit(n=n, d=d, bases=tuple(reps)))
    return hits


@dataclass(frozen=True)
class RuleReport:
    rule: str
    window: tuple[int, int]
    checked: int
    passed: bool
    counterexample: str | None = None


def _pal_by_peel(n: int, base: int, pow_high: int) -> bool:
    # Definition-level palindrome check with early exit: compare the leading
    # digit (n // base**(d-1)) against the trailing one, strip both, repeat.
    # Written here independently of the engine's twin on purpose.
    while pow_high > 1:
        lead, rest = divmod(n, pow_high)
        if lead != rest % base:
            return False
        n = rest // base
        pow_high //= base * base
    return True


def _check_even_length_divisor(n_lo: int, n_hi: int) -> RuleReport:
    from .bounds import even_length_divisor  # rule under test

    checked = 0
    for base in range(2, _RULE_BASE_LIMIT + 1):
        divisor = even_length_divisor(base)
        d = 2
        while base ** (d - 1) < n_hi:
            lo = max(n_lo, base ** (d - 1))
            hi = min(n_hi, base ** d)
            pow_high = base ** (d - 1)
            for n in range(lo, hi):
                checked += 1
                if _pal_by_peel(n, base, pow_high) and n % divisor:
                    return RuleReport(
                        "even-length-divisor", (n_lo, n_hi), checked, False,
                        f"{n} is a {d}-digit palindrome in base {base} but "
                        f"{divisor} does not divide it",
                    )
            d += 2
    return RuleReport("even-length-divisor", (n_lo, n_hi), checked, True)


def _check_adjacent_base_exclusion(n_lo: int, n_hi: int) -> RuleReport:
    from .bounds import adjacent_base_even_exclusion  # rule under test

    checked = 0
    for base in range(2, _RULE_BASE_LIMIT + 1):
        upper = base + 1
        d = 2
        while upper ** (d - 1) < n_hi:
            if not adjacent_base_even_exclusion(base, upper, d):
                return RuleReport(
                    "adjacent-base-exclusion", (n_lo, n_hi), checked, False,
                    f"rule unexpectedly declined the ({base}, {upper}) pair at d={d}",
                )
            # both bases give d digits only on [upper**(d-1), base**d)
            lo = max(n_lo, upper ** (d - 1))
            hi = min(n_hi, base ** d)
            low_pow = base ** (d - 1)
            up_pow = upper ** (d - 1)
            for n in range(lo, hi):
                checked += 1
                if _pal_by_peel(n, base, low_pow) and _pal_by_peel(n, upper, up_pow):
                    return RuleReport(
                        "adjacent-base-exclusion", (n_lo, n_hi), checked, False,
                        f"{n} is a {d}-digit palindrome in bases {base} and {upper}",
                    )
            d += 2
    return RuleReport("adjacent-base-exclusion", (n_lo, n_hi), checked, True)


def _scan_bases_by_division(n: int, d: int) -> list[int]:
    # The definition: try every base from 2 until the digit count falls
    # below d; keep the ones matching exactly.
    out = []
    b = 2
    while True:
        dc = digit_count(n, b)
        if dc < d:
            return out
        if dc == d:
            out.append(b)
        b += 1


def _check_base_interval(n_lo: int, n_hi: int) -> RuleReport:
    from .bounds import base_interval  # rule under test

    checked = 0
    for n in range(max(n_lo, 10), n_hi):
        d_top = digit_count(n, 2)
        for d in range(2, d_top + 1):
            iv = base_interval(n, d)
            got = [] if iv.empty else list(range(iv.lo, iv.hi + 1))
            if d >= 3 or n <= 2000:
                want = _scan_bases_by_division(n, d)
                checked += 1
                if got != want:
                    return RuleReport(
                        "base-interval", (n_lo, n_hi), checked, False,
                        f"interval for (n={n}, d={d}) is {got}, division scan says {want}",
                    )
            else:
                # d = 2 scans run to b = n; for large n verify the endpoints
                # instead, which with digit-count monotonicity pins the set.
                checked += 1
                ok = (
                    not iv.empty
                    and digit_count(n, iv.lo) == d
                    and digit_count(n, iv.hi) == d
                    and digit_count(n, iv.lo - 1) != d
                    and digit_count(n, iv.hi + 1) != d
                )
                if not ok:
                    return RuleReport(
                        "base-interval", (n_lo, n_hi), checked, False,
                        f"interval endpoints for (n={n}, d={d}) failed digit-count checks",
                    )
    return RuleReport("base-interval", (n_lo, n_hi), checked, True)


_CHECKERS = {
    "even-length-divisor": _check_even_length_divisor,
    "adjacent-base-exclusion": _check_adjacent_base_exclusion,
    "base-interval": _check_base_interval,
}


def verify_rule(rule: str, n_lo: int, n_hi: int) -> RuleReport:
    """Exhaustively check one pruning rule's claim over [n_lo, n_hi).

    Pair rules (even-length-divisor, adjacent-base-exclusion) cover bases
    2..50; base-interval re-derives the interval by scanning bases directly.
    """
    if rule not in _CHECKERS:
        raise DomainError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    if n_lo < 2 or n_lo >= n_hi:
        raise DomainError(f"need 2 <= n_lo < n_hi, got [{n_lo}, {n_hi})")
    if n_hi > WINDOW_CAP:
        raise DomainError(f"refusing a window beyond {WINDOW_CAP}")
    return _CHECKERS[rule](n_lo, n_hi)
