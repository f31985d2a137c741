"""Prefix-mirroring enumeration of cross-base palindromes.

A d-digit palindrome in base b is determined by its leading ceil(d/2) digits
(the prefix).  Scanning iterates prefixes, reconstructs each palindrome, and
tests every base that could give it d digits.  The inner loop is the hot path
of the whole project (prefix spaces reach 10**10 for the deep digit counts),
so palindromes are assembled from precomputed low-block mirror tables instead
of per-prefix digit conversion, and candidate-base windows are hoisted out of
the loop as plain integer bounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Iterator

from .bounds import adjacent_base_even_exclusion, base_interval, integer_root
from .numerals import DigitString, DomainError, is_palindrome, to_digits
from .results import PalindromeHit


class ConsistencyError(RuntimeError):
    """Two scans disagreed about the same integer: an engine bug, not bad input."""


class CheckpointError(ValueError):
    """A checkpoint file could not be parsed."""


def half_digits(d: int) -> int:
    """Prefix length: a d-digit palindrome is fixed by its first ceil(d/2) digits."""
    return (d + 1) // 2


@dataclass(frozen=True)
class SearchTask:
    """A unit of search work over a half-open prefix range.

    Prefixes are the leading ceil(d/2) digits of candidate palindromes in
    anchor_base; [n_lo, n_hi) clips the reconstructed palindromes themselves.
    """

    d: int
    anchor_base: int
    prefix_lo: int
    prefix_hi: int
    n_lo: int
    n_hi: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError(f"digit count must be >= 1, got {self.d}")
        if self.anchor_base < 2:
            raise DomainError(f"anchor base must be >= 2, got {self.anchor_base}")
        k = half_digits(self.d)
        if self.prefix_lo < self.prefix_hi:
            if self.prefix_lo < self.anchor_base ** (k - 1) or self.prefix_hi > self.anchor_base ** k:
                raise DomainError("prefix range must hold exactly ceil(d/2)-digit prefixes")

    @property
    def width(self) -> int:
        return max(0, self.prefix_hi - self.prefix_lo)

    def key(self) -> tuple[int, int, int, int]:
        return (self.d, self.anchor_base, self.prefix_lo, self.prefix_hi)


def mirror_prefix(prefix: int, anchor_base: int, d: int) -> int:
    """The unique d-digit palindrome in anchor_base whose leading digits are `prefix`.

    `prefix` must have exactly ceil(d/2) digits in anchor_base; its first
    floor(d/2) digits are reversed and appended (for odd d the last prefix
    digit becomes the palindrome's middle digit).
    """
    if anchor_base < 2:
        raise DomainError(f"anchor base must be >= 2, got {anchor_base}")
    if d < 1:
        raise DomainError(f"digit count must be >= 1, got {d}")
    k = half_digits(d)
    if not anchor_base ** (k - 1) <= prefix < anchor_base ** k:
        raise DomainError(f"prefix {prefix} does not have exactly {k} digits in base {anchor_base}")
    m = d - k
    x = prefix // anchor_base if d % 2 else prefix
    rev = 0
    for _ in range(m):
        x, r = divmod(x, anchor_base)
        rev = rev * anchor_base + r
    return prefix * anchor_base ** m + rev


def prefix_range(n_lo: int, n_hi: int, anchor_base: int, d: int) -> tuple[int, int]:
    """Half-open prefix range covering every d-digit palindrome in [n_lo, n_hi).

    The upper end extends one past floor((n_hi-1)/base**m) because a prefix at
    the boundary can still mirror to a palindrome below n_hi; the scan's
    window post-filter discards the at-most-one overshoot.  Both ends are
    clamped to the ceil(d/2)-digit prefix space.
    """
    if anchor_base < 2:
        raise DomainError(f"anchor base must be >= 2, got {anchor_base}")
    if d < 1:
        raise DomainError(f"digit count must be >= 1, got {d}")
    k = half_digits(d)
    first = anchor_base ** (k - 1)
    if n_lo >= n_hi:
        return (first, first)
    shift = anchor_base ** (d - k)
    lo = max(n_lo // shift, first)
    hi = min((n_hi - 1) // shift + 1, anchor_base ** k)
    if hi < lo:
        hi = lo
    return (lo, hi)


# --- inner-loop machinery -------------------------------------------------

_TABLE_CAP = 250_000  # max mirror-table entries; keeps per-process memory modest


def _block_width(base: int, k: int, m: int, odd: bool) -> int:
    limit = k if odd else m
    width = 1
    while width < limit and base ** (width + 1) <= _TABLE_CAP:
        width += 1
    return width


@lru_cache(maxsize=8)
def _mirror_table(base: int, width: int, drop_last: bool, tail_pow: int) -> tuple[int, ...]:
    """Mirror contribution of the low `width` prefix digits, indexed by value.

    For a prefix split P = H*base**width + L, entry [L] is what the reversed
    leading-half digits of P contribute below the H part; drop_last skips P's
    final digit (the palindrome's middle digit when d is odd).
    """
    size = base ** width
    out = [0] * size
    span = width - 1 if drop_last else width
    for value in range(size):
        x = value // base if drop_last else value
        rev = 0
        for _ in range(span):
            x, r = divmod(x, base)
            rev = rev * base + r
        out[value] = rev * tail_pow
    return tuple(out)


def _reverse_digits(x: int, span: int, base: int) -> int:
    rev = 0
    for _ in range(span):
        x, r = divmod(x, base)
        rev = rev * base + r
    return rev


def _folded_palindrome(n: int, base: int, pow_high: int) -> bool:
    """Palindrome test peeling digit pairs outside-in.

    pow_high is base**(d-1) and n must already be known to lie in
    [pow_high, base*pow_high); exits on the first mismatched pair.
    """
    while pow_high > 1:
        lead, rest = divmod(n, pow_high)
        if lead != rest % base:
            return False
        n = rest // base
        pow_high //= base * base
    return True


def _candidate_bases(d: int, n_lo: int, n_hi: int, exclude: int) -> list[tuple[int, int, int]]:
    """Bases other than `exclude` whose d-digit window meets [n_lo, n_hi).

    Entries are (base, base**(d-1), base**d): the same membership test that
    base_interval answers per integer, hoisted out of the inner loop.
    """
    if n_lo >= n_hi or d < 2:
        return []
    b_first = max(integer_root(n_lo, d) + 1, 2)
    b_last = integer_root(n_hi - 1, d - 1)
    out = []
    for b in range(b_first, b_last + 1):
        if b != exclude:
            low = b ** (d - 1)
            out.append((b, low, low * b))
    return out


def _qualifying_bases(n: int, d: int) -> tuple[DigitString, ...]:
    """Every base in which n is a d-digit palindrome, ascending, with digits."""
    out = []
    for b in base_interval(n, d):
        ds = to_digits(n, b)
        if is_palindrome(ds):
            out.append(ds)
    return tuple(out)


def _finish_hit(n: int, d: int, require_base10: bool) -> PalindromeHit | None:
    """Recompute the canonical base list and apply the hit criterion."""
    bases = _qualifying_bases(n, d)
    if len(bases) < 2:
        return None
    if require_base10 and not any(ds.base == 10 for ds in bases):
        return None
    return PalindromeHit(n=n, d=d, bases=bases)


# --- scanning ---------------------------------------------------------------


def scan_iter(
    task: SearchTask,
    *,
    require_base10: bool = True,
    allow_unproved_pruning: bool = False,
) -> Iterator[PalindromeHit]:
    """Yield hits in ascending integer order.

    Every prefix P maps to N = P*b**m + mirror(P) with mirror(P) < b**m, so N
    is strictly increasing in P and prefix order is integer order.  The fast
    paths below only pre-filter; every emitted hit is rebuilt canonically from
    base_interval + per-base palindrome checks.
    """
    d, anchor = task.d, task.anchor_base
    if task.prefix_lo >= task.prefix_hi or task.n_lo >= task.n_hi:
        return
    k = half_digits(d)
    m = d - k
    odd = bool(d & 1)
    shift = anchor ** m
    decimal_gate = require_base10 and anchor != 10
    if decimal_gate and allow_unproved_pruning and adjacent_base_even_exclusion(anchor, 10, d):
        return
    cands = _candidate_bases(d, task.n_lo, task.n_hi, exclude=anchor)
    if allow_unproved_pruning:
        cands = [c for c in cands if not adjacent_base_even_exclusion(anchor, c[0], d)]
    if not decimal_gate and not cands:
        return
    width = _block_width(anchor, k, m, odd)
    table = _mirror_table(anchor, width, odd, anchor ** (m - width + odd))
    block = anchor ** width
    n_lo, n_hi = task.n_lo, task.n_hi
    first_block = task.prefix_lo - task.prefix_lo % block
    for block_start in range(first_block, task.prefix_hi, block):
        head = block_start // block
        base_n = block_start * shift + _reverse_digits(head, k - width, anchor)
        l_lo = max(task.prefix_lo - block_start, 0)
        l_hi = min(task.prefix_hi - block_start, block)
        found: list[int] = []
        if decimal_gate:
            for low in range(l_lo, l_hi):
                n = base_n + low * shift + table[low]
                s = str(n)
                if s == s[::-1]:
                    found.append(n)
        else:
            for low in range(l_lo, l_hi):
                n = base_n + low * shift + table[low]
                for cb, c_lo, c_hi in cands:
                    if c_lo <= n < c_hi and _folded_palindrome(n, cb, c_lo):
                        found.append(n)
                        break
        for n in found:
            if n_lo <= n < n_hi:
                hit = _finish_hit(n, d, require_base10)
                if hit is not None:
                    yield hit


def scan(
    task: SearchTask,
    *,
    require_base10: bool = True,
    allow_unproved_pruning: bool = False,
) -> list[PalindromeHit]:
    """Run one task to completion; see scan_iter for the streaming form."""
    return list(
        scan_iter(
            task,
            require_base10=require_base10,
            allow_unproved_pruning=allow_unproved_pruning,
        )
    )


def scan_anchored(
    d: int,
    n_lo: int,
    n_hi: int,
    anchor_base: int,
    *,
    require_base10: bool = True,
    allow_unproved_pruning: bool = False,
) -> list[PalindromeHit]:
    """Scan [n_lo, n_hi) by enumerating palindromes in anchor_base.

    Equivalent to anchoring at base 10 over the same window and keeping only
    hits where anchor_base qualifies.
    """
    lo = max(n_lo, anchor_base ** (d - 1))
    hi = min(n_hi, anchor_base ** d)
    if lo >= hi:
        return []
    p_lo, p_hi = prefix_range(lo, hi, anchor_base, d)
    task = SearchTask(d, anchor_base, p_lo, p_hi, lo, hi)
    return scan(
        task,
        require_base10=require_base10,
        allow_unproved_pruning=allow_unproved_pruning,
    )


def partition(task: SearchTask, chunk: int) -> list[SearchTask]:
    """Split a task into consecutive sub-tasks of at most `chunk` prefixes.

    Sub-tasks cover [prefix_lo, prefix_hi) exactly and inherit the clip
    window, so scanning them independently and merging equals one scan.
    """
    if chunk < 1:
        raise DomainError(f"chunk must be >= 1, got {chunk}")
    out = []
    lo = task.prefix_lo
    while lo < task.prefix_hi:
        hi = min(lo + chunk, task.prefix_hi)
        out.append(replace(task, prefix_lo=lo, prefix_hi=hi))
        lo = hi
    return out


def merge(hit_lists: Iterable[Iterable[PalindromeHit]]) -> list[PalindromeHit]:
    """Deterministic union of scan outputs, sorted by (d, n).

    The same integer found under two anchors must carry the identical
    canonical base list; a difference means an engine bug.
    """
    by_key: dict[tuple[int, int], PalindromeHit] = {}
    for hits in hit_lists:
        for h in hits:
            prev = by_key.get((h.d, h.n))
            if prev is None:
                by_key[(h.d, h.n)] = h
            elif prev != h:
                raise ConsistencyError(f"conflicting base lists for {h.n}")
    return [by_key[k] for k in sorted(by_key)]


# --- checkpointing ----------------------------------------------------------


@dataclass(frozen=True)
class Checkpoint:
    """Progress record for one task: prefixes below `watermark` are done and
    produced exactly `hits`."""

    d: int
    anchor: int
    prefix_lo: int
    prefix_hi: int
    watermark: int
    hits: tuple[PalindromeHit, ...]

    def key(self) -> tuple[int, int, int, int]:
        return (self.d, self.anchor, self.prefix_lo, self.prefix_hi)

    @property
    def complete(self) -> bool:
        return self.watermark >= self.prefix_hi


def checkpoint_to_line(cp: Checkpoint) -> str:
    obj = {
        "d": cp.d,
        "anchor": cp.anchor,
        "prefix_lo": str(cp.prefix_lo),
        "prefix_hi": str(cp.prefix_hi),
        "watermark": str(cp.watermark),
        "hits": [{"n": str(h.n), "bases": list(h.base_numbers())} for h in cp.hits],
    }
    return json.dumps(obj, separators=(",", ":"))


def append_checkpoint(path: str, cp: Checkpoint) -> None:
    """Append one record as a single line write (atomic for line-oriented readers)."""
    with open(path, "a", encoding="ascii") as fh:
        fh.write(checkpoint_to_line(cp) + "\n")
        fh.flush()


def load_checkpoints(path: str) -> dict[tuple[int, int, int, int], Checkpoint]:
    """Read a checkpoint file; the furthest record per task identity wins.

    Hit base lists are recomputed canonically and cross-checked against the
    recorded base numbers, so a corrupt record cannot smuggle in a bad hit.
    """
    records: dict[tuple[int, int, int, int], Checkpoint] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                d = int(obj["d"])
                anchor = int(obj["anchor"])
                lo = int(obj["prefix_lo"])
                hi = int(obj["prefix_hi"])
                watermark = int(obj["watermark"])
                raw_hits = [
                    (int(h["n"]), tuple(int(b) for b in h["bases"])) for h in obj["hits"]
                ]
            except (KeyError, TypeError, ValueError) as exc:
                raise CheckpointError(f"{path}:{lineno}: invalid checkpoint record: {exc}") from exc
            if not lo <= watermark <= hi:
                raise CheckpointError(f"{path}:{lineno}: watermark outside prefix range")
            hits = []
            for n, bases in raw_hits:
                rebuilt = PalindromeHit(n=n, d=d, bases=_qualifying_bases(n, d))
                if rebuilt.base_numbers() != bases:
                    raise ConsistencyError(
                        f"checkpoint hit {n} disagrees with recomputed base list"
                    )
                hits.append(rebuilt)
            cp = Checkpoint(d, anchor, lo, hi, watermark, tuple(hits))
            prev = records.get(cp.key())
            if prev is None or cp.watermark >= prev.watermark:
                records[cp.key()] = cp
    return records
