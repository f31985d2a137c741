"""Command-line surface: chunked parallel search with checkpoint/resume,
base conversion, anchor windows, corpus verification, and base-count reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from multiprocessing import Pool
from typing import Callable

from .bounds import MAX_DIGITS, AnchorEntry, anchor_plan
from .golden import golden_by_digits, load_golden
from .numerals import (
    DomainError,
    InvalidBaseError,
    InvalidDigitError,
    is_palindrome,
    to_digits,
)
from .oracle import RULES, brute_force, verify_rule
from .results import PalindromeHit, hit_from_json, hit_to_json, hit_to_text
from .search import (
    Checkpoint,
    CheckpointError,
    SearchTask,
    append_checkpoint,
    load_checkpoints,
    merge,
    partition,
    prefix_range,
    scan,
)

DEFAULT_MIN = 10
DEFAULT_MAX = 10 ** 26
DEFAULT_CHUNK = 2_000_000
DEEP_THRESHOLD = 17  # digit counts from here on need --deep
JOBS_ENV = "PALINBASE_JOBS"


def parse_digit_spec(spec: str) -> list[int]:
    """A single digit count ('6') or an inclusive range ('2..7')."""
    spec = spec.strip()
    try:
        if ".." in spec:
            lo_text, hi_text = spec.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(spec)
    except ValueError:
        raise DomainError(f"digit spec must look like '6' or '2..7', got {spec!r}") from None
    if lo > hi:
        raise DomainError(f"empty digit range {spec!r}")
    for d in (lo, hi):
        if d > MAX_DIGITS:
            raise DomainError(
                f"no cross-base pair shares more than {MAX_DIGITS} digits; got {d}"
            )
        if d < 2:
            raise DomainError(f"digit count must be at least 2, got {d}")
    return list(range(lo, hi + 1))


def resolve_jobs(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{JOBS_ENV} must be an integer, got {env!r}") from None
    return 1


def plan_tasks(
    d: int,
    n_min: int,
    n_max: int,
    *,
    anchor: str | int = "auto",
    chunk: int = DEFAULT_CHUNK,
    allow_unproved_pruning: bool = False,
    require_base10: bool = True,
) -> list[SearchTask]:
    """Turn one digit count into chunked scan tasks over [n_min, n_max)."""
    if anchor == "auto":
        entries = list(
            anchor_plan(d, n_min, n_max, allow_unproved_pruning=allow_unproved_pruning).entries
        )
    else:
        base = int(anchor)
        if base < 2:
            raise InvalidBaseError(f"anchor base must be >= 2, got {base}")
        lo = max(n_min - 1, base ** (d - 1) - 1)
        hi = min(n_max, base ** d)
        if require_base10:
            lo = max(lo, 10 ** (d - 1) - 1)
            hi = min(hi, 10 ** d)
        entries = [AnchorEntry(base, lo, hi)] if hi - lo >= 2 else []
    tasks: list[SearchTask] = []
    for entry in entries:
        w_lo, w_hi = entry.n_lo + 1, entry.n_hi  # exclusive bounds -> half-open window
        p_lo, p_hi = prefix_range(w_lo, w_hi, entry.base, d)
        task = SearchTask(d, entry.base, p_lo, p_hi, w_lo, w_hi)
        tasks.extend(partition(task, chunk))
    return tasks


def _scan_worker(args: tuple[SearchTask, bool, bool]) -> list[PalindromeHit]:
    task, require_base10, allow_unproved_pruning = args
    return scan(
        task,
        require_base10=require_base10,
        allow_unproved_pruning=allow_unproved_pruning,
    )


def run_search(
    digits: list[int],
    n_min: int,
    n_max: int,
    *,
    anchor: str | int = "auto",
    jobs: int = 1,
    chunk: int = DEFAULT_CHUNK,
    checkpoint: str | None = None,
    resume: bool = False,
    allow_unproved_pruning: bool = False,
    require_base10: bool = True,
    progress: bool = False,
    on_digit_done: Callable[[int, list[PalindromeHit]], None] | None = None,
) -> list[PalindromeHit]:
    """Run the engine for each digit count; returns the merged hits.

    Chunks execute on a process pool when jobs > 1 but results are consumed
    in submission order, so output, checkpoint contents, and the final merge
    are deterministic regardless of worker scheduling.  Finished chunks are
    appended to the checkpoint file; with resume=True, recorded chunks are
    reused instead of re-scanned.
    """
    if resume and not checkpoint:
        raise DomainError("--resume needs --checkpoint")
    done = {}
    if resume and checkpoint and os.path.exists(checkpoint):
        done = load_checkpoints(checkpoint)

    all_hits: list[PalindromeHit] = []
    pool = Pool(jobs) if jobs > 1 else None
    try:
        for d in sorted(digits):
            subtasks = plan_tasks(
                d,
                n_min,
                n_max,
                anchor=anchor,
                chunk=chunk,
                allow_unproved_pruning=allow_unproved_pruning,
                require_base10=require_base10,
            )
            d_lists: list[list[PalindromeHit]] = []
            work: list[tuple[SearchTask, SearchTask, list[PalindromeHit]]] = []
            for task in subtasks:
                cp = done.get(task.key())
                if cp is not None and cp.complete:
                    d_lists.append(list(cp.hits))
                elif cp is not None:
                    # partial record: keep its hits, rescan from the watermark
                    work.append((replace(task, prefix_lo=cp.watermark), task, list(cp.hits)))
                else:
                    work.append((task, task, []))
            payload = [(run_task, require_base10, allow_unproved_pruning) for run_task, _, _ in work]
            results = pool.imap(_scan_worker, payload) if pool else map(_scan_worker, payload)
            for (run_task, orig_task, prior), new_hits in zip(work, results):
                full = prior + new_hits
                d_lists.append(full)
                if checkpoint:
                    append_checkpoint(
                        checkpoint,
                        Checkpoint(
                            orig_task.d,
                            orig_task.anchor_base,
                            orig_task.prefix_lo,
                            orig_task.prefix_hi,
                            orig_task.prefix_hi,
                            tuple(full),
                        ),
                    )
                if progress:
                    print(
                        f"# d={d} anchor={orig_task.anchor_base} "
                        f"prefixes {orig_task.prefix_lo}..{orig_task.prefix_hi} done, "
                        f"hits {len(full)}",
                        file=sys.stderr,
                    )
            merged = merge(d_lists)
            if on_digit_done is not None:
                on_digit_done(d, merged)
            all_hits.extend(merged)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return all_hits


# --- subcommands ------------------------------------------------------------


def _emit_hits(hits: list[PalindromeHit], fmt: str, out) -> None:
    if fmt == "jsonl":
        for h in hits:
            print(hit_to_json(h), file=out)
    else:
        for h in hits:
            print(hit_to_text(h), file=out)


def _emit_summary(counts: dict[int, int], fmt: str, out) -> None:
    total = sum(counts.values())
    if fmt == "jsonl":
        obj = {"summary": {"counts": {str(d): c for d, c in sorted(counts.items())}, "total": total}}
        print(json.dumps(obj, separators=(",", ":")), file=out)
    else:
        parts = [f"d={d}: {c}" for d, c in sorted(counts.items())]
        print("summary: " + ", ".join(parts) + f", total: {total}", file=out)


def _validate_window(n_min: int, n_max: int) -> None:
    if n_max > DEFAULT_MAX:
        raise DomainError(
            f"windows beyond 10^26 are pointless (no cross-base pair shares more than "
            f"{MAX_DIGITS} digits); got --max {n_max}"
        )
    if n_min < DEFAULT_MIN:
        raise DomainError(f"--min must be at least {DEFAULT_MIN}, got {n_min}")
    if n_min >= n_max:
        raise DomainError(f"empty window: --min {n_min} >= --max {n_max}")


def _digits_for_search(args) -> list[int]:
    if args.all_digits and args.digits:
        raise DomainError("pass either --digits or --all-digits, not both")
    if args.all_digits:
        digits = list(range(2, MAX_DIGITS + 1))
    elif args.digits:
        digits = parse_digit_spec(args.digits)
    else:
        raise DomainError("pass --digits (e.g. 2..7) or --all-digits")
    deep = [d for d in digits if d >= DEEP_THRESHOLD]
    if deep and not getattr(args, "deep", False):
        raise DomainError(
            f"digit counts {deep} take hours to days; pass --deep to confirm"
        )
    return digits


def cmd_search(args) -> int:
    digits = _digits_for_search(args)
    _validate_window(args.min, args.max)
    jobs = resolve_jobs(args.jobs)
    counts: dict[int, int] = {}
    out = sys.stdout

    def emit(d: int, hits: list[PalindromeHit]) -> None:
        counts[d] = len(hits)
        _emit_hits(hits, args.format, out)

    run_search(
        digits,
        args.min,
        args.max,
        anchor=args.anchor if args.anchor == "auto" else int(args.anchor),
        jobs=jobs,
        chunk=args.chunk,
        checkpoint=args.checkpoint,
        resume=args.resume,
        allow_unproved_pruning=args.allow_unproved_pruning,
        progress=args.progress,
        on_digit_done=emit,
    )
    _emit_summary(counts, args.format, out)
    return 0


def cmd_convert(args) -> int:
    try:
        n = int(args.n)
    except ValueError:
        raise DomainError(f"N must be a decimal integer, got {args.n!r}") from None
    ds = to_digits(n, args.base)
    flag = "true" if is_palindrome(ds) else "false"
    print(f"{ds} palindrome={flag}")
    return 0


def cmd_bounds(args) -> int:
    plan = anchor_plan(
        args.digits, DEFAULT_MIN, DEFAULT_MAX,
        allow_unproved_pruning=args.allow_unproved_pruning,
    )
    if plan.empty:
        print("no admissible anchors")
        return 0
    for entry in plan.entries:
        print(f"d={plan.d} base={entry.base} range=({entry.n_lo},{entry.n_hi})")
    return 0


def cmd_oracle(args) -> int:
    if args.rule:
        report = verify_rule(args.rule, args.min, args.max)
        if report.passed:
            print(f"rule {report.rule} holds on [{args.min}, {args.max}) "
                  f"({report.checked} checks)")
            return 0
        print(f"rule {report.rule} FAILED: {report.counterexample}")
        return 1
    hits = brute_force(args.min, args.max)
    counts: dict[int, int] = {}
    for h in hits:
        counts[h.d] = counts.get(h.d, 0) + 1
    _emit_hits(hits, args.format, sys.stdout)
    _emit_summary(counts, args.format, sys.stdout)
    return 0


def _load_results_file(path: str) -> list[PalindromeHit]:
    hits = []
    try:
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                if "summary" in obj:
                    continue
                hits.append(hit_from_json(obj))
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read results file {path}: {exc}") from None
    return hits


def cmd_verify(args) -> int:
    golden = golden_by_digits()
    if args.run:
        digits = parse_digit_spec(args.run)
        deep = [d for d in digits if d >= DEEP_THRESHOLD]
        if deep and not args.deep:
            raise DomainError(f"digit counts {deep} take hours to days; pass --deep to confirm")
        jobs = resolve_jobs(args.jobs)
        hits = run_search(digits, DEFAULT_MIN, DEFAULT_MAX, jobs=jobs, chunk=args.chunk)
        covered = set(digits)
    elif args.results:
        hits = _load_results_file(args.results)
        covered = {e for e in parse_digit_spec(args.digits)} if args.digits else {h.d for h in hits}
    else:
        raise DomainError("pass --run DIGITS or --results PATH")

    got = {(h.d, h.n): h for h in hits if h.d in covered}
    want = {(e.d, e.n): e for d in covered for e in golden.get(d, ())}
    missing = sorted(set(want) - set(got))
    extra = sorted(set(got) - set(want))
    mismatched = []
    for key in sorted(set(got) & set(want)):
        have = got[key].bases
        expect = want[key].representations
        if have != expect:
            mismatched.append((key, have, expect))
    print(f"golden corpus: {len(load_golden())} palindromes "
          f"({sum(len(v) for d, v in golden.items() if d in covered)} in scope)")
    for d, n in missing:
        print(f"missing: {n} (d={d})")
    for d, n in extra:
        print(f"extra: {n} (d={d})")
    for (d, n), have, expect in mismatched:
        have_text = " = ".join(str(x) for x in have)
        expect_text = " = ".join(str(x) for x in expect)
        print(f"representation mismatch for {n}: got {have_text}, want {expect_text}")
    if missing or extra or mismatched:
        print(
            f"verification FAILED: {len(missing)} missing, {len(extra)} extra, "
            f"{len(mismatched)} mismatched"
        )
        return 1
    scope = ",".join(str(d) for d in sorted(covered))
    print(f"verification OK: {len(got)} palindromes match the corpus for d in [{scope}]")
    return 0


def cmd_report(args) -> int:
    if args.golden:
        rows = [(e.n, e.d, len(e.representations)) for e in load_golden()]
    elif args.results:
        rows = [(h.n, h.d, len(h.bases)) for h in _load_results_file(args.results)]
    else:
        raise DomainError("pass a results file or --golden")
    rows.sort(key=lambda r: (r[1], r[0]))
    for n, d, count in rows:
        print(f"{n} bases={count}")
    top = max((count for _, _, count in rows), default=0)
    if top:
        witnesses = [str(n) for n, _, count in rows if count == top]
        print(f"max-bases={top} witnesses={','.join(witnesses)}")
    else:
        print("max-bases=0")
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palinbase",
        description="Find integers that are d-digit palindromes in base 10 "
                    "and, with the same d, in some other base.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="enumerate hits over a window")
    p.add_argument("--digits", help="digit count or inclusive range, e.g. 6 or 2..7")
    p.add_argument("--all-digits", action="store_true", help="search every admissible digit count")
    p.add_argument("--min", type=int, default=DEFAULT_MIN, help="window start, inclusive")
    p.add_argument("--max", type=int, default=DEFAULT_MAX, help="window end, exclusive")
    p.add_argument("--anchor", default="auto",
                   help="enumeration base: 'auto' picks per digit count")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${JOBS_ENV} or 1)")
    p.add_argument("--chunk", type=int, default=DEFAULT_CHUNK,
                   help="prefixes per work unit")
    p.add_argument("--checkpoint", help="append finished work units to this file")
    p.add_argument("--resume", action="store_true",
                   help="reuse finished work units from --checkpoint")
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--allow-unproved-pruning", action="store_true",
                   help="apply the generalized consecutive-base exclusion")
    p.add_argument("--deep", action="store_true",
                   help="confirm multi-hour scans (17 digits and up)")
    p.add_argument("--progress", action="store_true",
                   help="print a watermark line to stderr per finished work unit")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("convert", help="print N's digits in a base")
    p.add_argument("n", metavar="N")
    p.add_argument("base", metavar="BASE", type=int)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("bounds", help="show anchor windows for a digit count")
    p.add_argument("digits", metavar="D", type=int)
    p.add_argument("--allow-unproved-pruning", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="compare results against the golden corpus")
    p.add_argument("--run", help="digit spec to search fresh, e.g. 2..7")
    p.add_argument("--results", help="jsonl results file to check")
    p.add_argument("--digits", help="restrict file verification to these digit counts")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--chunk", type=int, default=DEFAULT_CHUNK)
    p.add_argument("--deep", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="per-hit base counts and the corpus maximum")
    p.add_argument("results", nargs="?", help="jsonl results file")
    p.add_argument("--golden", action="store_true", help="report over the shipped corpus")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("oracle", help="brute-force scan or rule validation")
    p.add_argument("min", metavar="MIN", type=int)
    p.add_argument("max", metavar="MAX", type=int)
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--rule", choices=RULES, help="validate a pruning rule instead")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, InvalidBaseError, InvalidDigitError, CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
