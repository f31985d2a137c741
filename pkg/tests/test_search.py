import random

import pytest

from palinbase.golden import golden_by_digits
from palinbase.numerals import DomainError, from_digits, is_palindrome, to_digits
from palinbase.results import PalindromeHit, hit_from_json, hit_to_json
from palinbase.search import (
    Checkpoint,
    CheckpointError,
    ConsistencyError,
    SearchTask,
    append_checkpoint,
    checkpoint_to_line,
    half_digits,
    load_checkpoints,
    merge,
    mirror_prefix,
    partition,
    prefix_range,
    scan,
    scan_anchored,
)


def task_for(d, n_lo, n_hi, base=10):
    lo = max(n_lo, base ** (d - 1))
    hi = min(n_hi, base ** d)
    p_lo, p_hi = prefix_range(lo, hi, base, d)
    return SearchTask(d, base, p_lo, p_hi, lo, hi)


def test_half_digits():
    assert half_digits(2) == 1
    assert half_digits(6) == 3
    assert half_digits(7) == 4


def test_mirror_prefix_examples():
    assert mirror_prefix(405, 8, 6) == 207702  # [6,2,5] -> [6,2,5,5,2,6]
    assert mirror_prefix(9, 10, 2) == 99
    assert mirror_prefix(13, 10, 3) == 131
    assert mirror_prefix(207, 10, 6) == 207702
    assert mirror_prefix(99, 10, 3) == 999
    assert mirror_prefix(1000, 10, 7) == 1000001
    with pytest.raises(DomainError):
        mirror_prefix(100, 10, 3)  # prefix must have exactly 2 digits
    with pytest.raises(DomainError):
        mirror_prefix(5, 10, 3)


def test_mirror_prefix_is_monotone():
    rng = random.Random(3)
    for _ in range(200):
        base = rng.randint(2, 16)
        d = rng.randint(2, 12)
        k = half_digits(d)
        lo, hi = base ** (k - 1), base ** k
        if hi - lo < 2:
            continue
        a = rng.randint(lo, hi - 2)
        b = rng.randint(a + 1, hi - 1)
        assert mirror_prefix(a, base, d) < mirror_prefix(b, base, d)


def test_mirror_prefix_completeness_small():
    # every d-digit palindrome in the base appears from exactly one prefix
    for base in (2, 3, 8, 10):
        for d in (2, 3, 4, 5):
            k = half_digits(d)
            produced = sorted(
                mirror_prefix(p, base, d)
                for p in range(base ** (k - 1), base ** k)
            )
            want = [
                n
                for n in range(base ** (d - 1), base ** d)
                if is_palindrome(to_digits(n, base))
            ]
            assert produced == want, (base, d)


def test_prefix_range_examples():
    assert prefix_range(10, 100, 10, 2) == (1, 10)
    assert prefix_range(10 ** 5, 10 ** 6, 10, 6) == (100, 1000)
    assert prefix_range(10 ** 14, 9 ** 15, 9, 15) == (10 ** 14 // 9 ** 7, 9 ** 8)
    assert 10 ** 14 // 9 ** 7 == 20907515
    # the low edge rounds down so 121 is reachable from a window cutting it
    assert prefix_range(100, 125, 10, 3) == (10, 13)


def test_prefix_range_covers_window_exactly():
    # the narrowed range must reach every in-window palindrome the full
    # prefix space can produce, and nothing below p_lo mirrors into range
    rng = random.Random(14)
    for _ in range(200):
        base = rng.randint(2, 12)
        d = rng.randint(2, 7)
        whole_lo, whole_hi = base ** (d - 1), base ** d
        a = rng.randint(whole_lo, whole_hi - 1)
        b = rng.randint(a + 1, whole_hi)
        p_lo, p_hi = prefix_range(a, b, base, d)
        k = half_digits(d)
        in_window = [
            p
            for p in range(base ** (k - 1), base ** k)
            if a <= mirror_prefix(p, base, d) < b
        ]
        # complete: every producing prefix is inside the returned range
        assert all(p_lo <= p < p_hi for p in in_window), (base, d, a, b)
        # tight: mirroring is monotone, so at most one slack prefix per end
        slack = (p_hi - p_lo) - len(in_window)
        assert 0 <= slack <= 2, (base, d, a, b, slack)


def test_scan_d2():
    hits = scan(task_for(2, 10, 100))
    assert [h.n for h in hits] == [22, 33, 44, 55, 66, 77, 88, 99]
    by_n = {h.n: h for h in hits}
    assert by_n[66].base_numbers() == (10, 21, 32, 65)
    assert by_n[22].base_numbers() == (10, 21)
    # 11 is [1,0,1,1] in base 2 etc.; no base gives it a 2-digit palindrome
    assert 11 not in by_n


def test_scan_d6():
    hits = scan(task_for(6, 10 ** 5, 10 ** 6))
    assert [h.n for h in hits] == [207702, 546645, 646646]
    assert hits[0].base_numbers() == (8, 10)


def test_scan_d8_empty():
    assert scan(task_for(8, 10 ** 7, 10 ** 8)) == []


def test_scan_window_clipping():
    hits = scan(task_for(3, 150, 400))
    ns = [h.n for h in hits]
    assert min(ns) >= 150 and max(ns) < 400
    full = [h.n for h in scan(task_for(3, 100, 1000))]
    assert ns == [n for n in full if 150 <= n < 400]


def test_scan_anchored_agrees_with_base10():
    # anchoring in base 9 must find exactly the hits whose base list holds 9
    for d in (5, 6, 7):
        lo, hi = 10 ** (d - 1), 10 ** d
        base10 = scan(task_for(d, lo, hi))
        nine = scan_anchored(d, lo, hi, 9)
        want = [h for h in base10 if 9 in h.base_numbers()]
        assert nine == want, d


def test_scan_anchored_outside_base_range():
    assert scan_anchored(6, 10 ** 5, 10 ** 6, 2) == []


def test_scan_anchored_deep_windows():
    # narrow windows around the known deep hits, anchored per the schedule
    by_d = golden_by_digits()
    for d, anchor in ((17, 9), (19, 11), (21, 9), (23, 11), (25, 11)):
        for entry in by_d[d]:
            if anchor not in entry.base_numbers():
                continue
            span = 50 * anchor ** (d // 2)
            hits = scan_anchored(d, entry.n - span, entry.n + span, anchor)
            match = [h for h in hits if h.n == entry.n]
            assert len(match) == 1, (d, entry.n)
            assert match[0].base_numbers() == entry.base_numbers()


def test_partition_covers_and_merges_back():
    task = task_for(7, 10 ** 6, 10 ** 7)
    whole = scan(task)
    rng = random.Random(99)
    for _ in range(5):
        chunk = rng.randint(1, task.width + 10)
        parts = partition(task, chunk)
        assert parts[0].prefix_lo == task.prefix_lo
        assert parts[-1].prefix_hi == task.prefix_hi
        for left, right in zip(parts, parts[1:]):
            assert left.prefix_hi == right.prefix_lo
        merged = merge([scan(p) for p in parts])
        assert merged == whole


def test_partition_rejects_bad_chunk():
    with pytest.raises(DomainError):
        partition(task_for(3, 100, 1000), 0)


def test_merge_deduplicates_but_rejects_conflicts():
    a = scan(task_for(2, 10, 100))
    assert merge([a, a]) == a
    conflict = PalindromeHit(a[0].n, a[0].d, (a[0].bases[0],))
    with pytest.raises(ConsistencyError):
        merge([a, [conflict]])


def test_hit_json_round_trip():
    import json

    for h in scan(task_for(6, 10 ** 5, 10 ** 6)):
        assert hit_from_json(json.loads(hit_to_json(h))) == h


def test_checkpoint_round_trip(tmp_path):
    path = str(tmp_path / "cp.jsonl")
    task = task_for(6, 10 ** 5, 10 ** 6)
    hits = scan(task)
    cp = Checkpoint(task.d, task.anchor_base, task.prefix_lo, task.prefix_hi,
                    task.prefix_hi, tuple(hits))
    append_checkpoint(path, cp)
    loaded = load_checkpoints(path)
    assert loaded[task.key()].complete
    assert list(loaded[task.key()].hits) == hits


def test_checkpoint_partial_watermark(tmp_path):
    # a record stopped mid-task: loader keeps it, caller rescans the rest
    path = str(tmp_path / "cp.jsonl")
    task = task_for(6, 10 ** 5, 10 ** 6)
    mid = (task.prefix_lo + task.prefix_hi) // 2
    first_half = scan(SearchTask(task.d, 10, task.prefix_lo, mid,
                                 task.n_lo, task.n_hi))
    cp = Checkpoint(task.d, 10, task.prefix_lo, task.prefix_hi, mid,
                    tuple(first_half))
    append_checkpoint(path, cp)
    loaded = load_checkpoints(path)
    got = loaded[task.key()]
    assert not got.complete
    rest = scan(SearchTask(task.d, 10, got.watermark, task.prefix_hi,
                           task.n_lo, task.n_hi))
    assert merge([got.hits, rest]) == scan(task)


def test_checkpoint_keeps_furthest_watermark(tmp_path):
    path = str(tmp_path / "cp.jsonl")
    task = task_for(2, 10, 100)
    for mark in (task.prefix_lo + 1, task.prefix_hi, task.prefix_lo + 2):
        append_checkpoint(path, Checkpoint(2, 10, task.prefix_lo,
                                           task.prefix_hi, mark, ()))
    loaded = load_checkpoints(path)
    assert loaded[task.key()].watermark == task.prefix_hi


def test_checkpoint_rejects_garbage(tmp_path):
    path = tmp_path / "cp.jsonl"
    path.write_text('{"d": 2}\n', encoding="ascii")
    with pytest.raises(CheckpointError) as err:
        load_checkpoints(str(path))
    assert ":1:" in str(err.value)

    task = task_for(2, 10, 100)
    good = checkpoint_to_line(
        Checkpoint(2, 10, task.prefix_lo, task.prefix_hi, task.prefix_hi, ())
    )
    path.write_text(good + "\n" + "not json\n", encoding="ascii")
    with pytest.raises(CheckpointError) as err:
        load_checkpoints(str(path))
    assert ":2:" in str(err.value)


def test_checkpoint_recomputes_bases(tmp_path):
    # stored hits carry base numbers only; loading rebuilds full digit
    # strings and cross-checks them
    path = str(tmp_path / "cp.jsonl")
    task = task_for(2, 10, 100)
    hits = scan(task)
    append_checkpoint(path, Checkpoint(2, 10, task.prefix_lo, task.prefix_hi,
                                       task.prefix_hi, tuple(hits)))
    loaded = load_checkpoints(path)
    got = loaded[task.key()].hits
    assert [h.bases for h in got] == [h.bases for h in hits]


def test_checkpoint_flags_tampered_bases(tmp_path):
    path = tmp_path / "cp.jsonl"
    task = task_for(2, 10, 100)
    line = checkpoint_to_line(
        Checkpoint(2, 10, task.prefix_lo, task.prefix_hi, task.prefix_hi,
                   tuple(scan(task)))
    )
    path.write_text(line.replace('"bases":[10,21]', '"bases":[10,22]') + "\n",
                    encoding="ascii")
    with pytest.raises(ConsistencyError):
        load_checkpoints(str(path))


def test_no_even_d_hits_midrange():
    for d in (8, 10, 12, 14):
        assert scan(task_for(d, 10 ** (d - 1), 10 ** d)) == []


def test_pruning_toggle_changes_nothing_small_d():
    for d in (6, 7, 13):
        task = task_for(d, 10 ** (d - 1), 10 ** d)
        assert scan(task) == scan(task, allow_unproved_pruning=True)
