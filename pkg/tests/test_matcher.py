import numpy as np
import pytest

from gsdf.blockgen import RowFile, collect_rows, difference_counts
from gsdf.family import family_from_blocks, format_family
from gsdf.matcher import (BRUTE_FORCE_GUARD, bins_match, brute_force_match,
                          match_cases)
from gsdf.zmod import CyclicSubset


def files_for(v, sizes, kinds, filtered=True):
    return [collect_rows(v, k, kind, filtered=filtered)
            for k, kind in zip(sizes, kinds)]


def subfile(rf, picks):
    """Restrict a row file to selected row indices (keeps sorting)."""
    idx = np.asarray(sorted(picks))
    return RowFile(rf.v, rf.k, rf.kind, rf.bound, rf.masks[idx], rf.rows[idx])


def test_v7_three_skew_one_symmetric():
    fs = files_for(7, (3, 3, 3, 1), ("skew", "skew", "skew", "symmetric"))
    sol = bins_match(fs, 3)
    assert len(sol) == 56
    assert sol == brute_force_match(fs, 3)
    qr = tuple(CyclicSubset.from_elements(7, e) for e in ([1, 2, 4],) * 3 + ([0],))
    assert qr in sol
    # every emitted quadruple re-checked from scratch
    for quad in sol:
        sums = [sum(b.difference_count(d) for b in quad) for d in range(1, 7)]
        assert sums == [3] * 6


def test_match_cases_structure():
    fs = files_for(7, (3, 3, 3, 1), ("skew", "skew", "skew", "symmetric"))
    cases = match_cases(fs, 3)
    assert cases
    for case in cases:
        assert sum(case.sums[0]) == 3
        assert case.depth == 1
        assert all(len(f.masks) > 0 for f in case.files)
        for f, orig in zip(case.files, fs):
            assert set(f.masks.tolist()) <= set(orig.masks.tolist())
    # cases partition by value quadruple: no duplicates
    keys = [c.sums[0] for c in cases]
    assert len(keys) == len(set(keys))


def test_no_solution_paths():
    fs = files_for(7, (3, 3, 3, 1), ("skew", "skew", "skew", "symmetric"))
    assert bins_match(fs, 0) == []
    assert bins_match(fs, 50) == []
    assert match_cases(fs, 50) == []


def test_threshold_and_jobs_do_not_change_results():
    fs = files_for(13, (6, 6, 4, 4), ("skew", "skew", "symmetric", "symmetric"))
    base = bins_match(fs, 7)
    assert len(base) == 480
    for threshold in (1, 10, 10 ** 7):
        assert bins_match(fs, 7, threshold=threshold) == base
    assert bins_match(fs, 7, jobs=4) == base
    text = lambda sol: "".join(
        format_family(family_from_blocks(13, [b.elements for b in q])) for q in sol)
    assert text(bins_match(fs, 7, jobs=4)) == text(base)


def test_brute_force_guard():
    fs = files_for(25, (12, 12, 12, 12), ("skew",) * 4, filtered=False)
    with pytest.raises(ValueError):
        brute_force_match(fs, 23, guard=10 ** 6)


def test_bad_inputs():
    fs = files_for(7, (3, 3, 3, 1), ("skew", "skew", "skew", "symmetric"))
    with pytest.raises(ValueError):
        bins_match(fs, 3, threshold=0)
    mixed = fs[:3] + [collect_rows(9, 2, "symmetric")]
    with pytest.raises(ValueError):
        match_cases(mixed, 3)


def random_instance(rng, v):
    """Random sub-files of genuine candidate sets, all four tag patterns."""
    half = (v - 1) // 2
    pattern = rng.choice(["ksss", "kkss", "kkks", "kkkk"])
    files = []
    for i, tag in enumerate(pattern):
        if tag == "k":
            rf = collect_rows(v, half, "skew", filtered=False)
        else:
            k = int(rng.integers(0, half + 1))
            rf = collect_rows(v, k, "symmetric", filtered=False)
        n = len(rf)
        take = min(n, int(rng.integers(1, 25)))
        files.append(subfile(rf, rng.choice(n, size=take, replace=False)))
    lam = int(rng.integers(0, 2 * half))
    return files, lam


def test_randomized_agreement_with_brute_force():
    rng = np.random.default_rng(20260823)
    hits = 0
    for trial in range(25):
        v = int(rng.choice([5, 7, 9, 11, 13]))
        files, lam = random_instance(rng, v)
        expected = brute_force_match(files, lam)
        for threshold in (1, 10 ** 7):
            assert bins_match(files, lam, threshold=threshold) == expected
        hits += bool(expected)
    assert hits  # the sample should contain some solvable instances
