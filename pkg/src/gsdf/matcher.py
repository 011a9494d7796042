"""Matching four candidate row sets into difference families.

Four blocks X_1..X_4 form a difference family with index lam exactly when
their difference rows sum to the constant row (lam, ..., lam).  Matching
proceeds column by column: group each row set by its value in the first
unbound column and combine only value quadruples (n1, n2, n3, n4) with
n1 + n2 + n3 + n4 = lam.  A case whose four sub-sets are small enough is
finished by a meet-in-the-middle join over the remaining columns: sorting
the sets by size as a <= b <= c <= d, the join is attempted once
#a * #d < threshold and #b * #c < threshold, pairing (a, d) and (b, c).
Pair row sums are hashed to 64-bit keys (a random-multiplier dot product,
linear in the row, so key(r_b + r_c) = key(r_b) + key(r_c)); hash hits
are verified exactly before a quadruple is emitted.

Solutions are returned as tuples of four CyclicSubset, sorted by their
mask encodings, independent of threshold and of the number of worker
processes.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from multiprocessing import get_context

import numpy as np

from .zmod import CyclicSubset

DEFAULT_THRESHOLD = 10 ** 7
BRUTE_FORCE_GUARD = 10 ** 8

_HASH_MULT = np.random.default_rng(0x9E3779B97F4A7C15).integers(
    1, 1 << 63, size=64, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
_PROBE_CHUNK = 1 << 20


@dataclass
class _SubSet:
    masks: np.ndarray
    rows: np.ndarray

    def select(self, keep) -> "_SubSet":
        return _SubSet(self.masks[keep], self.rows[keep])


@dataclass
class MatchCase:
    """One branch of the bin-and-match recursion.

    ``sums`` records the per-file column value quadruple for each column
    bound so far (their components add to lam columnwise); ``files`` are
    the four restricted row sets.
    """

    v: int
    lam: int
    sums: tuple
    files: tuple

    @property
    def depth(self) -> int:
        return len(self.sums)

    @property
    def sizes(self) -> tuple:
        return tuple(len(f.masks) for f in self.files)


def _as_subsets(files) -> tuple:
    subs = []
    for f in files:
        subs.append(_SubSet(np.asarray(f.masks, dtype=np.int64),
                            np.asarray(f.rows, dtype=np.uint8)))
    return tuple(subs)


def _bin_cases(v, lam, sums, files, col):
    """Split on one column; keep only value quadruples that add to lam."""
    groups = []
    for f in files:
        vals = f.rows[:, col]
        uniq = [int(u) for u in np.unique(vals)] if len(vals) else []
        groups.append({u: f.select(vals == u) for u in uniq if u <= lam})
    cases = []
    for n1 in sorted(groups[0]):
        for n2 in sorted(groups[1]):
            if n1 + n2 > lam:
                break
            for n3 in sorted(groups[2]):
                n4 = lam - n1 - n2 - n3
                if n4 < 0:
                    break
                if n4 in groups[3]:
                    cases.append(MatchCase(
                        v, lam, sums + ((n1, n2, n3, int(n4)),),
                        (groups[0][n1], groups[1][n2], groups[2][n3], groups[3][n4])))
    return cases


def match_cases(files, lam: int) -> list:
    """Split the four row files on their first column; phase-two entry point."""
    v = files[0].v
    if any(f.v != v for f in files):
        raise ValueError("row files disagree on v")
    if (v - 1) // 2 < 1:
        raise ValueError("matching needs at least one difference column")
    return _bin_cases(v, lam, (), _as_subsets(files), 0)


def _join_case(case: MatchCase, threshold: int) -> list:
    v, lam = case.v, case.lam
    ncols = case.files[0].rows.shape[1]
    out = []
    stack = [(case.depth, case.files)]
    while stack:
        depth, files = stack.pop()
        sizes = [len(f.masks) for f in files]
        if min(sizes) == 0:
            continue
        if depth == ncols:
            for quad in product(*(f.masks for f in files)):
                out.append(tuple(int(m) for m in quad))
            continue
        order = sorted(range(4), key=lambda i: sizes[i])
        a, b, c, d = (sizes[i] for i in order)
        if a * d < threshold and b * c < threshold:
            out.extend(_serial_join(files, order, lam, depth, ncols))
            continue
        for sub in _bin_cases(v, lam, (), files, depth):
            stack.append((depth + 1, sub.files))
    return out


def _serial_join(files, order, lam, depth, ncols):
    fa, fb, fc, fd = (files[i] for i in order)
    mult = _HASH_MULT[:ncols - depth]
    res = slice(depth, ncols)

    def keys(f):
        return (f.rows[:, res].astype(np.uint64) * mult).sum(axis=1, dtype=np.uint64)

    ka, kb, kc, kd = keys(fa), keys(fb), keys(fc), keys(fd)
    target = np.full(ncols - depth, lam, dtype=np.int16)
    key_t = (target.astype(np.uint64) * mult).sum(dtype=np.uint64)

    nb, nc, nd = len(kb), len(kc), len(kd)
    build = (kb[:, None] + kc[None, :]).ravel()
    build_order = np.argsort(build, kind="stable")
    build_sorted = build[build_order]

    ra = fa.rows[:, res].astype(np.int16)
    rb = fb.rows[:, res].astype(np.int16)
    rc = fc.rows[:, res].astype(np.int16)
    rd = fd.rows[:, res].astype(np.int16)

    out = []
    total = len(ka) * nd
    for start in range(0, total, _PROBE_CHUNK):
        flat = np.arange(start, min(start + _PROBE_CHUNK, total))
        ia, idx_d = np.divmod(flat, nd)
        need = key_t - ka[ia] - kd[idx_d]
        lo = np.searchsorted(build_sorted, need, side="left")
        hi = np.searchsorted(build_sorted, need, side="right")
        for j in np.nonzero(hi > lo)[0]:
            i_a, i_d = int(ia[j]), int(idx_d[j])
            for pos in build_order[lo[j]:hi[j]]:
                i_b, i_c = divmod(int(pos), nc)
                total_row = ra[i_a] + rb[i_b] + rc[i_c] + rd[i_d]
                if np.array_equal(total_row, target):
                    quad = [None] * 4
                    quad[order[0]] = int(fa.masks[i_a])
                    quad[order[1]] = int(fb.masks[i_b])
                    quad[order[2]] = int(fc.masks[i_c])
                    quad[order[3]] = int(fd.masks[i_d])
                    out.append(tuple(quad))
    return out


def _solve_case(args):
    case, threshold = args
    return _join_case(case, threshold)


def bins_match(files, lam: int, threshold: int = DEFAULT_THRESHOLD,
               jobs: int = 1) -> list:
    """All quadruples (X_1..X_4), one block per file, whose rows sum to lam."""
    if threshold < 1:
        raise ValueError("threshold must be positive")
    cases = match_cases(files, lam)
    v = files[0].v
    if jobs is None:
        jobs = int(os.environ.get("GSDF_JOBS", "1"))
    if jobs > 1 and len(cases) > 1:
        with get_context("fork").Pool(jobs) as pool:
            chunks = pool.map(_solve_case, [(c, threshold) for c in cases])
        quads = [q for chunk in chunks for q in chunk]
    else:
        quads = [q for c in cases for q in _join_case(c, threshold)]
    quads.sort()
    return [tuple(CyclicSubset(v, m) for m in quad) for quad in quads]


def brute_force_match(files, lam: int, guard: int = BRUTE_FORCE_GUARD) -> list:
    """Reference matcher: four nested loops with partial-sum pruning."""
    sizes = [len(f.masks) for f in files]
    work = 1
    for n in sizes:
        work *= n
    if work > guard:
        raise ValueError(f"search space {work} exceeds guard {guard}")
    v = files[0].v
    subs = _as_subsets(files)
    r1, r2, r3, r4 = (s.rows.astype(np.int16) for s in subs)
    out = []
    for i1 in range(sizes[0]):
        p1 = r1[i1]
        if p1.max(initial=0) > lam:
            continue
        for i2 in range(sizes[1]):
            p2 = p1 + r2[i2]
            if p2.max(initial=0) > lam:
                continue
            for i3 in range(sizes[2]):
                need = lam - p2 - r3[i3]
                if need.min(initial=0) < 0:
                    continue
                hits = np.nonzero((r4 == need).all(axis=1))[0]
                for i4 in hits:
                    out.append((int(subs[0].masks[i1]), int(subs[1].masks[i2]),
                                int(subs[2].masks[i3]), int(subs[3].masks[i4])))
    out.sort()
    return [tuple(CyclicSubset(v, m) for m in quad) for quad in out]
