"""Exhaustive generation of skew and symmetric candidate blocks.

Skew subsets of Z_v (v odd) pick exactly one of {i, v-i} for each
i = 1 .. (v-1)/2, so there are 2^((v-1)/2) of them.  Symmetric subsets of
size k consist of floor(k/2) whole pairs {i, v-i} plus the fixed point 0
when k is odd, giving C((v-1)/2, floor(k/2)) candidates.

Every generated block is reduced to its difference row
(d_X(1), ..., d_X((v-1)/2)).  A power spectral density filter discards
blocks with max_{j>0} PSD(j) above a bound: the four blocks of any
difference family with these parameters satisfy

    PSD_1(j) + PSD_2(j) + PSD_3(j) + PSD_4(j) = 4v   for j != 0,

so each individual block of a solution has PSD(j) <= 4v and the filter
with bound 4v never discards a block that takes part in some family.

Row files are plain text: a header line ``v k kind bound`` followed by
one line per block, ``elements|counts`` (elements comma-separated,
counts space-separated), sorted by block encoding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .zmod import CyclicSubset, DifferenceRow

KINDS = ("skew", "symmetric")
PSD_REL_EPS = 1e-6
_CHUNK = 1 << 18


def _rotations(masks: np.ndarray, v: int, d: int) -> np.ndarray:
    # mask low bits before shifting so intermediates stay below 2^v
    low = (1 << (v - d)) - 1
    return ((masks & low) << d) | (masks >> (v - d))


def difference_counts(masks: np.ndarray, v: int) -> np.ndarray:
    """Difference rows for a vector of bitmasks; shape (n, (v-1)/2), uint8."""
    if v % 2 == 0:
        raise ValueError("difference rows are defined for odd v only")
    p = (v - 1) // 2
    out = np.empty((len(masks), p), dtype=np.uint8)
    for d in range(1, p + 1):
        out[:, d - 1] = np.bitwise_count(masks & _rotations(masks, v, d))
    return out


def _psd_max(counts: np.ndarray, v: int, k: int) -> np.ndarray:
    """max_{j>0} PSD(j) per row, from difference counts."""
    p = (v - 1) // 2
    s = np.arange(1, p + 1)
    cos = np.cos(2.0 * np.pi * np.outer(s, s) / v)  # cos(2 pi j s / v)
    paf = v - 4 * k + 4.0 * counts
    return v + 2.0 * (paf @ cos).max(axis=1)


def skew_masks(v: int) -> np.ndarray:
    """All skew subsets of Z_v as a sorted int64 mask vector."""
    if v % 2 == 0:
        raise ValueError("skew subsets require odd v")
    p = (v - 1) // 2
    base = sum(1 << (v - i) for i in range(1, p + 1))
    idx = np.arange(1 << p, dtype=np.int64)
    masks = np.full(1 << p, base, dtype=np.int64)
    for i in range(1, p + 1):
        delta = (1 << i) - (1 << (v - i))
        masks += ((idx >> (i - 1)) & 1) * delta
    masks.sort()
    return masks


def symmetric_masks(v: int, k: int) -> np.ndarray:
    """All symmetric k-subsets of Z_v (odd v) as a sorted int64 mask vector."""
    if v % 2 == 0:
        raise ValueError("only odd v is supported here")
    if not 0 <= k <= v:
        raise ValueError(f"size {k} out of range")
    p = (v - 1) // 2
    npairs, fixed = divmod(k, 2)
    if npairs > p:
        return np.empty(0, dtype=np.int64)
    pair = [(1 << i) | (1 << (v - i)) for i in range(1, p + 1)]
    base = 1 if fixed else 0
    masks = np.fromiter((base + sum(c) for c in combinations(pair, npairs)),
                        dtype=np.int64)
    masks.sort()
    return masks


def gen_skew(v: int):
    """Yield every skew subset of Z_v in mask order."""
    for m in skew_masks(v):
        yield CyclicSubset(v, int(m))


def gen_symmetric(v: int, k: int):
    """Yield every symmetric k-subset of Z_v in mask order."""
    for m in symmetric_masks(v, k):
        yield CyclicSubset(v, int(m))


def psd_filter(x: CyclicSubset, bound: float, eps: float = None) -> bool:
    """True if max_{j>0} PSD(j) <= bound + eps (eps defaults to 1e-6 * bound)."""
    if eps is None:
        eps = PSD_REL_EPS * bound
    psd = x.psd()
    return bool(psd[1:].max() <= bound + eps) if x.v > 1 else True


@dataclass
class CandidateRow:
    block: CyclicSubset
    row: DifferenceRow


@dataclass
class RowFile:
    """Candidate blocks of one kind and size, with their difference rows."""

    v: int
    k: int
    kind: str
    bound: object  # numeric PSD bound, or None when the filter was off
    masks: np.ndarray = field(repr=False)
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if len(self.masks) != len(self.rows):
            raise ValueError("masks/rows length mismatch")

    def __len__(self):
        return len(self.masks)

    def __getitem__(self, i) -> CandidateRow:
        return CandidateRow(CyclicSubset(self.v, int(self.masks[i])),
                            DifferenceRow(self.v, tuple(int(c) for c in self.rows[i])))

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def collect_rows(v: int, k: int, kind: str, filtered: bool = True,
                 bound: float = None, eps: float = None) -> RowFile:
    """Generate all blocks of a kind/size, attach rows, optionally PSD-filter."""
    if kind == "skew":
        if k != (v - 1) // 2 or v % 2 == 0:
            raise ValueError(f"skew blocks in Z_{v} have size (v-1)/2, not {k}")
        masks = skew_masks(v)
    elif kind == "symmetric":
        masks = symmetric_masks(v, k)
    else:
        raise ValueError(f"kind must be one of {KINDS}")
    if filtered:
        if bound is None:
            bound = 4 * v
        if eps is None:
            eps = PSD_REL_EPS * bound
        limit = bound + eps
    else:
        bound = None

    kept_masks, kept_rows = [], []
    for start in range(0, len(masks), _CHUNK):
        chunk = masks[start:start + _CHUNK]
        rows = difference_counts(chunk, v)
        if filtered and v > 1:
            keep = _psd_max(rows, v, k) <= limit
            chunk, rows = chunk[keep], rows[keep]
        kept_masks.append(chunk)
        kept_rows.append(rows)
    p = (v - 1) // 2
    if kept_masks:
        masks = np.concatenate(kept_masks)
        rows = np.concatenate(kept_rows) if len(masks) else np.empty((0, p), dtype=np.uint8)
    else:
        masks = np.empty(0, dtype=np.int64)
        rows = np.empty((0, p), dtype=np.uint8)
    return RowFile(v, k, kind, bound, masks, rows)


def _format_bound(bound) -> str:
    if bound is None:
        return "off"
    f = float(bound)
    return str(int(f)) if f.is_integer() else repr(f)


def write_row_file(path, rf: RowFile) -> None:
    with open(path, "w") as fh:
        fh.write(f"{rf.v} {rf.k} {rf.kind} {_format_bound(rf.bound)}\n")
        for mask, row in zip(rf.masks, rf.rows):
            elems = ",".join(map(str, CyclicSubset(rf.v, int(mask)).elements))
            fh.write(elems + "|" + " ".join(str(int(c)) for c in row) + "\n")


class RowFileFormatError(ValueError):
    pass


def read_row_file(path) -> RowFile:
    """Parse a row file; rows are re-derived from the blocks and checked."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise RowFileFormatError("empty row file")
    head = lines[0].split()
    if len(head) != 4:
        raise RowFileFormatError(f"line 1: header needs 'v k kind bound', got {lines[0]!r}")
    try:
        v, k = int(head[0]), int(head[1])
    except ValueError:
        raise RowFileFormatError("line 1: non-integer v or k")
    kind = head[2]
    if kind not in KINDS:
        raise RowFileFormatError(f"line 1: unknown kind {kind!r}")
    bound = None if head[3] == "off" else float(head[3])
    p = (v - 1) // 2
    masks, rows = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        left, sep, right = line.partition("|")
        if not sep:
            raise RowFileFormatError(f"line {lineno}: missing '|' separator")
        try:
            x = (CyclicSubset.from_elements(v, map(int, left.split(",")))
                 if left.strip() else CyclicSubset(v, 0))
        except ValueError as exc:
            raise RowFileFormatError(f"line {lineno}: {exc}")
        if len(x) != k:
            raise RowFileFormatError(f"line {lineno}: block size {len(x)} != {k}")
        try:
            counts = tuple(int(t) for t in right.split())
        except ValueError:
            raise RowFileFormatError(f"line {lineno}: malformed counts")
        if len(counts) != p:
            raise RowFileFormatError(f"line {lineno}: expected {p} counts, got {len(counts)}")
        if counts != x.difference_row().counts:
            raise RowFileFormatError(f"line {lineno}: counts do not match the block")
        masks.append(x.mask)
        rows.append(counts)
    m = np.asarray(masks, dtype=np.int64) if masks else np.empty(0, dtype=np.int64)
    if len(m) > 1 and not (np.diff(m) > 0).all():
        raise RowFileFormatError("blocks are not sorted by encoding")
    r = np.asarray(rows, dtype=np.uint8) if rows else np.empty((0, p), dtype=np.uint8)
    return RowFile(v, k, kind, bound, m, r)
