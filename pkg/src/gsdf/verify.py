"""Exact certification of families and the Hadamard matrices they induce.

From a family (X_1..X_4) in Z_v form the +-1 circulants A_i of the block
binary sequences.  The family is a difference family with index lam iff
the aggregated difference multiplicities are constant, equivalently iff

    A_1 A_1^T + A_2 A_2^T + A_3 A_3^T + A_4 A_4^T = 4 v I.

Plugging the A_i into the array (R the back-circulant identity,
Z_i = A_{i+1}, all products with R reordered as shown):

        [  Z0      Z1 R     Z2 R     Z3 R  ]
    H = [ -Z1 R    Z0      -Z3^T R   Z2^T R ]
        [ -Z2 R    Z3^T R   Z0      -Z1^T R ]
        [ -Z3 R   -Z2^T R   Z1^T R   Z0    ]

yields a Hadamard matrix of order 4v; when X_1 is skew, H is of skew
type (H + H^T = 2I).  The three block symmetry patterns correspond to
the classical special matrix families: one skew block gives good
matrices (A_1 skew-type plus three symmetric back-circulants B_i = A_i R,
pairwise amicable), two skew blocks give G-matrices, three give best
matrices.  All checks here are exact integer identities.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .family import TAG_SKEW, Family
from .zmod import CyclicSubset


def _as_row(x, v=None):
    if isinstance(x, CyclicSubset):
        return np.asarray(x.binary_sequence().entries, dtype=np.int64)
    row = np.asarray(x, dtype=np.int64)
    if row.ndim != 1:
        raise ValueError("expected a 1-d first row")
    return row


def circulant(x) -> np.ndarray:
    """Circulant matrix with C[i, j] = row[(j - i) mod v]."""
    row = _as_row(x)
    v = len(row)
    j = np.arange(v)
    return row[(j[None, :] - j[:, None]) % v]


def back_circulant(x) -> np.ndarray:
    """Back-circulant matrix with B[i, j] = row[(i + j) mod v]; symmetric."""
    row = _as_row(x)
    v = len(row)
    j = np.arange(v)
    return row[(j[None, :] + j[:, None]) % v]


def r_matrix(v: int) -> np.ndarray:
    """The back-circulant identity: R[i, j] = 1 iff i + j = v - 1."""
    return np.eye(v, dtype=np.int64)[::-1]


def family_circulants(fam: Family) -> list:
    return [circulant(b) for b in fam.blocks]


@dataclass(frozen=True)
class DiffFamilyCheck:
    """Outcome of the difference-family test; sums[d-1] aggregates d and lists
    the total multiplicity of difference d over all blocks."""

    ok: bool
    lam: object  # the constant index, when ok
    sums: tuple

    def __bool__(self):
        return self.ok


def check_difference_family(blocks) -> DiffFamilyCheck:
    """Do the blocks' difference multiplicities sum to a constant?"""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("no blocks")
    v = blocks[0].v
    if any(b.v != v for b in blocks):
        raise ValueError("blocks live in different groups")
    sums = tuple(sum(b.difference_count(d) for b in blocks) for d in range(1, v))
    if v == 1:
        return DiffFamilyCheck(True, sum(len(b) for b in blocks) - v, sums)
    ok = all(s == sums[0] for s in sums)
    return DiffFamilyCheck(ok, sums[0] if ok else None, sums)


def check_gs_matrices(fam_or_mats) -> bool:
    """sum A_i A_i^T = 4vI for the four block circulants."""
    mats = (family_circulants(fam_or_mats) if isinstance(fam_or_mats, Family)
            else [np.asarray(m, dtype=np.int64) for m in fam_or_mats])
    v = mats[0].shape[0]
    acc = sum(m @ m.T for m in mats)
    return bool(np.array_equal(acc, 4 * v * np.eye(v, dtype=np.int64)))


def build_gs_array(fam_or_mats) -> np.ndarray:
    mats = (family_circulants(fam_or_mats) if isinstance(fam_or_mats, Family)
            else [np.asarray(m, dtype=np.int64) for m in fam_or_mats])
    z0, z1, z2, z3 = mats
    r = r_matrix(z0.shape[0])
    z1r, z2r, z3r = z1 @ r, z2 @ r, z3 @ r
    z1tr, z2tr, z3tr = z1.T @ r, z2.T @ r, z3.T @ r
    return np.block([
        [z0, z1r, z2r, z3r],
        [-z1r, z0, -z3tr, z2tr],
        [-z2r, z3tr, z0, -z1tr],
        [-z3r, -z2tr, z1tr, z0],
    ])


def is_hadamard(h: np.ndarray) -> bool:
    h = np.asarray(h)
    n = h.shape[0]
    if h.ndim != 2 or h.shape != (n, n):
        return False
    if not np.isin(h, (-1, 1)).all():
        return False
    return bool(np.array_equal(h.astype(np.int64) @ h.T.astype(np.int64),
                               n * np.eye(n, dtype=np.int64)))


def is_skew_hadamard(h: np.ndarray) -> bool:
    h = np.asarray(h)
    return is_hadamard(h) and bool(
        np.array_equal(h + h.T, 2 * np.eye(h.shape[0], dtype=h.dtype)))


def _amicable(m, n) -> bool:
    return bool(np.array_equal(m @ n.T, n @ m.T))


def check_good_matrices(fam: Family) -> bool:
    """Good-matrix identities for a family with pattern ksss.

    A_1 must be of skew type, B_i = A_i R symmetric, the four matrices
    pairwise amicable, and their Gram sum 4vI.
    """
    if fam.pattern != "ksss":
        raise ValueError(f"good matrices need pattern ksss, got {fam.pattern!r}")
    v = fam.v
    a1, a2, a3, a4 = family_circulants(fam)
    r = r_matrix(v)
    eye = np.eye(v, dtype=np.int64)
    mats = [a1, a2 @ r, a3 @ r, a4 @ r]
    if not np.array_equal(a1 + a1.T, 2 * eye):
        return False
    if any(not np.array_equal(b, b.T) for b in mats[1:]):
        return False
    if any(not _amicable(m, n) for i, m in enumerate(mats)
           for n in mats[i + 1:]):
        return False
    acc = sum(m @ m.T for m in mats)
    return bool(np.array_equal(acc, 4 * v * eye))


def check_g_matrices(fam: Family) -> bool:
    """G-matrix identities: pattern kkss plus the circulant Gram condition."""
    if fam.pattern != "kkss":
        raise ValueError(f"G-matrices need pattern kkss, got {fam.pattern!r}")
    return check_gs_matrices(fam)


def check_best_matrices(fam: Family) -> bool:
    """Best-matrix identities: pattern kkks plus the circulant Gram condition."""
    if fam.pattern != "kkks":
        raise ValueError(f"best matrices need pattern kkks, got {fam.pattern!r}")
    return check_gs_matrices(fam)


_SPECIAL_CHECKS = {"ksss": check_good_matrices, "kkss": check_g_matrices,
                   "kkks": check_best_matrices}


@dataclass(frozen=True)
class FamilyCertificate:
    family: Family
    diff: DiffFamilyCheck
    lam_matches: bool
    gs: bool
    hadamard: bool
    skew_type: object       # None when X_1 is not skew
    special_name: str       # 'good'/'g'/'best' or '' when not applicable
    special: object         # outcome of the pattern-specific check, or None

    @property
    def ok(self) -> bool:
        checks = [self.diff.ok, self.lam_matches, self.gs, self.hadamard]
        if self.skew_type is not None:
            checks.append(self.skew_type)
        if self.special is not None:
            checks.append(self.special)
        return all(checks)


def verify_family(fam: Family) -> FamilyCertificate:
    """Run every applicable exact check on a family."""
    diff = check_difference_family(fam.blocks)
    lam_matches = diff.ok and diff.lam == fam.params.lam
    gs = check_gs_matrices(fam)
    h = build_gs_array(fam)
    had = is_hadamard(h)
    skew_type = is_skew_hadamard(h) if fam.tags[0] == TAG_SKEW else None
    name, special = "", None
    checker = _SPECIAL_CHECKS.get(fam.pattern)
    if checker is not None:
        name = {"ksss": "good", "kkss": "g", "kkks": "best"}[fam.pattern]
        special = checker(fam)
    return FamilyCertificate(fam, diff, lam_matches, gs, had, skew_type,
                             name, special)


def hadamard_text(h: np.ndarray) -> str:
    """Render a +-1 matrix as '+'/'-' rows."""
    return "\n".join("".join("+" if e == 1 else "-" for e in row) for row in h) + "\n"


def write_hadamard(path, h: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write(hadamard_text(h))
