"""Equivalence of typed families and their classification.

The elementary transformations are per-block translation X_i -> X_i + g,
per-block negation X_i -> -X_i, global dilation X_i -> u X_i by a unit u,
and exchange of two equal-size blocks.  Compositions have the form

    Y_i = e_i * u * X_{pi(i)} + g_i

with a common unit u, signs e_i, translations g_i and a size-preserving
permutation pi (negation is dilation by v-1, so signs fold into per-block
unit multipliers +-u).  All four transformations preserve difference rows,
hence map difference families to difference families with the same
parameters; they do not generally preserve the skew/symmetric block tags.

Two typed families are equivalent iff some composition maps one onto the
other.  The canonical key of a typed family is the least sorted block-key
tuple over the *typed* members of its orbit; since the typed subset of an
orbit is itself an orbit invariant, key equality decides equivalence.
Enumerating typed members factors per block: for each unit multiplier m,
only the few translates of m*X_i that are again skew or symmetric can
appear, and those are found by direct scan (usually just g = 0: a skew
set is never periodic, and a symmetric aperiodic set admits only the
trivial symmetric translate).

Small (coarser grouping) classes use only global dilations, acting on the
unordered multiset of tagged blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import gcd

from .family import TAG_NONE, TAG_SKEW, TAG_SYMMETRIC, Family
from .zmod import CyclicSubset, _rotate

_TAG_CODE = {TAG_SKEW: 0, TAG_SYMMETRIC: 1}


# --- elementary transformations ---------------------------------------------

@dataclass(frozen=True)
class Translate:
    index: int
    shift: int


@dataclass(frozen=True)
class Negate:
    index: int


@dataclass(frozen=True)
class Dilate:
    unit: int


@dataclass(frozen=True)
class Exchange:
    i: int
    j: int


def apply_transform(fam: Family, t) -> Family:
    blocks = list(fam.blocks)
    if isinstance(t, Translate):
        blocks[t.index] = blocks[t.index].translate(t.shift)
    elif isinstance(t, Negate):
        blocks[t.index] = blocks[t.index].negate()
    elif isinstance(t, Dilate):
        blocks = [b.dilate(t.unit) for b in blocks]
    elif isinstance(t, Exchange):
        if len(blocks[t.i]) != len(blocks[t.j]):
            raise ValueError("only equal-size blocks may be exchanged")
        blocks[t.i], blocks[t.j] = blocks[t.j], blocks[t.i]
    else:
        raise TypeError(f"not a transformation: {t!r}")
    return Family(fam.params, tuple(blocks))


def units(v: int) -> tuple:
    return tuple(u for u in range(1, v) if gcd(u, v) == 1)


# --- cached mask-level helpers ----------------------------------------------

@lru_cache(maxsize=None)
def _elements(v, mask):
    return CyclicSubset(v, mask).elements


@lru_cache(maxsize=None)
def _negate(v, mask):
    m = 0
    for e in _elements(v, mask):
        m |= 1 << (-e % v)
    return m


@lru_cache(maxsize=None)
def _dilate(v, mask, u):
    m = 0
    for e in _elements(v, mask):
        m |= 1 << (u * e % v)
    return m


def _tag_of(v, mask):
    neg = _negate(v, mask)
    if v % 2 == 1 and 2 * mask.bit_count() + 1 == v and mask & neg == 0:
        return 0
    if neg == mask:
        return 1
    return None


@lru_cache(maxsize=None)
def _typed_translates(v, mask):
    """Distinct translates of the set that are skew or symmetric, with tags."""
    seen, out = set(), []
    for g in range(v):
        t = _rotate(mask, v, g)
        if t in seen:
            continue
        seen.add(t)
        tag = _tag_of(v, t)
        if tag is not None:
            out.append((t, tag))
    return tuple(out)


def _block_key(v, mask, tagcode):
    return (-mask.bit_count(), tagcode, _elements(v, mask))


@lru_cache(maxsize=None)
def _block_options(v, mask, tagcode, u):
    """Sorted candidate block keys for e*u*X + g, over signs e and typed g."""
    mults = (u,) if tagcode == 1 else (u, v - u)
    opts = set()
    for m in mults:
        dm = _dilate(v, mask, m)
        for t, tc in _typed_translates(v, dm):
            opts.add(_block_key(v, t, tc))
    return tuple(sorted(opts))


def _tagged_blocks(fam: Family):
    tags = fam.tags
    if TAG_NONE in tags:
        raise ValueError("equivalence machinery needs typed families")
    return tuple((b.mask, _TAG_CODE[t]) for b, t in zip(fam.blocks, tags))


def family_sort_key(fam: Family) -> tuple:
    """The family's own sorted block keys, prefixed by v (no transformations)."""
    v = fam.v
    return (v,) + tuple(sorted(_block_key(v, m, tc) for m, tc in _tagged_blocks(fam)))


def canonical_key(fam: Family) -> tuple:
    """Least sorted block-key tuple over the typed members of the orbit."""
    v = fam.v
    tagged = _tagged_blocks(fam)
    best = None
    for u in units(v):
        opts = [_block_options(v, m, tc, u) for m, tc in tagged]
        for combo in product(*opts):
            cand = tuple(sorted(combo))
            if best is None or cand < best:
                best = cand
    return (v,) + best


def small_key(fam: Family) -> tuple:
    """Least sorted block-key tuple over global dilations only."""
    v = fam.v
    tagged = _tagged_blocks(fam)
    best = None
    for u in units(v):
        cand = tuple(sorted(_block_key(v, _dilate(v, m, u), tc) for m, tc in tagged))
        if best is None or cand < best:
            best = cand
    return (v,) + best


def are_equivalent(f1: Family, f2: Family) -> bool:
    if f1.v != f2.v:
        return False
    return canonical_key(f1) == canonical_key(f2)


@dataclass(frozen=True)
class FamilyClass:
    key: tuple
    representative: Family
    size: int
    members: tuple


def _group_by(families, keyfunc) -> list:
    buckets = {}
    for fam in families:
        buckets.setdefault(keyfunc(fam), []).append(fam)
    classes = []
    for key in sorted(buckets):
        members = buckets[key]
        rep = min(members, key=family_sort_key)
        classes.append(FamilyClass(key, rep, len(members), tuple(members)))
    return classes


def classify(families) -> list:
    """Partition typed families into equivalence classes, sorted by key."""
    return _group_by(families, canonical_key)


def small_classes(families) -> list:
    """Partition under global dilation alone (a refinement of classify)."""
    return _group_by(families, small_key)


# --- reference oracle --------------------------------------------------------

def _translatable(v, mask_a, mask_b):
    if mask_a.bit_count() != mask_b.bit_count():
        return False
    if mask_b == 0:
        return mask_a == 0
    b0 = (mask_b & -mask_b).bit_length() - 1
    for a in _elements(v, mask_a):
        if _rotate(mask_a, v, (b0 - a) % v) == mask_b:
            return True
    return False


def equivalent_by_enumeration(f1: Family, f2: Family) -> bool:
    """Decide equivalence by enumerating compositions e*u*X_pi + g directly.

    Exponential in nothing but v and meant for cross-checking at small
    orders; no typing assumptions.
    """
    if f1.v != f2.v:
        return False
    v = f1.v
    m1 = [b.mask for b in f1.blocks]
    m2 = [b.mask for b in f2.blocks]
    sizes1 = [m.bit_count() for m in m1]
    sizes2 = [m.bit_count() for m in m2]
    if sorted(sizes1) != sorted(sizes2):
        return False
    perms = [p for p in permutations(range(4))
             if all(sizes1[p[i]] == sizes2[i] for i in range(4))]
    for u in units(v):
        for signs in product((1, -1), repeat=4):
            mults = [(s * u) % v for s in signs]
            for p in perms:
                if all(_translatable(v, _dilate(v, m1[p[i]], mults[i]), m2[i])
                       for i in range(4)):
                    return True
    return False
