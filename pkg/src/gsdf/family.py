"""Quadruples of base blocks and their on-disk format.

A family file holds one or more records.  Each record is a header line

    v k1 k2 k3 k4 lambda type

followed by four lines of comma-separated block elements in ascending
order (an empty line denotes the empty block).  `type` gives the
positional block tags, e.g. ``kkss`` or ``skss`` (k = skew,
s = symmetric, - = neither).  Lines starting with ``#`` are comments.
"""
from __future__ import annotations

from dataclasses import dataclass

from .params import GsParamSet
from .zmod import CyclicSubset

TAG_SKEW = "k"
TAG_SYMMETRIC = "s"
TAG_NONE = "-"


def block_tag(x: CyclicSubset) -> str:
    if x.is_skew():
        return TAG_SKEW
    if x.is_symmetric():
        return TAG_SYMMETRIC
    return TAG_NONE


@dataclass(frozen=True)
class Family:
    """Four blocks in a common Z_v together with their parameter set."""

    params: GsParamSet
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != 4:
            raise ValueError("a family has exactly four blocks")
        if any(b.v != self.params.v for b in self.blocks):
            raise ValueError("blocks live in different groups")
        sizes = tuple(len(b) for b in self.blocks)
        if sizes != self.params.k:
            raise ValueError(f"block sizes {sizes} do not match {self.params}")

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def tags(self) -> tuple:
        return tuple(block_tag(b) for b in self.blocks)

    @property
    def is_typed(self) -> bool:
        return TAG_NONE not in self.tags

    @property
    def pattern(self) -> str:
        """Positional tag string, e.g. 'ksss'."""
        return "".join(self.tags)

    @property
    def type_name(self) -> str:
        """Tags sorted with skew first, e.g. 'kkss'; requires a typed family."""
        if not self.is_typed:
            raise ValueError("family has an untyped block")
        return "".join(sorted(self.tags))

    def __str__(self):
        return f"{self.params} " + " ".join(str(b) for b in self.blocks)


def family_from_blocks(v: int, blocks) -> Family:
    """Build a family from element iterables; lambda is sum |X_i| - v."""
    subs = tuple(b if isinstance(b, CyclicSubset) else CyclicSubset.from_elements(v, b)
                 for b in blocks)
    k = tuple(len(b) for b in subs)
    return Family(GsParamSet(v, k, sum(k) - v), subs)


def format_family(fam: Family) -> str:
    head = f"{fam.v} {' '.join(map(str, fam.params.k))} {fam.params.lam} {fam.pattern}"
    body = "\n".join(",".join(map(str, b.elements)) for b in fam.blocks)
    return head + "\n" + body + "\n"


def write_families(path, families) -> None:
    with open(path, "w") as fh:
        for fam in families:
            fh.write(format_family(fam))


def write_family(path, fam: Family) -> None:
    write_families(path, [fam])


class FamilyFormatError(ValueError):
    pass


def _parse_block_line(v, line, lineno):
    line = line.strip()
    if not line:
        return CyclicSubset(v, 0)
    try:
        elems = [int(tok) for tok in line.split(",")]
    except ValueError:
        raise FamilyFormatError(f"line {lineno}: malformed element list {line!r}")
    try:
        return CyclicSubset.from_elements(v, elems)
    except ValueError as exc:
        raise FamilyFormatError(f"line {lineno}: {exc}")


def read_families(path) -> list:
    """Parse every record in a family file, validating sizes, lambda and tags."""
    with open(path) as fh:
        raw = fh.readlines()
    lines = [(i + 1, ln.rstrip("\n")) for i, ln in enumerate(raw)
             if not ln.lstrip().startswith("#")]
    # records are a header plus exactly four block lines; blank lines are
    # meaningful only in block position (empty block), so strip blanks
    # between records.
    families = []
    pos = 0
    while pos < len(lines):
        lineno, header = lines[pos]
        if not header.strip():
            pos += 1
            continue
        fields = header.split()
        if len(fields) != 7:
            raise FamilyFormatError(
                f"line {lineno}: header needs 'v k1 k2 k3 k4 lambda type', got {header!r}")
        try:
            v, k1, k2, k3, k4, lam = map(int, fields[:6])
        except ValueError:
            raise FamilyFormatError(f"line {lineno}: non-integer field in header")
        tag_str = fields[6]
        if len(tag_str) != 4 or any(t not in "ks-" for t in tag_str):
            raise FamilyFormatError(f"line {lineno}: bad type field {tag_str!r}")
        if pos + 4 >= len(lines):
            raise FamilyFormatError(f"line {lineno}: record truncated")
        blocks = [_parse_block_line(v, lines[pos + 1 + j][1], lines[pos + 1 + j][0])
                  for j in range(4)]
        try:
            p = GsParamSet(v, (k1, k2, k3, k4), lam)
            fam = Family(p, tuple(blocks))
        except ValueError as exc:
            raise FamilyFormatError(f"line {lineno}: {exc}")
        if fam.tags != tuple(tag_str):
            raise FamilyFormatError(
                f"line {lineno}: declared type {tag_str!r} but blocks are "
                f"{''.join(fam.tags)!r}")
        families.append(fam)
        pos += 5
    return families


def read_family(path) -> Family:
    """Parse a family file expected to hold exactly one record."""
    fams = read_families(path)
    if len(fams) != 1:
        raise FamilyFormatError(f"expected one family record, found {len(fams)}")
    return fams[0]
