"""End-to-end exhaustive search: parameters -> blocks -> matching -> classes.

For a symmetry type and parameter set (k1 = ... = (v-1)/2 on the skew
positions), candidate row sets are generated per position, matched into
families, re-verified from scratch, and optionally classified.  Verdicts
aggregate over all parameter sets of an order, reproducing the existence
table: 'yes' when some parameter set admits a family of the type, 'no'
when the exhaustive runs all come up empty, 'x' when no parameter set
can carry the type.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .blockgen import collect_rows
from .catalog import table_rows
from .equivalence import classify, small_classes
from .family import Family
from .matcher import DEFAULT_THRESHOLD, bins_match
from .params import (TYPE_NAMES, GsParamSet, searchable_param_sets,
                     type_applicable, type_tags)
from .verify import verify_family


@dataclass
class SearchOptions:
    filtered: bool = True
    threshold: int = DEFAULT_THRESHOLD
    jobs: int = 1
    classified: bool = True


@dataclass
class ParamOutcome:
    """Search result for one (parameter set, type) pair."""

    params: GsParamSet
    type_name: str
    applicable: bool
    families: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    smalls: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "x"
        return "yes" if self.families else "no"


def row_files_for(params: GsParamSet, type_name: str, filtered=True, cache=None):
    """The four per-position candidate row sets for a type at a parameter set."""
    tags = type_tags(type_name)
    v = params.v
    files = []
    for tag, k in zip(tags, params.k):
        kind = "skew" if tag == "k" else "symmetric"
        key = (v, k, kind, filtered)
        if cache is not None and key in cache:
            files.append(cache[key])
            continue
        rf = collect_rows(v, k, kind, filtered=filtered)
        if cache is not None:
            cache[key] = rf
        files.append(rf)
    return files


def search_param(params: GsParamSet, type_name: str,
                 options: SearchOptions = None, cache=None) -> ParamOutcome:
    """Exhaustive search for one parameter set and type; families re-verified."""
    options = options or SearchOptions()
    if not type_applicable(params, type_name):
        return ParamOutcome(params, type_name, applicable=False)
    files = row_files_for(params, type_name, filtered=options.filtered, cache=cache)
    quads = bins_match(files, params.lam, threshold=options.threshold,
                       jobs=options.jobs)
    families = [Family(params, quad) for quad in quads]
    for fam in families:
        cert = verify_family(fam)
        if not cert.ok:
            raise RuntimeError(f"matcher emitted an invalid family: {fam}")
    out = ParamOutcome(params, type_name, True, families)
    if options.classified and families:
        out.classes = classify(families)
        out.smalls = small_classes(families)
    return out


def search_order(v: int, type_name: str, options: SearchOptions = None,
                 params_filter=None) -> list:
    """Search every parameter set of an order (k1 = (v-1)/2) for one type."""
    if type_name not in TYPE_NAMES:
        raise ValueError(f"unknown type {type_name!r}")
    options = options or SearchOptions()
    cache = {}
    outcomes = []
    for p in searchable_param_sets(v):
        if params_filter is not None and p.k != tuple(params_filter):
            continue
        outcomes.append(search_param(p, type_name, options, cache))
    return outcomes


def computed_verdicts(v: int, options: SearchOptions = None) -> dict:
    """Recompute the existence verdict of every (parameter set, type) at v."""
    options = options or SearchOptions(classified=False)
    cache = {}
    verdicts = {}
    for p in searchable_param_sets(v):
        for t in TYPE_NAMES:
            verdicts[(p.k, t)] = search_param(p, t, options, cache).verdict
    return verdicts


def table_comparison(max_v: int, options: SearchOptions = None) -> list:
    """Recompute table verdicts up to max_v; rows of (params, type, expected, got)."""
    rows = []
    per_order = {}
    for row in table_rows():
        v = row.params.v
        if v > max_v:
            continue
        if v not in per_order:
            per_order[v] = computed_verdicts(v, options)
        for t in TYPE_NAMES:
            rows.append((row.params, t, row.verdict(t), per_order[v][(row.params.k, t)]))
    return rows
