"""Command-line front end.

Exit codes: 0 success (or verified), 1 exhaustive search found nothing
(or a recomputed verdict disagrees with the stored table), 2 bad input.
The GSDF_JOBS environment variable sets the default worker count.
"""
from __future__ import annotations

import argparse
import os
import sys

from .blockgen import (RowFileFormatError, collect_rows, read_row_file,
                       write_row_file)
from .catalog import catalog_entries, catalog_entry, catalog_groups, table_rows
from .equivalence import classify, small_classes
from .family import FamilyFormatError, format_family, read_families
from .matcher import DEFAULT_THRESHOLD, bins_match
from .params import (TYPE_NAMES, enumerate_param_sets, searchable_param_sets,
                     type_applicable)
from .search import SearchOptions, search_order, table_comparison
from .verify import build_gs_array, verify_family, write_hadamard


def _default_jobs():
    try:
        return max(1, int(os.environ.get("GSDF_JOBS", "1")))
    except ValueError:
        return 1


def cmd_params(args) -> int:
    sets = (enumerate_param_sets(args.v) if args.all
            else searchable_param_sets(args.v))
    if args.type:
        sets = [p for p in sets if type_applicable(p, args.type)]
    for p in sets:
        types = ",".join(t for t in TYPE_NAMES if type_applicable(p, t))
        print(f"{p} types:{types or '-'}")
    if not sets:
        print("no parameter sets")
    return 0


def cmd_generate(args) -> int:
    rf = collect_rows(args.v, args.k, args.kind, filtered=not args.no_filter,
                      bound=args.bound)
    write_row_file(args.out, rf)
    print(f"{len(rf)} blocks -> {args.out}")
    return 0


def cmd_match(args) -> int:
    files = [read_row_file(p) for p in args.files]
    quads = bins_match(files, args.lam, threshold=args.threshold, jobs=args.jobs)
    from .family import family_from_blocks
    fams = [family_from_blocks(files[0].v, quad) for quad in quads]
    text = "".join(format_family(f) for f in fams)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not fams:
        print("no solutions: the problem has no matching quadruple")
        return 1
    print(f"# {len(fams)} families")
    return 0


def cmd_classify(args) -> int:
    fams = read_families(args.family_file)
    classes = small_classes(fams) if args.small else classify(fams)
    kind = "small " if args.small else ""
    print(f"{len(fams)} families, {len(classes)} {kind}equivalence classes")
    for i, c in enumerate(classes, 1):
        print(f"class {i} size {c.size}: {c.representative}")
    return 0


def cmd_verify(args) -> int:
    fams = read_families(args.family_file)
    if not fams:
        print("error: no family records", file=sys.stderr)
        return 2
    all_ok = True
    for i, fam in enumerate(fams, 1):
        cert = verify_family(fam)
        parts = [f"difference-family={'ok' if cert.diff.ok else 'FAIL'}",
                 f"lambda={'ok' if cert.lam_matches else 'FAIL'}",
                 f"gram={'ok' if cert.gs else 'FAIL'}",
                 f"hadamard={'ok' if cert.hadamard else 'FAIL'}"]
        if cert.skew_type is not None:
            parts.append(f"skew-type={'ok' if cert.skew_type else 'FAIL'}")
        if cert.special is not None:
            parts.append(f"{cert.special_name}-matrices={'ok' if cert.special else 'FAIL'}")
        print(f"record {i} {fam.params} {fam.pattern}: " + " ".join(parts))
        all_ok &= cert.ok
    if args.hadamard:
        if len(fams) != 1:
            print("error: --hadamard needs a single-record file", file=sys.stderr)
            return 2
        write_hadamard(args.hadamard, build_gs_array(fams[0]))
        print(f"hadamard matrix of order {4 * fams[0].v} -> {args.hadamard}")
    return 0 if all_ok else 2


def cmd_search(args) -> int:
    options = SearchOptions(filtered=not args.no_filter, threshold=args.threshold,
                            jobs=args.jobs, classified=not args.no_classify)
    params_filter = tuple(map(int, args.param.split(","))) if args.param else None
    outcomes = search_order(args.v, args.type, options, params_filter)
    if not outcomes:
        print("no applicable parameter sets")
        return 2
    found = 0
    for out in outcomes:
        print(f"{out.params} {args.type}: {out.verdict}" +
              (f", {len(out.families)} families" if out.applicable else ""))
        if out.classes:
            print(f"  {len(out.classes)} equivalence classes, "
                  f"{len(out.smalls)} small classes")
        if args.out_dir and out.families:
            name = f"{args.v}-{args.type}-" + "-".join(map(str, out.params.k)) + ".fam"
            path = os.path.join(args.out_dir, name)
            with open(path, "w") as fh:
                for fam in out.families:
                    fh.write(format_family(fam))
            print(f"  wrote {path}")
        found += len(out.families)
    return 0 if found else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        for (v, t), es in sorted(catalog_groups().items()):
            print(f"v={v} {t}: {len(es)} classes "
                  f"({', '.join(e.label for e in es)})")
        return 0
    if args.action == "show":
        if not args.label:
            print("error: show needs --label", file=sys.stderr)
            return 2
        e = catalog_entry(args.label)
        sys.stdout.write(format_family(e.family))
        return 0
    # verify-all
    bad = []
    for e in catalog_entries():
        cert = verify_family(e.family)
        print(f"{e.label} {e.params} {e.type_name}: "
              f"{'ok' if cert.ok else 'FAIL'}")
        if not cert.ok:
            bad.append(e.label)
    print(f"{len(catalog_entries())} entries, {len(bad)} failures")
    return 0 if not bad else 2


def cmd_table1(args) -> int:
    if not args.recompute:
        for row in table_rows():
            print(f"{row.params} " +
                  " ".join(f"{t}={v}" for t, v in zip(TYPE_NAMES, row.verdicts)))
        return 0
    options = SearchOptions(jobs=args.jobs, classified=False)
    rows = table_comparison(args.max_v, options)
    bad = 0
    for params, t, expected, got in rows:
        status = "ok" if expected == got else "MISMATCH"
        bad += status != "ok"
        print(f"{params} {t}: table={expected} computed={got} {status}")
    print(f"{len(rows)} verdicts recomputed, {bad} mismatches")
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gsdf",
        description="search, classify and certify four-block difference "
                    "families with skew/symmetric blocks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="list parameter sets of an order")
    p.add_argument("v", type=int)
    p.add_argument("--all", action="store_true",
                   help="include sets with k1 < (v-1)/2")
    p.add_argument("--type", choices=TYPE_NAMES)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("generate", help="write a candidate row file")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("kind", choices=("skew", "symmetric"))
    p.add_argument("--no-filter", action="store_true")
    p.add_argument("--bound", type=float, default=None,
                   help="spectral filter bound (default 4v)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("match", help="match four row files into families")
    p.add_argument("files", nargs=4)
    p.add_argument("--lam", type=int, required=True)
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("classify", help="group families into equivalence classes")
    p.add_argument("family_file")
    p.add_argument("--small", action="store_true",
                   help="classes under global dilation only")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="certify families from a file")
    p.add_argument("family_file")
    p.add_argument("--hadamard", metavar="OUT",
                   help="also write the order-4v Hadamard matrix as +/- text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive search for one order and type")
    p.add_argument("v", type=int)
    p.add_argument("type", choices=TYPE_NAMES)
    p.add_argument("--param", help="restrict to one size vector k1,k2,k3,k4")
    p.add_argument("--no-filter", action="store_true")
    p.add_argument("--no-classify", action="store_true")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--out-dir", help="write family files here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("catalog", help="bundled classified families")
    p.add_argument("action", choices=("list", "show", "verify-all"))
    p.add_argument("--label", help="entry label for 'show', e.g. 43-kkks-a")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("table1", help="existence table; optionally recompute")
    p.add_argument("--recompute", action="store_true")
    p.add_argument("--max-v", type=int, default=21)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=cmd_table1)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FamilyFormatError, RowFileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
