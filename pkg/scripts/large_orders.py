#!/usr/bin/env python3
"""Long-running exhaustive classification for the larger odd orders.

Reproduces the classified families for v = 33..49 from scratch and
compares class counts with the bundled catalog (order 49 is included as
a nonexistence check: its kkss parameter set admits no family). These
runs grow steeply with v — order 33 finishes in minutes, order 37 takes
hours, and orders 41..45 are multi-day on a single core. Restrict the
workload with --order/--type and parallelise with --jobs.

    python scripts/large_orders.py --order 37 --type kkss --jobs 4
"""
import argparse
import os
import sys
import time

from gsdf.catalog import catalog_groups, table_verdict
from gsdf.family import write_families
from gsdf.params import TYPE_NAMES, searchable_param_sets, type_applicable
from gsdf.search import SearchOptions, search_param

ORDERS = (33, 37, 41, 43, 45, 49)


def expected_classes(v, type_name):
    group = catalog_groups().get((v, type_name), ())
    return len(group)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, choices=ORDERS, action="append",
                    help="restrict to one or more orders (default: all)")
    ap.add_argument("--type", choices=TYPE_NAMES, action="append",
                    help="restrict to one or more symmetry types")
    ap.add_argument("--jobs", type=int,
                    default=max(1, int(os.environ.get("GSDF_JOBS", "1"))))
    ap.add_argument("--threshold", type=int, default=10 ** 7)
    ap.add_argument("--out-dir", help="write matched families here")
    args = ap.parse_args(argv)

    orders = args.order or ORDERS
    types = args.type or TYPE_NAMES
    options = SearchOptions(jobs=args.jobs, threshold=args.threshold)
    t0 = time.time()
    failures = 0
    for v in orders:
        for type_name in types:
            sets = [p for p in searchable_param_sets(v)
                    if type_applicable(p, type_name)]
            if not sets:
                continue
            if all(table_verdict(v, p.k, type_name) == "no" for p in sets):
                print(f"v={v} {type_name}: expected empty")
            classes = 0
            for params in sets:
                out = search_param(params, type_name, options)
                classes += len(out.classes)
                print(f"v={v} {type_name} {params}: {len(out.families)} "
                      f"families, {len(out.classes)} classes "
                      f"[{time.time() - t0:.0f}s]")
                if args.out_dir and out.families:
                    os.makedirs(args.out_dir, exist_ok=True)
                    name = (f"{v}-{type_name}-"
                            + "-".join(map(str, params.k)) + ".fam")
                    path = os.path.join(args.out_dir, name)
                    write_families(path, out.families)
                    print(f"  wrote {path}")
            want = expected_classes(v, type_name)
            status = "ok" if classes == want else "MISMATCH"
            failures += status != "ok"
            print(f"v={v} {type_name}: {classes} classes, catalog has {want} "
                  f"-> {status}")
    print(f"done in {time.time() - t0:.0f}s, {failures} mismatches")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
