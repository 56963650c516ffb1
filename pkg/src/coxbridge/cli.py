"""Command line entry point: ``coxbridge <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import census
from .coxeter import SEARCH_GROUPS, get_group
from .diagram import build_diagram, iter_knot_lines, parse_line
from .errors import CoxbridgeError
from .homsearch import analyze, load_certificates, verify_certificate
from .robust import build_robust_set, default_robust_dir, load_library, save_robust
from .wirtinger import DEFAULT_K_MAX, wirtinger_number

log = logging.getLogger("coxbridge")

EXIT_OK, EXIT_FATAL, EXIT_QUARANTINE = 0, 1, 2


def _groups(text: str | None):
    if not text:
        return None
    groups = [g.strip() for g in text.split(",") if g.strip()]
    unknown = [g for g in groups if g not in SEARCH_GROUPS]
    if unknown:
        raise SystemExit(f"unknown group(s): {', '.join(unknown)}")
    return groups


def cmd_wirtinger(args) -> int:
    status = EXIT_OK
    with open(args.file) as fh:
        for lineno, line in iter_knot_lines(fh):
            try:
                d = build_diagram(parse_line(line, args.format))
                wr = wirtinger_number(d, args.k_max)
            except CoxbridgeError as exc:
                print(f"line{lineno}\terror\t{type(exc).__name__}: {exc}")
                status = EXIT_QUARANTINE
                continue
            seeds = " ".join("(" + ",".join(map(str, d.strands[s].entries)) + ")" for s in wr.seeds)
            print(f"{d.name or f'line{lineno}'}\t{d.m}\t{wr.omega}\t{seeds}")
    return status


def cmd_search(args) -> int:
    groups = _groups(args.groups)
    library = load_library(args.robust, groups or list(SEARCH_GROUPS))
    status = EXIT_OK
    with open(args.file) as fh:
        for lineno, line in iter_knot_lines(fh):
            try:
                d = build_diagram(parse_line(line))
                rep = analyze(d, library, groups)
            except CoxbridgeError as exc:
                print(f"line{lineno}: error {type(exc).__name__}: {exc}")
                status = EXIT_QUARANTINE
                continue
            hits = " ".join(f"{g}={'hit' if v else 'miss'}" for g, v in rep.hits.items())
            if rep.dihedral is not None:
                hits = f"{rep.dihedral.group}=hit"
            print(f"{rep.summary()}  {hits}".rstrip())
    return status


def cmd_robust_gen(args) -> int:
    gt = get_group(args.group)
    rs = build_robust_set(gt, fix_base=not args.no_fix_base, workers=args.threads)
    h = save_robust(rs, args.out)
    print(json.dumps({"group": rs.group, "sets": len(rs), "content_hash": h, **rs.provenance}, indent=1))
    return EXIT_OK


def cmd_census(args) -> int:
    rows = census.run_census(args.file, args.robust, args.out, args.threads, _groups(args.groups))
    n_err = sum(bool(r.error) for r in rows)
    print(f"{len(rows)} knots, {n_err} quarantined -> {Path(args.out) / census.CSV_NAME}")
    return EXIT_QUARANTINE if n_err else EXIT_OK


def cmd_summarize(args) -> int:
    print(census.format_summary(census.summarize(census.read_census(args.dir))))
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    certs = load_certificates(args.file)
    ok = True
    for c in certs:
        good = verify_certificate(c)
        ok &= good
        print(f"{c.knot}\t{c.group}\t{'ok' if good else 'FAILED'}")
    return EXIT_OK if ok else EXIT_FATAL


def cmd_conjecture(args) -> int:
    rows = census.read_census(args.dir)
    bad = census.check_bridge_crossing_conjecture(rows, args.upper_bounds)
    for r in bad:
        print(f"violation: {r.name} crossings={r.crossings} bridge={r.bridge} omega={r.omega}")
    print(f"{len(bad)} violation(s) among {len(rows)} rows")
    return EXIT_OK if not bad else EXIT_QUARANTINE


def build_parser() -> argparse.ArgumentParser:
    env_dir = os.environ.get("COXBRIDGE_ROBUST_DIR")
    ap = argparse.ArgumentParser(prog="coxbridge", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wirtinger", help="Wirtinger number and seed strands of each knot")
    p.add_argument("file")
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--format", choices=["auto", "gauss", "dt"], default="auto")
    p.set_defaults(func=cmd_wirtinger)

    p = sub.add_parser("search", help="search for maximal rank Coxeter quotients")
    p.add_argument("file")
    p.add_argument("--robust", default=env_dir, help="robust-set directory (default: bundled)")
    p.add_argument("--groups", help="comma separated, e.g. A3,H3")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("robust-gen", help="build a robust family of generating sets")
    p.add_argument("--group", required=True, choices=SEARCH_GROUPS)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1, help="worker processes for candidate filtering")
    p.add_argument("--no-fix-base", action="store_true", help="do not fix the base reflection")
    p.set_defaults(func=cmd_robust_gen)

    p = sub.add_parser("census", help="batch run writing census.csv and certificates")
    p.add_argument("file")
    p.add_argument("--robust", default=env_dir, help="robust-set directory (default: bundled)")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--groups")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("summarize", help="per-crossing tables from a census directory")
    p.add_argument("dir")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("verify-cert", help="re-verify a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("conjecture", help="check crossing >= 3*bridge - 1")
    p.add_argument("dir")
    p.add_argument("--upper-bounds", action="store_true", help="also use omega(D) for uncertified rows")
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "robust", None) is None and hasattr(args, "robust"):
        args.robust = str(default_robust_dir())
    try:
        return args.func(args)
    except (CoxbridgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
