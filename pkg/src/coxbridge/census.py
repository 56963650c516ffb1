"""Batch analysis of knot files, census tables and the bridge/crossing check."""
from __future__ import annotations

import csv
import io
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .coxeter import GROUPS_BY_RANK, SEARCH_GROUPS
from .diagram import build_diagram, iter_knot_lines, parse_line
from .homsearch import analyze, dihedral_certificate, save_certificates
from .robust import RobustSet, load_library

CSV_HEADER = ["name", "crossings", "omega", "dihedral", *SEARCH_GROUPS, "bridge", "cert_path", "error"]
CERT_DIR = "certs"
CSV_NAME = "census.csv"


@dataclass
class CensusRow:
    name: str
    crossings: int | None = None
    omega: int | None = None
    dihedral: bool | None = None
    hits: dict[str, bool] = field(default_factory=dict)
    bridge: int | None = None
    cert_path: str = ""
    error: str = ""

    def to_csv(self) -> list[str]:
        def flag(v):
            return "" if v is None else str(int(v))

        def num(v):
            return "" if v is None else str(v)

        return [
            self.name,
            num(self.crossings),
            num(self.omega),
            flag(self.dihedral),
            *(flag(self.hits.get(g)) for g in SEARCH_GROUPS),
            num(self.bridge),
            self.cert_path,
            self.error,
        ]

    @classmethod
    def from_csv(cls, rec: dict) -> CensusRow:
        def num(v):
            return int(v) if v not in ("", None) else None

        return cls(
            name=rec["name"],
            crossings=num(rec["crossings"]),
            omega=num(rec["omega"]),
            dihedral=None if rec["dihedral"] == "" else rec["dihedral"] == "1",
            hits={g: rec[g] == "1" for g in SEARCH_GROUPS if rec[g] != ""},
            bridge=num(rec["bridge"]),
            cert_path=rec["cert_path"],
            error=rec["error"],
        )


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.+-]", "_", name) or "knot"


# per-process state for the worker pool
_LIBRARY: dict[str, RobustSet] = {}


def _init_worker(robust_dir, groups):
    _LIBRARY.clear()
    _LIBRARY.update(load_library(robust_dir, groups))


def analyze_line(
    lineno: int, line: str, library=None, groups: Sequence[str] | None = None
) -> tuple[CensusRow, list]:
    """Analyze one knot line; errors are captured in the row, never raised."""
    library = _LIBRARY if library is None else library
    head, sep, _ = line.partition(":")
    row = CensusRow(name=(sep and head.strip()) or f"line{lineno}")
    try:
        code = parse_line(line)
        row.name = code.name or row.name
        d = build_diagram(code)
        row.crossings = d.m
        rep = analyze(d, library, groups)
    except Exception as exc:  # quarantined per knot
        row.error = f"{type(exc).__name__}: {exc}"
        return row, []
    row.omega = rep.omega
    certs = []
    if rep.omega == 2:
        row.dihedral = rep.dihedral is not None
        if rep.dihedral is not None:
            certs.append(dihedral_certificate(d, rep.dihedral))
        elif rep.dihedral_note:
            row.error = rep.dihedral_note
    row.hits = dict(rep.hits)
    certs.extend(rep.certificates[g] for g in GROUPS_BY_RANK.get(rep.omega, ()) if g in rep.certificates)
    row.bridge = rep.bridge
    return row, certs


def run_census(
    input_path: str | Path,
    robust_dir: str | Path | None,
    out_dir: str | Path,
    workers: int = 1,
    groups: Sequence[str] | None = None,
) -> list[CensusRow]:
    """Analyze every knot in ``input_path``; write ``census.csv`` and certificates."""
    out_dir = Path(out_dir)
    (out_dir / CERT_DIR).mkdir(parents=True, exist_ok=True)
    with open(input_path) as fh:
        lines = list(iter_knot_lines(fh))
    lib_groups = list(groups) if groups is not None else list(SEARCH_GROUPS)

    if workers > 1 and len(lines) > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(robust_dir, lib_groups)) as ex:
            results = list(ex.map(_analyze_star, lines, [groups] * len(lines), chunksize=8))
    else:
        library = load_library(robust_dir, lib_groups)
        results = [analyze_line(n, line, library, groups) for n, line in lines]

    rows = []
    used: set[str] = set()
    for row, certs in results:
        if certs:
            stem = _safe(row.name)
            while stem in used:
                stem += "_"
            used.add(stem)
            rel = f"{CERT_DIR}/{stem}.json"
            save_certificates(certs, out_dir / rel)
            row.cert_path = rel
        rows.append(row)
    (out_dir / CSV_NAME).write_text(rows_to_csv(rows))
    return rows


def _analyze_star(item, groups):
    lineno, line = item
    return analyze_line(lineno, line, None, groups)


def rows_to_csv(rows: Iterable[CensusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.to_csv())
    return buf.getvalue()


def read_census(path: str | Path) -> list[CensusRow]:
    path = Path(path)
    if path.is_dir():
        path = path / CSV_NAME
    with open(path, newline="") as fh:
        return [CensusRow.from_csv(rec) for rec in csv.DictReader(fh)]


# column layout of the per-rank tables
TABLE_COLUMNS = {
    3: ("A3", "H3"),
    4: ("A4", "H4", "D4"),
    5: ("A5", "D5"),
}


def summarize(rows: Sequence[CensusRow]) -> dict[int, dict[int, tuple[int, ...]]]:
    """Per rank, per crossing number: (knots with that omega, hits per group..., union)."""
    crossings = sorted({r.crossings for r in rows if r.crossings is not None})
    out: dict[int, dict[int, tuple[int, ...]]] = {}
    for rank, cols in TABLE_COLUMNS.items():
        table = {}
        for c in crossings:
            sel = [r for r in rows if r.crossings == c and r.omega == rank and not r.error]
            counts = [sum(bool(r.hits.get(g)) for r in sel) for g in cols]
            union = sum(any(r.hits.get(g) for g in cols) for r in sel)
            table[c] = (len(sel), *counts, union)
        out[rank] = table
    return out


def format_summary(tables: dict[int, dict[int, tuple[int, ...]]]) -> str:
    lines = []
    for rank, table in tables.items():
        cols = TABLE_COLUMNS[rank]
        lines.append(f"omega(D) = {rank}")
        lines.append("crossings," + f"omega={rank}," + ",".join(cols) + ",any")
        for c, vals in table.items():
            lines.append(f"{c}," + ",".join(map(str, vals)))
        lines.append("")
    return "\n".join(lines)


def check_bridge_crossing_conjecture(
    rows: Sequence[CensusRow], use_upper_bounds: bool = False
) -> list[CensusRow]:
    """Rows with bridge number n >= 3 whose crossing number is below 3n - 1.

    With ``use_upper_bounds`` uncertified rows are checked against omega(D);
    passing that check also proves the inequality since omega(D) >= bridge.
    """
    bad = []
    for r in rows:
        n = r.bridge if r.bridge is not None else (r.omega if use_upper_bounds else None)
        if n is None or n < 3 or r.crossings is None:
            continue
        if r.crossings < 3 * n - 1:
            bad.append(r)
    return bad
