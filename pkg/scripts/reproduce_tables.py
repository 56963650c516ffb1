"""Run the census over the bundled HTW fixtures and print the per-rank tables.

    python scripts/reproduce_tables.py --max-crossings 11 --workers 4 --out runs/census
"""
from __future__ import annotations

import argparse
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from coxbridge import KNOTS_DIR
from coxbridge.census import check_bridge_crossing_conjecture, format_summary, run_census, summarize

FIXTURES = {10: "htw_3_10.dt", 11: "htw_11.dt", 12: "htw_12.dt"}


@dataclass
class CensusConfig:
    max_crossings: int = 10
    workers: int = 1
    out: Path | None = None
    robust_dir: Path | None = None


def run(cfg: CensusConfig) -> None:
    out = cfg.out or Path(tempfile.mkdtemp(prefix="coxbridge-census-"))
    rows = []
    for top, name in FIXTURES.items():
        if top > cfg.max_crossings:
            break
        t = time.perf_counter()
        rows += run_census(KNOTS_DIR / name, cfg.robust_dir, out / Path(name).stem, cfg.workers)
        print(f"{name}: {time.perf_counter() - t:.1f}s")
    print(format_summary(summarize(rows)))
    errors = [r for r in rows if r.error]
    bad = check_bridge_crossing_conjecture(rows)
    print(f"{len(rows)} knots, {len(errors)} quarantined, {len(bad)} conjecture violation(s)")
    for r in errors[:10]:
        print(f"  {r.name}: {r.error}")
    print(f"census files under {out}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-crossings", type=int, default=10, choices=sorted(FIXTURES))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path)
    ap.add_argument("--robust", type=Path)
    a = ap.parse_args()
    run(CensusConfig(a.max_crossings, a.workers, a.out, a.robust))


if __name__ == "__main__":
    main()
