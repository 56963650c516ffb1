"""Rebuild the bundled robust-set files for every search group.

    python scripts/build_robust_sets.py [--out DIR] [--workers N] [--groups A3,H3]
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from coxbridge.coxeter import SEARCH_GROUPS, get_group
from coxbridge.robust import build_robust_set, default_robust_dir, save_robust


@dataclass
class RobustBuildConfig:
    out: Path = field(default_factory=default_robust_dir)
    groups: tuple[str, ...] = SEARCH_GROUPS
    workers: int = 1
    fix_base: bool = True


def run(cfg: RobustBuildConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for g in cfg.groups:
        t = time.perf_counter()
        rs = build_robust_set(get_group(g), cfg.fix_base, cfg.workers)
        h = save_robust(rs, cfg.out / f"{g}.json")
        p = rs.provenance
        print(
            f"{g:3s} classes={len(rs):3d} candidates={p['candidates']} spanning={p['spanning']} "
            f"generating={p['generating']} {time.perf_counter() - t:5.1f}s {h[:12]}"
        )


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=default_robust_dir())
    ap.add_argument("--groups", default=",".join(SEARCH_GROUPS))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--no-fix-base", action="store_true")
    a = ap.parse_args()
    run(RobustBuildConfig(a.out, tuple(a.groups.split(",")), a.workers, not a.no_fix_base))


if __name__ == "__main__":
    main()
