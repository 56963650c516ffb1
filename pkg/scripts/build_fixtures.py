"""Regenerate the bundled knot fixtures from the Hoste-Thistlethwaite-Weeks table.

The HTW DT codes ship with the ``snappy_manifolds`` wheel (table ``HT_links`` in
``more_manifolds.sqlite``), stored in SnapPy's alphabetical DT encoding.

    python scripts/build_fixtures.py --sqlite /path/to/more_manifolds.sqlite
"""
from __future__ import annotations

import argparse
import re
import sqlite3
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "coxbridge" / "data" / "knots"


def char_to_int(ch: str) -> int:
    n = ord(ch)
    if 96 < n < 123:
        return n - 96
    if 64 < n < 91:
        return 64 - n
    raise ValueError(ch)


def decode_alpha_dt(code: str) -> list[int]:
    """``'cacbca.001'`` -> ``[4, 6, 2]``; the flip suffix only fixes chirality."""
    ints = [char_to_int(c) for c in code.split(".")[0]]
    n, comps = ints[0], ints[1]
    if comps != 1:
        raise ValueError("links are not supported")
    dt = [2 * x for x in ints[2 + comps:]]
    assert len(dt) == n
    return dt


def _key(name: str):
    m = re.fullmatch(r"K(\d+)([an])(\d+)", name)
    return int(m[1]), m[2], int(m[3])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sqlite", required=True)
    ap.add_argument("--max-crossings", type=int, default=12)
    args = ap.parse_args()

    db = sqlite3.connect(args.sqlite)
    rows = db.execute("select name, DT from HT_links where cusps = 1").fetchall()
    knots = sorted(((n, dt) for n, dt in rows if _key(n)[0] <= args.max_crossings), key=lambda r: _key(r[0]))

    OUT.mkdir(parents=True, exist_ok=True)
    header = "# HTW knot table, DT codes (one knot per line, name: dt...)\n"
    by_n: dict[int, list[str]] = {}
    for name, alpha in knots:
        dt = decode_alpha_dt(alpha)
        by_n.setdefault(len(dt), []).append(f"{name}: {' '.join(map(str, dt))}")

    low = [line for n in range(3, 11) for line in by_n.get(n, [])]
    (OUT / "htw_3_10.dt").write_text(header + "\n".join(low) + "\n")
    for n in range(11, args.max_crossings + 1):
        (OUT / f"htw_{n}.dt").write_text(header + "\n".join(by_n[n]) + "\n")

    k12a210 = next(dt for name, dt in knots if name == "K12a210")
    (OUT / "k12a210.dt").write_text(
        "# Montesinos knot 12a210 (HTW diagram)\n"
        f"K12a210: {' '.join(map(str, decode_alpha_dt(k12a210)))}\n"
    )
    print({n: len(v) for n, v in sorted(by_n.items())})


if __name__ == "__main__":
    main()
