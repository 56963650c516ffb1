"""Gauss/DT code ingestion and the strand/crossing structure of a knot diagram.

Conventions: a Gauss code is cyclic; a positive entry ``k`` is the over-pass of
crossing ``k`` and ``-k`` its under-pass. A strand runs from one under-pass to
the next and is stored as ``(start under-pass, over-passes..., end under-pass)``.
Strand 0 starts at the first under-pass at or after position 0.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    InvalidPairing,
    MalformedToken,
    PositionClash,
    UnpairedCrossing,
    ZeroEntry,
)

_SPLIT = re.compile(r"[\s,;]+")


@dataclass(frozen=True)
class GaussCode:
    entries: tuple[int, ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        _check_pairing(self.entries)

    @property
    def crossings(self) -> int:
        return len(self.entries) // 2

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        body = ",".join(str(e) for e in self.entries)
        return f"{self.name}: {body}" if self.name else body


@dataclass(frozen=True)
class Strand:
    index: int
    entries: tuple[int, ...]

    @property
    def start(self) -> int:
        """Crossing label of the under-pass the strand starts at."""
        return -self.entries[0]

    @property
    def end(self) -> int:
        return -self.entries[-1]

    @property
    def overs(self) -> tuple[int, ...]:
        return self.entries[1:-1]


@dataclass(frozen=True)
class Crossing:
    id: int
    over: int
    under_a: int  # strand ending at -id
    under_b: int  # strand starting at -id

    @property
    def is_kink(self) -> bool:
        return self.over in (self.under_a, self.under_b)


@dataclass(frozen=True)
class Diagram:
    strands: tuple[Strand, ...]
    crossings: tuple[Crossing, ...]
    source: GaussCode
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._by_id.update({c.id: c for c in self.crossings})

    @property
    def name(self) -> str | None:
        return self.source.name

    @property
    def m(self) -> int:
        return len(self.crossings)

    def crossing(self, cid: int) -> Crossing:
        return self._by_id[cid]

    def find_strand(self, entries: Sequence[int]) -> int:
        """Index of the strand with exactly these entries; ValueError if absent."""
        entries = tuple(entries)
        for s in self.strands:
            if s.entries == entries:
                return s.index
        raise ValueError(f"no strand {entries}")

    def traversal(self) -> tuple[int, ...]:
        """The Gauss code read off the strands, rotated to start at strand 0."""
        out: list[int] = []
        for s in self.strands:
            out.extend(s.entries[:-1])
        return tuple(out)


def _check_pairing(entries: Sequence[int]) -> None:
    if len(entries) == 0:
        raise MalformedToken("empty Gauss code")
    if any(e == 0 for e in entries):
        raise ZeroEntry("Gauss code entries must be nonzero")
    counts = Counter(entries)
    labels = {abs(e) for e in entries}
    for k in labels:
        if counts[k] != 1 or counts[-k] != 1:
            raise UnpairedCrossing(
                f"crossing {k} must appear once over and once under "
                f"(saw +{k} x{counts[k]}, -{k} x{counts[-k]})"
            )
    m = len(labels)
    if labels != set(range(1, m + 1)):
        raise UnpairedCrossing(f"crossing labels must be 1..{m}, got {sorted(labels)}")


def _split_name(text: str) -> tuple[str | None, str]:
    head, sep, tail = text.partition(":")
    if sep:
        return head.strip() or None, tail
    return None, text


def _tokens(body: str) -> list[int]:
    body = body.strip().strip("{}[]()")
    out = []
    for tok in _SPLIT.split(body):
        if not tok:
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise MalformedToken(f"not an integer: {tok!r}") from None
    return out


def parse_gauss(text: str) -> GaussCode:
    name, body = _split_name(text)
    return GaussCode(tuple(_tokens(body)), name)


def build_diagram(code: GaussCode) -> Diagram:
    e = code.entries
    n = len(e)
    unders = [i for i, x in enumerate(e) if x < 0]
    strands = []
    for j, p in enumerate(unders):
        q = unders[(j + 1) % len(unders)]
        length = (q - p) % n or n
        strands.append(Strand(j, tuple(e[(p + t) % n] for t in range(length + 1))))

    over_of: dict[int, int] = {}
    ends_at: dict[int, int] = {}
    starts_at: dict[int, int] = {}
    for s in strands:
        starts_at[s.start] = s.index
        ends_at[s.end] = s.index
        for k in s.overs:
            over_of[k] = s.index
    crossings = tuple(
        Crossing(k, over_of[k], ends_at[k], starts_at[k]) for k in range(1, code.crossings + 1)
    )
    return Diagram(tuple(strands), crossings, code)


def dt_to_gauss(dt: Sequence[int], name: str | None = None) -> GaussCode:
    """Convert a (single-component) Dowker-Thistlethwaite code to a Gauss code.

    Entry ``i`` (1-based) pairs traversal position ``2i-1`` with position
    ``|dt[i]|``. For a positive entry the odd position passes under; a negative
    entry flips that crossing. An all-positive code therefore gives an
    alternating Gauss code.
    """
    dt = [int(x) for x in dt]
    m = len(dt)
    if m == 0:
        raise InvalidPairing("empty DT code")
    for x in dt:
        if x % 2:
            raise PositionClash(f"DT entry {x} is odd and collides with an odd position")
    if sorted(abs(x) for x in dt) != list(range(2, 2 * m + 1, 2)):
        raise InvalidPairing(f"|DT entries| must be a permutation of 2..{2 * m}")
    gauss = [0] * (2 * m)
    for i, x in enumerate(dt, start=1):
        odd_sign = -1 if x > 0 else 1
        gauss[2 * i - 2] = odd_sign * i
        gauss[abs(x) - 1] = -odd_sign * i
    return GaussCode(tuple(gauss), name)


def parse_dt(text: str) -> GaussCode:
    name, body = _split_name(text)
    return dt_to_gauss(_tokens(body), name)


def parse_line(text: str, fmt: str = "auto") -> GaussCode:
    """Parse one knot line; ``fmt`` is ``gauss``, ``dt`` or ``auto``.

    In ``auto`` mode a code whose entries are all even is read as DT (a Gauss
    code always contains crossing 1).
    """
    if fmt == "gauss":
        return parse_gauss(text)
    if fmt == "dt":
        return parse_dt(text)
    name, body = _split_name(text)
    toks = _tokens(body)
    if toks and all(t % 2 == 0 for t in toks):
        return dt_to_gauss(toks, name)
    return GaussCode(tuple(toks), name)


def iter_knot_lines(lines: Iterable[str]) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def read_knot_file(path: str | Path, fmt: str = "auto") -> list[GaussCode]:
    """Read a knot file: one ``name: e1,e2,...`` per line, ``#`` comments."""
    with open(path) as fh:
        return [parse_line(line, fmt) for _, line in iter_knot_lines(fh)]
