"""Wirtinger number of a diagram via seed-subset search and coloring moves."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .diagram import Diagram
from .errors import NotFound

DEFAULT_K_MAX = 5


class Move(NamedTuple):
    crossing: int
    new: int
    over: int
    prev: int  # the understrand that was already colored


@dataclass(frozen=True)
class WirtingerResult:
    omega: int
    seeds: tuple[int, ...]
    moves: tuple[Move, ...]


def saturate(
    d: Diagram, seeds: Iterable[int], order: Sequence[int] | None = None
) -> tuple[frozenset[int], tuple[Move, ...]]:
    """Close ``seeds`` under coloring moves.

    ``order`` optionally permutes the crossing scan (indices into
    ``d.crossings``); the colored set does not depend on it, only the witness
    move order does.
    """
    colored = set(seeds)
    if any(not 0 <= s < len(d.strands) for s in colored):
        raise ValueError(f"seed index out of range: {sorted(colored)}")
    crossings = d.crossings if order is None else [d.crossings[i] for i in order]
    moves: list[Move] = []
    changed = True
    while changed:
        changed = False
        for c in crossings:
            if c.over not in colored:
                continue
            a, b = c.under_a in colored, c.under_b in colored
            if a and not b:
                colored.add(c.under_b)
                moves.append(Move(c.id, c.under_b, c.over, c.under_a))
                changed = True
            elif b and not a:
                colored.add(c.under_a)
                moves.append(Move(c.id, c.under_a, c.over, c.under_b))
                changed = True
    return frozenset(colored), tuple(moves)


def is_generating_seed_set(d: Diagram, seeds: Iterable[int]) -> bool:
    colored, _ = saturate(d, seeds)
    return len(colored) == len(d.strands)


def wirtinger_number(d: Diagram, k_max: int = DEFAULT_K_MAX) -> WirtingerResult:
    """Least seed-set size admitting a complete coloring sequence.

    Seed sets are tried in increasing size, lexicographically; the first
    success is the reported witness. Raises ``NotFound`` past ``k_max``.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    n = len(d.strands)
    for k in range(1, min(k_max, n) + 1):
        for seeds in combinations(range(n), k):
            colored, moves = saturate(d, seeds)
            if len(colored) == n:
                return WirtingerResult(k, seeds, moves)
    raise NotFound(k_max)


def all_minimal_seed_sets(d: Diagram, omega: int) -> list[tuple[int, ...]]:
    n = len(d.strands)
    return [s for s in combinations(range(n), omega) if is_generating_seed_set(d, s)]


def replay_ok(d: Diagram, seeds: Iterable[int], moves: Sequence[Move]) -> bool:
    """Mechanically check a move sequence against the coloring-move rule."""
    colored = set(seeds)
    for mv in moves:
        c = d.crossing(mv.crossing)
        if {mv.new, mv.prev} != {c.under_a, c.under_b} or mv.over != c.over:
            return False
        if mv.over not in colored or mv.prev not in colored or mv.new in colored:
            return False
        colored.add(mv.new)
    return len(colored) == len(d.strands)
