"""Robust families of minimal reflection generating sets.

A family is robust when every minimal generating set of reflections is
simultaneously conjugate to one of its members. Construction: all rank-sized
reflection sets through a fixed base reflection, keep those whose roots span
and which generate the whole group, then keep one set per conjugation class
(the class's lexicographically least sorted index tuple).
"""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .coxeter import COXETER_MATRICES, GroupTable, get_group
from .errors import GroupMismatch, HashMismatch, SchemaVersionMismatch
from .golden import GoldenInt, from_pair_array, golden_det, golden_rank

SCHEMA = "coxbridge.robust/1"
CANON_VERSION = "conjugation-orbit-lexmin/1"

GenSet = tuple[int, ...]


@dataclass(frozen=True)
class RobustSet:
    group: str
    rank: int
    sets: tuple[GenSet, ...]
    gens_hash: str = ""
    provenance: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.sets)

    def payload(self) -> dict:
        return {
            "schema": SCHEMA,
            "group": self.group,
            "rank": self.rank,
            "gens_hash": self.gens_hash,
            "sets": [list(s) for s in self.sets],
            "provenance": self.provenance,
        }

    @property
    def content_hash(self) -> str:
        return content_hash(self.payload())


def content_hash(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "content_hash"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def falling(n: int, k: int) -> int:
    return math.perm(n, k)


def candidate_sets(gt: GroupTable, fix_base: bool = True, k: int | None = None) -> Iterator[GenSet]:
    """All k-subsets of reflection positions (through reflection 0 if ``fix_base``)."""
    k = gt.rank if k is None else k
    R = gt.n_reflections
    if fix_base:
        for rest in combinations(range(1, R), k - 1):
            yield (0, *rest)
    else:
        yield from combinations(range(R), k)


def root_matrix(gt: GroupTable, gs: Sequence[int]) -> list[list[GoldenInt]]:
    return [[GoldenInt(r[0, i], r[1, i]) for i in range(gt.rank)] for r in gt.roots[list(gs)]]


def spans(gt: GroupTable, gs: Sequence[int]) -> bool:
    """Whether the roots of ``gs`` are linearly independent over Q(phi)."""
    rows = root_matrix(gt, gs)
    if len(rows) == gt.rank:
        return bool(golden_det(rows))
    return golden_rank(rows) == len(rows)


def reflection_closure(gt: GroupTable, gs: Sequence[int]) -> frozenset[int]:
    """Reflections of the subgroup generated by ``gs``: its conjugation closure."""
    conj = gt.conj
    seen = set(gs)
    frontier = list(seen)
    while frontier:
        img = {int(x) for x in conj[np.ix_(list(gs), frontier)].ravel()}
        frontier = list(img - seen)
        seen |= img
    return frozenset(seen)


def is_generating(gt: GroupTable, gs: Sequence[int]) -> int:
    """Order of the subgroup generated by ``gs``; ``gs`` is in Gen(H) iff this is |H|.

    A subgroup containing every reflection is the whole group, and in a group
    whose reflections form one class the converse holds too, so the cheap
    closure test settles the generating case; proper subgroups are counted by
    breadth-first closure.
    """
    if len(reflection_closure(gt, gs)) == gt.n_reflections:
        return gt.order
    return gt.subgroup_order(gs)


def _masks(gt: GroupTable, imgs: np.ndarray) -> np.ndarray:
    # bit R-1-i for reflection i: the largest mask is the lexicographically least sorted tuple
    R = gt.n_reflections
    bits = np.left_shift(np.uint64(1), (R - 1 - imgs).astype(np.uint64))
    return np.bitwise_or.reduce(bits, axis=-1)


def _unmask(gt: GroupTable, mask: int) -> GenSet:
    R = gt.n_reflections
    return tuple(i for i in range(R) if mask >> (R - 1 - i) & 1)


def canonical_form(gt: GroupTable, gs: Sequence[int]) -> GenSet:
    """Lexicographically least sorted tuple among all conjugates ``g gs g^-1``."""
    return _unmask(gt, int(_masks(gt, gt.action[:, list(gs)]).max()))


def canonical_forms(gt: GroupTable, sets: Sequence[GenSet]) -> list[GenSet]:
    if not sets:
        return []
    arr = np.asarray(sets, dtype=np.int64)
    out: list[GenSet] = []
    for start in range(0, len(arr), 256):
        keys = _masks(gt, gt.action[:, arr[start:start + 256]])  # (N, B)
        out.extend(_unmask(gt, int(k)) for k in keys.max(axis=0))
    return out


def dedup(gt: GroupTable, sets: Iterable[GenSet]) -> RobustSet:
    """Keep one representative (the canonical form) per conjugation class.

    Whole orbits are marked at once, so the cost scales with the number of
    classes rather than the number of input sets.
    """
    sets = [tuple(sorted(s)) for s in sets]
    seen: set[int] = set()
    reps = []
    for row in sets:
        if int(_masks(gt, np.asarray(row))) in seen:
            continue
        orbit = _masks(gt, gt.action[:, list(row)])
        seen.update(int(x) for x in orbit)
        reps.append(_unmask(gt, int(orbit.max())))
    return RobustSet(gt.name, gt.rank, tuple(sorted(reps)), gt.gens_hash, {"input_sets": len(sets)})


def _filter(gt: GroupTable, cands: Sequence[GenSet]) -> list[tuple[GenSet, int]]:
    """(set, subgroup order) for the spanning candidates."""
    return [(s, is_generating(gt, s)) for s in cands if spans(gt, s)]


def _filter_named(name: str, cands: Sequence[GenSet]) -> list[tuple[GenSet, int]]:
    return _filter(get_group(name), cands)


def build_robust_set(gt: GroupTable, fix_base: bool = True, workers: int = 1) -> RobustSet:
    """Enumerate, filter and deduplicate; ``workers > 1`` filters in worker processes.

    Worker processes rebuild the named group table, so parallel filtering is
    only used for the standard groups.
    """
    k, R = gt.rank, gt.n_reflections
    ordered = math.factorial(k - 1) if fix_base else math.factorial(k)
    cands = list(candidate_sets(gt, fix_base))
    if workers > 1 and gt.name in COXETER_MATRICES and get_group(gt.name).gens_hash == gt.gens_hash:
        size = -(-len(cands) // (4 * workers))
        chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
        with ProcessPoolExecutor(workers) as ex:
            filtered = [x for part in ex.map(_filter_named, [gt.name] * len(chunks), chunks) for x in part]
    else:
        filtered = _filter(gt, cands)
    spanning = [s for s, _ in filtered]
    orders: dict[int, int] = {}
    generating = []
    for s, o in filtered:
        orders[o] = orders.get(o, 0) + 1
        if o == gt.order:
            generating.append(s)
    rs = dedup(gt, generating)
    prov = {
        "fix_base": fix_base,
        "reflections": R,
        "all_ordered_tuples": falling(R, k),
        "candidates": len(cands),
        "candidates_ordered": len(cands) * ordered,
        "spanning": len(spanning),
        "spanning_ordered": len(spanning) * ordered,
        "generating": len(generating),
        "generating_ordered": len(generating) * ordered,
        "proper_subgroup_orders": {str(o): c for o, c in sorted(orders.items()) if o != gt.order},
        "classes": len(rs.sets),
        "canonicalization": CANON_VERSION,
    }
    return RobustSet(gt.name, gt.rank, rs.sets, gt.gens_hash, prov)


def save_robust(rs: RobustSet, path: str | Path) -> str:
    payload = rs.payload()
    payload["content_hash"] = content_hash(payload)
    Path(path).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return payload["content_hash"]


def load_robust(path: str | Path, group: str | None = None, gt: GroupTable | None = None) -> RobustSet:
    payload = json.loads(Path(path).read_text())
    if payload.get("schema") != SCHEMA:
        raise SchemaVersionMismatch(f"{path}: schema {payload.get('schema')!r}, expected {SCHEMA!r}")
    if payload.get("content_hash") != content_hash(payload):
        raise HashMismatch(f"{path}: content hash does not match")
    if group is not None and payload["group"] != group:
        raise GroupMismatch(f"{path}: holds {payload['group']}, expected {group}")
    if gt is not None and (payload["gens_hash"] != gt.gens_hash or payload["rank"] != gt.rank):
        raise GroupMismatch(f"{path}: generator matrices differ from group table {gt.name}")
    return RobustSet(
        payload["group"],
        payload["rank"],
        tuple(tuple(s) for s in payload["sets"]),
        payload["gens_hash"],
        payload["provenance"],
    )


def default_robust_dir() -> Path:
    import os

    env = os.environ.get("COXBRIDGE_ROBUST_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "robust"


def load_library(directory: str | Path | None = None, groups: Iterable[str] | None = None) -> dict[str, RobustSet]:
    directory = Path(directory) if directory else default_robust_dir()
    names = list(groups) if groups is not None else [p.stem for p in sorted(directory.glob("*.json"))]
    return {g: load_robust(directory / f"{g}.json", g, get_group(g)) for g in names}


# kept for callers that want the matrices next to a file
def generator_matrices(gt: GroupTable) -> list[list[list[GoldenInt]]]:
    return [from_pair_array(gt.elements[i]) for i in gt.generators]
