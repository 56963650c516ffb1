"""Finite Coxeter groups in their geometric representation, fully enumerated.

Each group is built from its Coxeter matrix: ``s_i`` acts on the root basis by
``s_i(v) = v - 2B(v, a_i) a_i`` with ``2B(a_i, a_j) = -2cos(pi/m_ij)``, which
lies in Z[phi] for ``m_ij`` in {2, 3, 5}. Elements are enumerated by
breadth-first closure under right multiplication by the generators and hashed
by their exact integer encoding.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import MultipleClasses, OrderOverflow, UnsupportedLabel
from .golden import (
    GoldenInt,
    from_pair_array,
    golden_det,
    golden_rank,
    normalize_root,
    pidentity,
    pmatmul,
    pmatvec,
    to_pair_array,
)

# 2cos(pi/m) as (a, b) in Z[phi]
_TWO_COS = {2: (0, 0), 3: (1, 0), 5: (0, 1)}


def _path(n: int, labels: Sequence[int] | None = None) -> list[list[int]]:
    labels = labels or [3] * (n - 1)
    cm = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, m in enumerate(labels):
        cm[i][i + 1] = cm[i + 1][i] = m
    return cm


def _d_type(n: int) -> list[list[int]]:
    # chain 0-1-...-(n-3) with the fork (n-3)-(n-2), (n-3)-(n-1)
    cm = _path(n - 1)
    cm = [row + [2] for row in cm] + [[2] * (n - 1) + [1]]
    cm[n - 3][n - 1] = cm[n - 1][n - 3] = 3
    return cm


COXETER_MATRICES: dict[str, list[list[int]]] = {
    "A2": _path(2),
    "A3": _path(3),
    "A4": _path(4),
    "A5": _path(5),
    "D4": _d_type(4),
    "D5": _d_type(5),
    "H3": _path(3, [3, 5]),
    "H4": _path(4, [3, 3, 5]),
}

GROUP_ORDERS = {"A2": 6, "A3": 24, "A4": 120, "A5": 720, "D4": 192, "D5": 1920, "H3": 120, "H4": 14400}
REFLECTION_COUNTS = {"A2": 3, "A3": 6, "A4": 10, "A5": 15, "D4": 12, "D5": 20, "H3": 15, "H4": 60}

# groups searched per Wirtinger number
GROUPS_BY_RANK = {3: ("A3", "H3"), 4: ("A4", "D4", "H4"), 5: ("A5", "D5")}
SEARCH_GROUPS = ("A3", "H3", "A4", "D4", "H4", "A5", "D5")

# A D4 generator listing in a non-standard basis. The last two matrices carry a
# stray 1 at zero-based (1, 3) and are not involutions; the fixed copy drops it.
D4_LISTED = [
    [[-1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [1, -1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 1], [0, 1, -1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 1, 0, -1]],
]
D4_LISTED_FIXED = [
    D4_LISTED[0],
    D4_LISTED[1],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, -1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, -1]],
]


def check_coxeter_matrix(cm) -> None:
    n = len(cm)
    for i in range(n):
        if cm[i][i] != 1:
            raise ValueError("Coxeter matrix diagonal must be 1")
        for j in range(n):
            if cm[i][j] != cm[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            if i != j and cm[i][j] not in _TWO_COS:
                raise UnsupportedLabel(f"edge label {cm[i][j]} is not supported (only 2, 3, 5)")


def standard_generators(cm) -> list[np.ndarray]:
    """Generator matrices of the geometric representation, as pair arrays."""
    check_coxeter_matrix(cm)
    n = len(cm)
    gens = []
    for i in range(n):
        s = pidentity(n)
        s[0, i, i] = -1
        for j in range(n):
            if j != i:
                s[0, i, j], s[1, i, j] = _TWO_COS[cm[i][j]]
        gens.append(s)
    return gens


def generator_hash(gens: Sequence[np.ndarray]) -> str:
    payload = json.dumps([np.moveaxis(g, 0, -1).tolist() for g in gens], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m).tobytes()


@dataclass(eq=False)
class GroupTable:
    """A finite group of pair matrices, enumerated with its reflections.

    ``reflections[k]`` is the element index of the k-th reflection; all
    reflection-valued data (labels, generating sets, ``conj``) use positions
    ``k`` into this list, not element indices.
    """
    name: str
    rank: int
    elements: np.ndarray  # (N, 2, n, n)
    index: dict[bytes, int]
    generators: tuple[int, ...]
    parent: np.ndarray  # BFS parent element, -1 for the identity
    parent_gen: np.ndarray  # generator position used to reach each element
    reflections: tuple[int, ...] = ()
    roots: np.ndarray = field(default_factory=lambda: np.zeros((0, 2, 0), dtype=np.int64))
    gen_conj: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=np.int64))
    coxeter_matrix: list[list[int]] | None = None
    gens_hash: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_reflections(self) -> int:
        return len(self.reflections)

    def lookup(self, m: np.ndarray) -> int:
        return self.index[_key(m)]

    def matrix(self, i: int) -> list[list[GoldenInt]]:
        return from_pair_array(self.elements[i])

    def reflection_matrix(self, k: int) -> np.ndarray:
        return self.elements[self.reflections[k]]

    @cached_property
    def reflection_pos(self) -> dict[int, int]:
        return {e: k for k, e in enumerate(self.reflections)}

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[a, b]`` = position of ``r_a r_b r_a``."""
        R = self.n_reflections
        out = np.empty((R, R), dtype=np.int64)
        mats = self.elements[list(self.reflections)]
        for a in range(R):
            prods = pmatmul(pmatmul(mats[a], mats), mats[a])
            for b in range(R):
                out[a, b] = self.reflection_pos[self.lookup(prods[b])]
        return out

    @cached_property
    def action(self) -> np.ndarray:
        """``action[g, k]`` = position of ``g r_k g^-1``, for every element ``g``.

        Built along the BFS tree: if ``g = h s`` then conjugation by ``g`` is
        conjugation by ``s`` followed by conjugation by ``h``.
        """
        R = self.n_reflections
        out = np.empty((self.order, R), dtype=np.int64)
        out[0] = np.arange(R)
        for g in range(1, self.order):
            out[g] = out[self.parent[g]][self.gen_conj[self.parent_gen[g]]]
        return out

    @cached_property
    def right_mul(self) -> np.ndarray:
        """``right_mul[g, k]`` = element index of ``g r_k``."""
        out = np.empty((self.order, self.n_reflections), dtype=np.int64)
        for k in range(self.n_reflections):
            prods = pmatmul(self.elements, self.reflection_matrix(k))
            out[:, k] = [self.index[_key(p)] for p in prods]
        return out

    def subgroup_order(self, refl_positions: Sequence[int]) -> int:
        """Order of the subgroup generated by the given reflections (BFS closure)."""
        cols = self.right_mul[:, list(refl_positions)]
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        count = 1
        while frontier.size:
            nxt = np.unique(cols[frontier].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            count += nxt.size
            frontier = nxt
        return count


def enumerate_group(
    gens: Sequence[np.ndarray],
    name: str = "",
    expected_order: int | None = None,
    coxeter_matrix=None,
) -> GroupTable:
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[-1]
    ident = pidentity(n)
    elems = [ident]
    index = {_key(ident): 0}
    parent, parent_gen = [-1], [-1]
    frontier = [0]
    while frontier:
        batch = np.stack([elems[i] for i in frontier])
        new_frontier = []
        for gi, s in enumerate(gens):
            prods = pmatmul(batch, s)
            for src, p in zip(frontier, prods):
                k = _key(p)
                if k not in index:
                    index[k] = len(elems)
                    elems.append(p)
                    parent.append(src)
                    parent_gen.append(gi)
                    new_frontier.append(index[k])
                    if expected_order is not None and len(elems) > expected_order:
                        raise OrderOverflow(f"{name}: closure exceeds expected order {expected_order}")
        frontier = new_frontier
    gt = GroupTable(
        name=name,
        rank=n,
        elements=np.stack(elems),
        index=index,
        generators=tuple(index[_key(g)] for g in gens),
        parent=np.array(parent),
        parent_gen=np.array(parent_gen),
        coxeter_matrix=coxeter_matrix,
        gens_hash=generator_hash(gens),
    )
    _attach_reflections(gt, gens)
    return gt


def _initial_root(s: np.ndarray) -> np.ndarray:
    """A nonzero vector spanning the image of ``I - s``."""
    diff = pidentity(s.shape[-1]) - s
    for j in range(diff.shape[-1]):
        col = diff[:, :, j]
        if col.any():
            nz = [i for i in range(col.shape[1]) if col[:, i].any()]
            if len(nz) == 1:  # image along a coordinate axis: use the unit vector
                v = np.zeros_like(col)
                v[0, nz[0]] = 1
                return normalize_root(v)
            return normalize_root(col.copy())
    raise ValueError("generator is the identity")


def _attach_reflections(gt: GroupTable, gens: Sequence[np.ndarray]) -> None:
    """Conjugation closure of the generators, tracking a root for each reflection."""
    refl = list(dict.fromkeys(gt.generators))
    roots = {gt.generators[i]: _initial_root(g) for i, g in enumerate(gens)}
    queue = list(refl)
    while queue:
        e = queue.pop(0)
        r = gt.elements[e]
        for s in gens:
            c = gt.lookup(pmatmul(pmatmul(s, r), s))
            if c not in roots:
                roots[c] = normalize_root(pmatvec(s, roots[e]))
                refl.append(c)
                queue.append(c)
    # order reflections by element index; generators come first in BFS order
    refl.sort()
    gt.reflections = tuple(refl)
    gt.roots = np.stack([roots[e] for e in refl])
    pos = {e: k for k, e in enumerate(refl)}
    gc = np.empty((len(gens), len(refl)), dtype=np.int64)
    for gi, s in enumerate(gens):
        for k, e in enumerate(refl):
            gc[gi, k] = pos[gt.lookup(pmatmul(pmatmul(s, gt.elements[e]), s))]
    gt.gen_conj = gc


def reflections(gt: GroupTable) -> tuple[tuple[int, ...], np.ndarray]:
    """Reflection element indices and their roots; checks the single-class condition."""
    orbit = {0}
    frontier = [0]
    while frontier:
        frontier = [int(k) for a in frontier for k in gt.gen_conj[:, a] if k not in orbit]
        orbit.update(frontier)
    if len(orbit) != gt.n_reflections:
        raise MultipleClasses(f"{gt.name}: generators lie in more than one conjugacy class")
    return gt.reflections, gt.roots


def root_vector(gt: GroupTable, k: int) -> list[GoldenInt]:
    r = gt.roots[k]
    return [GoldenInt(r[0, i], r[1, i]) for i in range(r.shape[1])]


def minus_one_eigenspace_dim(mat: np.ndarray) -> int:
    """dim ker(M + I) over Q(phi) for a pair matrix M."""
    n = mat.shape[-1]
    return n - golden_rank(from_pair_array(mat + pidentity(n)))


def trace(mat: np.ndarray) -> GoldenInt:
    return GoldenInt(int(np.trace(mat[0])), int(np.trace(mat[1])))


def determinant(mat: np.ndarray) -> GoldenInt:
    return golden_det(from_pair_array(mat))


def build_group(name: str, gens: Sequence[np.ndarray] | None = None) -> GroupTable:
    """Enumerate a named group (``A3`` ... ``H4``, also ``A2``)."""
    cm = COXETER_MATRICES[name]
    if gens is None:
        gens = standard_generators(cm)
    gt = enumerate_group(gens, name, GROUP_ORDERS.get(name), cm)
    reflections(gt)
    return gt


@lru_cache(maxsize=None)
def get_group(name: str) -> GroupTable:
    return build_group(name)


def d4_from_listing() -> GroupTable:
    gens = [to_pair_array(m) for m in D4_LISTED_FIXED]
    gt = enumerate_group(gens, "D4", 192, COXETER_MATRICES["D4"])
    reflections(gt)
    return gt
