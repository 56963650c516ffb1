"""Fox p-colorings, the knot determinant and dihedral (rank-2) certificates."""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram
from .errors import NoOddPrimeDivisor


def coloring_matrix(d: Diagram) -> list[list[int]]:
    """One row per crossing: +1 per understrand, -2 at the overstrand (accumulated)."""
    m = len(d.strands)
    rows = []
    for c in d.crossings:
        row = [0] * m
        row[c.under_a] += 1
        row[c.under_b] += 1
        row[c.over] -= 2
        rows.append(row)
    return rows


def bareiss_det(a: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    a = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def first_minor(d: Diagram, row: int = 0, col: int = 0) -> int:
    mat = coloring_matrix(d)
    sub = [[x for j, x in enumerate(r) if j != col] for i, r in enumerate(mat) if i != row]
    return bareiss_det(sub)


def determinant(d: Diagram) -> int:
    return abs(first_minor(d, len(d.crossings) - 1, len(d.strands) - 1))


def _nullspace_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right null space of ``mat`` over GF(p)."""
    n = len(mat[0]) if mat else 0
    rows = [[x % p for x in r] for r in mat]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def nullity_mod_p(d: Diagram, p: int) -> int:
    return len(_nullspace_mod_p(coloring_matrix(d), p))


def p_colorable(d: Diagram, p: int) -> bool:
    """True iff a non-constant Fox p-coloring exists (nullity >= 2 mod p)."""
    return nullity_mod_p(d, p) >= 2


def nontrivial_coloring(d: Diagram, p: int) -> list[int] | None:
    for v in _nullspace_mod_p(coloring_matrix(d), p):
        if len(set(v)) > 1:
            return v
    return None


def is_fox_coloring(d: Diagram, colors, p: int) -> bool:
    return all(
        (colors[c.under_a] + colors[c.under_b] - 2 * colors[c.over]) % p == 0 for c in d.crossings
    )


def odd_prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    while n and n % 2 == 0:
        n //= 2
    q = 3
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class DihedralCertificate:
    """Labels in I2(p): color ``f`` stands for the reflection ``x y^f``."""
    p: int
    seeds: tuple[int, ...]
    assignment: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def group(self) -> str:
        return f"I2({self.p})"


def dihedral_mrcq(d: Diagram, seeds=()) -> DihedralCertificate:
    """Dihedral quotient for the smallest odd prime dividing the determinant.

    Two distinct colors mod a prime p generate I2(p), so any non-constant
    coloring gives a surjection onto the rank-2 group.
    """
    det = determinant(d)
    primes = odd_prime_divisors(det)
    if not primes:
        raise NoOddPrimeDivisor(f"determinant {det} has no odd prime divisor")
    p = primes[0]
    colors = nontrivial_coloring(d, p)
    assert colors is not None and is_fox_coloring(d, colors, p)
    return DihedralCertificate(
        p, tuple(seeds), tuple(colors[s] for s in seeds), tuple(colors)
    )


def verify_dihedral(d: Diagram, p: int, labels) -> bool:
    return (
        len(labels) == len(d.strands)
        and is_fox_coloring(d, labels, p)
        and len({x % p for x in labels}) > 1
    )
