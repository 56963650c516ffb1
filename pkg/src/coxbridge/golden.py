"""Exact arithmetic in Z[phi], phi = (1 + sqrt 5) / 2, and matrices over it.

Scalars are :class:`GoldenInt`. Matrices used by the group machinery are
stored as integer numpy arrays with a leading axis of length 2, ``M[0] +
phi * M[1]``, so that batches of products reduce to integer matmuls.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import sqrt

import numpy as np

PHI = (1 + sqrt(5)) / 2


def _sign_x_plus_y_sqrt5(x, y) -> int:
    if x >= 0 and y >= 0:
        return int(x > 0 or y > 0)
    if x <= 0 and y <= 0:
        return -1
    lhs, rhs = x * x, 5 * y * y
    if x > 0:  # y < 0
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


@total_ordering
class GoldenInt:
    """``a + b*phi`` with integer ``a``, ``b``; ``phi**2 == phi + 1``."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def coerce(cls, x) -> GoldenInt:
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x), 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenInt")

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+}φ"

    def __eq__(self, other) -> bool:
        try:
            o = GoldenInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other) -> bool:
        return (self - GoldenInt.coerce(other)).sign() < 0

    def __add__(self, other):
        o = GoldenInt.coerce(other)
        return GoldenInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenInt.coerce(other))

    def __rsub__(self, other):
        return GoldenInt.coerce(other) - self

    def __mul__(self, other):
        o = GoldenInt.coerce(other)
        bd = self.b * o.b
        return GoldenInt(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers leave Z[phi] in general")
        out, base = GoldenInt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __float__(self) -> float:
        return self.a + self.b * PHI

    def conjugate(self) -> GoldenInt:
        """Galois conjugate: phi -> 1 - phi."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def sign(self) -> int:
        return _sign_x_plus_y_sqrt5(2 * self.a + self.b, self.b)

    def __floordiv__(self, other):
        """Exact division; raises ``ArithmeticError`` if not divisible in Z[phi]."""
        o = GoldenInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[phi]")
        num = self * o.conjugate()
        if num.a % n or num.b % n:
            raise ArithmeticError(f"{self} is not divisible by {o} in Z[phi]")
        return GoldenInt(num.a // n, num.b // n)


class _QPhi:
    """Minimal field element of Q(phi) for exact elimination."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def __bool__(self):
        return bool(self.a or self.b)

    def __sub__(self, o):
        return _QPhi(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        bd = self.b * o.b
        return _QPhi(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    def inverse(self):
        n = self.a * self.a + self.a * self.b - self.b * self.b
        return _QPhi((self.a + self.b) / n, -self.b / n)


def golden_rank(rows) -> int:
    """Rank over Q(phi) of a matrix given as rows of GoldenInt (or int)."""
    mat = [[_QPhi(*_pair(x)) for x in r] for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inverse()
        for i in range(rank + 1, len(mat)):
            if mat[i][col]:
                f = mat[i][col] * inv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def golden_det(rows) -> GoldenInt:
    """Exact determinant over Z[phi] (Bareiss; divisions are exact)."""
    a = [[GoldenInt.coerce(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return GoldenInt(1)
    sign, prev = 1, GoldenInt(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return GoldenInt(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def _pair(x) -> tuple[int, int]:
    if isinstance(x, GoldenInt):
        return x.a, x.b
    return int(x), 0


# ---- numpy pair-matrix helpers ----------------------------------------------

def to_pair_array(mat) -> np.ndarray:
    """Nested lists of GoldenInt/int -> int64 array of shape (2, ...)."""
    arr = np.array([[_pair(x) for x in row] for row in mat], dtype=np.int64)
    return np.moveaxis(arr, -1, 0).copy()


def from_pair_array(arr: np.ndarray) -> list[list[GoldenInt]]:
    a, b = arr[0], arr[1]
    return [[GoldenInt(a[i, j], b[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])]


def pmatmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of (batched) pair matrices; axis -3 is the (int, phi) axis."""
    xa, xb = x[..., 0, :, :], x[..., 1, :, :]
    ya, yb = y[..., 0, :, :], y[..., 1, :, :]
    bd = xb @ yb
    return np.stack([xa @ ya + bd, xa @ yb + xb @ ya + bd], axis=-3)


def pmatvec(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Pair matrix (2,n,n) times pair vector(s) (..., 2, n)."""
    xa, xb = x[0], x[1]
    va, vb = v[..., 0, :], v[..., 1, :]
    bd = vb @ xb.T
    return np.stack([va @ xa.T + bd, vb @ xa.T + va @ xb.T + bd], axis=-2)


def pidentity(n: int) -> np.ndarray:
    out = np.zeros((2, n, n), dtype=np.int64)
    out[0] = np.eye(n, dtype=np.int64)
    return out


def normalize_root(v: np.ndarray) -> np.ndarray:
    """Flip sign so the first nonzero coordinate is positive. ``v`` has shape (2, n)."""
    for i in range(v.shape[1]):
        s = GoldenInt(v[0, i], v[1, i]).sign()
        if s:
            return v if s > 0 else -v
    return v
