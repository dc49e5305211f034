"""SL2(Z), its double cover, and the finite Weil matrices Omega_m.

Rows and columns of a Weil matrix are indexed by alpha, beta in
{1, ..., 2|m|}, read as residues mod 2m.  Entry [alpha, beta] is the
coefficient c(alpha, beta) so that

    Omega_m(g) theta_alpha = sum_beta c(alpha, beta) theta_beta.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from .errors import InconsistencyError, ParameterError

__all__ = [
    "SL2Int",
    "MetaplecticElement",
    "WeilMatrix",
    "S",
    "T",
    "T_INV",
    "IDENTITY",
    "lift",
    "weil_matrix",
    "kubota_sign",
    "decompose_word",
    "word_product",
]

SQRT_I = cmath.exp(1j * math.pi / 4)


def e(x):
    return np.exp(2j * np.pi * x)


@dataclass(frozen=True)
class SL2Int:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if int(v) != v:
                raise ParameterError("SL2Int entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise ParameterError(f"determinant of {self.as_tuple()} is not 1")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "SL2Int") -> "SL2Int":
        a, b, c, d = self.as_tuple()
        A, B, C, D = other.as_tuple()
        return SL2Int(a * A + b * C, a * B + b * D, c * A + d * C, c * B + d * D)

    def inverse(self) -> "SL2Int":
        return SL2Int(self.d, -self.b, -self.c, self.a)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @classmethod
    def parse(cls, text: str) -> "SL2Int":
        parts = [int(p) for p in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ParameterError("expected four comma-separated integers a,b,c,d")
        return cls(*parts)


IDENTITY = SL2Int(1, 0, 0, 1)
S = SL2Int(0, 1, -1, 0)
T = SL2Int(1, 1, 0, 1)
T_INV = SL2Int(1, -1, 0, 1)
GENERATORS = {"S": S, "T": T, "Ti": T_INV}


@dataclass(frozen=True)
class MetaplecticElement:
    """A point of the double cover: a matrix and a sign over the principal lift."""

    matrix: SL2Int
    branch: int = 1

    def __post_init__(self):
        if self.branch not in (1, -1):
            raise ParameterError("branch must be +1 or -1")

    def sqrt_factor(self, tau: complex) -> complex:
        """branch * principal sqrt(c tau + d)."""
        return self.branch * cmath.sqrt(self.matrix.c * tau + self.matrix.d)


@dataclass(frozen=True)
class WeilMatrix:
    m: int
    entries: np.ndarray

    def __post_init__(self):
        n = 2 * abs(self.m)
        if self.entries.shape != (n, n):
            raise ParameterError("Weil matrix must be 2|m| x 2|m|")
        self.entries.setflags(write=False)

    def __matmul__(self, other: "WeilMatrix") -> "WeilMatrix":
        if other.m != self.m:
            raise ParameterError("index mismatch")
        return WeilMatrix(self.m, self.entries @ other.entries)

    def unitarity_residual(self) -> float:
        w = self.entries
        return float(np.abs(w @ w.conj().T - np.eye(len(w))).max())

    def entry(self, alpha: int, beta: int) -> complex:
        n = 2 * abs(self.m)
        return complex(self.entries[(alpha - 1) % n, (beta - 1) % n])


def lift(M: SL2Int) -> MetaplecticElement:
    """Principal-branch lift (M, sqrt(c tau + d))."""
    return MetaplecticElement(M, 1)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def weil_matrix(m: int, g: MetaplecticElement | SL2Int) -> WeilMatrix:
    if int(m) != m or m == 0:
        raise ParameterError("Weil matrices need a nonzero integer index")
    m = int(m)
    if isinstance(g, SL2Int):
        g = lift(g)
    a, b, c, d = g.matrix.as_tuple()
    n = 2 * abs(m)
    two_m = 2 * m
    sm = _sgn(m)
    al = np.arange(1, n + 1)[:, None]
    be = np.arange(1, n + 1)[None, :]
    if c == 0:
        hit = ((al - a * be) % two_m) == 0
        phase = SQRT_I ** (-sm * (1 - _sgn(d)))
        vals = phase * e(a * b / 2 * two_m * (al / two_m) ** 2)
        W = np.where(hit, vals, 0).astype(complex)
    else:
        acc = np.zeros((n, n), dtype=complex)
        for r in range(abs(c)):
            x = al / two_m + r
            yb = be / two_m
            acc += e((a * two_m * x * x - 2 * two_m * x * yb + d * two_m * yb * yb) / (2 * c))
        W = acc * SQRT_I ** (-sm * _sgn(c)) / math.sqrt(2 * abs(c * m))
    return WeilMatrix(m, g.branch * W)


def kubota_sign(g1: MetaplecticElement, g2: MetaplecticElement, m: int) -> int:
    """Sign eps with Omega(g1) Omega(g2) = eps Omega(lift(M1 M2)), read off numerically."""
    A = (weil_matrix(m, g1) @ weil_matrix(m, g2)).entries
    P = weil_matrix(m, lift(g1.matrix @ g2.matrix)).entries
    idx = np.unravel_index(np.argmax(np.abs(P)), P.shape)
    if abs(P[idx]) <= 0.1:
        raise InconsistencyError("no entry of modulus > 0.1 to normalise by")
    s = A[idx] / P[idx]
    if np.abs(A - s * P).max() > 1e-8:
        raise InconsistencyError("Weil matrix product is not a scalar multiple of the direct matrix")
    for eps in (1, -1):
        if abs(s - eps) < 1e-8:
            return eps
    raise InconsistencyError(f"product scalar {s:.6g} is not +-1")


def decompose_word(M: SL2Int) -> List[str]:
    """Word in 'S', 'T', 'Ti' whose product is M.

    Nearest-integer continued fraction on the first column: peel off
    T^q so that |a - q c| <= |c|/2, then an S, and repeat until c = 0.
    """
    word: List[str] = []
    cur = M
    while cur.c != 0:
        a, c = cur.a, cur.c
        q = int(math.floor(a / c + 0.5))
        if q:
            word += ["T" if q > 0 else "Ti"] * abs(q)
            cur = SL2Int(cur.a - q * cur.c, cur.b - q * cur.d, cur.c, cur.d)
        # cur = S * rest, rest = S^{-1} cur
        word.append("S")
        cur = SL2Int(-cur.c, -cur.d, cur.a, cur.b)
    if cur.a == 1:
        tail = cur.b
    else:
        word += ["S", "S"]
        tail = -cur.b
    word += ["T" if tail > 0 else "Ti"] * abs(tail)
    return word


def word_product(word: Iterable[str]) -> SL2Int:
    out = IDENTITY
    for g in word:
        out = out @ GENERATORS[g]
    return out
