"""Heisenberg group N_J, the Schroedinger model nu_m, the Weil action
omega_m on Hermite test vectors, and the theta functionals theta_alpha.

Coordinates follow the product n(u0,u1,u2) = A(u1,u2) B(u0) of 4x4
symplectic matrices.  In these coordinates

    n(u) n(v) = n(u0+v0, u1+v1+2 u0 v2, u2+v2)

and for g = [[a,b],[c,d]] in SL2 (embedded on the second and fourth
coordinates) g^{-1} n(u) g = n(w0, u1 + w0 w2 - u0 u2, w2) with
w0 = a u0 + c u2, w2 = b u0 + d u2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError, TruncationError
from .specfun import DEFAULT_CFG, QuadratureConfig, hermite

__all__ = [
    "HeisenbergPoint",
    "TestVector",
    "UpperHalfPoint",
    "Profile",
    "nj_multiply",
    "nj_inverse",
    "nj_conjugate",
    "nj_matrix",
    "sl2_embed",
    "nu_action",
    "nu_vector",
    "weil_action",
    "weil_vector",
    "theta_alpha",
    "theta_jacobi_lift",
    "default_truncation",
]


def e(x):
    return np.exp(2j * np.pi * x)


@dataclass(frozen=True)
class HeisenbergPoint:
    u0: float = 0.0
    u1: float = 0.0
    u2: float = 0.0

    def __mul__(self, other: "HeisenbergPoint") -> "HeisenbergPoint":
        return nj_multiply(self, other)

    def inverse(self) -> "HeisenbergPoint":
        return nj_inverse(self)


def nj_multiply(n1: HeisenbergPoint, n2: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(
        n1.u0 + n2.u0,
        n1.u1 + n2.u1 + 2.0 * n1.u0 * n2.u2,
        n1.u2 + n2.u2,
    )


def nj_inverse(n: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(-n.u0, -n.u1 + 2.0 * n.u0 * n.u2, -n.u2)


def nj_conjugate(g, n: HeisenbergPoint) -> HeisenbergPoint:
    """g^{-1} n g for g = (a, b, c, d) in SL2(R)."""
    a, b, c, d = _abcd(g)
    w0 = a * n.u0 + c * n.u2
    w2 = b * n.u0 + d * n.u2
    return HeisenbergPoint(w0, n.u1 + w0 * w2 - n.u0 * n.u2, w2)


def nj_matrix(n: HeisenbergPoint) -> np.ndarray:
    A = np.eye(4)
    A[0, 2] = n.u1
    A[0, 3] = n.u2
    A[1, 2] = n.u2
    B = np.eye(4)
    B[0, 1] = n.u0
    B[3, 2] = -n.u0
    return A @ B


def sl2_embed(g) -> np.ndarray:
    a, b, c, d = _abcd(g)
    M = np.eye(4)
    M[1, 1], M[1, 3], M[3, 1], M[3, 3] = a, b, c, d
    return M


def _abcd(g):
    if hasattr(g, "as_tuple"):
        return tuple(float(v) for v in g.as_tuple())
    arr = np.asarray(g, dtype=float)
    if arr.shape == (2, 2):
        return arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1]
    if arr.shape == (4,):
        return tuple(arr)
    raise ParameterError("expected an SL2 element as (a,b,c,d) or a 2x2 array")


@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError("UpperHalfPoint needs y > 0")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def matrix(self) -> tuple:
        """b = [[sqrt y, x/sqrt y], [0, 1/sqrt y]], so b.i = x + iy."""
        r = math.sqrt(self.y)
        return (r, self.x / r, 0.0, 1.0 / r)


# ----------------------------------------------------------------- vectors

@dataclass(frozen=True)
class Profile:
    """A vectorised function of x with a Gaussian envelope.

    |f(x)| is bounded by a polynomial of degree <= ``degree`` times
    exp(-2 pi width (x - center)^2); quadratures use this to size grids.
    """

    func: Callable[[np.ndarray], np.ndarray]
    center: float
    width: float
    degree: int

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class TestVector:
    """Finite Hermite combination sum_j c_j h_j at index m."""

    coefficients: Mapping[int, complex] = field(default_factory=lambda: {0: 1.0})
    m: float = 1.0

    def __post_init__(self):
        if self.m == 0:
            raise ParameterError("TestVector needs m != 0")
        for j in self.coefficients:
            if int(j) != j or j < 0:
                raise ParameterError("Hermite indices must be non-negative integers")

    @classmethod
    def hermite(cls, j: int, m: float) -> "TestVector":
        return cls({int(j): 1.0}, m)

    @property
    def degree(self) -> int:
        return max(self.coefficients) if self.coefficients else 0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for j, cj in self.coefficients.items():
            out = out + cj * hermite(int(j), x, self.m)[1]
        return out

    def profile(self) -> Profile:
        return Profile(self.__call__, 0.0, abs(self.m), self.degree)


def _as_profile(h, m) -> Profile:
    if isinstance(h, Profile):
        return h
    if isinstance(h, TestVector):
        return h.profile()
    if callable(h):
        return Profile(lambda x: np.asarray(h(x), dtype=complex), 0.0, abs(m), 0)
    raise ParameterError("expected a TestVector, Profile or callable")


def _check_m(m):
    if m == 0:
        raise ParameterError("index m must be nonzero")


# ---------------------------------------------------------------- nu_m

def nu_vector(m: float, n: HeisenbergPoint, h) -> Profile:
    """[nu_m(n) h](x) = e(m (u1 + 2 x u2)) h(x + u0)."""
    _check_m(m)
    p = _as_profile(h, m)

    def f(x):
        x = np.asarray(x, dtype=float)
        return e(m * (n.u1 + 2.0 * x * n.u2)) * p(x + n.u0)

    return Profile(f, p.center - n.u0, p.width, p.degree)


def nu_action(m: float, n: HeisenbergPoint, h, t):
    """Value of nu_m(n) h at t."""
    val = nu_vector(m, n, h)(t)
    return complex(val) if np.ndim(val) == 0 else val


# ------------------------------------------------------------- omega_m

MAX_KERNEL_NODES = 2e7


def _grid_half_width(p: Profile) -> float:
    # |poly| e^{-2 pi w s^2} below ~1e-18 of the peak
    base = math.sqrt(44.0 / (2 * math.pi * p.width))
    return base + 0.6 * math.sqrt(max(p.degree, 1) / p.width)


def weil_vector(m: float, g, h, cfg: QuadratureConfig = DEFAULT_CFG) -> Profile:
    """omega_m(g) h as a vectorised function.

    For c = 0: |a|^{1/2} e(m a b x^2) h(a x).
    For c != 0, after s = a x + c y the kernel becomes
        sqrt(2|m|) |c|^{-1/2} int e(m (a x^2 - 2 x s + d s^2)/c) h(s) ds,
    evaluated by the trapezoid rule on the Gaussian support of h with
    step halving until two passes agree.  The factor sqrt(2|m|) makes
    the operator unitary.
    """
    _check_m(m)
    a, b, c, d = _abcd(g)
    if abs(a * d - b * c - 1.0) > 1e-9:
        raise ParameterError("g must have determinant 1")
    p = _as_profile(h, m)
    if c == 0.0:
        def f0(x):
            x = np.asarray(x, dtype=float)
            return math.sqrt(abs(a)) * e(m * a * b * x * x) * p(a * x)

        return Profile(f0, p.center / a, p.width * a * a, p.degree)

    half = _grid_half_width(p)
    lo, hi = p.center - half, p.center + half
    pref = math.sqrt(2.0 * abs(m)) / math.sqrt(abs(c))

    def integrate(x, step):
        n = int(math.ceil((hi - lo) / step))
        s = lo + step * np.arange(n + 1)
        hs = p(s)
        phase = e(m * (a * x[:, None] ** 2 - 2.0 * x[:, None] * s[None, :] + d * s[None, :] ** 2) / c)
        return step * (phase * hs[None, :]).sum(axis=1)

    def f(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        shape = x.shape
        x = x.ravel()
        # the chirp frequency bounds the step needed
        freq = abs(m) * (2.0 * np.abs(x).max(initial=0.0) + 2.0 * abs(d) * max(abs(lo), abs(hi))) / abs(c)
        step = min(0.05 / math.sqrt(p.width), 0.5 / (freq + 1.0))
        prev = integrate(x, step)
        err = float("inf")
        for _ in range(cfg.max_refinement_depth):
            step *= 0.5
            if x.size * (hi - lo) / step > MAX_KERNEL_NODES:
                raise ConvergenceError(f"Weil-action quadrature: rel_tol {cfg.rel_tol:g} not reached "
                                       f"within the grid limit (last change {err:.3e})")
            cur = integrate(x, step)
            err = np.abs(cur - prev).max()
            if err <= max(cfg.rel_tol * 1e-2 * np.abs(cur).max(), cfg.abs_tol):
                return (pref * cur).reshape(shape)
            prev = cur
        raise ConvergenceError(f"Weil-action quadrature did not settle (last change {err:.3e})")

    # omega(g) maps the Gaussian e^{-2 pi |m| s^2} to another Gaussian of
    # width |m| / |c i + d|^2-type size; keep a generous estimate
    w_out = p.width / (a * a + b * b + c * c + d * d)
    return Profile(f, 0.0, w_out, p.degree)


def weil_action(m: float, g, h, x_out, cfg: QuadratureConfig = DEFAULT_CFG):
    """Value of omega_m(g) h at x_out (scalar or array).

    The result is meaningful up to one unimodular constant per (m, g).
    """
    val = weil_vector(m, g, h, cfg)(x_out)
    if np.ndim(x_out) == 0:
        return complex(np.asarray(val).ravel()[0])
    return val


# ---------------------------------------------------------------- thetas

def default_truncation(m: float, u0: float = 0.0, y: float = 1.0, degree: int = 0) -> int:
    """Smallest K with 2 pi |m| y (K - 1 - |u0| - 1/2)^2 > 40."""
    K = 1
    while 2 * math.pi * abs(m) * y * (K - 1 - abs(u0) - 0.5) ** 2 <= 40.0 or K - 1 - abs(u0) - 0.5 < 0:
        K += 1
    if degree:
        # head-room for the polynomial factor of H_j
        K += int(math.ceil(math.sqrt(degree / (2 * math.pi * abs(m) * y)))) + 1
    return K


def _theta_terms(m, alpha, n, K):
    k = np.arange(-K, K + 1)
    xs = n.u0 + k + alpha / (2.0 * m)
    ph = e(m * n.u1 + (2 * k * m + alpha) * n.u2)
    return k, xs, ph


def theta_alpha(m: int, alpha: int, h, n: HeisenbergPoint, K: int | None = None,
                abs_tol: float = 1e-12, return_bound: bool = False):
    """theta_alpha(h)(n) = sum_k e(m u1 + (2km + alpha) u2) h(u0 + k + alpha/2m).

    The sum runs over |k| <= K; the tail is bounded by the moduli of the
    next terms on both sides, and TruncationError is raised if that bound
    exceeds abs_tol times the size of the sum.
    """
    _check_m(m)
    if int(m) != m:
        raise ParameterError("theta_alpha needs an integer index")
    p = _as_profile(h, m)
    if K is None:
        # the envelope width of h plays the role of |m| y
        K = default_truncation(1.0, abs(n.u0) + abs(p.center), p.width, p.degree)
    _, xs, ph = _theta_terms(m, alpha, n, K)
    vals = p(xs)
    total = complex((ph * vals).sum())
    edge = np.concatenate([n.u0 + np.arange(K + 1, K + 4) + alpha / (2.0 * m),
                           n.u0 - np.arange(K + 1, K + 4) + alpha / (2.0 * m)])
    bound = float(np.abs(p(edge)).sum()) * 1.01
    if bound > abs_tol * max(1.0, abs(total)):
        raise TruncationError(f"theta tail bound {bound:.3e} exceeds tolerance with K={K}")
    return (total, bound) if return_bound else total


def theta_jacobi_lift(m: int, alpha: int, j: int, nJ: HeisenbergPoint, b: UpperHalfPoint,
                      K: int | None = None, abs_tol: float = 1e-14, return_bound: bool = False):
    """theta_alpha(omega_m(b) h_j)(n_J) in closed form.

    sum_k y^{1/4} H_j(sqrt(y) xi_k) e^{-2 pi |m| y xi_k^2}
          e(m xi_k^2 x + m u1 + (2km + alpha) u2),  xi_k = u0 + k + alpha/2m.
    """
    _check_m(m)
    y = b.y
    if K is None:
        K = default_truncation(m, nJ.u0, y, j)
    k, xs, ph = _theta_terms(m, alpha, nJ, K)

    def term(xi):
        hj = hermite(j, xi, m, y)[1]
        return y ** 0.25 * hj * e(m * xi * xi * b.x)

    total = complex((term(xs) * ph).sum())
    edge = np.concatenate([nJ.u0 + np.arange(K + 1, K + 4) + alpha / (2.0 * m),
                           nJ.u0 - np.arange(K + 1, K + 4) + alpha / (2.0 * m)])
    bound = float(np.abs(term(edge)).sum()) * 1.01
    if bound > abs_tol * max(1.0, abs(total)):
        raise TruncationError(f"theta-lift tail bound {bound:.3e} exceeds tolerance with K={K}")
    return (total, bound) if return_bound else total
