"""Archimedean Whittaker functions on Sp(2,R).

Representation descriptors, Blattner parameters, K-type matrices,
rapidly decreasing Whittaker functions for large discrete series,
P_J-principal series and principal series, and the solutions attached
to degenerate characters (m3 = 0), which are not rapidly decreasing.

Every formula is fixed up to an overall constant, which is taken to be 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError, TagError
from .specfun import DEFAULT_CFG, QuadratureConfig, _bessel_k_vec, _whittaker_w0_vec, bessel_j, bessel_k

__all__ = [
    "HolDS",
    "AntiholDS",
    "LargeDS",
    "PJPS",
    "PS",
    "RepDescriptor",
    "CharacterN0",
    "TorusPoint",
    "BlattnerParameter",
    "blattner",
    "distinguished_ktype",
    "whittaker_dim",
    "largeds_leading",
    "largeds_chamber2_leading",
    "pjps_whittaker",
    "ps_whittaker",
    "ps_unit_components",
    "degenerate_basis",
    "degenerate_coefficient",
    "largeds_envelope",
    "ps_PQ",
    "ps_degenerate_basis",
    "ktype_matrix",
    "flip_chamber",
    "decay_profile",
]


# ------------------------------------------------------------ descriptors

def _int(v, what):
    if int(v) != v:
        raise ParameterError(f"{what} must be an integer")
    return int(v)


@dataclass(frozen=True)
class HolDS:
    """Holomorphic discrete series, lambda in Xi_I: l1 > l2 > 0."""

    l1: int
    l2: int

    def __post_init__(self):
        l1, l2 = _int(self.l1, "l1"), _int(self.l2, "l2")
        if not l1 > l2 > 0:
            raise ParameterError("holomorphic discrete series needs l1 > l2 > 0")


@dataclass(frozen=True)
class AntiholDS:
    """Anti-holomorphic discrete series, lambda in Xi_IV: 0 > l1 > l2."""

    l1: int
    l2: int

    def __post_init__(self):
        l1, l2 = _int(self.l1, "l1"), _int(self.l2, "l2")
        if not 0 > l1 > l2:
            raise ParameterError("anti-holomorphic discrete series needs 0 > l1 > l2")


@dataclass(frozen=True)
class LargeDS:
    """Large discrete series, l1 > 0 > l2 with l1 != -l2."""

    l1: int
    l2: int

    def __post_init__(self):
        l1, l2 = _int(self.l1, "l1"), _int(self.l2, "l2")
        if not (l1 > 0 > l2) or l1 == -l2:
            raise ParameterError("large discrete series needs l1 > 0 > l2 and l1 != -l2")

    @property
    def chamber(self) -> str:
        return "II" if self.l1 > -self.l2 else "III"

    def contragredient(self) -> "LargeDS":
        return LargeDS(-self.l2, -self.l1)


@dataclass(frozen=True)
class PJPS:
    """P_J-principal series induced from (D^sign_n, eps) and nu_z."""

    n: int
    sign: int
    parity: str
    z: complex = 0j

    def __post_init__(self):
        n = _int(self.n, "n")
        if n < 1:
            raise ParameterError("P_J-principal series needs n >= 1")
        if self.sign not in (1, -1):
            raise ParameterError("sign must be +1 or -1")
        if self.parity not in ("even", "odd"):
            raise ParameterError("parity must be 'even' or 'odd'")
        object.__setattr__(self, "z", complex(self.z))


@dataclass(frozen=True)
class PS:
    """Principal series from the minimal parabolic, with a multiplicity-one K-type.

    ``ktype`` defaults to (0,0), (1,1) or (1,0) according to sigma.
    """

    z1: complex
    z2: complex
    sigma: Tuple[int, int] = (1, 1)
    ktype: Optional[Tuple[int, int]] = None
    check_regular: bool = True

    def __post_init__(self):
        z1, z2 = complex(self.z1), complex(self.z2)
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)
        s1, s2 = self.sigma
        if s1 not in (1, -1) or s2 not in (1, -1):
            raise ParameterError("sigma entries must be +-1")
        allowed = {
            (1, 1): [(0, 0)],
            (-1, -1): [(1, 1), (-1, -1)],
            (1, -1): [(1, 0), (0, -1)],
            (-1, 1): [(1, 0), (0, -1)],
        }[(s1, s2)]
        kt = tuple(self.ktype) if self.ktype is not None else allowed[0]
        if kt not in allowed:
            raise ParameterError(f"K-type {kt} is not a minimal K-type for sigma={self.sigma}")
        object.__setattr__(self, "ktype", kt)
        if self.check_regular:
            for w in (z1, z2, z1 + z2, z1 - z2):
                if abs(w.imag) < 1e-14 and abs(w.real - round(w.real)) < 1e-14:
                    raise ParameterError("principal series parameters must avoid integers in z1, z2, z1 +- z2")

    @property
    def parity(self) -> str:
        return "even" if self.sigma[0] == self.sigma[1] else "odd"


RepDescriptor = Union[HolDS, AntiholDS, LargeDS, PJPS, PS]


@dataclass(frozen=True)
class CharacterN0:
    m0: float
    m3: float

    @property
    def nondegenerate(self) -> bool:
        return self.m0 * self.m3 != 0


@dataclass(frozen=True)
class TorusPoint:
    a1: float
    a2: float

    def __post_init__(self):
        if not (self.a1 > 0 and self.a2 > 0):
            raise DomainError("torus coordinates must be positive")

    @property
    def y1(self) -> float:
        return self.a1 / self.a2

    @property
    def y2(self) -> float:
        return self.a2 * self.a2


@dataclass(frozen=True)
class BlattnerParameter:
    L1: int
    L2: int

    def __post_init__(self):
        if self.L1 < self.L2:
            raise ParameterError("Blattner parameter needs L1 >= L2")

    @property
    def d(self) -> int:
        return self.L1 - self.L2


def blattner(rep) -> BlattnerParameter:
    """Highest weight of the minimal K-type of a discrete series."""
    if isinstance(rep, HolDS):
        return BlattnerParameter(rep.l1 + 1, rep.l2 + 2)
    if isinstance(rep, AntiholDS):
        return BlattnerParameter(rep.l1 - 2, rep.l2 - 1)
    if isinstance(rep, LargeDS):
        if rep.chamber == "II":
            return BlattnerParameter(rep.l1 + 1, rep.l2)
        return BlattnerParameter(rep.l1, rep.l2 - 1)
    raise TagError(f"blattner needs a discrete series descriptor, got {type(rep).__name__}")


def distinguished_ktype(rep) -> BlattnerParameter:
    """Minimal K-type for discrete series and PS, corner K-type for P_J-principal series."""
    if isinstance(rep, (HolDS, AntiholDS, LargeDS)):
        return blattner(rep)
    if isinstance(rep, PJPS):
        n = rep.n
        if rep.sign > 0:
            return BlattnerParameter(n, n) if rep.parity == "even" else BlattnerParameter(n, n - 1)
        return BlattnerParameter(-n, -n) if rep.parity == "even" else BlattnerParameter(-n + 1, -n)
    if isinstance(rep, PS):
        return BlattnerParameter(*rep.ktype)
    raise TagError(f"unknown descriptor {type(rep).__name__}")


# ---------------------------------------------------------- dimensions

def whittaker_dim(rep, psi: CharacterN0) -> int:
    """Dimension of rapidly decreasing Whittaker functions at the distinguished K-type.

    Holomorphic and anti-holomorphic discrete series have no Whittaker
    model, so they give 0 for every character.
    """
    if isinstance(rep, (HolDS, AntiholDS)):
        return 0
    if not psi.nondegenerate:
        return 0
    if isinstance(rep, LargeDS):
        if rep.chamber == "III":
            return 1 if psi.m3 < 0 else 0
        return 1 if psi.m3 > 0 else 0
    if isinstance(rep, PJPS):
        return 1 if psi.m3 * rep.sign > 0 else 0
    if isinstance(rep, PS):
        return 1
    raise TagError(f"unknown descriptor {type(rep).__name__}")


# ------------------------------------------------------- 1-d t-integrals

def _log_grid_integral(logf: Callable[[np.ndarray], np.ndarray], s_lo: float, s_hi: float,
                       cfg: QuadratureConfig, h0: float = 0.25) -> complex:
    """Trapezoid rule in s = log t for a smooth, doubly decaying integrand.

    ``logf`` returns the complex log of the integrand (including the dt/t
    Jacobian, i.e. the integrand in s).  The sum is computed relative to
    the largest term so that tiny values keep their relative accuracy.
    """
    def run(h):
        s = np.arange(s_lo, s_hi + 0.5 * h, h)
        lf = logf(s)
        ref = np.max(lf.real)
        return h * np.exp(lf - ref).sum(), ref

    h = h0
    prev, ref_prev = run(h)
    for _ in range(cfg.max_refinement_depth):
        h *= 0.5
        cur, ref = run(h)
        prev_rescaled = prev * math.exp(ref_prev - ref)
        if abs(cur - prev_rescaled) <= max(cfg.rel_tol * 1e-2 * abs(cur), 1e-300):
            return cur * math.exp(ref) if ref > -745 else complex(cur) * np.exp(ref)
        prev, ref_prev = cur, ref
    raise ConvergenceError("t-integral did not converge under step halving")


def _bracket(logf, s_center: float = 0.0, drop: float = 60.0) -> Tuple[float, float]:
    """Interval in s outside of which log|f| is below its max minus ``drop``."""
    s = np.linspace(s_center - 40, s_center + 40, 641)
    v = logf(s).real
    v = np.where(np.isfinite(v), v, -np.inf)
    top = v.max()
    keep = np.nonzero(v > top - drop)[0]
    lo = s[max(keep[0] - 2, 0)]
    hi = s[min(keep[-1] + 2, len(s) - 1)]
    return lo, hi


def _oda_integral(power: float, mu: complex, m0: float, m3: float, a1: float, a2: float,
                  cfg: QuadratureConfig) -> complex:
    """int_0^inf t^power W_{0,mu}(t) exp(t^2/(64 pi m3 a2^2) + 64 pi^3 m0^2 m3 a1^2 / t^2) dt/t, m3 < 0."""
    if not m3 < 0:
        raise ParameterError("the t-integral converges only for m3 < 0")
    c1 = 1.0 / (64 * math.pi * m3 * a2 * a2)
    c2 = 64 * math.pi ** 3 * m0 * m0 * m3 * a1 * a1

    def logf(s):
        t = np.exp(s)
        w = _whittaker_w0_vec(mu, t)
        with np.errstate(divide="ignore"):
            return power * s + np.log(w.astype(complex)) + c1 * t * t + c2 / (t * t)

    # the peak sits near the balance of the two Gaussians
    s_c = 0.25 * math.log(max(c2 / c1, 1e-300)) if c2 != 0 else 0.0
    lo, hi = _bracket(logf, s_c)
    return _log_grid_integral(logf, lo, hi, cfg)


# --------------------------------------------------------- large DS

def largeds_leading(rep: LargeDS, psi: CharacterN0, a: TorusPoint,
                    cfg: QuadratureConfig = DEFAULT_CFG, L: Optional[BlattnerParameter] = None) -> complex:
    """c_{d_Lambda}(a) for a chamber III large discrete series, m3 < 0, m0 != 0."""
    if rep.chamber != "III":
        raise ParameterError("largeds_leading is stated for chamber III; use flip_chamber for II")
    if not psi.m3 < 0 or psi.m0 == 0:
        raise ParameterError("largeds_leading needs m3 < 0 and m0 != 0")
    L = L or blattner(rep)
    d = L.d
    a1, a2 = a.a1, a.a2
    h = _oda_integral(-L.L1 - 1.5, L.L1, psi.m0, psi.m3, a1, a2, cfg)
    logpre = ((-L.L2 + 1 - d) * math.log(a1) - L.L2 * math.log(a2)
              + d * math.log(a1 / a2) + 2 * math.pi * psi.m3 * a2 * a2)
    val = h * math.exp(logpre)
    return float(val.real)


def largeds_envelope(rep: LargeDS, psi: CharacterN0, a: TorusPoint,
                     cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """int t^{-L1-3/2} exp(...) dt/t, the W-free bound of the leading integral."""
    L = blattner(rep)
    m0, m3, a1, a2 = psi.m0, psi.m3, a.a1, a.a2
    c1 = 1.0 / (64 * math.pi * m3 * a2 * a2)
    c2 = 64 * math.pi ** 3 * m0 * m0 * m3 * a1 * a1

    def logf(s):
        t = np.exp(s)
        return ((-L.L1 - 1.5) * s + c1 * t * t + c2 / (t * t)).astype(complex)

    lo, hi = _bracket(logf, 0.25 * math.log(c2 / c1))
    return float(_log_grid_integral(logf, lo, hi, cfg).real)


# ---------------------------------------------------------- P_J PS

def pjps_whittaker(rep: PJPS, psi: CharacterN0, a: TorusPoint,
                   cfg: QuadratureConfig = DEFAULT_CFG) -> tuple:
    """Coefficients of the Whittaker function at the corner K-type.

    Even parity gives one component, odd parity gives (c0, c1).  The
    displayed integrals converge only for m3 < 0, which is the supported
    side for sign = -; sign = + uses (m0, -m3).  An empty tuple means
    the space is zero.
    """
    if whittaker_dim(rep, psi) == 0:
        return ()
    m0 = psi.m0
    m3 = psi.m3 if rep.sign < 0 else -psi.m3
    n, z = rep.n, rep.z
    a1, a2 = a.a1, a.a2
    gauss = 2 * math.pi * m3 * a2 * a2

    def comp(p1, p2, power):
        integral = _oda_integral(power, z, m0, m3, a1, a2, cfg)
        return complex(integral * math.exp(p1 * math.log(a1) + p2 * math.log(a2) + gauss))

    if rep.parity == "even":
        out = (comp(n + 1, n, -n + 0.5),)
    else:
        out = (comp(n + 2, n, -0.5 - n), comp(n + 1, n - 1, 1.5 - n))
    return tuple(_real_if_real(v, z) for v in out)


def _real_if_real(v: complex, *params):
    if all(complex(p).imag == 0 or complex(p).real == 0 for p in params) and abs(v.imag) <= 1e-12 * max(abs(v), 1e-300):
        return float(v.real)
    return v


# ------------------------------------------------------------ PS (minimal)

MAX_GRID_NODES = 4_000_000


def _ps_grid(Y1: float, Y2: float, h: float, pad: float = 60.0):
    """Box in (s1, s2) = (log t1, log t2) holding the Gaussian mass."""
    # exp(-pi (Y1^2 Y2 / t1^2 + t1^2 / Y2)): peak at t1^2 = Y1 Y2
    c1 = 0.5 * math.log(Y1 * Y2)
    w1 = 0.5 * math.log(1.0 + pad / (math.pi * Y1)) + 1.5
    # exp(-pi Y2 (t2^2 + 1/t2^2)): peak at t2 = 1
    w2 = 0.5 * math.log(1.0 + pad / (math.pi * Y2)) + 1.5
    n1 = int(math.ceil(w1 / h))
    n2 = int(math.ceil(w2 / h))
    return c1, n1, n2


class _KCache:
    """K_nu on the shared 1-d grid exp(c + k h)."""

    def __init__(self):
        self.store = {}

    def get(self, nu: complex, base: float, h: float, kmin: int, kmax: int) -> np.ndarray:
        key = (complex(nu), base, h, kmin, kmax)
        if key not in self.store:
            ks = np.arange(kmin, kmax + 1)
            y = 2 * math.pi * np.exp(base + ks * h)
            self.store[key] = _bessel_k_vec(nu, y)
        return self.store[key]


def _ps_double(Y1: float, Y2: float, nu_a: complex, nu_b: complex, weight: Callable, h: float,
               cache: _KCache) -> complex:
    """int int K_{nu_a}(2 pi t1/t2) K_{nu_b}(2 pi t1 t2) weight(t1,t2) E dt1/t1 dt2/t2.

    With s1, s2 on a common step h, log(t1/t2) and log(t1 t2) lie on one
    1-d grid, so each K is evaluated once per node.
    """
    c1, n1, n2 = _ps_grid(Y1, Y2, h)
    i = np.arange(-n1, n1 + 1)
    j = np.arange(-n2, n2 + 1)
    s1 = c1 + i * h
    s2 = j * h
    t1 = np.exp(s1)[:, None]
    t2 = np.exp(s2)[None, :]
    lo = -n1 - n2
    hi = n1 + n2
    Ka = cache.get(nu_a, c1, h, lo, hi)
    Kb = cache.get(nu_b, c1, h, lo, hi)
    ii = i[:, None]
    jj = j[None, :]
    ka = Ka[(ii - jj) - lo]
    kb = Kb[(ii + jj) - lo]
    E = np.exp(-math.pi * (Y1 * Y1 * Y2 / t1 ** 2 + t1 ** 2 / Y2 + Y2 / t2 ** 2 + Y2 * t2 ** 2))
    return complex((ka * kb * weight(t1, t2) * E).sum() * h * h)


def _ps_integral(Y1, Y2, nu_a, nu_b, weight, cfg, h0=0.2):
    cache = _KCache()
    h = h0
    prev = _ps_double(Y1, Y2, nu_a, nu_b, weight, h, cache)
    for _ in range(cfg.max_refinement_depth):
        h *= 0.5
        _, n1, n2 = _ps_grid(Y1, Y2, h)
        if (2 * n1 + 1) * (2 * n2 + 1) > MAX_GRID_NODES:
            raise ConvergenceError(f"principal-series double integral: rel_tol {cfg.rel_tol:g} "
                                   f"not reached within the grid limit")
        cur = _ps_double(Y1, Y2, nu_a, nu_b, weight, h, cache)
        if abs(cur - prev) <= max(cfg.rel_tol * 1e-2 * abs(cur), 1e-300):
            return cur
        prev = cur
    raise ConvergenceError("principal-series double integral did not converge")


def ps_unit_components(z1: complex, z2: complex, L: Tuple[int, int], Y1: float, Y2: float,
                       cfg: QuadratureConfig = DEFAULT_CFG) -> tuple:
    """Whittaker components for the character (1,1) at (y1, y2) = (Y1, Y2).

    Also used for a general character by passing Y1 = |m0| y1, Y2 = |m3| y2.
    """
    z1, z2 = complex(z1), complex(z2)
    one = lambda t1, t2: 1.0
    if L == (0, 0):
        I = _ps_integral(Y1, Y2, (z1 - z2) / 2, (z1 + z2) / 2, one, cfg)
        return (Y1 ** 2 * Y2 ** 1.5 * I,)
    if L in ((1, 1), (-1, -1)):
        l = L[0]
        w = lambda t1, t2: 1.0 / (t1 * t2) - l * t2 / t1
        I = _ps_integral(Y1, Y2, (z1 - z2) / 2, (z1 + z2) / 2, w, cfg)
        return (Y1 ** 2.5 * Y2 ** 2 * I,)
    if L in ((1, 0), (0, -1)):
        P1 = _ps_P1(z1, z2, Y1, Y2, cfg)
        P2 = -_ps_P1(z1, -z2, Y1, Y2, cfg)
        Q1 = _ps_Q1(z1, z2, Y1, Y2, cfg)
        Q2 = -_ps_Q1(z1, -z2, Y1, Y2, cfg)
        pre = Y1 ** 2 * Y2 ** 1.5
        if L == (1, 0):
            return (pre * (P1 + P2), pre * (Q1 + Q2))
        return (pre * (Q1 - Q2), pre * (-P1 + P2))
    raise ParameterError(f"K-type {L} is not a multiplicity-one K-type handled here")


def _ps_P1(z1, z2, Y1, Y2, cfg):
    w = lambda t1, t2: (z2 + 1) / 2 - math.pi * Y1 * Y1 * Y2 / t1 ** 2
    I = _ps_integral(Y1, Y2, (z1 - z2 - 1) / 2, (z1 + z2 + 1) / 2, w, cfg)
    return math.sqrt(math.pi * Y2) * I


def _ps_Q1(z1, z2, Y1, Y2, cfg):
    I = _ps_integral(Y1, Y2, (z1 - z2 - 1) / 2, (z1 + z2 + 1) / 2, lambda t1, t2: 1.0, cfg)
    return math.pi * Y1 * math.sqrt(math.pi * Y2) * I


def ps_PQ(which: str, z1, z2, Y1, Y2, cfg: QuadratureConfig = DEFAULT_CFG) -> complex:
    """P1, P2, Q1 or Q2 at (Y1, Y2)."""
    z1, z2 = complex(z1), complex(z2)
    if which == "P1":
        return _ps_P1(z1, z2, Y1, Y2, cfg)
    if which == "P2":
        return -_ps_P1(z1, -z2, Y1, Y2, cfg)
    if which == "Q1":
        return _ps_Q1(z1, z2, Y1, Y2, cfg)
    if which == "Q2":
        return -_ps_Q1(z1, -z2, Y1, Y2, cfg)
    raise ParameterError(which)


def ps_whittaker(rep: PS, psi: CharacterN0, a: TorusPoint, cfg: QuadratureConfig = DEFAULT_CFG) -> tuple:
    """Whittaker function of a principal series at a general character.

    The (1,1) formula is evaluated at (|m0| y1, |m3| y2).  For
    sigma = (-1, 1) the roles of z1 and z2 are exchanged.
    """
    if not psi.nondegenerate:
        raise ParameterError("ps_whittaker needs m0 m3 != 0")
    z1, z2 = rep.z1, rep.z2
    if rep.sigma == (-1, 1):
        z1, z2 = z2, z1
    Y1 = abs(psi.m0) * a.y1
    Y2 = abs(psi.m3) * a.y2
    vals = ps_unit_components(z1, z2, rep.ktype, Y1, Y2, cfg)
    return tuple(_real_if_real(complex(v), z1, z2) for v in vals)


# ----------------------------------------------------- degenerate (m3 = 0)

@dataclass(frozen=True)
class DegenerateSolution:
    label: str
    eigenvalue: int
    value: complex
    residual: float


def _deg_h(kind: str, lam: float, m0: float, a1: float, a2: float) -> complex:
    if kind == "J+":
        return (a1 * a2) ** (lam / 2) * bessel_j(lam / 2, 2j * math.pi * m0 * a1 / a2)
    if kind == "J-":
        return (a1 * a2) ** (lam / 2) * bessel_j(-lam / 2, 2j * math.pi * m0 * a1 / a2)
    if kind == "K":
        return (a1 * a2) ** (lam / 2) * bessel_k(lam / 2, 2 * math.pi * abs(m0) * a1 / a2)
    raise ParameterError(kind)


def _deg_residual(kind, lam, m0, a1, a2) -> Tuple[complex, float]:
    """(h'' + (1-lam)/a1 h' - 4 pi^2 m0^2 / a2^2 h) / |h| by 5-point differences in a1."""
    step = 1e-3 * a1
    f = [_deg_h(kind, lam, m0, a1 + k * step, a2) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * step)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * step * step)
    res = d2 + (1 - lam) / a1 * d1 - 4 * math.pi ** 2 * m0 * m0 / (a2 * a2) * f[2]
    return f[2], abs(res) / max(abs(f[2]), 1e-300)


def degenerate_basis(rep: LargeDS, m0: float, a: TorusPoint, include_k: bool = True) -> list:
    """Solutions (a1 a2)^{lam/2} J_{+-lam/2}(2 pi i m0 a1/a2) for lam in {1, 2 L1 + 1}.

    For lam != 1 the moderate-growth combination (a1 a2)^{lam/2}
    K_{lam/2}(2 pi |m0| a1/a2) is appended.  Each entry carries the
    relative finite-difference residual of the a1-equation.
    """
    if m0 == 0:
        raise ParameterError("degenerate_basis needs m0 != 0")
    L = blattner(rep)
    out = []
    for lam in (1, 2 * L.L1 + 1):
        kinds = ["J+", "J-"] + (["K"] if include_k and lam != 1 else [])
        for kind in kinds:
            v, r = _deg_residual(kind, lam, m0, a.a1, a.a2)
            out.append(DegenerateSolution(kind, lam, v, r))
    return out


def degenerate_coefficient(rep: LargeDS, kind: str, lam: int, m0: float, a: TorusPoint) -> complex:
    """c_{d_Lambda}(a) built from a degenerate solution (m3 = 0)."""
    L = blattner(rep)
    d = L.d
    pre = a.a1 ** (-L.L2 + 1 - d) * a.a2 ** (-L.L2) * (a.a1 / a.a2) ** d
    return pre * _deg_h(kind, lam, m0, a.a1, a.a2)


def ps_degenerate_basis(z1: complex, z2: complex, a: TorusPoint) -> list:
    """Power solutions psi = y2^e, e in {+-(z1+z2)/2, +-(z1-z2)/2}, of the m3 = 0 system,
    with the relative residual of (d2^2 - ((z1+z2)/2)^2)(d2^2 - ((z1-z2)/2)^2) psi
    (d2 = y2 d/dy2) by finite differences.  Values returned are W = y1^{3/2} y2^2 psi.
    """
    z1, z2 = complex(z1), complex(z2)
    exps = [(z1 + z2) / 2, -(z1 + z2) / 2, (z1 - z2) / 2, -(z1 - z2) / 2]
    y1, y2 = a.y1, a.y2
    out = []
    for ex in exps:
        # in u = log y2 the operator is (D^2 - p^2)(D^2 - q^2), D = d/du
        f = lambda u: np.exp(ex * u)
        u0 = math.log(y2)
        st = 1e-2
        k = np.arange(-4, 5)
        vals = f(u0 + k * st)
        # central stencils for D^2 and D^4 (order 4 accuracy)
        d2 = (-vals[2] + 16 * vals[3] - 30 * vals[4] + 16 * vals[5] - vals[6]) / (12 * st ** 2)
        d4 = (-vals[1] + 12 * vals[2] - 39 * vals[3] + 56 * vals[4] - 39 * vals[5]
              + 12 * vals[6] - vals[7]) / (6 * st ** 4)
        p2 = ((z1 + z2) / 2) ** 2
        q2 = ((z1 - z2) / 2) ** 2
        res = d4 - (p2 + q2) * d2 + p2 * q2 * vals[4]
        W = y1 ** 1.5 * y2 ** 2 * vals[4]
        out.append(DegenerateSolution(f"y2^{ex:.4g}", 0, complex(W), float(abs(res) / abs(vals[4]))))
    return out


# --------------------------------------------------------------- K-types

def ktype_matrix(L: BlattnerParameter, u, det_exponent: int = 1, check_unitary: bool = True) -> np.ndarray:
    """Matrix of det^{e L2} (x) Sym^{d}(u) on the basis v_0, ..., v_d.

    v_k is binom(d, k) x1^k x2^{d-k} with u acting by p(x) -> p(x u); in
    this basis the upper-triangular unit E acts by v_k -> (k+1) v_{k+1}.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ParameterError("u must be 2x2")
    if check_unitary and np.abs(u @ u.conj().T - np.eye(2)).max() > 1e-12:
        raise ParameterError("u must be unitary")
    d = L.d
    # (x u)_1 = x1 u11 + x2 u21, (x u)_2 = x1 u12 + x2 u22
    # polynomial coefficients indexed by power of x1
    p1 = np.array([u[1, 0], u[0, 0]])  # [coef x2, coef x1] as poly in x1 (x2 implicit)
    p2 = np.array([u[1, 1], u[0, 1]])
    M = np.zeros((d + 1, d + 1), dtype=complex)
    for k in range(d + 1):
        poly = np.array([1.0 + 0j])
        for _ in range(k):
            poly = np.convolve(poly, p1)
        for _ in range(d - k):
            poly = np.convolve(poly, p2)
        # poly[l] multiplies x1^l x2^{d-l}
        for l in range(d + 1):
            M[l, k] = math.comb(d, k) * poly[l] / math.comb(d, l)
    return np.linalg.det(u) ** (det_exponent * L.L2) * M


J2_PRIME = np.array([[0.0, 1.0], [1.0, 0.0]])


def flip_chamber(values, L: BlattnerParameter, a: Optional[TorusPoint] = None,
                 det_exponent: int = 1) -> np.ndarray:
    """Chamber II coefficients from chamber III ones.

    W*(g) = W(delta g delta^{-1} xi).  On the torus delta commutes with a,
    and xi lies in K, so W*(a) = tau*(xi)^{-1} W(a): the same torus point,
    acted on by the contragredient K-type at xi (image J2' in U(2)).
    ``values`` are the chamber III coefficients (c_0..c_d) for the
    character (m0, -m3), or a callable returning them at ``a``.
    L is the Blattner parameter of the chamber III representation.
    """
    if callable(values):
        if a is None:
            raise ParameterError("a torus point is needed when values is callable")
        values = values(a)
    v = np.asarray(values, dtype=complex)
    Lstar = BlattnerParameter(-L.L2, -L.L1)
    R = ktype_matrix(Lstar, J2_PRIME, det_exponent)
    return np.linalg.solve(R, v)


def largeds_chamber2_leading(rep: LargeDS, psi: CharacterN0, a: TorusPoint,
                             cfg: QuadratureConfig = DEFAULT_CFG) -> complex:
    """Nonzero coefficient of the chamber II Whittaker vector at a (m3 > 0).

    Only c_d of the chamber III partner (character (m0, -m3)) is explicit;
    the flip is monomial and carries c_d to a single chamber II slot.
    """
    if rep.chamber != "II":
        raise ParameterError("largeds_chamber2_leading needs a chamber II representation")
    partner = rep.contragredient()
    L = blattner(partner)
    v = np.zeros(L.d + 1, dtype=complex)
    v[L.d] = largeds_leading(partner, CharacterN0(psi.m0, -psi.m3), a, cfg)
    out = flip_chamber(v, L)
    return complex(out[np.argmax(np.abs(out))])


# -------------------------------------------------------------- decay

def decay_profile(coords: Sequence[float], values: Sequence[complex], power: float = 10.0,
                  final_ratio: float = 1e-6) -> Tuple[bool, float]:
    """Check that |value| * coord^power decreases monotonically to ~0.

    Returns (passes, slope) where slope is the least-squares slope of
    log(|value| coord^power) against coord.
    """
    x = np.asarray(coords, dtype=float)
    v = np.abs(np.asarray(values, dtype=complex))
    with np.errstate(divide="ignore"):
        lg = np.log(v) + power * np.log(x)
    if not np.all(np.isfinite(lg)):
        lg = np.where(np.isfinite(lg), lg, -np.inf)
    mono = bool(np.all(np.diff(lg) < 0))
    small = bool(lg[-1] - lg.max() < math.log(final_ratio))
    finite = np.isfinite(lg)
    slope = float(np.polyfit(x[finite], lg[finite], 1)[0]) if finite.sum() >= 2 else float("-inf")
    return mono and small, slope
