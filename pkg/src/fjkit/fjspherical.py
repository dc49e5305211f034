"""Fourier-Jacobi spherical functions: index rules, dimensions, leading coefficients.

A representation of the Jacobi group with central character m != 0 is
rho = pi1 (x) nu~_m with pi1 a genuine representation of the metaplectic
SL2.  Restricted to A_J a spherical function is a sum of
c_{j,k}(a) w_l (x) u_j (x) v*_k over l = l(j,k) = -j + k + Lambda_2 in L.
Only the leading coefficient c_{j0,k0} is evaluated here; it is either a
closed form or e^{X/2} G^{q,0}_{p,q}(X) with X = 4 pi |m| a1^2.

Chamber III large discrete series and P_J-principal series built on D^-
are reduced to chamber II / D^+ by conjugation with delta^{-1} xi.  On
the spherical side this replaces (pi1, m) by (pi1 dual, -m) and the
index (j, k) by (-j, d - k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CaseError, DimensionZero, ParameterError, TagError
from .specfun import DEFAULT_CFG, MeijerGSpec, QuadratureConfig, meijer_g
from .whittaker import PJPS, PS, AntiholDS, HolDS, LargeDS, blattner, distinguished_ktype, decay_profile

__all__ = [
    "PrincipalHalf",
    "Complementary",
    "DiscreteHalf",
    "SL2RepDescriptor",
    "FJIndex",
    "XVariable",
    "AT_MOST_ONE",
    "l_of",
    "j_range",
    "j0_index",
    "index_table",
    "fj_dim",
    "LeadingFormula",
    "leading_formula",
    "fj_leading",
    "rapid_decay_check",
    "decay_tail_check",
]

AT_MOST_ONE = "at_most_1"


def _half(v) -> Fraction:
    f = Fraction(v).limit_denominator(8)
    if abs(float(f) - float(v)) > 1e-12 or f.denominator not in (1, 2):
        raise ParameterError(f"{v} is not a half-integer")
    return f


def _is_half_odd(f: Fraction) -> bool:
    return f.denominator == 2


# ------------------------------------------------ SL2 representations

@dataclass(frozen=True)
class PrincipalHalf:
    """Principal series P^tau_s of the metaplectic SL2, s in iR."""

    s: complex
    tau: Fraction

    def __post_init__(self):
        s = complex(self.s)
        tau = _half(self.tau)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "tau", tau)
        if abs(s.real) > 1e-14:
            raise ParameterError("principal series needs s purely imaginary")
        if tau not in (0, 1, Fraction(1, 2), Fraction(-1, 2)):
            raise ParameterError("tau must be one of 0, 1, 1/2, -1/2")
        if tau == 1 and s == 0:
            raise ParameterError("(s, tau) = (0, 1) is reducible and excluded")

    @property
    def genuine(self) -> bool:
        return _is_half_odd(self.tau)

    def in_L(self, l: Fraction) -> bool:
        return (l - self.tau) % 2 == 0

    def dual(self) -> "PrincipalHalf":
        return PrincipalHalf(self.s, -self.tau)

    @property
    def z0(self) -> complex:
        return self.s


@dataclass(frozen=True)
class Complementary:
    """Complementary series C^tau_s: 0 < s < 1 (tau = 0, 1) or 0 < s < 1/2 (tau = +-1/2)."""

    s: float
    tau: Fraction

    def __post_init__(self):
        tau = _half(self.tau)
        object.__setattr__(self, "tau", tau)
        s = float(self.s)
        object.__setattr__(self, "s", s)
        if tau not in (0, 1, Fraction(1, 2), Fraction(-1, 2)):
            raise ParameterError("tau must be one of 0, 1, 1/2, -1/2")
        hi = 0.5 if _is_half_odd(tau) else 1.0
        if not 0 < s < hi:
            raise ParameterError(f"complementary series needs 0 < s < {hi} for tau = {tau}")

    @property
    def genuine(self) -> bool:
        return _is_half_odd(self.tau)

    def in_L(self, l: Fraction) -> bool:
        return (l - self.tau) % 2 == 0

    def dual(self) -> "Complementary":
        return Complementary(self.s, -self.tau)

    @property
    def z0(self) -> complex:
        return complex(self.s)


@dataclass(frozen=True)
class DiscreteHalf:
    """D^sign_{n1}: L = n1 + 2Z>=0 for sign +, -n1 - 2Z>=0 for sign -.

    n1 = 1/2 gives the quotient representations D^+-_{1/2}.
    """

    n1: Fraction
    sign: int

    def __post_init__(self):
        n1 = _half(self.n1)
        object.__setattr__(self, "n1", n1)
        if n1 < Fraction(1, 2):
            raise ParameterError("n1 must be at least 1/2")
        if self.sign not in (1, -1):
            raise ParameterError("sign must be +1 or -1")

    @property
    def genuine(self) -> bool:
        return _is_half_odd(self.n1)

    def in_L(self, l: Fraction) -> bool:
        if self.sign > 0:
            return l >= self.n1 and (l - self.n1) % 2 == 0
        return l <= -self.n1 and (l + self.n1) % 2 == 0

    def dual(self) -> "DiscreteHalf":
        return DiscreteHalf(self.n1, -self.sign)

    @property
    def z0(self) -> complex:
        return complex(self.n1 - 1)


SL2RepDescriptor = Union[PrincipalHalf, Complementary, DiscreteHalf]


def _is_disc(pi1, sign=None) -> bool:
    return isinstance(pi1, DiscreteHalf) and (sign is None or pi1.sign == sign)


@dataclass(frozen=True)
class FJIndex:
    j: Fraction
    k: int
    l: Fraction

    def __str__(self):
        return f"(j={self.j}, k={self.k}, l={self.l})"


@dataclass(frozen=True)
class XVariable:
    m: float
    a1: float

    def __post_init__(self):
        if self.m == 0:
            raise ParameterError("m must be nonzero")
        if not self.a1 > 0:
            raise ParameterError("a1 must be positive")

    @property
    def x(self) -> float:
        return 4 * math.pi * self.m * self.a1 ** 2

    @property
    def x_prime(self) -> float:
        return -self.x

    @property
    def positive(self) -> float:
        """Whichever of x, x' is positive; the argument of every leading formula."""
        return abs(self.x)


# ------------------------------------------------------------- indices

def l_of(j, k, lam2) -> Fraction:
    return -Fraction(j) + k + Fraction(lam2)


def j_range(m_sign: int, count: int = 400):
    """J = sign(m)(1/2 + Z>=0), first ``count`` members in order of |j|."""
    return [m_sign * (Fraction(1, 2) + i) for i in range(count)]


def _extreme_j(pi1, lam2, m_sign: int) -> Optional[Fraction]:
    """Min (m > 0) or max (m < 0) j in J with l(j, 0) in L, by enumeration."""
    for j in j_range(m_sign):
        if pi1.in_L(l_of(j, 0, lam2)):
            return j
    return None


def index_table(pi1, n: int, context: str, m_sign: int = 1) -> Fraction:
    """The tabulated j0 (m > 0) or j0' (m < 0), transcribed branch by branch.

    For P_J with D^+_{n1} the boundary n1 = n - 1/2 (resp. n - 3/2) is
    admitted in the 1/2 (resp. 3/2) row; there l(j0, 0) = n1 lies in L.
    """
    n = int(n)
    h = Fraction(1, 2)
    if context == "PJ":
        if m_sign > 0:
            if isinstance(pi1, (PrincipalHalf, Complementary)):
                if (pi1.tau + h - n) % 2 == 0:
                    return h
                if (pi1.tau - h - n) % 2 == 0:
                    return 3 * h
            elif _is_disc(pi1, 1):
                n1 = pi1.n1
                if (n1 + h - n) % 2 == 0 and n1 + h <= n:
                    return h
                if (n1 + 3 * h - n) % 2 == 0 and n1 + 3 * h <= n:
                    return 3 * h
            elif _is_disc(pi1, -1):
                return n + pi1.n1
        else:
            if _is_disc(pi1, 1) and pi1.n1 > n - h:
                return n - pi1.n1
    elif context == "PS":
        if m_sign > 0:
            if isinstance(pi1, (PrincipalHalf, Complementary)):
                if (pi1.tau + h - n) % 2 == 0:
                    return h
                if (pi1.tau - h - n) % 2 == 0:
                    return 3 * h
            elif _is_disc(pi1, -1):
                n1 = pi1.n1
                if n1 > -n + 3 * h:
                    return n + n1
                if (n1 - h + n) % 2 == 0 and n1 <= -n + h:
                    return h
                if (n1 - 3 * h + n) % 2 == 0 and n1 <= -n + 3 * h:
                    return 3 * h
        else:
            if isinstance(pi1, (PrincipalHalf, Complementary)):
                if (pi1.tau - h - n) % 2 == 0:
                    return -h
                if (pi1.tau + h - n) % 2 == 0:
                    return -3 * h
            elif _is_disc(pi1, 1):
                n1 = pi1.n1
                if n1 > n + 3 * h:
                    return n - n1
                if (n - n1 - h) % 2 == 0:
                    return -h
                return -3 * h
    else:
        raise ParameterError("context must be 'PJ' or 'PS'")
    raise CaseError(f"no index branch for {pi1} with n={n}, context={context}, sign(m)={m_sign}")


def j0_index(pi1, n: int, context: str, m_sign: int = 1) -> Fraction:
    """j0 = min{j in J : l(j,0) in L} for m > 0, j0' = max for m < 0, with Lambda_2 = n.

    Computed by enumeration; branches that the tables do not cover raise
    CaseError.  ``index_table`` is the independent transcription.
    """
    if context not in ("PJ", "PS"):
        raise ParameterError("context must be 'PJ' or 'PS'")
    if not pi1.genuine:
        raise ParameterError("pi1 must be a genuine representation (half-integral tau or n1)")
    covered = {
        ("PJ", 1): lambda p: True,
        ("PJ", -1): lambda p: _is_disc(p, 1) and p.n1 > n - Fraction(1, 2),
        ("PS", 1): lambda p: not _is_disc(p, 1),
        ("PS", -1): lambda p: not _is_disc(p, -1),
    }[(context, m_sign)]
    if not covered(pi1):
        raise CaseError(f"no index branch for {pi1} with n={n}, context={context}, sign(m)={m_sign}")
    j = _extreme_j(pi1, n, m_sign)
    if j is None:
        raise CaseError(f"no j in J with l(j,0) in L for {pi1}, n={n}")
    return j


# ----------------------------------------------------------- dimensions

def _check_pi1(pi1):
    if not isinstance(pi1, (PrincipalHalf, Complementary, DiscreteHalf)):
        raise TagError(f"unknown SL2 descriptor {type(pi1).__name__}")
    if not pi1.genuine:
        raise ParameterError("pi1 must be genuine: half-integral tau or n1")


def _flip_rep(rep):
    if isinstance(rep, LargeDS) and rep.chamber == "III":
        return rep.contragredient()
    if isinstance(rep, PJPS) and rep.sign < 0:
        return PJPS(rep.n, 1, rep.parity, rep.z)
    return None


def _ps_n(rep: PS) -> int:
    return distinguished_ktype(rep).L1


def fj_dim(rep, pi1, m):
    """0, 1 or AT_MOST_ONE for the rapidly decreasing spherical functions."""
    if m == 0:
        if isinstance(rep, (HolDS, AntiholDS)):
            return 0
        raise ParameterError("only holomorphic and anti-holomorphic discrete series are covered at m = 0")
    _check_pi1(pi1)
    sg = 1 if m > 0 else -1
    h = Fraction(1, 2)
    flipped = _flip_rep(rep)
    if flipped is not None:
        return fj_dim(flipped, pi1.dual(), -m)
    if isinstance(rep, HolDS):
        ok = _is_disc(pi1, 1) and rep.l2 + 3 * h <= pi1.n1 <= rep.l1 + h and m > 0
        return 1 if ok else 0
    if isinstance(rep, AntiholDS):
        ok = _is_disc(pi1, -1) and -rep.l1 + 3 * h <= pi1.n1 <= -rep.l2 + h and m < 0
        return 1 if ok else 0
    if isinstance(rep, LargeDS):
        l1, l2 = rep.l1, rep.l2
        if isinstance(pi1, DiscreteHalf) and pi1.n1 < 3 * h:
            raise CaseError("large discrete series are covered for n1 >= 3/2 only")
        if sg > 0:
            if isinstance(pi1, (PrincipalHalf, Complementary)):
                return 1
            if _is_disc(pi1, -1) and pi1.n1 <= -l2 + h:
                return 1
            return 0
        if _is_disc(pi1, 1) and pi1.n1 > l1 + h:
            return 1
        return 0
    if isinstance(rep, PJPS):
        n = rep.n
        if sg > 0:
            if _is_disc(pi1, 1):
                return 0 if pi1.n1 > n - h else AT_MOST_ONE
            if _is_disc(pi1, -1):
                return AT_MOST_ONE if (n, pi1.n1) == (1, h) else 0
            return AT_MOST_ONE
        if _is_disc(pi1, 1) and pi1.n1 > n - h:
            return AT_MOST_ONE
        return 0
    if isinstance(rep, PS):
        if _is_disc(pi1, sg):
            return 0
        return AT_MOST_ONE
    raise TagError(f"unknown descriptor {type(rep).__name__}")


# ----------------------------------------------------- leading formulas

@dataclass(frozen=True)
class LeadingFormula:
    """c_{j0,k0} as a function of X = 4 pi |m| a1^2.

    kind 'power_exp': X^power e^{-X/2};  kind 'meijer': e^{X/2} G(X | a; b).
    """

    index: FJIndex
    kind: str
    branch: str
    power: float = 0.0
    a: Tuple[complex, ...] = ()
    b: Tuple[complex, ...] = ()
    variable: str = "x"

    def evaluate(self, X: float, cfg: QuadratureConfig = DEFAULT_CFG):
        if not X > 0:
            raise ParameterError("X must be positive")
        if self.kind == "power_exp":
            return math.exp(self.power * math.log(X) - 0.5 * X)
        return _meijer_reduced(self.a, self.b, X, cfg)

    def meijer_spec(self) -> MeijerGSpec:
        return MeijerGSpec(len(self.a), len(self.b), self.a, self.b)


def _meijer_reduced(a, b, X, cfg):
    """e^{X/2} G^{q,0}_{p,q}(X | a; b) after cancelling equal a/b pairs."""
    a = [complex(v) for v in a]
    b = [complex(v) for v in b]
    for ai in list(a):
        hit = [i for i, bj in enumerate(b) if abs(ai - bj) < 1e-12]
        if hit:
            b.pop(hit[0])
            a.remove(ai)
    if len(a) == 0 and len(b) == 1:
        # G^{1,0}_{0,1}(X | -; b) = X^b e^{-X}
        val = np.exp(b[0] * math.log(X) - 0.5 * X)
        return float(val.real) if b[0].imag == 0 else complex(val)
    collide = any(
        abs((ai - bj).imag) < 1e-12 and (ai - bj).real <= 1e-12 and abs((ai - bj).real - round((ai - bj).real)) < 1e-12
        for ai in a for bj in b
    )
    spec = MeijerGSpec(len(a), len(b), tuple(a), tuple(b), allow_collisions=collide)
    g = meijer_g(spec, X, cfg)
    return g * math.exp(0.5 * X)


def _idx(j, k, lam2) -> FJIndex:
    j = Fraction(j)
    return FJIndex(j, int(k), l_of(j, k, lam2))


def leading_formula(rep, pi1, m) -> LeadingFormula:
    """Select the branch, index and parameters of the leading coefficient.

    Raises DimensionZero (with the branch named) when the space is zero.
    """
    if m == 0:
        raise DimensionZero("no rapidly decreasing spherical functions at m = 0", "m = 0")
    d = fj_dim(rep, pi1, m)
    if d == 0:
        raise DimensionZero(f"dimension 0 for {rep}, {pi1}, m={m}", _branch_name(rep, pi1, m))
    flipped = _flip_rep(rep)
    if flipped is not None:
        f = leading_formula(flipped, pi1.dual(), -m)
        L = distinguished_ktype(rep)
        idx = _idx(-f.index.j, L.d - f.index.k, L.L2)
        return replace(f, index=idx, branch=f.branch + " [flipped]")
    h = Fraction(1, 2)
    var = "x" if m > 0 else "x'"
    if isinstance(rep, HolDS):
        L = blattner(rep)
        k0 = pi1.n1 - rep.l2 - 3 * h
        return LeadingFormula(_idx(h, k0, L.L2), "power_exp", "holomorphic DS",
                              power=float(rep.l1 + 1 - k0) / 2, variable=var)
    if isinstance(rep, AntiholDS):
        L = blattner(rep)
        k0 = -pi1.n1 - rep.l2 + h
        return LeadingFormula(_idx(-h, k0, L.L2), "power_exp", "anti-holomorphic DS",
                              power=float(-rep.l1 + 2 + k0) / 2, variable=var)
    if isinstance(rep, LargeDS):
        return _largeds_formula(rep, pi1, m)
    if isinstance(rep, PJPS):
        return _pj_formula(rep, pi1, m)
    if isinstance(rep, PS):
        return _ps_formula(rep, pi1, m)
    raise TagError(f"unknown descriptor {type(rep).__name__}")


def _branch_name(rep, pi1, m) -> str:
    """The dimension rule that applies to (rep, pi1, m), for DimensionZero messages."""
    flipped = _flip_rep(rep)
    if flipped is not None:
        return _branch_name(flipped, pi1.dual(), -m) + " [via contragredient]"
    if isinstance(rep, HolDS):
        return (f"holomorphic DS: nonzero only for m > 0 and pi1 = D^+_n1 with "
                f"{rep.l2} + 3/2 <= n1 <= {rep.l1} + 1/2")
    if isinstance(rep, AntiholDS):
        return (f"anti-holomorphic DS: nonzero only for m < 0 and pi1 = D^-_n1 with "
                f"{-rep.l1} + 3/2 <= n1 <= {-rep.l2} + 1/2")
    if isinstance(rep, LargeDS):
        if m > 0:
            return f"large DS chamber II, m>0: zero for D^+ and for D^-_n1 with n1 > {-rep.l2} + 1/2"
        return f"large DS chamber II, m<0: nonzero only for D^+_n1 with n1 > {rep.l1} + 1/2"
    if isinstance(rep, PJPS):
        if m > 0:
            return (f"P_J PS {rep.parity}, m>0: zero for D^+_n1 with n1 > {rep.n} - 1/2 "
                    f"and for D^- unless n = 1, n1 = 1/2")
        return f"P_J PS {rep.parity}, m<0: nonzero only for D^+_n1 with n1 > {rep.n} - 1/2"
    if isinstance(rep, PS):
        return f"PS {rep.parity}: zero for pi1 = D^{'+' if m > 0 else '-'}"
    return type(rep).__name__


def _largeds_formula(rep: LargeDS, pi1, m) -> LeadingFormula:
    # chamber II here
    h = Fraction(1, 2)
    l1, l2 = rep.l1, rep.l2
    L = blattner(rep)
    d = L.d
    if m > 0:
        if isinstance(pi1, (PrincipalHalf, Complementary)):
            # several k0 are admissible; the smallest is reported
            k0 = next(k for k in range(d + 1) if pi1.in_L(l_of(h, k, L.L2)))
            s = pi1.z0
            a = ((2 * s + 5 + 2 * d) / 4, (-2 * s + 5 + 2 * d) / 4)
            b = ((l1 + 2) / 2, (l1 + 3) / 2, (-k0 + d - l2 + 2) / 2)
            return LeadingFormula(_idx(h, k0, L.L2), "meijer", "large DS chamber II, m>0, principal/complementary",
                                  a=a, b=b, variable="x")
        k0 = -pi1.n1 + h - l2
        a = ((l1 + 4 + float(k0)) / 2,)
        b = ((l1 + 2) / 2, (l1 + 3) / 2)
        return LeadingFormula(_idx(h, k0, L.L2), "meijer", "large DS chamber II, m>0, D^-",
                              a=a, b=b, variable="x")
    # m < 0, D^+_{n1} with n1 > l1 + 1/2: j0' = max j with l(j,0) in L, k0 = 0
    j0 = _extreme_j(pi1, L.L2, -1)
    k0 = 0
    a = ((2 * l1 + 5 - 2 * float(j0)) / 4, (2 * l1 + 7 - 2 * float(j0)) / 4)
    b = ((l1 + 2) / 2, (l1 + 3) / 2, (-k0 + d - l2 + 2) / 2)
    return LeadingFormula(_idx(j0, k0, L.L2), "meijer", "large DS chamber II, m<0, D^+",
                          a=a, b=b, variable="x'")


def _pj_formula(rep: PJPS, pi1, m) -> LeadingFormula:
    # sign + here
    h = Fraction(1, 2)
    n, z = rep.n, rep.z
    L = distinguished_ktype(rep)
    if m > 0:
        j0 = j0_index(pi1, n, "PJ", 1)
        z0 = pi1.z0
        if rep.parity == "even":
            a = ((z0 + 2 + float(j0)) / 2, (-z0 + 2 + float(j0)) / 2)
            b = ((n + 1) / 2, (z + 2) / 2, (-z + 2) / 2)
            return LeadingFormula(_idx(j0, 0, L.L2), "meijer", "P_J PS even, m>0", a=a, b=b, variable="x")
        k0 = int(3 * h - j0)
        a = ((z0 + 3.5) / 2, (-z0 + 3.5) / 2)
        b = ((n + 1 + k0) / 2, (z + 3 - k0) / 2, (-z + 3 - k0) / 2)
        return LeadingFormula(_idx(h, k0, L.L2), "meijer", "P_J PS odd, m>0", a=a, b=b, variable="x")
    j0 = j0_index(pi1, n, "PJ", -1)
    n1 = float(pi1.n1)
    a = ((n1 + 1.5) / 2, (n1 + 2.5) / 2)
    if rep.parity == "even":
        b = ((n + 1) / 2, (z + 2) / 2, (-z + 2) / 2)
        return LeadingFormula(_idx(j0, 0, L.L2), "meijer", "P_J PS even, m<0", a=a, b=b, variable="x'")
    b = ((n + 2) / 2, (z + 2) / 2, (-z + 2) / 2)
    return LeadingFormula(_idx(j0, 1, L.L2), "meijer", "P_J PS odd, m<0", a=a, b=b, variable="x'")


def _ps_formula(rep: PS, pi1, m) -> LeadingFormula:
    h = Fraction(1, 2)
    z1, z2 = rep.z1, rep.z2
    L = distinguished_ktype(rep)
    n = L.L1
    if rep.parity == "even":
        bb = ((z1 + 2) / 2, (-z1 + 2) / 2, (z2 + 2) / 2, (-z2 + 2) / 2)
        if m > 0:
            j0 = j0_index(pi1, n, "PS", 1)
            if j0 in (h, 3 * h):
                z0 = pi1.z0
                a = ((z0 + 2 + float(j0)) / 2, (-z0 + 2 + float(j0)) / 2, (-n + 3) / 2)
            else:
                n1 = float(pi1.n1)
                a = ((n1 + 2.5) / 2, (n1 + 1.5) / 2, (n + 3) / 2)
            return LeadingFormula(_idx(j0, 0, L.L2), "meijer", "PS even, m>0", a=a, b=bb, variable="x")
        j0 = j0_index(pi1, n, "PS", -1)
        if j0 in (-h, -3 * h):
            z0 = pi1.z0
            a = ((z0 + 2 - float(j0)) / 2, (-z0 + 2 - float(j0)) / 2, (n + 3) / 2)
        else:
            n1 = float(pi1.n1)
            a = ((n1 + 2.5) / 2, (n1 + 1.5) / 2, (-n + 3) / 2)
        return LeadingFormula(_idx(j0, 0, L.L2), "meijer", "PS even, m<0", a=a, b=bb, variable="x'")

    # odd: (zt, zt') = (z1, z2) for sigma=(1,-1) with n even or sigma=(-1,1) with n odd
    if (rep.sigma == (1, -1) and n % 2 == 0) or (rep.sigma == (-1, 1) and n % 2 == 1):
        zt, ztp = z1, z2
    else:
        zt, ztp = z2, z1
    if m > 0:
        # j0 from the table at Lambda_2 = n; the reported index then has l = n - j0
        j0 = j0_index(pi1, n, "PS", 1)
        if j0 in (h, 3 * h):
            k0 = int(3 * h - j0)
            z0 = pi1.z0
            a = ((z0 + 3.5) / 2, (-z0 + 3.5) / 2, (-n + 3 + k0) / 2)
            b = ((zt + 2 + k0) / 2, (-zt + 2 + k0) / 2, (ztp + 3 - k0) / 2, (-ztp + 3 - k0) / 2)
            return LeadingFormula(_idx(h, k0, L.L2), "meijer", "PS odd, m>0, j0 in {1/2,3/2}", a=a, b=b, variable="x")
        n1 = float(pi1.n1)
        a = ((n1 + 2.5) / 2, (n1 + 1.5) / 2, (n + 3) / 2)
        b = ((zt + 2) / 2, (-zt + 2) / 2, (ztp + 3) / 2, (-ztp + 3) / 2)
        return LeadingFormula(_idx(j0 - 1, 0, L.L2), "meijer", "PS odd, m>0, j0 = n + n1", a=a, b=b, variable="x")
    # m < 0: j0' = max{j : l(j,0) in L} with the actual Lambda_2 = n - 1, so that
    # both displayed indices (-1/2, k0') and (j0'+1, 1) lie over L
    if _is_disc(pi1, -1):
        raise DimensionZero("D^- with m < 0", _branch_name(rep, pi1, m))
    j0 = _extreme_j(pi1, L.L2, -1)
    if j0 in (-h, -3 * h):
        k0 = int(-h - j0)
        z0 = pi1.z0
        a = ((z0 + 3.5) / 2, (-z0 + 3.5) / 2, (n + 3 - k0) / 2)
        b = ((zt + 2 + k0) / 2, (-zt + 2 + k0) / 2, (ztp + 3 - k0) / 2, (-ztp + 3 - k0) / 2)
        return LeadingFormula(_idx(-h, k0, L.L2), "meijer", "PS odd, m<0, j0' in {-1/2,-3/2}", a=a, b=b, variable="x'")
    n1 = float(pi1.n1)
    a = ((n1 + 2.5) / 2, (n1 + 1.5) / 2, (-n + 4) / 2)
    b = ((zt + 3) / 2, (-zt + 3) / 2, (ztp + 2) / 2, (-ztp + 2) / 2)
    return LeadingFormula(_idx(j0 + 1, 1, L.L2), "meijer", "PS odd, m<0, j0' = n - 1 - n1", a=a, b=b, variable="x'")


def fj_leading(rep, pi1, m, a1: float, cfg: QuadratureConfig = DEFAULT_CFG):
    """(index, value) of the leading coefficient at a_J with parameter a1."""
    f = leading_formula(rep, pi1, m)
    X = XVariable(m, a1).positive
    return f.index, f.evaluate(X, cfg)


def _ray_values(f: LeadingFormula, X, cfg):
    return np.array([f.evaluate(x, cfg) for x in X], dtype=complex)


def rapid_decay_check(rep, pi1, m, ray: Optional[Sequence[float]] = None,
                      cfg: QuadratureConfig = DEFAULT_CFG):
    """(passes, s) for the leading coefficient along a ray of a1 values.

    The default ray is 8 log-spaced points X in [4, 64].  ``s`` is the
    coefficient of X in a least-squares fit log|c| = c0 + p log X + s X;
    a rapidly decreasing coefficient has s close to -1/2.  Passing needs
    s < -0.4 and a strictly decreasing tail over the upper half of the ray;
    a polynomial prefactor may still rise near the start.
    """
    f = leading_formula(rep, pi1, m)
    if ray is None:
        X = np.geomspace(4.0, 64.0, 8)
    else:
        X = np.array([XVariable(m, a).positive for a in ray])
    lg = np.log(np.abs(_ray_values(f, X, cfg)))
    A = np.column_stack([np.ones_like(X), np.log(X), X])
    s = float(np.linalg.lstsq(A, lg, rcond=None)[0][2])
    return bool(np.all(np.diff(lg[len(lg) // 2:]) < 0)) and s < -0.4, s


def decay_tail_check(rep, pi1, m, power: float = 10.0, x_max: float = 100.0,
                     cfg: QuadratureConfig = DEFAULT_CFG):
    """(passes, x0): |c| X^power decreases monotonically beyond a detected x0 <= x_max.

    x0 is found on a coarse grid over [1, x_max]; the test itself uses 8
    log-spaced points in [x0, 4 x0 + 40].
    """
    f = leading_formula(rep, pi1, m)
    grid = np.geomspace(1.0, x_max, 40)
    lg = np.log(np.abs(_ray_values(f, grid, cfg))) + power * np.log(grid)
    rising = np.nonzero(np.diff(lg) >= 0)[0]
    if len(rising) and rising[-1] + 1 >= len(grid) - 1:
        return False, float("inf")
    # the last rise ends at grid[r + 1]; the peak can sit anywhere before grid[r + 2]
    x0 = float(grid[rising[-1] + 2]) if len(rising) else float(grid[0])
    X = np.geomspace(x0, 4 * x0 + 40, 8)
    ok, _ = decay_profile(X, _ray_values(f, X, cfg), power)
    return ok, x0
