"""Jacobi-group layer: Siegel coefficient tables, theta decomposition and
pointwise assembly of skew/holomorphic/Maass Jacobi cusp forms.

Semi-integral matrices are stored as (t1, t2, t3) with the off-diagonal
doubled, so T = (t1, t2/2; t2/2, t3).  A SiegelCoeffTable is complete up
to a trace bound B: a matrix of trace <= B that is not stored has
coefficient zero, anything beyond B is unknown.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .errors import (
    CaseError,
    InconsistencyError,
    MissingCoefficient,
    ParameterError,
    TagError,
    TruncationError,
)
from .heisenberg import (
    HeisenbergPoint,
    Profile,
    UpperHalfPoint,
    default_truncation,
    theta_alpha,
    theta_jacobi_lift,
    weil_vector,
)
from .specfun import hermite, whittaker_w

__all__ = [
    "SemiIntegralMatrix",
    "SiegelCoeffTable",
    "HalfIntegralFormTable",
    "MaassCoeffTable",
    "JacobiPoint",
    "GL2_GENERATORS",
    "singular_support",
    "extract_c_alpha",
    "theta_decompose",
    "phi_m_k",
    "eta_k",
    "eta_profile",
    "theta_side",
    "synthetic_table",
    "synthetic_form_table",
    "synthetic_maass_table",
    "load_siegel_table",
    "dump_siegel_table",
    "load_half_integral_table",
    "dump_half_integral_table",
    "form_factor",
    "assemble_example",
    "CASE_IDS",
]


def _e(x):
    return np.exp(2j * np.pi * x)


# ------------------------------------------------------------ matrices

@dataclass(frozen=True, order=True)
class SemiIntegralMatrix:
    t1: int
    t2: int
    t3: int

    def __post_init__(self):
        for v in (self.t1, self.t2, self.t3):
            if int(v) != v:
                raise ParameterError("semi-integral matrix entries must be integers")

    @property
    def disc(self) -> int:
        """4 det T = 4 t1 t3 - t2^2."""
        return 4 * self.t1 * self.t3 - self.t2 * self.t2

    @property
    def det(self) -> Fraction:
        return Fraction(self.disc, 4)

    @property
    def trace(self) -> int:
        return self.t1 + self.t3

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(self.t1, self.t2), self.t3)

    @property
    def positive(self) -> bool:
        return self.t1 > 0 and self.disc > 0

    def transform(self, g) -> "SemiIntegralMatrix":
        """tg T g for an integral 2x2 matrix g = ((a, b), (c, d))."""
        (a, b), (c, d) = g
        t1, t2, t3 = self.t1, self.t2, self.t3
        return SemiIntegralMatrix(
            a * a * t1 + a * c * t2 + c * c * t3,
            2 * a * b * t1 + (a * d + b * c) * t2 + 2 * c * d * t3,
            b * b * t1 + b * d * t2 + d * d * t3,
        )

    def matrix(self) -> np.ndarray:
        return np.array([[self.t1, self.t2 / 2.0], [self.t2 / 2.0, self.t3]])


GL2_GENERATORS = {
    "S": ((0, -1), (1, 0)),
    "T": ((1, 1), (0, 1)),
    "T^-1": ((1, -1), (0, 1)),
    "R": ((1, 0), (0, -1)),
}


def _key(T) -> Tuple[int, int, int]:
    if isinstance(T, SemiIntegralMatrix):
        return (T.t1, T.t2, T.t3)
    return tuple(int(v) for v in T)


@dataclass(frozen=True)
class SiegelCoeffTable:
    """Fourier coefficients C_T, complete up to ``trace_bound``.

    ``weight`` is the Blattner parameter (Lambda1, Lambda2).  The only
    analytic information used about unknown coefficients is the bound
    |C_T| <= max|stored| (1 + 4 det T)^growth used for tail estimates.
    """

    coeffs: Mapping[Tuple[int, int, int], complex]
    trace_bound: int
    weight: Tuple[int, int] = (2, 2)
    growth: float = 0.0
    tol: float = 1e-12

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            T = SemiIntegralMatrix(*_key(k))
            if not T.positive:
                raise ParameterError(f"{_key(k)} is not positive definite")
            if T.trace > self.trace_bound:
                raise ParameterError(f"{_key(k)} lies beyond the trace bound {self.trace_bound}")
            clean[_key(k)] = complex(v)
        object.__setattr__(self, "coeffs", clean)
        self.validate()

    @property
    def cmax(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def known(self, T) -> bool:
        return SemiIntegralMatrix(*_key(T)).trace <= self.trace_bound

    def get(self, T) -> complex:
        k = _key(T)
        if not self.known(k):
            raise MissingCoefficient(f"coefficient of {k} is outside the table support")
        return self.coeffs.get(k, 0j)

    def validate(self):
        """Check C_{tg T g} = C_T for every stored T and generator g whose image is known."""
        for k, v in self.coeffs.items():
            T = SemiIntegralMatrix(*k)
            for name, g in GL2_GENERATORS.items():
                Tg = T.transform(g)
                if not self.known(Tg):
                    continue
                w = self.coeffs.get(_key(Tg), 0j)
                if abs(w - v) > self.tol:
                    raise InconsistencyError(
                        f"invariance fails under {name}: C{k}={v} but C{_key(Tg)}={w}")


def synthetic_table(func: Callable[[int, int], complex], trace_bound: int,
                    weight: Tuple[int, int] = (2, 2), growth: float = 0.0) -> SiegelCoeffTable:
    """Table with C_T = func(4 det T, content T) for every positive T of trace <= trace_bound.

    Both arguments are GL2(Z) class invariants, so the result is invariant.
    """
    coeffs = {}
    for t1 in range(1, trace_bound):
        for t3 in range(1, trace_bound - t1 + 1):
            lim = math.isqrt(4 * t1 * t3 - 1)
            for t2 in range(-lim, lim + 1):
                T = SemiIntegralMatrix(t1, t2, t3)
                if T.disc <= 0:
                    continue
                v = complex(func(T.disc, T.content))
                if v != 0:
                    coeffs[(t1, t2, t3)] = v
    return SiegelCoeffTable(coeffs, trace_bound, weight, growth)


def load_siegel_table(path, trace_bound: Optional[int] = None,
                      weight: Tuple[int, int] = (2, 2), growth: float = 0.0) -> SiegelCoeffTable:
    """Read JSON lines {"t1","t2","t3","re","im"}.

    Without an explicit bound the table is taken to be complete up to the
    largest stored trace.
    """
    coeffs = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                k = (int(rec["t1"]), int(rec["t2"]), int(rec["t3"]))
                v = complex(float(rec.get("re", 0.0)), float(rec.get("im", 0.0)))
            except (KeyError, ValueError, TypeError) as exc:
                raise TagError(f"{path}:{lineno}: malformed record ({exc})") from exc
            coeffs[k] = v
    if trace_bound is None:
        trace_bound = max((k[0] + k[2] for k in coeffs), default=0)
    return SiegelCoeffTable(coeffs, trace_bound, weight, growth)


def dump_siegel_table(table: SiegelCoeffTable, path):
    with open(path, "w") as fh:
        for k in sorted(table.coeffs):
            v = table.coeffs[k]
            fh.write(json.dumps({"t1": k[0], "t2": k[1], "t3": k[2], "re": v.real, "im": v.imag}) + "\n")


# ------------------------------------------------------ singular support

def singular_support(m: int) -> List[Tuple[int, Fraction]]:
    """Pairs (alpha, d) with 1 <= alpha <= 2|m|, alpha^2/4m integral and d = (2m/alpha)^2."""
    if m == 0 or int(m) != m:
        raise ParameterError("singular_support needs a nonzero integer m")
    m = int(m)
    out = []
    for a in range(1, 2 * abs(m) + 1):
        if (a * a) % (4 * abs(m)) == 0:
            out.append((a, Fraction(2 * m, a) ** 2))
    return out


# ------------------------------------------------- theta decomposition

def _t2_candidates(m: int, alpha: int, bound: int) -> List[int]:
    r = alpha % (2 * m)
    out = []
    t = r - 2 * m * (bound // (2 * m) + 1)
    while t <= bound:
        if abs(t) <= bound:
            out.append(t)
        t += 2 * m
    return sorted(out, key=lambda v: (abs(v), -v))


def extract_c_alpha(table: SiegelCoeffTable, m: int, alpha: int, N: int) -> complex:
    """c_alpha(N) read off C_{(m, t2/2; t2/2, (N + t2^2)/4m)} with t2 = alpha mod 2m."""
    if m <= 0 or int(m) != m:
        raise ParameterError("extract_c_alpha needs a positive integer m")
    if N <= 0:
        raise ParameterError("N must be positive")
    m = int(m)
    if (N + alpha * alpha) % (4 * m):
        return 0j
    cands = _t2_candidates(m, alpha, 6 * m)
    t2 = cands[0]
    T = (m, t2, (N + t2 * t2) // (4 * m))
    value = table.get(T)
    for other in cands[1:]:
        T2 = (m, other, (N + other * other) // (4 * m))
        if not table.known(T2):
            continue
        w = table.get(T2)
        if abs(w - value) > 1e-10:
            raise InconsistencyError(f"t2={t2} and t2={other} give {value} and {w} for alpha={alpha}, N={N}")
    return value


@dataclass(frozen=True)
class HalfIntegralFormTable:
    """Fourier data of f_alpha, alpha in 1..2|m|.

    weight > 0: f = sum_{l>0} c(l) y^{weight/2} q^l (holomorphic);
    weight < 0: f = sum_{l>0} c(l) y^{|weight|/2} qbar^l (anti-holomorphic).
    Keys l are positive Fractions with 4|m| l integral; every (alpha, l)
    satisfies 4 m l_s + alpha^2 = 0 mod 4|m| with l_s the signed frequency
    (l for holomorphic, -l for anti-holomorphic).
    """

    m: int
    weight: Fraction
    coeffs: Mapping[int, Mapping[Fraction, complex]]
    l_max: Optional[Fraction] = None

    def __post_init__(self):
        if self.m == 0 or int(self.m) != self.m:
            raise ParameterError("index m must be a nonzero integer")
        w = Fraction(self.weight)
        if w.denominator != 2:
            raise ParameterError("weight must be a half odd integer")
        object.__setattr__(self, "weight", w)
        M = 4 * abs(self.m)
        clean = {}
        for a, row in self.coeffs.items():
            if not 1 <= a <= 2 * abs(self.m):
                raise ParameterError(f"alpha={a} outside 1..{2 * abs(self.m)}")
            out = {}
            for l, c in row.items():
                l = Fraction(l)
                if l <= 0 or (l * M).denominator != 1:
                    raise ParameterError(f"frequency {l} is not in (1/{M})Z_>0")
                ls = l if self.holomorphic else -l
                if (int(ls * 4 * self.m) + a * a) % M:
                    raise ParameterError(f"(alpha={a}, l={l}) violates the congruence 4 m l = -alpha^2 mod {M}")
                if c != 0:
                    out[l] = complex(c)
            clean[int(a)] = out
        object.__setattr__(self, "coeffs", clean)

    @property
    def holomorphic(self) -> bool:
        return self.weight > 0

    def signed(self, l: Fraction) -> Fraction:
        return l if self.holomorphic else -l

    def radial(self, l: Fraction, y: float) -> float:
        return y ** (float(abs(self.weight)) / 2) * math.exp(-2 * math.pi * float(l) * y)

    def value(self, alpha: int, b: UpperHalfPoint) -> complex:
        total = 0j
        for l, c in self.coeffs.get(alpha, {}).items():
            total += c * self.radial(l, b.y) * complex(_e(float(self.signed(l)) * b.x))
        return total

    def terms(self, alpha):
        for l, c in self.coeffs.get(alpha, {}).items():
            yield self.signed(l), c


@dataclass(frozen=True)
class MaassCoeffTable:
    """Maass forms f_alpha = sum_{l != 0} c(l) W_{tau sign(l)/2, s}(4 pi |l| y) e(l x)."""

    m: int
    s: complex
    tau: Fraction
    coeffs: Mapping[int, Mapping[Fraction, complex]]

    def __post_init__(self):
        if self.m == 0 or int(self.m) != self.m:
            raise ParameterError("index m must be a nonzero integer")
        tau = Fraction(self.tau)
        if abs(tau) != Fraction(1, 2):
            raise ParameterError("Maass weight tau must be +1/2 or -1/2")
        object.__setattr__(self, "tau", tau)
        M = 4 * abs(self.m)
        clean = {}
        for a, row in self.coeffs.items():
            if not 1 <= a <= 2 * abs(self.m):
                raise ParameterError(f"alpha={a} outside 1..{2 * abs(self.m)}")
            out = {}
            for l, c in row.items():
                l = Fraction(l)
                if l == 0 or (l * M).denominator != 1:
                    raise ParameterError(f"frequency {l} is not in (1/{M})Z minus 0")
                if c != 0:
                    out[l] = complex(c)
            clean[int(a)] = out
        object.__setattr__(self, "coeffs", clean)

    def kappa(self, l: Fraction) -> float:
        return float(self.tau) * (1 if l > 0 else -1) / 2

    def radial(self, l: Fraction, y: float) -> complex:
        return whittaker_w(self.kappa(l), self.s, 4 * math.pi * abs(float(l)) * y)

    def value(self, alpha: int, b: UpperHalfPoint) -> complex:
        total = 0j
        for l, c in self.coeffs.get(alpha, {}).items():
            total += c * self.radial(l, b.y) * complex(_e(float(l) * b.x))
        return total

    def terms(self, alpha):
        return iter(self.coeffs.get(alpha, {}).items())


def synthetic_form_table(m: int, weight, n_terms: int = 3, seed: int = 0) -> HalfIntegralFormTable:
    """Random f_alpha with the n_terms smallest admissible frequencies per alpha."""
    rng = random.Random(seed)
    w = Fraction(weight)
    M = 4 * abs(m)
    rows = {}
    for a in range(1, 2 * abs(m) + 1):
        ls = []
        k = 1
        while len(ls) < n_terms:
            l = Fraction(k, M)
            signed = l if w > 0 else -l
            if (int(signed * 4 * m) + a * a) % M == 0:
                ls.append(l)
            k += 1
        rows[a] = {l: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for l in ls}
    return HalfIntegralFormTable(m, w, rows)


def synthetic_maass_table(m: int, s: complex, tau, seed: int = 0,
                          numerators: Tuple[int, ...] = (-3, 1, 2)) -> MaassCoeffTable:
    """Random Maass data with frequencies numerators / 4|m| for every alpha."""
    rng = random.Random(seed)
    M = 4 * abs(m)
    rows = {a: {Fraction(q, M): complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for q in numerators}
            for a in range(1, 2 * abs(m) + 1)}
    return MaassCoeffTable(m, s, tau, rows)


def theta_decompose(table: SiegelCoeffTable, m: int) -> HalfIntegralFormTable:
    """h_alpha of weight Lambda2 - 1/2 from the coefficients C_{(m, *; *, *)}.

    N runs over every value for which the smallest admissible t2 keeps T
    inside the table support; l_max records the resulting completeness bound.
    """
    if m <= 0 or int(m) != m:
        raise ParameterError("theta_decompose needs a positive integer m")
    m = int(m)
    rows: Dict[int, Dict[Fraction, complex]] = {}
    l_max = None
    for a in range(1, 2 * m + 1):
        t2 = _t2_candidates(m, a, 6 * m)[0]
        n_top = 4 * m * (table.trace_bound - m) - t2 * t2
        l_top = Fraction(n_top, 4 * m)
        l_max = l_top if l_max is None else min(l_max, l_top)
        row = {}
        for N in range(1, n_top + 1):
            c = extract_c_alpha(table, m, a, N)
            if c != 0:
                row[Fraction(N, 4 * m)] = c
        rows[a] = row
    return HalfIntegralFormTable(m, Fraction(2 * table.weight[1] - 1, 2), rows, l_max)


def _fraction_from(rec) -> Fraction:
    return Fraction(int(rec["num"]), int(rec["den"]))


def load_half_integral_table(path) -> HalfIntegralFormTable:
    """Read one JSON object {"m","weight_times_2","alpha","coeffs":[...]} or a list of them."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    if not data:
        raise TagError(f"{path}: no forms")
    try:
        m = int(data[0]["m"])
        w2 = int(data[0]["weight_times_2"])
        rows: Dict[int, Dict[Fraction, complex]] = {}
        for rec in data:
            if int(rec["m"]) != m or int(rec["weight_times_2"]) != w2:
                raise TagError(f"{path}: mixed index or weight")
            row = rows.setdefault(int(rec["alpha"]), {})
            for c in rec["coeffs"]:
                row[_fraction_from(c)] = complex(float(c.get("re", 0.0)), float(c.get("im", 0.0)))
    except (KeyError, ValueError, TypeError) as exc:
        raise TagError(f"{path}: malformed form record ({exc})") from exc
    return HalfIntegralFormTable(m, Fraction(w2, 2), rows)


def dump_half_integral_table(table: HalfIntegralFormTable, path):
    den = 4 * abs(table.m)
    out = []
    for a in sorted(table.coeffs):
        coeffs = [{"num": int(l * den), "den": den, "re": c.real, "im": c.imag}
                  for l, c in sorted(table.coeffs[a].items())]
        out.append({"m": table.m, "weight_times_2": int(2 * table.weight), "alpha": a, "coeffs": coeffs})
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)


# ------------------------------------------------------------ phi_m^(k)

def eta_k(k: int, t, m: float, y: float):
    """eta_k(t) = t^k exp(-2 pi m y t^2)."""
    t = np.asarray(t, dtype=float)
    val = t ** k * np.exp(-2 * math.pi * m * y * t * t)
    return float(val) if val.ndim == 0 else val


def eta_profile(k: int, m: float) -> Profile:
    """eta_k at y = 1 as a Profile; the y-dependence enters through omega(b)."""
    return Profile(lambda t: eta_k(k, t, m, 1.0), 0.0, float(m), int(k))


def phi_m_k(table: SiegelCoeffTable, m: int, k: int, point, abs_tol: float = 1e-12,
            return_bound: bool = False):
    """phi_m^(k)(u0, u2, u3, a2) as a truncated sum over (t2, t3) with 4 m t3 > t2^2.

    Terms are ordered by E = 2 pi a2^2 (m u0^2 + t2 u0 + t3), the log of
    their exponential size.  The cut on E is raised until the bound on
    the omitted terms, computed from the coefficient growth bound, is
    below abs_tol; TruncationError is raised if the kept terms leave the
    table support.
    """
    if m <= 0 or int(m) != m:
        raise ParameterError("phi_m_k needs a positive integer m")
    if k < 0 or int(k) != k:
        raise ParameterError("k must be a non-negative integer")
    m, k = int(m), int(k)
    u0, u2, u3, a2 = (float(v) for v in point)
    if not a2 > 0:
        raise ParameterError("a2 must be positive")
    y = a2 * a2
    pref = a2 ** (table.weight[1] + k)
    cmax = max(table.cmax, 1e-300)

    def size(t2, t3):
        N = 4 * m * t3 - t2 * t2
        r = u0 + t2 / (2.0 * m)
        E = 2 * math.pi * y * (m * r * r + N / (4.0 * m))
        return E, N, r

    # t2 window from the Gaussian factor, t3 window from the exponential one
    def window(E_cut):
        R = math.sqrt(E_cut / (2 * math.pi * y * m)) + 1.0
        lo = math.floor(2 * m * (-u0 - R))
        hi = math.ceil(2 * m * (-u0 + R))
        return lo, hi

    E_cut = 40.0
    for _ in range(12):
        total = 0j
        tail = 0.0
        lo, hi = window(E_cut + 60.0)
        kept_max_trace = 0
        for t2 in range(lo, hi + 1):
            t3 = t2 * t2 // (4 * m) + 1
            while True:
                E, N, r = size(t2, t3)
                if E > E_cut + 60.0:
                    # remaining t3 form a geometric series with ratio e^{-2 pi y}
                    q = math.exp(-2 * math.pi * y)
                    b = cmax * (1 + N) ** table.growth * pref * abs(r) ** k * math.exp(-E)
                    tail += b / (1 - q) * (1 + 4 * m) ** table.growth
                    break
                if E <= E_cut:
                    c = table.get((m, t2, t3)) if table.known((m, t2, t3)) else None
                    if c is None:
                        raise TruncationError(
                            f"needed T=({m},{t2},{t3}) beyond trace bound {table.trace_bound}")
                    kept_max_trace = max(kept_max_trace, m + t3)
                    if c != 0:
                        ph = _e(m * (1j * y * u0 * u0) + t2 * (1j * y * u0 + u2) + t3 * (1j * y + u3))
                        total += c * pref * (u0 + t2 / (2.0 * m)) ** k * complex(ph)
                else:
                    tail += cmax * (1 + N) ** table.growth * pref * abs(r) ** k * math.exp(-E)
                t3 += 1
        # Gaussian tail in t2 outside the window is far below e^{-E_cut - 60}
        if tail <= abs_tol * max(1.0, abs(total)):
            return (total, tail) if return_bound else total
        E_cut += 20.0
    raise TruncationError(f"phi_m_k tail bound {tail:.3e} exceeds tolerance")


def theta_side(h: HalfIntegralFormTable, m: int, k: int, nJ: HeisenbergPoint, b: UpperHalfPoint):
    """sum_alpha h_alpha(b) theta_alpha(omega(b) eta_k)(n_J), eta_k taken at y = 1."""
    g = b.matrix()
    vec = weil_vector(m, g, eta_profile(k, m))
    total = 0j
    for a in range(1, 2 * m + 1):
        ha = h.value(a, b)
        if ha == 0:
            continue
        total += ha * theta_alpha(m, a, vec, nJ)
    return total


# ------------------------------------------------------------ examples

@dataclass(frozen=True)
class JacobiPoint:
    u0: float
    u1: float
    u2: float
    x: float
    y: float

    @property
    def nJ(self) -> HeisenbergPoint:
        return HeisenbergPoint(self.u0, self.u1, self.u2)

    @property
    def b(self) -> UpperHalfPoint:
        return UpperHalfPoint(self.x, self.y)


CASE_IDS = ("I-1", "II-1", "II-2", "II-3", "III-1", "III-2", "III-3", "IV-1", "IV-2", "IV-3")


def _case_setup(case_id: str, f, m: int, params: Mapping) -> int:
    """Check the case hypotheses and return the Hermite index j."""
    if case_id not in CASE_IDS:
        raise CaseError(f"unknown case {case_id!r}")
    if f.m != m:
        raise CaseError(f"form data has index {f.m}, expected {m}")
    maass = isinstance(f, MaassCoeffTable)
    lam = params.get("lambda")
    if case_id in ("II-1", "III-1", "IV-1"):
        if not maass:
            raise CaseError(f"{case_id} takes Maass coefficient data")
        if case_id == "III-1":
            raise CaseError("III-1 needs powers of the weight raising operator; no closed expansion is assembled")
        want_tau = Fraction(-1, 2) if m > 0 else Fraction(1, 2)
        if case_id == "II-1" and m < 0:
            raise CaseError("II-1 needs m > 0")
        if f.tau != want_tau:
            raise CaseError(f"{case_id} with m={m} needs tau={want_tau}")
        return 0
    if maass:
        raise CaseError(f"{case_id} takes holomorphic or anti-holomorphic form data")
    n1 = abs(f.weight)
    hol = f.holomorphic
    if n1.denominator != 2:
        raise CaseError("weight must be a half odd integer")
    if case_id == "I-1":
        if not (m > 0 and hol):
            raise CaseError("I-1 needs m > 0 and holomorphic data")
        if lam is not None and not (lam[1] + Fraction(3, 2) <= n1 <= lam[0] + Fraction(1, 2)):
            raise CaseError("I-1 needs lambda2 + 3/2 <= n1 <= lambda1 + 1/2")
        return 0
    if case_id == "II-2":
        if not (m > 0 and not hol):
            raise CaseError("II-2 needs m > 0 and anti-holomorphic data")
        if n1 < Fraction(3, 2) or (lam is not None and n1 > -lam[1] + Fraction(1, 2)):
            raise CaseError("II-2 needs 3/2 <= n1 <= -lambda2 + 1/2")
        return 0
    if case_id == "II-3":
        if not (m < 0 and hol):
            raise CaseError("II-3 needs m < 0 and holomorphic data")
        if lam is not None and n1 != lam[0] + Fraction(3, 2):
            raise CaseError("II-3 needs n1 = lambda1 + 3/2")
        return 0
    if case_id in ("III-2", "III-3"):
        if "n" not in params:
            raise CaseError(f"{case_id} needs the parameter n")
        n = int(params["n"])
        if not hol:
            raise CaseError(f"{case_id} needs holomorphic data")
        if case_id == "III-2":
            if m <= 0:
                raise CaseError("III-2 needs m > 0")
            if n1 != n - Fraction(1, 2):
                raise CaseError("III-2 is assembled only for n1 = n - 1/2; smaller n1 needs the raising operator")
            return 0
        if m >= 0:
            raise CaseError("III-3 needs m < 0")
        if not n1 > n - Fraction(1, 2) or n1 < Fraction(3, 2):
            raise CaseError("III-3 needs n1 > n - 1/2 and n1 >= 3/2")
        return int(n1 - n - Fraction(1, 2))
    delta = int(params.get("delta", 0))
    if delta not in (0, 1):
        raise CaseError("delta must be 0 or 1")
    if case_id == "IV-2":
        if not (m > 0 and not hol):
            raise CaseError("IV-2 needs m > 0 and anti-holomorphic data")
        if not n1 > Fraction(3, 2) - delta:
            raise CaseError("IV-2 needs n1 > 3/2 - delta")
        return int(n1 - Fraction(1, 2))
    if not (m < 0 and hol):
        raise CaseError("IV-3 needs m < 0 and holomorphic data")
    if not n1 > Fraction(3, 2) + delta:
        raise CaseError("IV-3 needs n1 > 3/2 + delta")
    return int(n1 - delta - Fraction(1, 2))


def form_factor(f, alpha: int, b: UpperHalfPoint) -> complex:
    """f_alpha(b) from its Fourier data."""
    return f.value(alpha, b)


def _expanded_alpha(f, m: int, alpha: int, j: int, p: JacobiPoint, K: Optional[int], abs_tol: float):
    """Double sum over t and l with T_{t,l} = (m, (2mt+alpha)/2; *, m s^2 + l), s = t + alpha/2m."""
    terms = list(f.terms(alpha))
    if not terms:
        return 0j
    y = p.y
    z = complex(p.x, y)
    zz = z if m > 0 else z.conjugate()
    if K is None:
        K = default_truncation(m, p.u0, y, j)
    maass = isinstance(f, MaassCoeffTable)
    # Maass terms carry W(4 pi |l| y); the others y^{n1/2} e^{-2 pi |l| y}
    radial = [(ls, c, f.radial(ls, y) if maass else math.exp(-2 * math.pi * abs(float(ls)) * y))
              for ls, c in terms]
    weight_y = 0.25 if maass else float(abs(f.weight)) / 2 + 0.25

    def t_sum(ts):
        out = 0j
        for t in ts:
            s = t + alpha / (2.0 * m)
            r = p.u0 + s
            Hj = hermite(j, r, m, y)[0] if j else 1.0
            gauss = math.exp(-2 * math.pi * abs(m) * y * s * s)
            u0ph = complex(_e(m * p.u0 * p.u0 * zz + (2 * m * t + alpha) * p.u0 * zz))
            for ls, c, fr in radial:
                tr = m * p.u1 + (2 * m * t + alpha) * p.u2 + (m * s * s + float(ls)) * p.x
                out += c * y ** weight_y * Hj * gauss * u0ph * fr * complex(_e(tr))
        return out

    total = t_sum(range(-K, K + 1))
    edge = t_sum(list(range(K + 1, K + 4)) + list(range(-K - 3, -K)))
    if abs(edge) > abs_tol * max(1.0, abs(total)):
        raise TruncationError(f"expanded-sum tail {abs(edge):.3e} exceeds tolerance with K={K}")
    return total


def assemble_example(case_id: str, f, m: int, point: JacobiPoint, K: Optional[int] = None,
                     form: str = "expanded", params: Optional[Mapping] = None,
                     abs_tol: float = 1e-12):
    """Per-alpha values phi_{m,alpha}(n_J b) of a worked example and their sum.

    ``form='expanded'`` evaluates the double sum over (t, l); ``form='product'``
    evaluates f_alpha(b) times the closed-form theta lift.  ``params`` carries
    the case parameters: 'n' for III-2/III-3, 'delta' for IV-2/IV-3 and an
    optional 'lambda' (pair) for the discrete series cases.
    """
    params = dict(params or {})
    if m == 0 or int(m) != m:
        raise ParameterError("index m must be a nonzero integer")
    m = int(m)
    j = _case_setup(case_id, f, m, params)
    per = {}
    for a in range(1, 2 * abs(m) + 1):
        if form == "expanded":
            per[a] = _expanded_alpha(f, m, a, j, point, K, abs_tol)
        elif form == "product":
            fa = f.value(a, point.b)
            per[a] = 0j if fa == 0 else fa * theta_jacobi_lift(m, a, j, point.nJ, point.b, K)
        else:
            raise ParameterError("form must be 'expanded' or 'product'")
    return per, sum(per.values())
