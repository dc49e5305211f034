"""Special functions used by the spherical-function formulas.

Gamma, K- and J-Bessel, Whittaker W, Hermite functions and the Meijer
G-function G^{q,0}_{p,q}.  Everything works in double precision except
the residue series of the Meijer G-function, which sums an alternating
hypergeometric series and needs extra working digits to survive the
cancellation.
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import special as sc

from .errors import (
    BranchError,
    ConvergenceError,
    DomainError,
    ParameterError,
    PoleError,
)

__all__ = [
    "QuadratureConfig",
    "MeijerGSpec",
    "log_gamma",
    "bessel_k",
    "bessel_j",
    "whittaker_w",
    "hermite",
    "meijer_g",
    "meijer_g_residue",
    "meijer_g_mellin_barnes",
]

ALLOWED_PQ = {(0, 2), (1, 2), (2, 3), (3, 4)}


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_refinement_depth: int = 12
    contour_half_height: float = 60.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("rel_tol and abs_tol must be positive")
        if self.max_refinement_depth < 1:
            raise ParameterError("max_refinement_depth must be >= 1")
        if not self.contour_half_height > 0:
            raise ParameterError("contour_half_height must be positive")


DEFAULT_CFG = QuadratureConfig()


def _is_nonpos_int(z: complex, tol: float = 0.0) -> bool:
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def _as_real_if_close(z: complex, scale: float | None = None, tol: float = 1e-12):
    z = complex(z)
    ref = abs(z) if scale is None else scale
    if abs(z.imag) <= tol * max(ref, 1e-300):
        return float(z.real)
    return z


# ---------------------------------------------------------------- Gamma

def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if _is_nonpos_int(z):
        raise PoleError(f"Gamma has a pole at z={z.real:g}")
    return complex(sc.loggamma(z))


def _lgam(z):
    # vectorised principal log-gamma; callers guarantee no poles
    return sc.loggamma(np.asarray(z, dtype=complex))


# ------------------------------------------------------------- K-Bessel

def _k_cosh_trapezoid(nu: complex, y: np.ndarray, h: float) -> np.ndarray:
    """K_nu(y) from int_0^inf exp(-y cosh t) cosh(nu t) dt.

    Works with the scaled integrand exp(-y (cosh t - 1)) so large y does
    not underflow, then restores exp(-y).
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    ymin = float(y.min())
    a = abs(nu.real)
    t_max = 1.0
    while ymin * (math.cosh(t_max) - 1.0) - a * t_max < 40.0:
        t_max *= 1.25
    n = int(math.ceil(t_max / h)) + 1
    t = np.arange(n) * h
    w = np.full(n, h)
    w[0] = 0.5 * h
    cz = np.cosh(nu * t)
    ex = np.exp(-np.outer(y, np.cosh(t) - 1.0))
    return (ex * (w * cz)).sum(axis=1) * np.exp(-y)


def _bessel_k_vec(nu: complex, y, rel_tol: float = 1e-13) -> np.ndarray:
    """Standard K_nu(y) on an array of positive y."""
    y = np.asarray(y, dtype=float)
    nu = complex(nu)
    if nu.imag == 0.0:
        return sc.kv(nu.real, y).astype(complex)
    h = math.pi ** 2 / (math.pi * abs(nu.imag) + 40.0)
    prev = _k_cosh_trapezoid(nu, y, h)
    for _ in range(6):
        h *= 0.5
        cur = _k_cosh_trapezoid(nu, y, h)
        scale = np.maximum(np.abs(cur), 1e-300)
        if np.all(np.abs(cur - prev) <= rel_tol * scale + 1e-300):
            return cur.reshape(np.shape(y))
        prev = cur
    return cur.reshape(np.shape(y))


def bessel_k(nu: complex, y: float):
    """Standard modified Bessel function K_nu(y) for y > 0.

    Real order goes to scipy.  Complex order uses the cosh integral on a
    trapezoid grid, halving the step until two passes agree.
    """
    y = float(y)
    if not y > 0:
        raise DomainError("bessel_k needs y > 0")
    nu = complex(nu)
    if nu.imag == 0.0:
        return float(sc.kv(nu.real, y))
    val = complex(_bessel_k_vec(nu, np.array([y]))[0])
    if nu.real == 0.0:
        return float(val.real)
    return val


# ------------------------------------------------------------- J-Bessel

def bessel_j(nu: float, z: complex) -> complex:
    """J_nu(z) by its ascending series.

    Negative integer orders use J_{-n} = (-1)^n J_n.  When the series
    cancels badly (large real part of z) the value is taken from scipy.
    """
    nu = float(nu)
    z = complex(z)
    is_int = float(nu).is_integer()
    if not is_int and z.imag == 0.0 and z.real <= 0.0:
        raise BranchError("non-integer order J is cut along (-inf, 0]")
    if is_int and nu < 0:
        n = int(-nu)
        return (-1) ** n * bessel_j(float(n), z)
    if z == 0:
        return 1.0 + 0j if nu == 0 else 0j
    half = z / 2.0
    lead = cmath.exp(nu * cmath.log(half) - math.lgamma(nu + 1.0)) if nu + 1.0 > 0 else None
    if lead is None:
        # 1/Gamma(nu+1) through the reflection-safe path
        lead = half ** nu * float(sc.rgamma(nu + 1.0))
    q = -half * half
    term = 1.0 + 0j
    total = 1.0 + 0j
    biggest = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        biggest = max(biggest, abs(term))
        if k > abs(z) and abs(term) < 1e-17 * max(abs(total), 1e-300):
            break
        if k > 2000:
            break
    if biggest > 1e6 * max(abs(total), 1e-300):
        return complex(sc.jv(nu, z))
    return complex(lead * total)


# ----------------------------------------------------------- Whittaker W

def _w_integral(kappa: complex, mu: complex, y: float, rel_tol: float = 1e-13) -> complex:
    """W from the Laplace-type integral, valid for Re(mu - kappa + 1/2) > 0.

    W = y^{mu+1/2} e^{-y/2} / Gamma(alpha) int_0^inf e^{-yt} t^{alpha-1}
    (1+t)^{beta} dt with alpha = mu-kappa+1/2, beta = mu+kappa-1/2.  The
    substitution t = exp(u - e^{-u}) gives double-exponential decay at
    both ends.
    """
    alpha = mu - kappa + 0.5
    beta = mu + kappa - 0.5
    ra = alpha.real
    u_lo = -math.log(60.0 / ra)
    while ra * (math.exp(-u_lo) - u_lo) < 60.0 + abs(alpha.imag):
        u_lo -= 0.25
    u_hi = 0.0
    while y * math.exp(u_hi) - abs(beta.real) * max(u_hi, 0.0) - 1.0 < 60.0:
        u_hi += 0.25

    def integrate(h):
        u = np.arange(u_lo, u_hi + h, h)
        eu = np.exp(-u)
        logt = u - eu
        t = np.exp(logt)
        logf = alpha * logt + beta * np.log1p(t) - y * t + np.log1p(eu)
        return h * np.exp(logf).sum()

    h = 0.125
    prev = integrate(h)
    for _ in range(7):
        h *= 0.5
        cur = integrate(h)
        if abs(cur - prev) <= rel_tol * abs(cur):
            break
        prev = cur
    logpre = (mu + 0.5) * math.log(y) - 0.5 * y - complex(sc.loggamma(alpha))
    return complex(cmath.exp(logpre) * cur)


def whittaker_w(kappa: complex, mu: complex, y: float):
    """Whittaker's W_{kappa,mu}(y) for y > 0.

    W is even in mu, so the sign of mu is chosen to maximise
    Re(mu - kappa + 1/2).  If the integral representation is still too
    close to its boundary, W is reached from lower kappa through the
    three-term recurrence
        W_{k+1} = (y - 2k) W_k - (k - mu - 1/2)(k + mu - 1/2) W_{k-1}.
    """
    y = float(y)
    if not y > 0:
        raise DomainError("whittaker_w needs y > 0")
    kappa = complex(kappa)
    mu = complex(mu)
    if (-mu - kappa + 0.5).real > (mu - kappa + 0.5).real:
        mu = -mu
    alpha = mu - kappa + 0.5
    if _is_nonpos_int(alpha, 1e-14):
        # terminating case: W = e^{-y/2} y^kappa times a Laguerre polynomial
        n = int(round(-alpha.real))
        val = _w_terminating(kappa, mu, y, n)
    elif alpha.real >= 0.25:
        val = _w_integral(kappa, mu, y)
    else:
        shift = int(math.ceil(0.25 - alpha.real)) + 1
        k0 = kappa - shift
        w_prev = _w_integral(k0 - 1.0, mu, y)
        w_cur = _w_integral(k0, mu, y)
        k = k0
        for _ in range(shift):
            w_next = (y - 2.0 * k) * w_cur - (k - mu - 0.5) * (k + mu - 0.5) * w_prev
            w_prev, w_cur = w_cur, w_next
            k += 1.0
        val = w_cur
    if not np.isfinite(val):
        raise ParameterError("Whittaker W evaluation produced a non-finite value")
    if kappa.imag == 0.0 and (mu.imag == 0.0 or mu.real == 0.0):
        return float(complex(val).real)
    return complex(val)


def _w_terminating(kappa: complex, mu: complex, y: float, n: int) -> complex:
    # W = e^{-y/2} y^{mu+1/2} U(-n, b, y), b = 1+2mu, and
    # U(-n, b, y) = (-1)^n sum_s binom(n,s) (b+s)_{n-s} (-y)^s
    b = 1.0 + 2.0 * mu
    total = 0j
    for s in range(n + 1):
        poch = 1.0 + 0j
        for i in range(n - s):
            poch *= b + s + i
        total += math.comb(n, s) * poch * (-y) ** s
    total *= (-1) ** n
    return cmath.exp(-0.5 * y + (mu + 0.5) * math.log(y)) * total


def _whittaker_w0_vec(mu: complex, t: np.ndarray) -> np.ndarray:
    """W_{0,mu}(t) = sqrt(t/pi) K_mu(t/2), vectorised over t."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(t / math.pi) * _bessel_k_vec(mu, 0.5 * t)


# --------------------------------------------------------------- Hermite

def hermite(j: int, t, m: float, y: float = 1.0):
    """Return (H_j, h_j) evaluated at sqrt(y) t.

    h_j(t) = e^{2 pi |m| t^2} (d/dt)^j e^{-4 pi |m| t^2} = H_j(t) e^{-2 pi |m| t^2}
    and H_{j+1}(t) = -8 pi |m| (t H_j(t) + j H_{j-1}(t)).
    """
    if j < 0 or int(j) != j:
        raise ParameterError("hermite index must be a non-negative integer")
    if m == 0:
        raise ParameterError("hermite needs a nonzero index m")
    if not y > 0:
        raise DomainError("hermite scale y must be positive")
    s = np.sqrt(y) * np.asarray(t, dtype=float)
    c = 8.0 * math.pi * abs(m)
    h_prev = np.zeros_like(s)
    h_cur = np.ones_like(s)
    for i in range(int(j)):
        h_prev, h_cur = h_cur, -c * (s * h_cur + i * h_prev)
    gauss = np.exp(-2.0 * math.pi * abs(m) * s * s)
    if np.ndim(s) == 0:
        return float(h_cur), float(h_cur * gauss)
    return h_cur, h_cur * gauss


# ------------------------------------------------------------ Meijer G

@dataclass(frozen=True)
class MeijerGSpec:
    """Parameters of G^{q,0}_{p,q}(x | a; b)."""

    p: int
    q: int
    a: tuple = field(default_factory=tuple)
    b: tuple = field(default_factory=tuple)
    allow_collisions: bool = False

    def __post_init__(self):
        a = tuple(complex(v) for v in self.a)
        b = tuple(complex(v) for v in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if (self.p, self.q) not in ALLOWED_PQ:
            raise ParameterError(f"(p,q)=({self.p},{self.q}) is not supported")
        if len(a) != self.p or len(b) != self.q:
            raise ParameterError("parameter lists do not match (p,q)")
        if not self.allow_collisions:
            for ai in a:
                for bj in b:
                    if _is_nonpos_int(ai - bj, 1e-12):
                        raise ParameterError(
                            f"pole collision: a - b = {ai - bj} is a non-positive integer"
                        )

    def has_integer_b_gaps(self, tol: float = 1e-6) -> bool:
        for i, bi in enumerate(self.b):
            for bj in self.b[i + 1:]:
                d = bi - bj
                if abs(d.imag) < tol and abs(d.real - round(d.real)) < tol:
                    return True
        return False

    def conjugate_closed(self) -> bool:
        def closed(vals):
            rest = list(vals)
            for v in vals:
                hit = [i for i, w in enumerate(rest) if abs(w - v.conjugate()) < 1e-14 * (1 + abs(v))]
                if not hit:
                    return False
                rest.pop(hit[0])
            return True

        return closed(self.a) and closed(self.b)


def meijer_g_residue(spec: MeijerGSpec, x: float) -> complex:
    """Sum of residues at the poles of prod Gamma(b_j - s).

    G = sum_h sum_k (-1)^k / k! prod_{j!=h} Gamma(b_j-b_h-k)
        / prod_i Gamma(a_i-b_h-k) x^{b_h+k}.
    Summed with mpmath at a precision chosen from the observed
    cancellation; a second pass raises the precision if needed.
    """
    if spec.has_integer_b_gaps():
        raise ParameterError("residue series needs non-integer differences b_j - b_k")
    x = float(x)
    dps = 30 + int(0.9 * x)
    for _ in range(3):
        val, biggest = _residue_sum(spec, x, dps)
        if val == 0:
            loss = dps
        else:
            loss = float(mpmath.log10(biggest / abs(val)))
        if loss < dps - 18:
            return complex(val)
        dps = int(loss) + 30
    raise ConvergenceError(f"residue series lost all digits at x={x}")


def _residue_sum(spec: MeijerGSpec, x: float, dps: int):
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        a = [mpmath.mpc(v.real, v.imag) for v in spec.a]
        b = [mpmath.mpc(v.real, v.imag) for v in spec.b]
        total = mpmath.mpc(0)
        biggest = mpmath.mpf(0)
        eps = mpmath.mpf(10) ** (-dps)
        for h, bh in enumerate(b):
            others = [bj - bh for j, bj in enumerate(b) if j != h]
            term = xm ** bh
            for d in others:
                term *= mpmath.gamma(d)
            for ai in a:
                term *= mpmath.rgamma(ai - bh)
            k = 0
            local_big = abs(term)
            sub = term
            while True:
                num = -xm
                for ai in a:
                    num *= ai - bh - k - 1
                den = mpmath.mpf(k + 1)
                for d in others:
                    den *= d - k - 1
                term = term * num / den
                k += 1
                sub += term
                at = abs(term)
                if at > local_big:
                    local_big = at
                if k > 2 * x + 10 and at <= eps * local_big:
                    break
                if k > 20000:
                    raise ConvergenceError("residue series did not terminate")
            total += sub
            if local_big > biggest:
                biggest = local_big
        return complex(total), biggest


def _mb_log_integrand(spec: MeijerGSpec, s: np.ndarray, logx: float) -> np.ndarray:
    out = np.zeros(s.shape, dtype=complex)
    for bj in spec.b:
        out += _lgam(bj - s)
    for ai in spec.a:
        out -= _lgam(ai - s)
    return out + s * logx


def _mb_contour_abscissa(spec: MeijerGSpec, logx: float) -> float:
    # real point minimising |integrand| to the left of all b poles
    bmin = min(v.real for v in spec.b)

    def f(c):
        return float(_mb_log_integrand(spec, np.array([c + 0j]), logx)[0].real)

    hi = bmin - 0.25
    lo = hi - 1.0
    while f(lo) < f(lo + 0.5) and lo > hi - 4000:
        lo = hi - 2 * (hi - lo)
    # golden-section search on [lo, hi]
    g = (math.sqrt(5) - 1) / 2
    x1 = hi - g * (hi - lo)
    x2 = lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(80):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
    c = 0.5 * (lo + hi)
    # keep clear of poles of 1/Gamma(a - s) rounding and of the b poles
    return min(c, bmin - 0.25)


def meijer_g_mellin_barnes(spec: MeijerGSpec, x: float, cfg: QuadratureConfig = DEFAULT_CFG) -> complex:
    """Vertical-line Mellin-Barnes integral.

    G = (1/2pi) int prod Gamma(b_j - s)/prod Gamma(a_i - s) x^s dt with
    s = c + i t.  The abscissa c sits at the real minimum of the
    integrand's modulus, which keeps the integrand on the scale of the
    answer.  The trapezoid rule is refined by halving until two passes
    agree, and the height is grown until the end values are negligible.
    """
    x = float(x)
    logx = math.log(x)
    c = _mb_contour_abscissa(spec, logx)
    peak = math.exp(float(_mb_log_integrand(spec, np.array([c + 0j]), logx)[0].real))

    height = float(cfg.contour_half_height)
    for _ in range(cfg.max_refinement_depth):
        end = np.array([c + 1j * height, c - 1j * height])
        tail = np.exp(_mb_log_integrand(spec, end, logx).real).max()
        if tail <= cfg.abs_tol * 1e-3 * peak or tail < 1e-300:
            break
        height *= 1.5
    else:
        raise ConvergenceError(f"Mellin-Barnes contour did not decay by height {height:g}")

    def trap(h):
        n = int(math.ceil(height / h))
        t = np.arange(-n, n + 1) * h
        vals = np.exp(_mb_log_integrand(spec, c + 1j * t, logx))
        return h * vals.sum() / (2 * math.pi)

    h = 0.5
    prev = trap(h)
    for depth in range(cfg.max_refinement_depth):
        h *= 0.5
        cur = trap(h)
        err = abs(cur - prev)
        if err <= max(cfg.rel_tol * 1e-2 * abs(cur), cfg.abs_tol * 1e-6 * peak, 1e-300):
            return complex(cur)
        prev = cur
    raise ConvergenceError(
        f"Mellin-Barnes quadrature at x={x:g} not converged: last change {err:.3e}, value {abs(cur):.3e}"
    )


def meijer_g(spec: MeijerGSpec, x: float, cfg: QuadratureConfig = DEFAULT_CFG):
    """G^{q,0}_{p,q}(x | a; b) for x > 0.

    The residue series is used when no two b's differ by an integer and
    the parameters admit no pole collisions; otherwise the Mellin-Barnes
    integral.  Real values come back as float when the parameter set is
    closed under conjugation.
    """
    x = float(x)
    if not x > 0:
        raise DomainError("meijer_g needs x > 0")
    if spec.has_integer_b_gaps() or spec.allow_collisions:
        val = meijer_g_mellin_barnes(spec, x, cfg)
    else:
        val = meijer_g_residue(spec, x)
    if spec.conjugate_closed():
        return float(val.real)
    return _as_real_if_close(val)
