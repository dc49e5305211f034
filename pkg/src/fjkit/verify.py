"""Verification suites shared by ``fjkit verify`` and the acceptance tests.

Every check produces a :class:`Check` record with a residual and the
tolerance it is compared against.  Library errors raised inside a check
become failed records, so an impossible tolerance yields a report rather
than a traceback.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from .errors import FjkitError
from .fjspherical import (
    Complementary,
    DiscreteHalf,
    PrincipalHalf,
    decay_tail_check,
    fj_dim,
    leading_formula,
    rapid_decay_check,
)
from .heisenberg import (
    HeisenbergPoint,
    TestVector,
    UpperHalfPoint,
    nj_conjugate,
    nu_vector,
    theta_alpha,
    weil_vector,
)
from .jacobi import (
    JacobiPoint,
    _t2_candidates,
    assemble_example,
    extract_c_alpha,
    form_factor,
    phi_m_k,
    singular_support,
    synthetic_form_table,
    synthetic_maass_table,
    synthetic_table,
    theta_decompose,
    theta_side,
)
from .metaplectic import GENERATORS, S, T, weil_matrix, word_product
from .specfun import MeijerGSpec, QuadratureConfig, meijer_g, meijer_g_mellin_barnes, meijer_g_residue, whittaker_w
from .whittaker import (
    PJPS,
    PS,
    CharacterN0,
    LargeDS,
    TorusPoint,
    blattner,
    decay_profile,
    degenerate_basis,
    degenerate_coefficient,
    largeds_chamber2_leading,
    largeds_leading,
    pjps_whittaker,
    ps_PQ,
    ps_degenerate_basis,
    ps_whittaker,
    _KCache,
    _ps_double,
    ps_unit_components,
)

__all__ = ["RunConfig", "Check", "SUITES", "run_suite", "run_all", "report"]


@dataclass(frozen=True)
class RunConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    trunc: Optional[int] = None
    threads: int = 1
    precision: int = 15
    seed: int = 0

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol)


@dataclass
class Check:
    suite: str
    name: str
    residual: float
    tol: float
    passed: bool
    criterion: Optional[int] = None
    detail: str = ""


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: List[Check] = []

    def run(self, name: str, tol: float, fn: Callable[[], float], criterion: Optional[int] = None,
            detail: str = ""):
        """Run fn -> residual; passes when residual < tol."""
        try:
            res = float(fn())
            ok = bool(res < tol)
            msg = detail
        except (FjkitError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            res, ok, msg = float("inf"), False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(self.suite, name, res, tol, ok, criterion, msg))

    def flag(self, name: str, fn: Callable[[], tuple], criterion: Optional[int] = None):
        """fn -> (ok, detail); recorded with residual 0 or 1 against 0.5."""
        try:
            ok, detail = fn()
        except (FjkitError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(self.suite, name, 0.0 if ok else 1.0, 0.5, bool(ok), criterion,
                                 str(detail)))


def _projective(a, b) -> float:
    """Deviation of a from the best scalar multiple of b, relative to |a|."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    lam = np.vdot(b, a) / np.vdot(b, b)
    return float(np.abs(a - lam * b).max() / np.abs(a).max())


# ------------------------------------------------------------------ specfun

MEIJER_X = np.geomspace(0.5, 20.0, 12)


def meijer_whittaker_residual(lam1: int, k0: int, xs=MEIJER_X, cfg: QuadratureConfig = None) -> float:
    """max relative gap between e^{x/2} G(x) and x^{(3+2 lam1)/4} W(x)."""
    cfg = cfg or QuadratureConfig()
    spec = MeijerGSpec(1, 2, [(lam1 + 4 + k0) / 2], [(lam1 + 2) / 2, (lam1 + 3) / 2])
    worst = 0.0
    for x in xs:
        lhs = math.exp(x / 2) * complex(meijer_g(spec, x, cfg))
        rhs = x ** ((3 + 2 * lam1) / 4) * complex(whittaker_w(-(1 + 2 * k0) / 4, -0.25, x))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst


def _suite_specfun(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("specfun")
    q = cfg.quadrature()
    for lam1 in (1, 2, 3):
        for k0 in (0, 1, 2):
            rec.run(f"meijer_vs_whittaker lam1={lam1} k0={k0}", 1e-8,
                    lambda: meijer_whittaker_residual(lam1, k0, cfg=q), criterion=4)
    specs = [
        MeijerGSpec(0, 2, [], [0.25, 0.75]),
        MeijerGSpec(1, 2, [2.5], [1.5, 2.0]),
        MeijerGSpec(2, 3, [1.7, 2.2], [0.4, 0.9, 1.3]),
        MeijerGSpec(0, 2, [], [0.5 + 0.3j, 0.5 - 0.3j]),
    ]
    for spec in specs:
        def routes(spec=spec):
            worst = 0.0
            for x in (0.7, 3.0, 9.0):
                r = complex(meijer_g_residue(spec, x))
                mb = complex(meijer_g_mellin_barnes(spec, x, q))
                worst = max(worst, abs(r - mb) / abs(r))
            return worst
        rec.run(f"residue_vs_mellin_barnes p={spec.p} q={spec.q} b={spec.b}", 1e-8, routes)
    return rec.checks


# --------------------------------------------------------------------- weil

WEIL_INDICES = (1, -1, 2, -2, 3, -4)


def _random_words(rng: random.Random, count: int, max_len: int = 6):
    names = sorted(GENERATORS)
    return [[rng.choice(names) for _ in range(rng.randint(1, max_len))] for _ in range(count)]


def _sign_deviation(A: np.ndarray, B: np.ndarray) -> float:
    """min over eps in {+1, -1} of ||A - eps B||_inf."""
    return float(min(np.abs(A - B).max(), np.abs(A + B).max()))


def _suite_weil(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("weil")
    rng = random.Random(cfg.seed)
    for m in WEIL_INDICES:
        words = _random_words(rng, 50)
        mats = [word_product(w) for w in words]

        def unitarity():
            return max(weil_matrix(m, g).unitarity_residual() for g in mats)

        def word_vs_direct():
            worst = 0.0
            for w, g in zip(words, mats):
                P = np.eye(2 * abs(m), dtype=complex)
                for name in w:
                    P = P @ weil_matrix(m, GENERATORS[name]).entries
                worst = max(worst, _sign_deviation(P, weil_matrix(m, g).entries))
            return worst

        def pairwise():
            worst = 0.0
            for i in range(len(mats) - 1):
                g1, g2 = mats[i], mats[i + 1]
                P = weil_matrix(m, g1).entries @ weil_matrix(m, g2).entries
                worst = max(worst, _sign_deviation(P, weil_matrix(m, g1 @ g2).entries))
            return worst

        rec.run(f"unitarity m={m}", 1e-10, unitarity, criterion=1)
        rec.run(f"generator_products m={m}", 1e-9, word_vs_direct, criterion=1)
        rec.run(f"pairwise_products m={m}", 1e-9, pairwise, criterion=1)
    return rec.checks


# -------------------------------------------------------------------- theta

def theta_law_residual(m: int, gamma, j: int, points: Iterable[HeisenbergPoint], q: QuadratureConfig,
                       K: Optional[int] = None) -> float:
    """Projective gap between theta_a(omega(gamma) h) and sum_b W[a,b] theta_b(h) at g^-1 n g."""
    W = weil_matrix(m, gamma)
    h = TestVector.hermite(j, m)
    wv = weil_vector(m, gamma.as_tuple(), h, q)
    lhs, rhs = [], []
    for n in points:
        nc = nj_conjugate(gamma.as_tuple(), n)
        thetas = [theta_alpha(m, b, h, nc, K) for b in range(1, 2 * abs(m) + 1)]
        for a in range(1, 2 * abs(m) + 1):
            lhs.append(theta_alpha(m, a, wv, n, K))
            rhs.append(sum(W.entry(a, b) * thetas[b - 1] for b in range(1, 2 * abs(m) + 1)))
    return _projective(lhs, rhs)


def _random_sl2r(rng: random.Random):
    a = rng.uniform(0.5, 1.5) * rng.choice((1, -1))
    b = rng.uniform(-1, 1)
    c = rng.uniform(0.3, 1.2) * rng.choice((1, -1))
    return (a, b, c, (1 + b * c) / a)


def intertwining_residual(m: int, n: HeisenbergPoint, g, h, q: QuadratureConfig, xs) -> float:
    lhs = nu_vector(m, n, weil_vector(m, g, h, q))(xs)
    rhs = weil_vector(m, g, nu_vector(m, nj_conjugate(g, n), h), q)(xs)
    return _projective(lhs, rhs)


def _suite_theta(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("theta")
    q = cfg.quadrature()
    rng = random.Random(cfg.seed)
    for m in (1, 2):
        for gname, gamma in (("S", S), ("T", T)):
            for j in (0, 1):
                pts = [HeisenbergPoint(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
                       for _ in range(10)]
                rec.run(f"theta_law m={m} gamma={gname} h{j}", 1e-5,
                        lambda: theta_law_residual(m, gamma, j, pts, q, cfg.trunc), criterion=2)
    xs = np.linspace(-1.0, 1.0, 9)
    for i in range(20):
        m = rng.choice((1, -1, 2))
        n = HeisenbergPoint(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
        g = _random_sl2r(rng)
        h = TestVector({0: 1.0, 1: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))}, m)
        rec.run(f"intertwining #{i} m={m}", 1e-5,
                lambda: intertwining_residual(m, n, g, h, q, xs), criterion=3)
    return rec.checks


# ---------------------------------------------------------------- whittaker

WHITTAKER_RAY = np.geomspace(1.5, 5.0, 8)


def _ray_points(a1: float = 1.0):
    return [TorusPoint(a1, float(x)) for x in WHITTAKER_RAY]


def _decays(values):
    ok, slope = decay_profile(WHITTAKER_RAY, values)
    return ok, f"slope={slope:.4g}"


def _fails_decay(values):
    ok, slope = decay_profile(WHITTAKER_RAY, values)
    return not ok, f"slope={slope:.4g}"


def _suite_whittaker(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("whittaker")
    q = cfg.quadrature()
    pts = _ray_points()

    # nondegenerate branches must decay
    for lam in ((2, -5), (1, -3), (3, -4)):
        rep = LargeDS(*lam)
        psi = CharacterN0(1.0, -1.0)
        rec.flag(f"decay largeDS chamber III {lam}",
                 lambda: _decays([largeds_leading(rep, psi, a, q) for a in pts]), criterion=5)
    for lam in ((5, -2), (3, -1)):
        rep = LargeDS(*lam)
        psi = CharacterN0(1.0, 1.0)
        rec.flag(f"decay largeDS chamber II {lam}",
                 lambda: _decays([largeds_chamber2_leading(rep, psi, a, q) for a in pts]), criterion=5)
    for sign, m3 in ((-1, -1.0), (1, 1.0)):
        for parity in ("even", "odd"):
            rep = PJPS(2, sign, parity, 0.3j)
            psi = CharacterN0(1.0, m3)
            for comp in range(1 if parity == "even" else 2):
                rec.flag(f"decay PJPS sign={sign:+d} {parity} c{comp}",
                         lambda: _decays([pjps_whittaker(rep, psi, a, q)[comp] for a in pts]), criterion=5)
    for sigma, ktype in (((1, 1), None), ((-1, -1), None), ((1, -1), (1, 0)), ((1, -1), (0, -1)),
                         ((-1, 1), (1, 0))):
        rep = PS(0.3j, 0.7j, sigma, ktype) if ktype else PS(0.3j, 0.7j, sigma)
        psi = CharacterN0(1.0, -1.0)
        rec.flag(f"decay PS sigma={sigma} ktype={rep.ktype}",
                 lambda: _decays([ps_whittaker(rep, psi, a, q)[0] for a in pts]), criterion=5)

    # degenerate characters: every basis solution must fail the same test
    rep = LargeDS(2, -5)
    L = blattner(rep)
    for lam in (1, 2 * L.L1 + 1):
        for kind in ("J+", "J-") + (("K",) if lam != 1 else ()):
            rec.flag(f"degenerate {kind} lam={lam} not rapidly decreasing",
                     lambda: _fails_decay([degenerate_coefficient(rep, kind, lam, 1.0, a) for a in pts]),
                     criterion=5)
    for i in range(4):
        rec.flag(f"PS degenerate solution #{i} not rapidly decreasing",
                 lambda: _fails_decay([ps_degenerate_basis(0.3j, 0.7j, a)[i].value for a in pts]),
                 criterion=5)

    # degenerate ODE residuals
    rng = random.Random(cfg.seed)
    interior = [TorusPoint(rng.uniform(0.6, 1.6), rng.uniform(0.6, 1.6)) for _ in range(10)]
    for lam_rep in ((2, -5), (1, -3)):
        rep = LargeDS(*lam_rep)
        rec.run(f"degenerate ODE residuals {lam_rep}", 1e-4,
                lambda: max(s.residual for a in interior for s in degenerate_basis(rep, 1.0, a)),
                criterion=6)
    rec.run("PS degenerate ODE residuals", 1e-4,
            lambda: max(s.residual for a in interior for s in ps_degenerate_basis(0.3j, 0.7j, a)),
            criterion=6)

    # PS symmetries
    sample = [TorusPoint(1.0, 1.2), TorusPoint(0.8, 1.5), TorusPoint(1.3, 0.9)]
    psi = CharacterN0(1.0, -1.0)

    def even_sym():
        worst = 0.0
        for a in sample:
            base = np.array(ps_whittaker(PS(0.3j, 0.7j), psi, a, q), dtype=complex)
            for z1, z2 in ((0.7j, 0.3j), (-0.3j, -0.7j)):
                other = np.array(ps_whittaker(PS(z1, z2), psi, a, q), dtype=complex)
                worst = max(worst, float(np.abs(other - base).max() / np.abs(base).max()))
        return worst

    rec.run("PS even invariance under swap and negation", 1e-8, even_sym, criterion=7)

    def antisym():
        # P2(z1, z2) = -P1(z1, -z2) and Q2(z1, z2) = -Q1(z1, -z2)
        worst = 0.0
        for a in sample:
            for two, one in (("P2", "P1"), ("Q2", "Q1")):
                f = ps_PQ(two, 0.3j, 0.7j, a.y1, a.y2, q)
                g = ps_PQ(one, 0.3j, -0.7j, a.y1, a.y2, q)
                worst = max(worst, abs(f + g) / max(abs(f), 1e-300))
        return worst

    rec.run("PS P2/Q2 antisymmetry", 1e-10, antisym, criterion=7)

    def oracle():
        # adaptive spherical component against one fixed fine grid
        z1, z2 = 0.3j, 0.7j
        one = lambda t1, t2: 1.0
        worst = 0.0
        for Y1, Y2 in ((0.6, 0.8), (1.0, 1.0), (1.4, 0.7), (0.9, 1.6), (2.0, 1.2)):
            adaptive = complex(ps_unit_components(z1, z2, (0, 0), Y1, Y2, q)[0])
            fine = Y1 ** 2 * Y2 ** 1.5 * _ps_double(Y1, Y2, (z1 - z2) / 2, (z1 + z2) / 2, one,
                                                     0.025, _KCache())
            worst = max(worst, abs(adaptive - fine) / abs(fine))
        return worst

    rec.run("PS refined-grid oracle", 1e-6, oracle, criterion=7)
    return rec.checks


# ----------------------------------------------------------------------- fj

def fj_representatives():
    """(rep, pi1, m) triples covering every FJ branch, at most two per branch."""
    h = Fraction(1, 2)
    reps = [LargeDS(3, -1), LargeDS(1, -3), LargeDS(4, -1),
            PJPS(2, 1, "even", 0.4j), PJPS(2, 1, "odd", 0.4j), PJPS(2, -1, "even", 0.4j),
            PJPS(2, -1, "odd", 0.4j), PJPS(1, 1, "even", 0.4j), PJPS(1, -1, "odd", 0.4j),
            PS(0.3j, 0.7j), PS(0.3j, 0.7j, (-1, -1)), PS(0.3j, 0.7j, (1, -1)),
            PS(0.3j, 0.7j, (1, -1), (0, -1)), PS(0.3j, 0.7j, (-1, 1))]
    from .whittaker import AntiholDS, HolDS
    reps = [HolDS(4, 1), AntiholDS(-1, -4)] + reps
    pis = [PrincipalHalf(0.5j, h), PrincipalHalf(0.5j, -h), Complementary(0.3, h)]
    pis += [DiscreteHalf(Fraction(k, 2), s) for k in (1, 3, 5, 7, 9) for s in (1, -1)]
    seen: Dict[str, list] = {}
    for rep in reps:
        for pi1 in pis:
            for m in (1, -1, 2):
                try:
                    if fj_dim(rep, pi1, m) == 0:
                        continue
                    branch = leading_formula(rep, pi1, m).branch
                except FjkitError:
                    continue
                bucket = seen.setdefault(branch, [])
                if len(bucket) < 2:
                    bucket.append((rep, pi1, m))
    return seen


def _suite_fj(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("fj")
    q = cfg.quadrature()
    for branch, triples in sorted(fj_representatives().items()):
        for rep, pi1, m in triples:
            def both(rep=rep, pi1=pi1, m=m):
                ok1, s = rapid_decay_check(rep, pi1, m, cfg=q)
                ok2, x0 = decay_tail_check(rep, pi1, m, cfg=q)
                return ok1 and ok2, f"s={s:.4g} x0={x0:.4g}"
            rec.flag(f"decay {branch} | {rep} | {pi1} | m={m}", both, criterion=5)
    return rec.checks


# ------------------------------------------------------------------- jacobi

def _coeff_func(D: int, c: int) -> complex:
    return complex(math.cos(D) / (1 + 0.1 * D), 0.2 * (c - 1))


def roundtrip_residual(m: int, seed: int, k: int = 0, n_points: int = 5, bound: int = 40) -> float:
    table = synthetic_table(_coeff_func, bound, weight=(3, 3))
    h = theta_decompose(table, m)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n_points):
        u0, u1, u2, x = (rng.uniform(-0.5, 0.5) for _ in range(4))
        y = rng.uniform(0.7, 1.5)
        lhs = np.exp(2j * np.pi * m * (u1 + u0 * u0 * x)) * phi_m_k(table, m, k, (u0, u2 + u0 * x, x, math.sqrt(y)))
        rhs = theta_side(h, m, k, HeisenbergPoint(u0, u1, u2), UpperHalfPoint(x, y))
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    return worst


PRODUCT_CASES = (
    ("II-2", 2, lambda s: synthetic_form_table(2, Fraction(-5, 2), seed=s), {}),
    ("II-3", -1, lambda s: synthetic_form_table(-1, Fraction(7, 2), seed=s), {}),
    ("III-3", -2, lambda s: synthetic_form_table(-2, Fraction(9, 2), seed=s), {"n": 2}),
    ("IV-2", 1, lambda s: synthetic_form_table(1, Fraction(-7, 2), seed=s), {"delta": 0}),
    ("IV-3", -1, lambda s: synthetic_form_table(-1, Fraction(9, 2), seed=s), {"delta": 1}),
)

EXTRA_CASES = (
    ("I-1", 1, lambda s: synthetic_form_table(1, Fraction(5, 2), seed=s), {}),
    ("II-1", 1, lambda s: synthetic_maass_table(1, 0.7j, Fraction(-1, 2), seed=s), {}),
    ("III-2", 1, lambda s: synthetic_form_table(1, Fraction(5, 2), seed=s), {"n": 3}),
    ("IV-1", -1, lambda s: synthetic_maass_table(-1, 0.7j, Fraction(1, 2), seed=s), {}),
)


def product_expanded_residual(case_id, m, f, params, point: JacobiPoint, K=None) -> float:
    _, ex = assemble_example(case_id, f, m, point, K, form="expanded", params=params)
    _, pr = assemble_example(case_id, f, m, point, K, form="product", params=params)
    return abs(ex - pr) / max(abs(pr), 1e-300)


def singular_support_brute(m: int):
    out = []
    for a in range(1, 2 * abs(m) + 1):
        r = Fraction(a * a, 4 * m)
        if r.denominator == 1:
            out.append((a, Fraction(4 * m * m, a * a)))
    return out


def _cr_ratio(fn, z: complex, eps: float = 1e-5) -> float:
    """|d/dzbar| / |d/dz| of fn at z by central differences."""
    fx = (fn(z + eps) - fn(z - eps)) / (2 * eps)
    fy = (fn(z + 1j * eps) - fn(z - 1j * eps)) / (2 * eps)
    dz = 0.5 * (fx - 1j * fy)
    dzb = 0.5 * (fx + 1j * fy)
    return abs(dzb) / max(abs(dz), 1e-300)


def _suite_jacobi(cfg: RunConfig) -> List[Check]:
    rec = _Recorder("jacobi")
    for m in (1, 2, 3):
        rec.run(f"theta decomposition round trip m={m}", 1e-6,
                lambda: roundtrip_residual(m, cfg.seed + m), criterion=9)

    rng = random.Random(cfg.seed)
    points = [JacobiPoint(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                          rng.uniform(-0.5, 0.5), rng.uniform(0.7, 1.3)) for _ in range(3)]
    for case_id, m, make, params in PRODUCT_CASES:
        f = make(cfg.seed)
        rec.run(f"product vs expanded {case_id} m={m}", 1e-8,
                lambda: max(product_expanded_residual(case_id, m, f, params, p, cfg.trunc) for p in points),
                criterion=10)
    for case_id, m, make, params in EXTRA_CASES:
        f = make(cfg.seed)
        rec.run(f"product vs expanded {case_id} m={m}", 1e-8,
                lambda: max(product_expanded_residual(case_id, m, f, params, p, cfg.trunc) for p in points))

    def support():
        bad = 0
        for m in range(-12, 13):
            if m and singular_support(m) != singular_support_brute(m):
                bad += 1
        return bad

    rec.run("singular support and d exhaustive |m| <= 12", 0.5, support, criterion=11)

    table = synthetic_table(_coeff_func, 30, weight=(3, 3))

    def well_defined(m):
        worst = 0.0
        for a in range(1, 2 * m + 1):
            for N in range(1, 40):
                if (N + a * a) % (4 * m):
                    continue
                ref = extract_c_alpha(table, m, a, N)
                for t2 in _t2_candidates(m, a, 6 * m):
                    if (N + t2 * t2) % (4 * m):
                        continue
                    t3 = (N + t2 * t2) // (4 * m)
                    if m + t3 > table.trace_bound:
                        continue
                    worst = max(worst, abs(table.get((m, t2, t3)) - ref))
        return worst

    for m in (1, 2, 3):
        rec.run(f"extract_c_alpha independent of t2 m={m}", 1e-10, lambda: well_defined(m))

    def periodicity(m):
        worst = 0.0
        for u0, u2, u3, a2 in ((0.2, 0.3, -0.1, 0.9), (-0.4, 0.1, 0.35, 1.1)):
            base = phi_m_k(table, m, 0, (u0, u2, u3, a2))
            for shifted in ((u0, u2 + 1, u3, a2), (u0, u2, u3 + 1, a2)):
                worst = max(worst, abs(phi_m_k(table, m, 0, shifted) - base) / abs(base))
        return worst

    for m in (1, 2):
        rec.run(f"phi periodicity in u2, u3 m={m}", 1e-10, lambda: periodicity(m))

    # skew-holomorphic structure of the f-factor
    for case_id, m, make, _ in PRODUCT_CASES[:2]:
        f = make(cfg.seed)

        def cr(f=f):
            worst = 0.0
            w = float(abs(f.weight)) / 2
            for z in (0.1 + 0.9j, -0.3 + 1.2j, 0.25 + 0.8j):
                def g(zz, a=1):
                    return form_factor(f, a, UpperHalfPoint(zz.real, zz.imag)) / zz.imag ** w
                fn = g if f.holomorphic else (lambda zz: np.conj(g(zz)))
                worst = max(worst, _cr_ratio(fn, z))
            return worst

        rec.run(f"Cauchy-Riemann type of f in {case_id}", 1e-6, cr)
    return rec.checks


SUITES: Dict[str, Callable[[RunConfig], List[Check]]] = {
    "specfun": _suite_specfun,
    "weil": _suite_weil,
    "theta": _suite_theta,
    "whittaker": _suite_whittaker,
    "fj": _suite_fj,
    "jacobi": _suite_jacobi,
}


def run_suite(name: str, cfg: RunConfig = RunConfig()) -> List[Check]:
    if name == "all":
        return run_all(cfg)
    return SUITES[name](cfg)


def run_all(cfg: RunConfig = RunConfig()) -> List[Check]:
    out: List[Check] = []
    for name in SUITES:
        out.extend(SUITES[name](cfg))
    return out


def report(checks: List[Check], cfg: RunConfig) -> dict:
    """JSON-ready summary; contains no timings so equal seeds give equal bytes."""
    return {
        "config": asdict(cfg),
        "passed": all(c.passed for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
