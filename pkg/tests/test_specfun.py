import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fjkit.errors import DomainError, ParameterError
from fjkit.specfun import (
    MeijerGSpec,
    QuadratureConfig,
    bessel_j,
    bessel_k,
    hermite,
    log_gamma,
    meijer_g,
    meijer_g_mellin_barnes,
    meijer_g_residue,
    whittaker_w,
)


def test_log_gamma_small_values():
    assert abs(log_gamma(1)) < 1e-15
    assert abs(log_gamma(5) - math.log(24)) < 1e-14


def test_log_gamma_complex_against_mpmath():
    z = 0.5 + 2j
    ref = complex(mpmath.loggamma(mpmath.mpc(0.5, 2)))
    assert abs(log_gamma(z) - ref) < 1e-13


def test_bessel_k_half_order_closed_form():
    assert abs(bessel_k(0.5, 1.0) - math.sqrt(math.pi / 2) * math.exp(-1)) < 1e-14


def test_bessel_k_order_zero_cosh_integral():
    # independent oracle: int_0^inf e^{-y cosh t} dt on a fine grid
    t = np.linspace(0, 12, 200001)
    ref = np.trapezoid(np.exp(-2.0 * np.cosh(t)), t)
    assert abs(bessel_k(0.0, 2.0) - ref) < 1e-12


@given(mu=st.floats(0.0, 4.0), y=st.floats(0.05, 30.0))
@settings(max_examples=40, deadline=None)
def test_bessel_k_imaginary_order_symmetry(mu, y):
    a = complex(bessel_k(1j * mu, y))
    b = complex(bessel_k(-1j * mu, y))
    assert abs(a - b) <= 1e-12 * max(abs(a), 1e-300)


@given(nu=st.floats(-2.5, 3.0), y=st.floats(0.1, 25.0))
@settings(max_examples=40, deadline=None)
def test_bessel_k_against_mpmath(nu, y):
    ref = float(mpmath.besselk(nu, y))
    assert abs(complex(bessel_k(nu, y)) - ref) <= 1e-10 * abs(ref)


def test_bessel_j_special_values():
    assert abs(bessel_j(0, 0) - 1) < 1e-15
    assert abs(bessel_j(0.5, math.pi)) < 1e-14


def test_bessel_j_imaginary_argument_against_partial_sums():
    nu, z = 1.5, 2j
    partial = sum((-1) ** k * (z / 2) ** (2 * k + nu) / (math.factorial(k) * math.gamma(k + nu + 1))
                  for k in range(100))
    assert abs(bessel_j(nu, z) - partial) < 1e-13 * abs(partial)


def test_whittaker_w_kappa_zero_bessel_identity():
    for mu in (0.25, 0.7j, 1.3):
        for y in (0.5, 3.0, 11.0):
            ref = math.sqrt(y / math.pi) * complex(bessel_k(mu, y / 2))
            assert abs(complex(whittaker_w(0, mu, y)) - ref) < 1e-12 * abs(ref)


def test_whittaker_w_terminating_case():
    for mu, y in ((0.25, 2.0), (1.0, 0.7), (-0.25, 5.0)):
        ref = math.exp(-y / 2) * y ** (mu + 0.5)
        assert abs(complex(whittaker_w(mu + 0.5, mu, y)) - ref) < 1e-12 * ref


def _w_residual(kappa, mu, y, h=1e-3):
    f = [complex(whittaker_w(kappa, mu, y + k * h)) for k in (-2, -1, 0, 1, 2)]
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    return abs(d2 + (-0.25 + kappa / y + (0.25 - mu * mu) / y ** 2) * f[2]) / abs(f[2])


def test_whittaker_w_ode_residual():
    assert _w_residual(-0.75, -0.25, 3.0) < 1e-6


@given(kappa=st.floats(-2, 1.5), mu=st.floats(-1.2, 1.2), y=st.floats(0.3, 20))
@settings(max_examples=30, deadline=None)
def test_whittaker_w_against_mpmath(kappa, mu, y):
    ref = complex(mpmath.whitw(kappa, mu, y))
    assert abs(complex(whittaker_w(kappa, mu, y)) - ref) <= 1e-9 * abs(ref) + 1e-300


def test_whittaker_w_rejects_nonpositive_argument():
    with pytest.raises(DomainError):
        whittaker_w(0.1, 0.2, 0.0)


def test_hermite_low_orders():
    H0, h0 = hermite(0, 0.3, 1)
    assert H0 == 1 and abs(h0 - math.exp(-2 * math.pi * 0.09)) < 1e-15
    H1, _ = hermite(1, 0.3, 1)
    assert abs(H1 + 8 * math.pi * 0.3) < 1e-13


@given(j=st.integers(0, 8), t=st.floats(-2, 2), m=st.sampled_from([1, -1, 2, 3]))
@settings(max_examples=60, deadline=None)
def test_hermite_parity(j, t, m):
    a, _ = hermite(j, t, m)
    b, _ = hermite(j, -t, m)
    assert abs(a - (-1) ** j * b) <= 1e-9 * max(1.0, abs(a))


def test_hermite_matches_derivative_of_gaussian():
    # h_j = e^{2 pi t^2} d^j/dt^j e^{-4 pi t^2}, checked with mpmath differentiation
    for j in range(4):
        for t in (-0.4, 0.1, 0.7):
            g = lambda s: mpmath.exp(-4 * mpmath.pi * s * s)
            ref = float(mpmath.exp(2 * mpmath.pi * t * t) * mpmath.diff(g, t, j))
            assert abs(hermite(j, t, 1)[1] - ref) < 1e-9 * max(1.0, abs(ref))


def test_meijer_spec_validation():
    with pytest.raises(ParameterError):
        MeijerGSpec(1, 3, [1.0], [0.1, 0.2, 0.3])
    with pytest.raises(ParameterError):
        MeijerGSpec(1, 2, [1.0], [0.1])
    with pytest.raises(ParameterError):
        MeijerGSpec(1, 2, [1.0], [2.0, 0.3])
    MeijerGSpec(1, 2, [1.0], [2.0, 0.3], allow_collisions=True)


def test_meijer_bessel_reduction():
    b1, b2 = 0.3, 1.1
    spec = MeijerGSpec(0, 2, [], [b1, b2])
    for x in (0.4, 2.0, 9.0):
        ref = 2 * x ** ((b1 + b2) / 2) * complex(bessel_k(b1 - b2, 2 * math.sqrt(x)))
        assert abs(complex(meijer_g(spec, x)) - ref) < 1e-11 * abs(ref)


@pytest.mark.parametrize("spec", [
    MeijerGSpec(1, 2, [2.7], [1.2, 1.9]),
    MeijerGSpec(2, 3, [1.7, 2.2], [0.4, 0.9, 1.3]),
    MeijerGSpec(3, 4, [1.5, 2.5, 3.1], [0.2, 0.7, 1.1, 1.6]),
])
def test_meijer_routes_against_mpmath(spec):
    for x in (0.5, 2.0, 7.0):
        ref = complex(mpmath.meijerg([[], list(spec.a)], [list(spec.b), []], x))
        assert abs(complex(meijer_g_residue(spec, x)) - ref) < 1e-10 * abs(ref)
        assert abs(complex(meijer_g_mellin_barnes(spec, x)) - ref) < 1e-9 * abs(ref)


def test_meijer_integer_gap_uses_contour():
    spec = MeijerGSpec(0, 2, [], [0.0, 1.0])
    for x in (0.5, 3.0):
        ref = 2 * x ** 0.5 * float(mpmath.besselk(1, 2 * math.sqrt(x)))
        assert abs(complex(meijer_g(spec, x)) - ref) < 1e-9 * ref


def test_meijer_rapid_decay():
    spec = MeijerGSpec(1, 2, [3.0], [1.5, 2.0])
    xs = np.geomspace(10, 80, 6)
    lg = [math.log(abs(math.exp(x / 2) * complex(meijer_g(spec, x)))) + 10 * math.log(x) for x in xs]
    assert all(b < a for a, b in zip(lg[2:], lg[3:]))
    assert lg[-1] - max(lg) < -10


def test_quadrature_config_validation():
    with pytest.raises(ParameterError):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(ParameterError):
        QuadratureConfig(max_refinement_depth=0)
