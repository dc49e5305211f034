import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fjkit.errors import DomainError, ParameterError, TagError
from fjkit.whittaker import (
    PJPS,
    PS,
    AntiholDS,
    BlattnerParameter,
    CharacterN0,
    HolDS,
    LargeDS,
    TorusPoint,
    blattner,
    decay_profile,
    degenerate_basis,
    distinguished_ktype,
    flip_chamber,
    ktype_matrix,
    largeds_chamber2_leading,
    largeds_envelope,
    largeds_leading,
    pjps_whittaker,
    ps_PQ,
    ps_degenerate_basis,
    ps_whittaker,
    whittaker_dim,
)


def test_descriptor_validation():
    with pytest.raises(ParameterError):
        HolDS(1, 2)
    with pytest.raises(ParameterError):
        AntiholDS(-1, 0)
    with pytest.raises(ParameterError):
        LargeDS(2, -2)
    with pytest.raises(ParameterError):
        PJPS(0, 1, "even")
    with pytest.raises(ParameterError):
        PS(0.3j, 0.5j, sigma=(1, 1), ktype=(1, 1))
    with pytest.raises(ParameterError):
        PS(1.0, 0.5j)
    with pytest.raises(DomainError):
        TorusPoint(0.0, 1.0)


def test_blattner_examples():
    assert blattner(HolDS(3, 1)) == BlattnerParameter(4, 3)
    assert blattner(AntiholDS(-1, -3)) == BlattnerParameter(-3, -4)
    assert blattner(LargeDS(2, -1)) == BlattnerParameter(3, -1)
    assert blattner(LargeDS(1, -2)) == BlattnerParameter(1, -3)
    with pytest.raises(TagError):
        blattner(PS(0.3j, 0.7j))


def test_distinguished_ktype_defaults():
    assert distinguished_ktype(PJPS(2, 1, "odd")) == BlattnerParameter(2, 1)
    assert distinguished_ktype(PJPS(2, -1, "even")) == BlattnerParameter(-2, -2)
    assert distinguished_ktype(PS(0.3j, 0.7j, sigma=(1, -1))) == BlattnerParameter(1, 0)
    assert distinguished_ktype(PS(0.3j, 0.7j, sigma=(-1, -1), ktype=(-1, -1))) == BlattnerParameter(-1, -1)


@pytest.mark.parametrize("rep,psi,dim", [
    (HolDS(3, 1), CharacterN0(1, 1), 0),
    (AntiholDS(-1, -3), CharacterN0(1, -1), 0),
    (LargeDS(1, -3), CharacterN0(1, -1), 1),
    (LargeDS(1, -3), CharacterN0(1, 1), 0),
    (LargeDS(3, -1), CharacterN0(-1, 1), 1),
    (LargeDS(3, -1), CharacterN0(1, -1), 0),
    (LargeDS(3, -1), CharacterN0(1, 0), 0),
    (PJPS(1, 1, "even"), CharacterN0(1, 1), 1),
    (PJPS(1, -1, "odd"), CharacterN0(1, 1), 0),
    (PS(0.3j, 0.7j), CharacterN0(2, -3), 1),
    (PS(0.3j, 0.7j), CharacterN0(0, -3), 0),
])
def test_whittaker_dim(rep, psi, dim):
    assert whittaker_dim(rep, psi) == dim


def test_largeds_leading_real_and_within_envelope():
    rep, psi = LargeDS(2, -5), CharacterN0(1, -1)
    L = blattner(rep)
    for a1, a2 in ((1.0, 1.0), (0.7, 1.3), (1.5, 0.9)):
        a = TorusPoint(a1, a2)
        v = largeds_leading(rep, psi, a)
        assert isinstance(v, float) and v != 0
        env = largeds_envelope(rep, psi, a)
        pre = (a1 ** (-L.L2 + 1 - L.d) * a2 ** (-L.L2) * (a1 / a2) ** L.d
               * math.exp(2 * math.pi * psi.m3 * a2 * a2))
        # |W_{k,mu}| <= its value at mu real part, bounded by the W-free integral up to a constant
        assert abs(v) <= 10 * env * pre


def test_largeds_leading_needs_chamber_three():
    with pytest.raises(ParameterError):
        largeds_leading(LargeDS(3, -1), CharacterN0(1, -1), TorusPoint(1, 1))
    with pytest.raises(ParameterError):
        largeds_leading(LargeDS(1, -3), CharacterN0(1, 1), TorusPoint(1, 1))


def test_chamber_two_leading_matches_partner():
    rep = LargeDS(5, -2)
    a = TorusPoint(1.0, 1.2)
    v2 = largeds_chamber2_leading(rep, CharacterN0(1, 1), a)
    v3 = largeds_leading(rep.contragredient(), CharacterN0(1, -1), a)
    assert abs(abs(v2) - abs(v3)) < 1e-12 * abs(v3)


def test_pjps_outputs():
    a = TorusPoint(1.0, 1.1)
    even = pjps_whittaker(PJPS(2, -1, "even", 0.4j), CharacterN0(1, -1), a)
    assert len(even) == 1 and isinstance(even[0], float)
    odd = pjps_whittaker(PJPS(2, 1, "odd", 0.4j), CharacterN0(1, 1), a)
    assert len(odd) == 2
    assert pjps_whittaker(PJPS(2, -1, "even"), CharacterN0(1, 1), a) == ()


def test_pjps_sign_symmetry():
    a = TorusPoint(0.8, 1.3)
    minus = pjps_whittaker(PJPS(1, -1, "even", 0.25), CharacterN0(1, -1), a)
    plus = pjps_whittaker(PJPS(1, 1, "even", 0.25), CharacterN0(1, 1), a)
    assert abs(minus[0] - plus[0]) < 1e-12 * abs(minus[0])


def test_ps_whittaker_real_on_unitary_axis():
    out = ps_whittaker(PS(0.3j, 0.7j), CharacterN0(1, 1), TorusPoint(1.0, 1.0))
    assert len(out) == 1 and isinstance(out[0], float)
    with pytest.raises(ParameterError):
        ps_whittaker(PS(0.3j, 0.7j), CharacterN0(1, 0), TorusPoint(1.0, 1.0))


def test_ps_odd_components_antisymmetry():
    z1, z2, Y1, Y2 = 0.3j, 0.7j, 1.2, 0.9
    assert abs(ps_PQ("P2", z1, z2, Y1, Y2) + ps_PQ("P1", z1, -z2, Y1, Y2)) < 1e-10


def test_degenerate_solutions_satisfy_the_equation():
    sols = degenerate_basis(LargeDS(1, -3), 1.0, TorusPoint(1.3, 0.8))
    assert {s.label for s in sols} == {"J+", "J-", "K"}
    assert all(s.residual < 1e-5 for s in sols)


def test_ps_degenerate_power_solutions():
    sols = ps_degenerate_basis(0.3j, 0.7j, TorusPoint(1.1, 0.9))
    assert len(sols) == 4 and all(s.residual < 1e-5 for s in sols)


def test_ktype_matrix_identity_and_scalar():
    L = BlattnerParameter(2, -1)
    assert np.allclose(ktype_matrix(L, np.eye(2)), np.eye(4))
    t = np.exp(0.3j)
    assert np.allclose(ktype_matrix(L, t * np.eye(2)), t ** (L.L1 + L.L2) * np.eye(4))


@given(th=st.floats(0, 6.3), ph=st.floats(0, 6.3), ps=st.floats(0, 6.3),
       th2=st.floats(0, 6.3), ph2=st.floats(0, 6.3))
@settings(max_examples=30, deadline=None)
def test_ktype_matrix_is_a_representation(th, ph, ps, th2, ph2):
    def u(a, b, c):
        return np.exp(1j * c) * np.array([[np.cos(a) * np.exp(1j * b), np.sin(a)],
                                          [-np.sin(a), np.cos(a) * np.exp(-1j * b)]])
    L = BlattnerParameter(3, 0)
    u1, u2 = u(th, ph, ps), u(th2, ph2, 0.4)
    M = ktype_matrix(L, u1) @ ktype_matrix(L, u2)
    assert np.allclose(M, ktype_matrix(L, u1 @ u2), atol=1e-10)


def test_ktype_matrix_infinitesimal_action():
    # v_k -> (k+1) v_{k+1} under the upper-triangular nilpotent
    L = BlattnerParameter(3, 0)
    eps = 1e-6
    u = np.array([[1, eps], [0, 1]])
    D = (ktype_matrix(L, u, check_unitary=False) - np.eye(4)) / eps
    ref = np.diag([1.0, 2.0, 3.0], -1)
    assert np.allclose(D, ref, atol=1e-5)


def test_flip_is_monomial_involution():
    L = BlattnerParameter(2, -3)
    v = np.arange(1, L.d + 2) * (1 + 0.5j)
    once = flip_chamber(v, L)
    assert np.allclose(np.sort(np.abs(once)), np.sort(np.abs(v)))
    assert np.allclose(np.abs(once), np.abs(v[::-1]))
    twice = flip_chamber(once, L)
    assert np.allclose(np.abs(twice), np.abs(v))


def test_decay_profile_detects_growth():
    x = np.linspace(6, 40, 10)
    ok, slope = decay_profile(x, np.exp(-2 * x))
    assert ok and slope < -1
    bad, _ = decay_profile(x, np.exp(0.1 * x))
    assert not bad
