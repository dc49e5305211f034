import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fjkit.errors import ParameterError
from fjkit.metaplectic import (
    GENERATORS,
    IDENTITY,
    S,
    SL2Int,
    T,
    decompose_word,
    kubota_sign,
    lift,
    weil_matrix,
    word_product,
)

words = st.lists(st.sampled_from(sorted(GENERATORS)), min_size=1, max_size=6)
indices = st.sampled_from([1, -1, 2, -2, 3, -3, -4, 5])


def test_sl2_parse_and_validation():
    assert SL2Int.parse("0,1,-1,0") == S
    with pytest.raises(ParameterError):
        SL2Int.parse("1,1,1,1")
    with pytest.raises(ParameterError):
        SL2Int.parse("1,2,3")


def test_lift_is_principal():
    for M in (IDENTITY, T, S):
        g = lift(M)
        assert g.matrix == M and g.branch == 1
    assert lift(S).sqrt_factor(2j) == pytest.approx(cmath.sqrt(-2j))


def test_weil_T_index_one():
    W = weil_matrix(1, T).entries
    assert np.allclose(W, np.diag([1j, 1.0]), atol=1e-14)


def test_weil_S_index_one():
    W = weil_matrix(1, S).entries
    al = np.arange(1, 3)
    ref = cmath.exp(1j * math.pi / 4) / math.sqrt(2) * np.exp(1j * math.pi * np.outer(al, al))
    assert np.allclose(W, ref, atol=1e-14)


@pytest.mark.parametrize("m", [1, -1, 2, -3, 6])
def test_weil_identity(m):
    assert np.allclose(weil_matrix(m, IDENTITY).entries, np.eye(2 * abs(m)))


@given(m=indices, w=words)
@settings(max_examples=80, deadline=None)
def test_weil_unitary_with_unit_columns(m, w):
    W = weil_matrix(m, word_product(w))
    assert W.unitarity_residual() < 1e-10
    assert np.allclose(np.linalg.norm(W.entries, axis=0), 1.0, atol=1e-10)


@given(m=indices, w1=words, w2=words)
@settings(max_examples=80, deadline=None)
def test_weil_projective_homomorphism(m, w1, w2):
    g1, g2 = word_product(w1), word_product(w2)
    eps = kubota_sign(lift(g1), lift(g2), m)
    assert eps in (1, -1)
    prod = weil_matrix(m, g1).entries @ weil_matrix(m, g2).entries
    assert np.abs(prod - eps * weil_matrix(m, g1 @ g2).entries).max() < 1e-9


def test_kubota_sign_identity_and_S_squared():
    assert kubota_sign(lift(IDENTITY), lift(S), 1) == 1
    # Omega(S)^2 against the direct matrix of -I
    eps = kubota_sign(lift(S), lift(S), 1)
    W2 = weil_matrix(1, S).entries @ weil_matrix(1, S).entries
    assert np.allclose(W2, eps * weil_matrix(1, SL2Int(-1, 0, 0, -1)).entries)


def test_weil_rejects_bad_index():
    with pytest.raises(ParameterError):
        weil_matrix(0, S)
    with pytest.raises(ParameterError):
        weil_matrix(1.5, S)


def test_decompose_word_examples():
    assert decompose_word(T) == ["T"]
    assert word_product(decompose_word(SL2Int(-1, 0, 0, -1))) == SL2Int(-1, 0, 0, -1)
    assert decompose_word(SL2Int(-1, 0, 0, -1)) == ["S", "S"]
    M = SL2Int(2, 1, 1, 1)
    assert word_product(decompose_word(M)) == M


@given(w=st.lists(st.sampled_from(sorted(GENERATORS)), max_size=12))
@settings(max_examples=100, deadline=None)
def test_decompose_word_multiplies_back(w):
    M = word_product(w)
    assert word_product(decompose_word(M)) == M
