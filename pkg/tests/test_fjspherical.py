import math
from fractions import Fraction as F

import mpmath
import pytest

from fjkit.errors import CaseError, DimensionZero, ParameterError, TagError
from fjkit.fjspherical import (
    AT_MOST_ONE,
    Complementary,
    DiscreteHalf,
    PrincipalHalf,
    XVariable,
    decay_tail_check,
    fj_dim,
    fj_leading,
    index_table,
    j0_index,
    l_of,
    leading_formula,
    rapid_decay_check,
)
from fjkit.whittaker import PJPS, PS, AntiholDS, HolDS, LargeDS

h = F(1, 2)


def test_sl2_descriptor_validation():
    with pytest.raises(ParameterError):
        PrincipalHalf(0.2, h)
    with pytest.raises(ParameterError):
        Complementary(0.7, h)
    with pytest.raises(ParameterError):
        DiscreteHalf(F(1, 3), 1)
    assert not DiscreteHalf(1, 1).genuine
    assert DiscreteHalf(F(3, 2), -1).dual() == DiscreteHalf(F(3, 2), 1)


def test_l_of_and_membership():
    assert l_of(h, 0, 3) == F(5, 2)
    assert l_of(-F(3, 2), 2, -1) == F(5, 2)
    assert DiscreteHalf(F(5, 2), 1).in_L(F(9, 2))
    assert not DiscreteHalf(F(5, 2), 1).in_L(F(1, 2))
    assert PrincipalHalf(0.5j, h).in_L(F(-3, 2))


def test_x_variable():
    X = XVariable(-2, 0.5)
    assert X.x == pytest.approx(-2 * math.pi)
    assert X.x_prime == pytest.approx(2 * math.pi) and X.positive == X.x_prime


@pytest.mark.parametrize("pi1,n,context,sign", [
    (PrincipalHalf(0.5j, h), 1, "PJ", 1),
    (PrincipalHalf(0.5j, -h), 2, "PJ", 1),
    (DiscreteHalf(F(3, 2), 1), 3, "PJ", 1),
    (DiscreteHalf(F(5, 2), -1), 2, "PJ", 1),
    (DiscreteHalf(F(7, 2), 1), 2, "PJ", -1),
    (Complementary(0.3, h), 2, "PS", 1),
    (DiscreteHalf(F(3, 2), -1), 1, "PS", 1),
    (DiscreteHalf(F(9, 2), 1), 2, "PS", -1),
    (PrincipalHalf(0.5j, -h), 1, "PS", -1),
])
def test_index_enumeration_matches_table(pi1, n, context, sign):
    assert j0_index(pi1, n, context, sign) == index_table(pi1, n, context, sign)


def test_index_uncovered_branch():
    with pytest.raises(CaseError):
        j0_index(DiscreteHalf(F(3, 2), 1), 2, "PS", 1)
    with pytest.raises(ParameterError):
        j0_index(DiscreteHalf(F(3, 2), 1), 2, "XX", 1)


@pytest.mark.parametrize("rep,pi1,m,dim", [
    (HolDS(4, 1), DiscreteHalf(F(5, 2), 1), 1, 1),
    (HolDS(4, 1), DiscreteHalf(F(11, 2), 1), 1, 0),
    (HolDS(4, 1), DiscreteHalf(F(5, 2), 1), -1, 0),
    (HolDS(4, 1), DiscreteHalf(F(5, 2), 1), 0, 0),
    (AntiholDS(-1, -4), DiscreteHalf(F(5, 2), -1), -1, 1),
    (LargeDS(2, -1), DiscreteHalf(F(3, 2), -1), 1, 1),
    (LargeDS(2, -1), PrincipalHalf(0.5j, h), 1, 1),
    (LargeDS(2, -1), DiscreteHalf(F(3, 2), 1), 1, 0),
    (LargeDS(2, -1), DiscreteHalf(F(7, 2), 1), -1, 1),
    (LargeDS(1, -2), DiscreteHalf(F(3, 2), 1), -1, 1),
    (PJPS(1, 1, "even"), DiscreteHalf(h, -1), 1, AT_MOST_ONE),
    (PJPS(2, 1, "even"), DiscreteHalf(h, -1), 1, 0),
    (PJPS(2, 1, "odd"), DiscreteHalf(F(5, 2), 1), -1, AT_MOST_ONE),
    (PJPS(2, -1, "odd"), DiscreteHalf(F(5, 2), -1), 1, AT_MOST_ONE),
    (PS(0.3j, 0.7j), DiscreteHalf(F(3, 2), 1), 1, 0),
    (PS(0.3j, 0.7j), DiscreteHalf(F(3, 2), -1), 1, AT_MOST_ONE),
])
def test_fj_dim(rep, pi1, m, dim):
    assert fj_dim(rep, pi1, m) == dim


def test_fj_dim_errors():
    with pytest.raises(CaseError):
        fj_dim(LargeDS(2, -1), DiscreteHalf(h, -1), 1)
    with pytest.raises(ParameterError):
        fj_dim(LargeDS(2, -1), PrincipalHalf(0.5j, 0), 1)
    with pytest.raises(TagError):
        fj_dim(LargeDS(2, -1), "P", 1)


def test_holomorphic_closed_form():
    idx, v = fj_leading(HolDS(4, 1), DiscreteHalf(F(5, 2), 1), 1, 1.0)
    X = 4 * math.pi
    assert idx.j == h and idx.k == 0
    assert abs(v - X ** 2.5 * math.exp(-X / 2)) < 1e-12 * v


@pytest.mark.parametrize("a1", [0.3, 0.8, 1.5])
def test_large_ds_whittaker_reduction(a1):
    _, v = fj_leading(LargeDS(2, -1), DiscreteHalf(F(3, 2), -1), 1, a1)
    X = 4 * math.pi * a1 * a1
    ref = X ** 1.75 * float(mpmath.whitw(-0.25, -0.25, X))
    assert abs(complex(v) - ref) < 1e-9 * abs(ref)


def test_contragredient_relation():
    # chamber III at m equals chamber II of the contragredient at -m with dual pi1
    f3 = leading_formula(LargeDS(1, -2), DiscreteHalf(F(3, 2), 1), -1)
    f2 = leading_formula(LargeDS(2, -1), DiscreteHalf(F(3, 2), -1), 1)
    assert f3.a == f2.a and f3.b == f2.b
    assert f3.index.j == -f2.index.j and "[flipped]" in f3.branch
    assert f3.evaluate(5.0) == f2.evaluate(5.0)


def test_rapid_decay_rate():
    ok, s = rapid_decay_check(HolDS(4, 1), DiscreteHalf(F(5, 2), 1), 1)
    assert ok and abs(s + 0.5) < 0.02
    ok, s = rapid_decay_check(PS(0.3j, 0.7j), PrincipalHalf(0.5j, h), 1)
    assert ok and abs(s + 0.5) < 0.05


def test_decay_tail_past_the_peak():
    ok, x0 = decay_tail_check(HolDS(4, 1), DiscreteHalf(F(5, 2), 1), 1)
    # x^{12.5} e^{-x/2} peaks at 25
    assert ok and x0 >= 25


def test_dimension_zero_names_the_rule():
    with pytest.raises(DimensionZero) as err:
        leading_formula(HolDS(4, 1), DiscreteHalf(F(11, 2), 1), 1)
    assert "holomorphic DS" in str(err.value.branch)
    with pytest.raises(DimensionZero) as err:
        leading_formula(LargeDS(1, -2), DiscreteHalf(F(3, 2), -1), -1)
    assert "via contragredient" in err.value.branch
